#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "edrbo/kernel.hpp"

namespace edrbo {

// Observed triples up to iteration t, stored row-wise.  `points` holds the
// joint inputs xi_tau = [x_tau^T, c_tau^T]^T.
struct Dataset {
  Eigen::MatrixXd points;   // n x (d_x + d_c)
  Eigen::VectorXd outputs;  // n
  double noise_var = 0.0;   // sigma_eps^2

  Eigen::Index size() const { return outputs.size(); }
  bool empty() const { return outputs.size() == 0; }

  void validate() const {
    if (points.rows() != outputs.size())
      throw std::invalid_argument("Dataset: points and outputs must have equal length");
    if (!(noise_var >= 0.0))
      throw std::invalid_argument("Dataset: noise_var must be nonnegative");
    if (points.size() > 0 && !points.allFinite())
      throw std::invalid_argument("Dataset: non-finite input coordinate");
    if (outputs.size() > 0 && !outputs.allFinite())
      throw std::invalid_argument("Dataset: non-finite output");
  }

  void append(const JointPoint& p, double y) {
    const Eigen::Index n = size();
    if (n == 0) {
      points.resize(1, p.size());
    } else {
      if (p.size() != points.cols())
        throw std::invalid_argument("Dataset::append: dimension mismatch");
      points.conservativeResize(n + 1, Eigen::NoChange);
    }
    points.row(n) = p.transpose();
    outputs.conservativeResize(n + 1);
    outputs(n) = y;
  }
};

}  // namespace edrbo
