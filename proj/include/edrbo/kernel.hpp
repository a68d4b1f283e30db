#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace edrbo {

// A point in the joint design/context space, xi = [x^T, c^T]^T.
using JointPoint = Eigen::VectorXd;

enum class KernelFamily { SquaredExponential, RationalQuadratic, Matern52 };

inline const char* kernel_family_name(KernelFamily f) {
  switch (f) {
    case KernelFamily::SquaredExponential: return "squared_exponential";
    case KernelFamily::RationalQuadratic: return "rational_quadratic";
    case KernelFamily::Matern52: return "matern52";
  }
  return "?";
}

// Stationary kernel with anisotropic (per-dimension) lengthscales over the
// joint input.  k(a,a) == output_scale for every family.
struct KernelSpec {
  KernelFamily family = KernelFamily::SquaredExponential;
  Eigen::VectorXd lengthscale;  // per input dimension, > 0
  double output_scale = 1.0;
  double rq_alpha = 1.0;  // RationalQuadratic only

  void validate() const {
    if (lengthscale.size() == 0 || (lengthscale.array() <= 0.0).any())
      throw std::invalid_argument("KernelSpec: lengthscale must be positive elementwise");
    if (!(output_scale > 0.0)) throw std::invalid_argument("KernelSpec: output_scale must be positive");
    if (family == KernelFamily::RationalQuadratic && !(rq_alpha > 0.0))
      throw std::invalid_argument("KernelSpec: rq_alpha must be positive");
  }
};

inline KernelSpec default_kernel_spec(KernelFamily family, Eigen::Index dim) {
  KernelSpec s;
  s.family = family;
  s.lengthscale = Eigen::VectorXd::Constant(dim, 1.0);
  s.rq_alpha = 1.0;
  return s;
}

namespace detail {

// Kernel value from the lengthscale-scaled squared distance r2.
inline double kernel_of_sqdist(const KernelSpec& s, double r2) {
  switch (s.family) {
    case KernelFamily::SquaredExponential:
      return s.output_scale * std::exp(-0.5 * r2);
    case KernelFamily::RationalQuadratic:
      return s.output_scale * std::pow(1.0 + r2 / (2.0 * s.rq_alpha), -s.rq_alpha);
    case KernelFamily::Matern52: {
      const double r = std::sqrt(r2);
      const double a = std::sqrt(5.0) * r;
      return s.output_scale * (1.0 + a + 5.0 * r2 / 3.0) * std::exp(-a);
    }
  }
  return 0.0;
}

// Elementwise, in place, on a matrix of scaled squared distances.
inline void kernel_of_sqdist_inplace(const KernelSpec& s, Eigen::MatrixXd& r2) {
  switch (s.family) {
    case KernelFamily::SquaredExponential:
      r2 = s.output_scale * (-0.5 * r2.array()).exp();
      break;
    case KernelFamily::RationalQuadratic:
      r2 = s.output_scale *
           (-s.rq_alpha * (1.0 + r2.array() / (2.0 * s.rq_alpha)).log()).exp();
      break;
    case KernelFamily::Matern52: {
      const double c5 = std::sqrt(5.0);
      Eigen::ArrayXXd a = c5 * r2.array().sqrt();
      r2 = s.output_scale * ((1.0 + a + (5.0 / 3.0) * r2.array()) * (-a).exp());
      break;
    }
  }
}

// Pairwise scaled squared distances between row-point sets A (m x d) and
// B (n x d); clamped at 0 against round-off.
inline Eigen::MatrixXd scaled_sqdist(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                     const Eigen::VectorXd& lengthscale) {
  const Eigen::VectorXd inv = lengthscale.cwiseInverse();
  const Eigen::MatrixXd as = a * inv.asDiagonal();
  const Eigen::MatrixXd bs = b * inv.asDiagonal();
  Eigen::MatrixXd d2 = -2.0 * as * bs.transpose();
  d2.colwise() += as.rowwise().squaredNorm();
  d2.rowwise() += bs.rowwise().squaredNorm().transpose();
  return d2.cwiseMax(0.0);
}

inline void check_point(const KernelSpec& s, const JointPoint& p, const char* what) {
  if (p.size() != s.lengthscale.size())
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (got " +
                                std::to_string(p.size()) + ", kernel expects " +
                                std::to_string(s.lengthscale.size()) + ")");
  if (!p.allFinite())
    throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
}

}  // namespace detail

inline double kernel_eval(const KernelSpec& spec, const JointPoint& a, const JointPoint& b) {
  detail::check_point(spec, a, "kernel_eval");
  detail::check_point(spec, b, "kernel_eval");
  const double r2 = ((a - b).array() / spec.lengthscale.array()).square().sum();
  return detail::kernel_of_sqdist(spec, r2);
}

// Gram matrix over a row-point set (n x d).
inline Eigen::MatrixXd kernel_gram(const KernelSpec& spec, const Eigen::MatrixXd& points) {
  Eigen::MatrixXd k = detail::scaled_sqdist(points, points, spec.lengthscale);
  detail::kernel_of_sqdist_inplace(spec, k);
  return k;
}

// Cross-kernel matrix between queries (m x d) and training points (n x d).
inline Eigen::MatrixXd kernel_cross(const KernelSpec& spec, const Eigen::MatrixXd& queries,
                                    const Eigen::MatrixXd& points) {
  Eigen::MatrixXd k = detail::scaled_sqdist(queries, points, spec.lengthscale);
  detail::kernel_of_sqdist_inplace(spec, k);
  return k;
}

}  // namespace edrbo
