#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "edrbo/dataset.hpp"
#include "edrbo/kernel.hpp"

namespace edrbo {

// Thrown when a factorisation cannot be stabilised within the jitter budget.
class numerical_error : public std::runtime_error {
public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// One fitted expert.  Immutable after fit_gp; queries are pure and safe to
// share across readers.
struct GPPosterior {
  KernelSpec spec;
  Dataset data;
  Eigen::MatrixXd chol;     // lower factor L of K + sigma^2 I (+ jitter)
  Eigen::VectorXd weights;  // solves (K + sigma^2 I) w = y
  double jitter = 0.0;      // diagonal shift that made the factorisation succeed
};

namespace detail {

// Cholesky with escalating diagonal jitter.  Starts at 1e-8 * trace(K)/n and
// escalates x10 up to 1e-2; duplicated near-identical rows (clipped contexts)
// routinely make the raw Gram singular.
inline std::pair<Eigen::MatrixXd, double> robust_cholesky(const Eigen::MatrixXd& a,
                                                          double base_scale) {
  const double j0 = 1e-8 * base_scale;
  double jitter = 0.0;
  for (;;) {
    Eigen::MatrixXd shifted = a;
    shifted.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() == Eigen::Success)
      return {Eigen::MatrixXd(llt.matrixL()), jitter};
    jitter = (jitter == 0.0) ? j0 : jitter * 10.0;
    if (jitter > 1e-2)
      throw numerical_error("fit_gp: Cholesky failed at final jitter " + std::to_string(jitter));
  }
}

}  // namespace detail

// Exact GP fit via Cholesky of K + sigma^2 I.  An empty dataset yields the
// prior (zero mean, variance output_scale everywhere).
inline GPPosterior fit_gp(const KernelSpec& spec, const Dataset& data) {
  spec.validate();
  data.validate();
  GPPosterior gp;
  gp.spec = spec;
  gp.data = data;
  const Eigen::Index n = data.size();
  if (n == 0) return gp;
  if (data.points.cols() != spec.lengthscale.size())
    throw std::invalid_argument("fit_gp: data dimension does not match kernel lengthscale");
  Eigen::MatrixXd k = kernel_gram(spec, data.points);
  const double base_scale = k.trace() / static_cast<double>(n);
  k.diagonal().array() += data.noise_var;
  auto [chol, jitter] = detail::robust_cholesky(k, base_scale);
  gp.chol = std::move(chol);
  gp.jitter = jitter;
  gp.weights = gp.chol.triangularView<Eigen::Lower>().solve(data.outputs);
  gp.chol.transpose().triangularView<Eigen::Upper>().solveInPlace(gp.weights);
  return gp;
}

// Batched posterior query over row-wise query points (m x d).  `std_out` may
// be null when only means are needed; the variance solve dominates the cost.
inline void gp_query(const GPPosterior& gp, const Eigen::MatrixXd& queries,
                     Eigen::VectorXd* mean_out, Eigen::VectorXd* std_out) {
  const Eigen::Index m = queries.rows();
  if (gp.data.empty()) {
    // Prior: zero mean, variance output_scale, independent of query dimension.
    if (mean_out) *mean_out = Eigen::VectorXd::Zero(m);
    if (std_out) *std_out = Eigen::VectorXd::Constant(m, std::sqrt(gp.spec.output_scale));
    return;
  }
  if (queries.cols() != gp.spec.lengthscale.size())
    throw std::invalid_argument("gp_query: dimension mismatch");
  const Eigen::MatrixXd kx = kernel_cross(gp.spec, queries, gp.data.points);
  if (mean_out) *mean_out = kx * gp.weights;
  if (std_out) {
    Eigen::MatrixXd v = kx.transpose();
    gp.chol.triangularView<Eigen::Lower>().solveInPlace(v);
    *std_out = (gp.spec.output_scale - v.colwise().squaredNorm().array())
                   .max(0.0)  // round-off can push the variance slightly negative
                   .sqrt()
                   .matrix();
  }
}

inline double posterior_mean(const GPPosterior& gp, const JointPoint& q) {
  if (!q.allFinite()) throw std::invalid_argument("posterior_mean: non-finite coordinate");
  Eigen::VectorXd mean;
  gp_query(gp, q.transpose(), &mean, nullptr);
  return mean(0);
}

inline double posterior_std(const GPPosterior& gp, const JointPoint& q) {
  if (!q.allFinite()) throw std::invalid_argument("posterior_std: non-finite coordinate");
  Eigen::VectorXd std;
  gp_query(gp, q.transpose(), nullptr, &std);
  return std(0);
}

inline double log_marginal_likelihood(const GPPosterior& gp) {
  const Eigen::Index n = gp.data.size();
  if (n == 0) throw std::invalid_argument("log_marginal_likelihood: empty dataset");
  const double quad = gp.data.outputs.dot(gp.weights);
  const double logdet_half = gp.chol.diagonal().array().log().sum();
  return -0.5 * quad - logdet_half - 0.5 * static_cast<double>(n) * std::log(2.0 * M_PI);
}

// Information gain 0.5 * log det(I + sigma^-2 K) of the training set.
inline double information_gain(const GPPosterior& gp) {
  const Eigen::Index n = gp.data.size();
  if (n == 0) return 0.0;
  const double s2 = std::max(gp.data.noise_var, 1e-10);
  Eigen::MatrixXd a = kernel_gram(gp.spec, gp.data.points) / s2;
  a.diagonal().array() += 1.0;
  auto [chol, jitter] = detail::robust_cholesky(a, a.trace() / static_cast<double>(n));
  (void)jitter;
  return chol.diagonal().array().log().sum();
}

}  // namespace edrbo
