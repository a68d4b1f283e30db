#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "edrbo/gp.hpp"
#include "edrbo/hyperfit.hpp"

namespace edrbo {

struct EnsembleConfig {
  std::vector<KernelFamily> families{KernelFamily::SquaredExponential,
                                     KernelFamily::RationalQuadratic,
                                     KernelFamily::Matern52};
  Eigen::VectorXd rkhs_bounds;  // B_m per expert; empty means 1.0 for all
  double delta = 0.1;
  double noise_var = 1e-4;
  int hyper_budget = 32;
  bool standardize_outputs = true;

  int experts() const { return static_cast<int>(families.size()); }

  double rkhs_bound(int m) const {
    return rkhs_bounds.size() == 0 ? 1.0 : rkhs_bounds(m);
  }

  void validate() const {
    if (families.empty()) throw std::invalid_argument("EnsembleConfig: need at least one expert");
    if (!(delta > 0.0 && delta < 1.0))
      throw std::invalid_argument("EnsembleConfig: delta must lie in (0,1)");
    if (rkhs_bounds.size() != 0) {
      if (rkhs_bounds.size() != static_cast<Eigen::Index>(families.size()))
        throw std::invalid_argument("EnsembleConfig: rkhs_bounds length must match families");
      if ((rkhs_bounds.array() <= 0.0).any())
        throw std::invalid_argument("EnsembleConfig: rkhs_bounds must be positive");
    }
    if (!(noise_var >= 0.0)) throw std::invalid_argument("EnsembleConfig: noise_var must be >= 0");
    if (hyper_budget < 1) throw std::invalid_argument("EnsembleConfig: hyper_budget must be >= 1");
  }
};

// Affine output transform applied before fitting: experts see (y - mean)/scale.
struct OutputScaler {
  double mean = 0.0;
  double scale = 1.0;

  static OutputScaler from(const Eigen::VectorXd& y) {
    OutputScaler s;
    if (y.size() < 2) return s;
    s.mean = y.mean();
    const double var = (y.array() - s.mean).square().sum() / static_cast<double>(y.size());
    const double sd = std::sqrt(var);
    s.scale = sd > 1e-12 ? sd : 1.0;
    return s;
  }
};

// M experts over one shared dataset.  Immutable after fit; all queries pure.
struct EnsemblePosterior {
  std::vector<GPPosterior> experts;
  EnsembleConfig config;
  OutputScaler scaler;

  int size() const { return static_cast<int>(experts.size()); }
  Eigen::Index input_dim() const { return experts.front().spec.lengthscale.size(); }
};

inline EnsemblePosterior fit_ensemble(const EnsembleConfig& config, const Dataset& data,
                                      std::uint64_t seed) {
  config.validate();
  data.validate();
  EnsemblePosterior e;
  e.config = config;
  e.scaler = config.standardize_outputs ? OutputScaler::from(data.outputs) : OutputScaler{};

  Dataset scaled = data;
  if (!scaled.empty())
    scaled.outputs = (scaled.outputs.array() - e.scaler.mean) / e.scaler.scale;
  scaled.noise_var = config.noise_var / (e.scaler.scale * e.scaler.scale);

  const Eigen::Index dim = scaled.empty() ? 1 : scaled.points.cols();
  e.experts.reserve(config.families.size());
  for (KernelFamily family : config.families) {
    KernelSpec spec;
    if (scaled.size() >= 2) {
      // Every expert replays the same search stream, so duplicated families
      // yield bit-identical experts (and zero disagreement radius).
      RngStream rng(seed, "hyperfit");
      spec = fit_hyperparams(family, scaled, config.hyper_budget, rng);
    } else {
      spec = default_kernel_spec(family, dim);
    }
    e.experts.push_back(fit_gp(spec, scaled));
  }
  return e;
}

// Raw-space (de-standardised) posterior of expert m at a batch of queries.
inline void expert_query(const EnsemblePosterior& e, int m, const Eigen::MatrixXd& queries,
                         Eigen::VectorXd* mean_out, Eigen::VectorXd* std_out) {
  gp_query(e.experts.at(m), queries, mean_out, std_out);
  if (mean_out) *mean_out = e.scaler.mean + e.scaler.scale * mean_out->array();
  if (std_out) *std_out *= e.scaler.scale;
}

inline double expert_mean(const EnsemblePosterior& e, int m, const JointPoint& q) {
  Eigen::VectorXd mean;
  expert_query(e, m, q.transpose(), &mean, nullptr);
  return mean(0);
}

inline double expert_std(const EnsemblePosterior& e, int m, const JointPoint& q) {
  Eigen::VectorXd std;
  expert_query(e, m, q.transpose(), nullptr, &std);
  return std(0);
}

inline double ensemble_mean(const EnsemblePosterior& e, const JointPoint& q) {
  double acc = 0.0;
  for (int m = 0; m < e.size(); ++m) acc += expert_mean(e, m, q);
  return acc / e.size();
}

inline double ensemble_std(const EnsemblePosterior& e, const JointPoint& q) {
  double acc = 0.0;
  for (int m = 0; m < e.size(); ++m) acc += expert_std(e, m, q);
  return acc / e.size();
}

struct GaussianMoments {
  double mean;
  double std;
};

// 1-D Gaussian W2 barycentre of the experts: arithmetic mean of the means and
// of the standard deviations.
inline GaussianMoments barycentre(const EnsemblePosterior& e, const JointPoint& q) {
  return {ensemble_mean(e, q), ensemble_std(e, q)};
}

// Bures-Wasserstein radius: largest W2 distance from any expert to the
// barycentre, combining structural disagreement and confidence dispersion.
inline double posterior_radius(const EnsemblePosterior& e, const JointPoint& q) {
  const GaussianMoments bar = barycentre(e, q);
  double worst = 0.0;
  for (int m = 0; m < e.size(); ++m) {
    const double dm = expert_mean(e, m, q) - bar.mean;
    const double ds = expert_std(e, m, q) - bar.std;
    worst = std::max(worst, std::sqrt(dm * dm + ds * ds));
  }
  return worst;
}

// beta_t = max_m [ B_m + sigma_eps sqrt(2 (gamma_{m,t} + 1 + ln(M/delta))) ],
// evaluated in the standardised space the experts were fit in.
inline double confidence_beta(const EnsemblePosterior& e) {
  const double sigma = std::sqrt(e.experts.front().data.noise_var);
  const double log_term = std::log(static_cast<double>(e.size()) / e.config.delta);
  double beta = 0.0;
  for (int m = 0; m < e.size(); ++m) {
    const double gamma = information_gain(e.experts[m]);
    beta = std::max(beta, e.config.rkhs_bound(m) +
                              sigma * std::sqrt(2.0 * (gamma + 1.0 + log_term)));
  }
  return beta;
}

}  // namespace edrbo
