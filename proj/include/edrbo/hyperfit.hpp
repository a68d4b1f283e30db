#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "edrbo/gp.hpp"
#include "edrbo/rng.hpp"

namespace edrbo {

struct HyperCandidate {
  KernelSpec spec;
  double lml;
};

// Log-uniform random search maximising the log marginal likelihood.
// Lengthscales in [0.05, 2.0] per dimension, rq_alpha in [0.5, 10];
// output_scale stays at 1 (outputs are standardised upstream).
inline std::vector<HyperCandidate> hyper_search(KernelFamily family, const Dataset& data,
                                                int search_budget, RngStream& rng) {
  if (data.size() < 2)
    throw std::invalid_argument("hyper_search: need at least 2 points");
  if (search_budget < 1)
    throw std::invalid_argument("hyper_search: budget must be >= 1");
  const Eigen::Index dim = data.points.cols();
  const double lo = std::log(0.05), hi = std::log(2.0);
  const double alo = std::log(0.5), ahi = std::log(10.0);
  std::vector<HyperCandidate> out;
  out.reserve(search_budget);
  for (int i = 0; i < search_budget; ++i) {
    KernelSpec spec;
    spec.family = family;
    spec.lengthscale.resize(dim);
    for (Eigen::Index d = 0; d < dim; ++d)
      spec.lengthscale(d) = std::exp(rng.uniform(lo, hi));
    if (family == KernelFamily::RationalQuadratic)
      spec.rq_alpha = std::exp(rng.uniform(alo, ahi));
    out.push_back({spec, log_marginal_likelihood(fit_gp(spec, data))});
  }
  return out;
}

inline KernelSpec fit_hyperparams(KernelFamily family, const Dataset& data, int search_budget,
                                  RngStream& rng) {
  const auto candidates = hyper_search(family, data, search_budget, rng);
  const HyperCandidate* best = &candidates.front();
  for (const auto& c : candidates)
    if (c.lml > best->lml) best = &c;
  return best->spec;
}

}  // namespace edrbo
