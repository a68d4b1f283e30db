#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string_view>

namespace edrbo {

// Named, independent RNG streams derived from one master seed.  Every
// stochastic component (initial design, contexts, noise, acquisition, ...)
// owns its own stream so that changing one component never perturbs the
// draws seen by another.
class RngStream {
public:
  RngStream(std::uint64_t master_seed, std::string_view name) {
    const auto key = make_key(master_seed, name);
    std::seed_seq seq(key.begin(), key.end());
    engine_.seed(seq);
  }

  std::mt19937_64& engine() { return engine_; }

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  double normal(double mean = 0.0, double std = 1.0) {
    // One fresh distribution per draw keeps the stream state equal to the
    // engine state (no cached spare deviate).
    return std::normal_distribution<double>(mean, std)(engine_);
  }

  std::uint64_t integer() { return engine_(); }

private:
  static std::array<std::uint32_t, 6> make_key(std::uint64_t seed,
                                               std::string_view name) {
    // FNV-1a over the stream name, mixed with the master seed.
    std::uint64_t h = 1469598103934665603ull;
    for (char c : name) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
            static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
            0x9e3779b9u, 0x85ebca6bu};
  }

  std::mt19937_64 engine_;
};

}  // namespace edrbo
