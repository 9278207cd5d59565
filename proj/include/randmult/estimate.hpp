#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>

namespace randmult {

// Monte Carlo estimate. std_error = sample standard deviation / sqrt(trials).
struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  // One-sided bound reported when a rejection sampler accepted nothing.
  std::optional<double> upper_bound;

  bool within(double target, double n_se) const {
    return std::abs(mean - target) <= n_se * std_error;
  }
};

// Mean and standard error of per-trial values, reduced in fixed pairwise order.
MomentEstimate summarize(std::span<const double> values, std::uint64_t seed);

}  // namespace randmult
