#include "randmult/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>

#include "randmult/analytic.hpp"
#include "randmult/errors.hpp"
#include "randmult/numeric.hpp"
#include "randmult/parallel.hpp"

namespace randmult {

namespace {

void check_x(std::uint64_t x) {
  require(x >= 1, "x must be >= 1");
  if (x > kMaxSimulationX) throw ResourceError("simulation supports x <= 10^7");
}

std::complex<double> steinhaus_sum(const PhaseSieve& phases, double sigma) {
  CompensatedSum re, im;
  for (std::uint64_t n = 1; n <= phases.x(); ++n) {
    const double a = 2.0 * std::numbers::pi * phases.theta(n);
    const double w = sigma == 0.0 ? 1.0 : std::pow(static_cast<double>(n), -sigma);
    re += w * std::cos(a);
    im += w * std::sin(a);
  }
  return {re.value(), im.value()};
}

long long rademacher_sum(const FactorSieve& sieve, std::uint64_t x, SplitMix64& rng) {
  std::vector<signed char> y(x + 1, 0);
  y[1] = 1;
  long long s = x >= 1 ? 1 : 0;
  for (std::uint64_t n = 2; n <= x; ++n) {
    const std::uint32_t p = sieve.spf(static_cast<std::uint32_t>(n));
    if (p == n) {
      y[n] = (rng() >> 63) ? 1 : -1;
    } else {
      const std::uint64_t rest = n / p;
      y[n] = (rest % p == 0) ? 0 : static_cast<signed char>(y[rest] * y[p]);
    }
    s += y[n];
  }
  return s;
}

}  // namespace

PhaseSieve::PhaseSieve(const FactorSieve& sieve, std::uint64_t x, SplitMix64& rng) : theta_(x + 1, 0.0) {
  check_x(x);
  require(x <= sieve.limit() || x < 2, "sieve does not cover x");
  for (std::uint64_t n = 2; n <= x; ++n) {
    const std::uint32_t p = sieve.spf(static_cast<std::uint32_t>(n));
    if (p == n) {
      theta_[n] = rng.uniform();
    } else {
      const double t = theta_[n / p] + theta_[p];
      theta_[n] = t >= 1.0 ? t - 1.0 : t;
    }
  }
}

std::shared_ptr<const FactorSieve> shared_sieve(std::uint64_t x) {
  static std::mutex mutex;
  static std::shared_ptr<const FactorSieve> cached;
  std::lock_guard lock(mutex);
  if (!cached || cached->limit() < x) cached = std::make_shared<const FactorSieve>(std::max<std::uint64_t>(x, 2));
  return cached;
}

std::complex<double> sample_steinhaus_sum(std::uint64_t x, double sigma, SplitMix64& rng) {
  check_x(x);
  const auto sieve = shared_sieve(x);
  return steinhaus_sum(PhaseSieve(*sieve, x, rng), sigma);
}

long long sample_rademacher_sum(std::uint64_t x, SplitMix64& rng) {
  check_x(x);
  const auto sieve = shared_sieve(x);
  return rademacher_sum(*sieve, x, rng);
}

MomentEstimate estimate_abs_moment(Model model, std::uint64_t x, double sigma, double two_k, std::uint64_t trials,
                                   std::uint64_t seed) {
  check_x(x);
  require(two_k > 0.0, "moment exponent must be positive");
  require(trials >= 100, "at least 100 trials are required");
  require(sigma >= 0.0 && sigma <= 0.5, "sigma must lie in [0, 1/2]");
  const auto sieve = shared_sieve(x);
  std::vector<double> values(trials);
  parallel_for(trials, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t t = lo; t < hi; ++t) {
      auto rng = SplitMix64::stream(seed, t);
      double magnitude;
      if (model == Model::Steinhaus)
        magnitude = std::abs(steinhaus_sum(PhaseSieve(*sieve, x, rng), sigma));
      else
        magnitude = std::abs(static_cast<double>(rademacher_sum(*sieve, x, rng)));
      values[t] = magnitude == 0.0 ? 0.0 : std::exp(two_k * std::log(magnitude));
    }
  });
  return summarize(values, seed);
}

std::vector<HelsonRow> helson_table(const std::vector<std::uint64_t>& xs, std::uint64_t trials, std::uint64_t seed) {
  const double bound = cs_bound_minimize().amplitude_bound;
  std::vector<HelsonRow> rows;
  for (std::uint64_t x : xs) {
    HelsonRow row;
    row.x = x;
    row.first_moment = estimate_abs_moment(Model::Steinhaus, x, 0.0, 1.0, trials, seed);
    row.ratio = row.first_moment.mean / std::sqrt(static_cast<double>(x));
    row.conjectured = conjectured_moment(0.5, 0.0, static_cast<double>(x)).coefficient;
    row.upper_bound = bound;
    rows.push_back(row);
  }
  return rows;
}

std::string helson_table_csv(const std::vector<HelsonRow>& rows) {
  std::string out = "x,mean_abs,std_error,trials,seed,ratio_to_sqrt_x,conjectured_ratio,cs_upper_bound\n";
  char line[512];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%llu,%.17g,%.17g,%llu,%llu,%.17g,%.17g,%.17g\n",
                  static_cast<unsigned long long>(r.x), r.first_moment.mean, r.first_moment.std_error,
                  static_cast<unsigned long long>(r.first_moment.trials),
                  static_cast<unsigned long long>(r.first_moment.seed), r.ratio, r.conjectured, r.upper_bound);
    out += line;
  }
  return out;
}

}  // namespace randmult
