#pragma once

// Monte Carlo sampling of Steinhaus and Rademacher random multiplicative sums.

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "randmult/arith.hpp"
#include "randmult/estimate.hpp"
#include "randmult/rng.hpp"

namespace randmult {

enum class Model { Steinhaus, Rademacher };

inline constexpr std::uint64_t kMaxSimulationX = 10'000'000;

// One draw of the completely multiplicative angles theta_n in [0, 1), n <= x;
// X_n = e^{2 pi i theta_n}.
class PhaseSieve {
 public:
  PhaseSieve(const FactorSieve& sieve, std::uint64_t x, SplitMix64& rng);
  std::uint64_t x() const { return theta_.size() - 1; }
  double theta(std::uint64_t n) const { return theta_[n]; }

 private:
  std::vector<double> theta_;
};

// Shared sieve of smallest prime factors up to x (built on first use).
std::shared_ptr<const FactorSieve> shared_sieve(std::uint64_t x);

std::complex<double> sample_steinhaus_sum(std::uint64_t x, double sigma, SplitMix64& rng);
long long sample_rademacher_sum(std::uint64_t x, SplitMix64& rng);

// Mean of |S|^{two_k} with S the (sigma-weighted) sum up to x.
MomentEstimate estimate_abs_moment(Model model, std::uint64_t x, double sigma, double two_k, std::uint64_t trials,
                                   std::uint64_t seed);

struct HelsonRow {
  std::uint64_t x;
  MomentEstimate first_moment;  // E|S_x|
  double ratio;                 // E|S_x| / sqrt(x)
  double conjectured;           // Helson-type prediction for the ratio
  double upper_bound;           // Cauchy-Schwarz bound for the ratio
};

std::vector<HelsonRow> helson_table(const std::vector<std::uint64_t>& xs, std::uint64_t trials, std::uint64_t seed);

std::string helson_table_csv(const std::vector<HelsonRow>& rows);

}  // namespace randmult
