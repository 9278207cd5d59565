#include "randmult/estimate.hpp"

#include <cmath>
#include <vector>

#include "randmult/numeric.hpp"

namespace randmult {

MomentEstimate summarize(std::span<const double> values, std::uint64_t seed) {
  MomentEstimate est;
  est.trials = values.size();
  est.seed = seed;
  if (values.empty()) return est;
  const double n = static_cast<double>(values.size());
  est.mean = pairwise_sum(values) / n;
  if (values.size() > 1) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double d = values[i] - est.mean;
      sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / (n - 1.0);
    est.std_error = std::sqrt(var / n);
  }
  return est;
}

}  // namespace randmult
