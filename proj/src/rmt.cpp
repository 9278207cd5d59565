#include "randmult/rmt.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numeric>

#include "randmult/arith.hpp"
#include "randmult/errors.hpp"
#include "randmult/parallel.hpp"
#include "randmult/polytope.hpp"
#include "randmult/table_dp.hpp"

namespace randmult {

namespace {

using cd = std::complex<double>;

void check_z(double z_abs) { require(z_abs > 1.0, "|z| must be > 1"); }

double log_power(int L, int exponent) {
  if (exponent == 0) return 1.0;
  return std::pow(static_cast<double>(L), exponent);
}

}  // namespace

double evaluate_polynomial(const std::vector<BigInt>& coefficients, double w) {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * w + to_double(*it);
  return acc;
}

TruncatedMoment unitary_truncated_moment_exact(int k, int L, double z_abs) {
  require(k >= 1, "k must be >= 1");
  require(L >= 0, "L must be >= 0");
  require(z_abs > 0.0, "|z| must be positive");
  const bool within = (k == 1 && L <= 1000) || (k <= 3 && L <= 40) || (k == 4 && L <= 12) || L == 0;
  if (!within) throw ResourceError("unitary DP supports k <= 3 with L <= 40 (k = 1: L <= 1000) and k = 4 with L <= 12");

  TruncatedMoment out;
  out.coefficients.assign(k * L + 1, 0);
  const auto by_rows = count_tables_by_row_sums({std::vector<int>(k, L), Bound::AtMost, std::vector<int>(k, L), Bound::AtMost});
  for (const auto& entry : by_rows)
    out.coefficients[std::accumulate(entry.row_sums.begin(), entry.row_sums.end(), 0)] += entry.count;
  out.value = evaluate_polynomial(out.coefficients, z_abs * z_abs);
  return out;
}

TruncatedMoment so_truncated_moment_exact(int k, int L, double z_abs) {
  require(k >= 1, "k must be >= 1");
  require(L >= 0, "L must be >= 0");
  require(z_abs > 0.0, "|z| must be positive");
  const bool within = (k == 1 && L <= 1000) || (k == 2 && L <= 24) || (k == 3 && L <= 8) || L == 0;
  if (!within) throw ResourceError("SO DP supports k = 1 with L <= 1000, k = 2 with L <= 24 and k = 3 with L <= 8");

  TruncatedMoment out;
  out.coefficients = count_graph_by_total(2 * k, L, Bound::AtMost);
  out.value = evaluate_polynomial(out.coefficients, z_abs * z_abs);
  return out;
}

double hyper_Fk(int k, double z_abs) {
  require(k >= 1, "k must be >= 1");
  check_z(z_abs);
  const double w = 1.0 - 1.0 / (z_abs * z_abs);
  double term = 1.0, sum = 1.0;
  for (int m = 0; m + 1 < k; ++m) {
    const double a = 1.0 - k + m;
    term *= a * a / ((2.0 - 2.0 * k + m) * (m + 1.0)) * w;
    sum += term;
  }
  return sum;
}

I1Values I1_two_ways(int k, double z_abs) {
  require(k >= 1, "k must be >= 1");
  check_z(z_abs);
  const double z2 = z_abs * z_abs;
  const double q = 1.0 - 1.0 / z2;
  const double r = 1.0 / (1.0 - z2);
  double sum = 0.0, binom = 1.0, rpow = 1.0;
  for (int m = 0; m < k; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binom * real_gamma(k + m) / real_gamma(m + 1.0) * rpow;
    binom = binom * (k - 1 - m) / (m + 1.0);
    rpow *= r;
  }
  I1Values out;
  out.residue = sum / real_gamma(k) / std::pow(q, k);
  const double gk = real_gamma(k);
  out.closed_form = real_gamma(2.0 * k - 1.0) / (gk * gk) * hyper_Fk(k, z_abs) / std::pow(q, 2 * k - 1);
  return out;
}

std::vector<std::complex<double>> haar_unitary(int N, SplitMix64& rng) {
  require(N >= 1 && N <= 64, "matrix size must lie in [1, 64]");
  Eigen::MatrixXcd g(N, N);
  const double s = std::sqrt(0.5);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = cd(re * s, im * s);
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int j = 0; j < N; ++j) {
    const cd d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0 ? d / mag : cd(1.0));
  }
  return std::vector<cd>(q.data(), q.data() + static_cast<std::ptrdiff_t>(N) * N);
}

std::vector<std::complex<double>> secular_coefficients(const std::vector<std::complex<double>>& matrix, int N) {
  require(N >= 1 && matrix.size() == static_cast<std::size_t>(N) * N, "matrix must be N x N");
  Eigen::Map<const Eigen::MatrixXcd> m(matrix.data(), N, N);
  std::vector<cd> trace(N + 1);
  Eigen::MatrixXcd power = m;
  for (int j = 1; j <= N; ++j) {
    trace[j] = power.trace();
    if (j < N) power = power * m;
  }
  // Newton: n e_n = sum_{i=1}^{n} (-1)^{i-1} e_{n-i} p_i.
  std::vector<cd> e(N + 1);
  e[0] = 1.0;
  for (int n = 1; n <= N; ++n) {
    cd acc = 0.0;
    for (int i = 1; i <= n; ++i) acc += (i % 2 == 1 ? 1.0 : -1.0) * e[n - i] * trace[i];
    e[n] = acc / static_cast<double>(n);
  }
  return e;
}

SecularSample haar_unitary_secular(int N, SplitMix64& rng) {
  SecularSample out;
  out.N = N;
  out.c = secular_coefficients(haar_unitary(N, rng), N);
  out.flagged = std::abs(std::abs(out.c[N]) - 1.0) > 1e-6;
  return out;
}

MomentEstimate mc_truncated_moment(int k, int L, double z_abs, int N, std::uint64_t samples, std::uint64_t seed) {
  require(k >= 1 && L >= 0, "k >= 1 and L >= 0 required");
  check_z(z_abs);
  require(N >= k * L, "N must be >= k L for the truncated moment identity");
  require(N >= 1 && N <= 64, "N must lie in [1, 64]");
  require(samples >= 2, "need at least two samples");
  std::vector<double> values(samples);
  parallel_for(samples, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      auto rng = SplitMix64::stream(seed, s);
      const auto sample = haar_unitary_secular(N, rng);
      cd lambda = 0.0;
      double zp = 1.0;
      for (int n = 0; n <= L; ++n) {
        lambda += sample.c[n] * (n % 2 == 0 ? zp : -zp);
        zp *= z_abs;
      }
      values[s] = std::pow(std::norm(lambda), k);
    }
  });
  return summarize(values, seed);
}

MixedMomentEstimate mc_secular_mixed_moment(const std::vector<int>& a, const std::vector<int>& b, int N,
                                            std::uint64_t samples, std::uint64_t seed) {
  int weight_a = 0, weight_b = 0;
  for (std::size_t j = 0; j < a.size(); ++j) weight_a += static_cast<int>(j + 1) * a[j];
  for (std::size_t j = 0; j < b.size(); ++j) weight_b += static_cast<int>(j + 1) * b[j];
  require(N >= std::max(weight_a, weight_b), "N must be at least the partition weights");
  require(samples >= 2, "need at least two samples");
  std::vector<double> re(samples), im(samples);
  parallel_for(samples, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      auto rng = SplitMix64::stream(seed, s);
      const auto sample = haar_unitary_secular(N, rng);
      cd prod = 1.0;
      for (std::size_t j = 0; j < a.size(); ++j)
        for (int r = 0; r < a[j]; ++r) prod *= sample.c[j + 1];
      for (std::size_t j = 0; j < b.size(); ++j)
        for (int r = 0; r < b[j]; ++r) prod *= std::conj(sample.c[j + 1]);
      re[s] = prod.real();
      im[s] = prod.imag();
    }
  });
  return {summarize(re, seed), summarize(im, seed)};
}

double unitary_asymptotic_rhs(int k, int L, double z_abs) {
  require(k >= 1 && L >= 0, "k >= 1 and L >= 0 required");
  check_z(z_abs);
  const double gk = real_gamma(k);
  const double constant = to_double(beta_constant(k)) * hyper_Fk(k, z_abs) * real_gamma(2.0 * k - 1.0) / (gk * gk) /
                          std::pow(1.0 - 1.0 / (z_abs * z_abs), 2 * k - 1);
  return constant * std::pow(z_abs, 2.0 * k * L) * log_power(L, (k - 1) * (k - 1));
}

double so_asymptotic_rhs(int k, int L, double z_abs) {
  require(k >= 1 && L >= 0, "k >= 1 and L >= 0 required");
  check_z(z_abs);
  if (k == 1) return std::pow(z_abs, 2.0 * L) / (1.0 - 1.0 / (z_abs * z_abs));
  const double constant = to_double(gamma_constant(k)) / std::pow(1.0 - 1.0 / z_abs, 2 * k);
  return constant * std::pow(z_abs, 2.0 * k * L) * log_power(L, 2 * k * k - 3 * k);
}

}  // namespace randmult
