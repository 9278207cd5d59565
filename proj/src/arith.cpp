#include "randmult/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "randmult/bigint.hpp"
#include "randmult/errors.hpp"
#include "randmult/numeric.hpp"

namespace randmult {

FactorSieve::FactorSieve(std::uint64_t limit) {
  if (limit < 2) throw InvalidArgument("sieve limit must be >= 2, got " + std::to_string(limit));
  if (limit > kMaxLimit)
    throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds " +
                        std::to_string(kMaxLimit) + " (4 bytes per entry)");
  limit_ = static_cast<std::uint32_t>(limit);
  spf_.assign(limit_ + 1, 0);
  // Linear sieve: every composite is written exactly once, by its smallest prime.
  for (std::uint64_t i = 2; i <= limit_; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes_) {
      if (p > spf_[i] || i * p > limit_) break;
      spf_[i * p] = p;
    }
  }
}

std::uint32_t FactorSieve::spf(std::uint32_t n) const {
  if (n < 2) throw InvalidArgument("spf is defined for n >= 2");
  if (n > limit_) throw OutOfRange("n = " + std::to_string(n) + " exceeds sieve limit " + std::to_string(limit_));
  return spf_[n];
}

FactorSieve build_spf_sieve(std::uint64_t limit) { return FactorSieve(limit); }

Factorization factorize(std::uint64_t n, const FactorSieve& sieve) {
  if (n < 1) throw InvalidArgument("factorize requires n >= 1");
  if (n > sieve.limit())
    throw OutOfRange("n = " + std::to_string(n) + " exceeds sieve limit " + std::to_string(sieve.limit()));
  Factorization out;
  auto m = static_cast<std::uint32_t>(n);
  while (m > 1) {
    const std::uint32_t p = sieve.spf(m);
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

Factorization factorize(std::uint64_t n) {
  if (n < 1) throw InvalidArgument("factorize requires n >= 1");
  Factorization out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::uint64_t expand(const Factorization& f) {
  std::uint64_t n = 1;
  for (const auto& [p, e] : f)
    for (int i = 0; i < e; ++i) n *= p;
  return n;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeStream::PrimeStream() {
  constexpr std::uint32_t kBase = 1u << 16;
  std::vector<bool> composite(kBase + 1, false);
  for (std::uint32_t i = 2; i <= kBase; ++i) {
    if (composite[i]) continue;
    base_.push_back(i);
    for (std::uint64_t j = std::uint64_t{i} * i; j <= kBase; j += i) composite[j] = true;
  }
}

void PrimeStream::refill() {
  constexpr std::uint64_t kSegment = 1u << 18;
  const std::uint64_t lo = segment_lo_;
  const std::uint64_t hi = lo + kSegment;  // exclusive
  if (hi > (std::uint64_t{1} << 32)) throw ResourceError("prime stream exhausted at 2^32");
  std::vector<bool> composite(kSegment, false);
  for (std::uint64_t p : base_) {
    if (p * p >= hi) break;
    std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
    for (std::uint64_t j = start; j < hi; j += p) composite[j - lo] = true;
  }
  buffer_.clear();
  pos_ = 0;
  for (std::uint64_t i = 0; i < kSegment; ++i)
    if (!composite[i] && lo + i >= 2) buffer_.push_back(lo + i);
  segment_lo_ = hi;
}

std::uint64_t PrimeStream::next() {
  while (pos_ >= buffer_.size()) refill();
  return buffer_[pos_++];
}

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeff = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_series(double xm1) {
  double a = kLanczosCoeff[0];
  for (std::size_t i = 1; i < kLanczosCoeff.size(); ++i) a += kLanczosCoeff[i] / (xm1 + static_cast<double>(i));
  return a;
}

}  // namespace

double real_gamma(double x) {
  if (!(x > 0.0)) throw InvalidArgument("real_gamma requires x > 0");
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * real_gamma(1.0 - x));
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  const double half_power = std::pow(t, 0.5 * (xm1 + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_power * (std::exp(-t) * half_power) * lanczos_series(xm1);
}

double log_real_gamma(double x) {
  if (!(x > 0.0)) throw InvalidArgument("log_real_gamma requires x > 0");
  if (x < 0.5) return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_real_gamma(1.0 - x);
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (xm1 + 0.5) * std::log(t) - t + std::log(lanczos_series(xm1));
}

double dk_prime_power(double k, int m) {
  if (!(k > 0.0)) throw InvalidArgument("dk_prime_power requires k > 0");
  if (m < 0) throw InvalidArgument("dk_prime_power requires m >= 0");
  if (m == 0) return 1.0;
  if (k == std::floor(k) && k < 1e6) {
    // C(k+m-1, m) by the exact multiplicative recurrence.
    const auto n = static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(m) - 1;
    u128 c = 1;
    bool overflow = false;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(m); ++i) {
      if (c > (~u128{0}) / (n - i)) {
        overflow = true;
        break;
      }
      c = c * (n - i) / (i + 1);
    }
    if (!overflow) return static_cast<double>(c);
  }
  return std::exp(log_real_gamma(k + m) - log_real_gamma(m + 1.0) - log_real_gamma(k));
}

double divisor_square_local_sum(double k, std::uint64_t p, double tol) {
  if (!(k > 0.0)) throw InvalidArgument("local sum requires k > 0");
  if (p < 2) throw InvalidArgument("local sum requires p >= 2");
  const double y = 1.0 / static_cast<double>(p);
  CompensatedSum sum;
  sum += 1.0;
  double term = 1.0;
  for (int m = 0; m < 100000; ++m) {
    const double growth = (k + m) / (m + 1.0);
    const double ratio = growth * growth * y;
    term *= ratio;
    sum += term;
    // Sup of later ratios: growth decreases for k >= 1 and increases to 1 for k < 1.
    const double next_growth = (k + m + 1.0) / (m + 2.0);
    const double sup_ratio = k >= 1.0 ? next_growth * next_growth * y : y;
    if (sup_ratio < 1.0) {
      const double tail = term * next_growth * next_growth * y / (1.0 - sup_ratio);
      if (tail <= tol * sum.value()) return sum.value();
    }
  }
  throw InternalError("local divisor sum did not converge");
}

namespace {

// Upper bound for sum_{p > P} p^{-2}; checked numerically in the tests.
double prime_square_tail(std::uint64_t P) {
  const double x = static_cast<double>(P);
  return 1.25 / (x * std::log(x));
}

// log(1 + T) for the a(k) local sum, T = sum_{m>=1} d_k(p^m)^2 p^{-m}, plus a
// bound on the truncation error of T relative to 1 + T.
struct LocalLog {
  double value;
  double error;
};

LocalLog a_local_log(double k, std::uint64_t p) {
  const double y = 1.0 / static_cast<double>(p);
  CompensatedSum tsum;
  double term = 1.0;
  double err = 0.0;
  for (int m = 0;; ++m) {
    const double growth = (k + m) / (m + 1.0);
    term *= growth * growth * y;
    tsum += term;
    const double next_growth = (k + m + 1.0) / (m + 2.0);
    const double sup_ratio = k >= 1.0 ? next_growth * next_growth * y : y;
    if (sup_ratio < 0.75) {
      const double tail = term * next_growth * next_growth * y / (1.0 - sup_ratio);
      if (tail <= 1e-18 * (1.0 + tsum.value())) {
        err = tail / (1.0 + tsum.value());
        break;
      }
    }
    if (m > 100000) throw InternalError("a(k) local factor did not converge");
  }
  return {k * k * std::log1p(-y) + std::log1p(tsum.value()), err};
}

template <class LocalFn>
EulerProductResult euler_product(LocalFn&& local, double c2, double eps) {
  constexpr std::uint64_t kMinPrime = 1000;
  PrimeStream primes;
  CompensatedSum acc;
  double inner_err = 0.0;
  std::uint64_t count = 0;
  for (;;) {
    const std::uint64_t p = primes.next();
    const LocalLog l = local(p);
    acc += l.value;
    inner_err += l.error;
    if (p < kMinPrime || (++count & 63) != 0) continue;
    const double pp = static_cast<double>(p) * static_cast<double>(p);
    const double coeff = 1.25 * std::max(std::abs(c2), std::abs(l.value) * pp);
    const double tail = coeff * prime_square_tail(p) + inner_err;
    if (tail <= eps) return {std::exp(acc.value()), p, tail};
  }
}

double binomial_double(int n, int r) {
  double c = 1.0;
  for (int i = 0; i < r; ++i) c = c * (n - i) / (i + 1);
  return c;
}

LocalLog b_local_log(int k, std::uint64_t p) {
  const double y = 1.0 / static_cast<double>(p);
  double t = 0.0;
  double yi = 1.0;
  for (int i = 1; i <= k; ++i) {
    yi *= y;
    t += binomial_double(2 * k, 2 * i) * yi;
  }
  return {k * (2.0 * k - 1.0) * std::log1p(-y) + std::log1p(t), 0.0};
}

double b_c2(int k) {
  const double a = k * (2.0 * k - 1.0);
  return binomial_double(2 * k, 4) - 0.5 * a * a - 0.5 * a;
}

}  // namespace

EulerProductResult a_constant(double k, double eps) {
  if (!(k > 0.0)) throw InvalidArgument("a(k) requires k > 0");
  if (!(eps > 0.0)) throw InvalidArgument("a(k) requires eps > 0");
  // log of the local factor is -k^2 (k-1)^2 / (4 p^2) + O(p^-3).
  const double c2 = -k * k * (k - 1.0) * (k - 1.0) / 4.0;
  return euler_product([k](std::uint64_t p) { return a_local_log(k, p); }, c2, eps);
}

EulerProductResult b_constant(int k, double eps) {
  if (k < 1) throw InvalidArgument("b(k) requires k >= 1");
  if (!(eps > 0.0)) throw InvalidArgument("b(k) requires eps > 0");
  return euler_product([k](std::uint64_t p) { return b_local_log(k, p); }, b_c2(k), eps);
}

EulerProductResult b_constant_partial(int k, std::uint64_t max_prime) {
  if (k < 1) throw InvalidArgument("b(k) requires k >= 1");
  PrimeStream primes;
  CompensatedSum acc;
  std::uint64_t last = 2;
  for (std::uint64_t p = primes.next(); p <= max_prime; p = primes.next()) {
    acc += b_local_log(k, p).value;
    last = p;
  }
  return {std::exp(acc.value()), last, 1.25 * std::abs(b_c2(k)) * prime_square_tail(last)};
}

double char_local_factor(int k, const Factorization& q) {
  if (k < 1) throw InvalidArgument("char_local_factor requires k >= 1");
  double out = 1.0;
  for (const auto& [p, e] : q) {
    if (e < 1) throw InvalidArgument("factorization exponents must be >= 1");
    out /= divisor_square_local_sum(static_cast<double>(k), p, 1e-13);
  }
  return out;
}

}  // namespace randmult
