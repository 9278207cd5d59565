#pragma once

// Prime sieving, factorization, k-fold divisor values and the Euler-product
// constants a(k), b(k) together with the character local factor.

#include <cstdint>
#include <span>
#include <vector>

namespace randmult {

// Smallest-prime-factor table for 2 <= n <= limit (4 bytes per entry).
class FactorSieve {
 public:
  static constexpr std::uint64_t kMaxLimit = 1'000'000'000ULL;

  explicit FactorSieve(std::uint64_t limit);

  std::uint32_t limit() const { return limit_; }
  std::uint32_t spf(std::uint32_t n) const;
  bool is_prime(std::uint32_t n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }
  std::span<const std::uint32_t> primes() const { return primes_; }

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

FactorSieve build_spf_sieve(std::uint64_t limit);

struct PrimePower {
  std::uint64_t prime;
  int exponent;
  bool operator==(const PrimePower&) const = default;
};

// Strictly increasing primes, exponents >= 1; empty for n = 1.
using Factorization = std::vector<PrimePower>;

Factorization factorize(std::uint64_t n, const FactorSieve& sieve);
// Trial division, for moduli that are not covered by a sieve.
Factorization factorize(std::uint64_t n);
std::uint64_t expand(const Factorization& f);

bool is_prime(std::uint64_t n);

// Increasing primes without an upper limit (segmented Eratosthenes).
class PrimeStream {
 public:
  PrimeStream();
  std::uint64_t next();

 private:
  void refill();
  std::vector<std::uint32_t> base_;
  std::vector<std::uint64_t> buffer_;
  std::size_t pos_ = 0;
  std::uint64_t segment_lo_ = 2;
};

// d_k(p^m) = Gamma(k+m) / (m! Gamma(k)); an exact binomial for integer k.
double dk_prime_power(double k, int m);

// Lanczos approximation (g = 7, n = 9). Relative error below 1e-13 for x > 0.
double real_gamma(double x);
double log_real_gamma(double x);

struct EulerProductResult {
  double value = 1.0;
  std::uint64_t truncation_prime = 0;
  // Bound on |log(value) - log(true product)|.
  double tail_bound = 0.0;
};

// a(k) = prod_p (1 - 1/p)^{k^2} sum_m d_k(p^m)^2 / p^m.
EulerProductResult a_constant(double k, double eps);

// b(k) = prod_p (1 - 1/p)^{k(2k-1)} sum_{i<=k} C(2k, 2i) / p^i.
EulerProductResult b_constant(int k, double eps);

// Same product as b_constant but stopped at a fixed prime; tail_bound
// estimates the omitted primes.
EulerProductResult b_constant_partial(int k, std::uint64_t max_prime);

// sum_m d_k(p^m)^2 / p^m, with a geometric tail bound below tol.
double divisor_square_local_sum(double k, std::uint64_t p, double tol = 1e-15);

// prod_{p | q} (sum_m d_k(p^m)^2 / p^m)^{-1}.
double char_local_factor(int k, const Factorization& q);

}  // namespace randmult
