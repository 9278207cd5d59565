#include <doctest.h>

#include <cmath>
#include <numbers>

#include "randmult/arith.hpp"
#include "randmult/errors.hpp"

using namespace randmult;

namespace {

Factorization trial_division(std::uint64_t n) {
  Factorization f;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) f.push_back({p, e});
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

bool naive_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

double pascal(int n, int r) {
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(n + 1, 0.0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1.0;
    for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c[n][r];
}

}  // namespace

TEST_CASE("sieve factorization matches trial division") {
  const FactorSieve sieve(20000);
  for (std::uint64_t n = 1; n <= 20000; ++n) {
    REQUIRE(factorize(n, sieve) == trial_division(n));
    CHECK(expand(factorize(n, sieve)) == n);
    CHECK(sieve.is_prime(static_cast<std::uint32_t>(n)) == naive_prime(n));
  }
  CHECK(factorize(600851475143ULL) == trial_division(600851475143ULL));
  CHECK(factorize(1).empty());
}

TEST_CASE("is_prime on large inputs") {
  CHECK(is_prime(1000000007ULL));
  CHECK(is_prime(2305843009213693951ULL));
  CHECK_FALSE(is_prime(1000000007ULL * 3));
  for (std::uint64_t n = 0; n < 3000; ++n) CHECK(is_prime(n) == naive_prime(n));
}

TEST_CASE("prime stream agrees with the sieve") {
  const FactorSieve sieve(200000);
  PrimeStream stream;
  for (std::uint32_t p : sieve.primes()) REQUIRE(stream.next() == p);
  const auto next = stream.next();
  CHECK(next > 200000);
  CHECK(naive_prime(next));
}

TEST_CASE("divisor function at prime powers") {
  for (int k = 1; k <= 6; ++k)
    for (int m = 0; m <= 10; ++m) CHECK(dk_prime_power(k, m) == doctest::Approx(pascal(k + m - 1, m)).epsilon(1e-12));
  // d_{1/2}(p^m) = (1/2)(3/2)...(m - 1/2) / m!
  double expected = 1.0;
  for (int m = 0; m <= 12; ++m) {
    CHECK(dk_prime_power(0.5, m) == doctest::Approx(expected).epsilon(1e-12));
    expected *= (m + 0.5) / (m + 1.0);
  }
}

TEST_CASE("gamma function") {
  CHECK(real_gamma(5.0) == doctest::Approx(24.0).epsilon(1e-13));
  CHECK(real_gamma(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
  for (double x = 0.1; x < 20.0; x += 0.37) {
    CHECK(real_gamma(x + 1.0) == doctest::Approx(x * real_gamma(x)).epsilon(1e-12));
    CHECK(log_real_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-12));
  }
}

TEST_CASE("Euler-product constants") {
  const double six_over_pi2 = 6.0 / (std::numbers::pi * std::numbers::pi);
  CHECK(std::abs(a_constant(1.0, 1e-12).value - 1.0) < 1e-10);
  CHECK(std::abs(a_constant(2.0, 1e-10).value - six_over_pi2) < 1e-8);
  CHECK(std::abs(b_constant(1, 1e-10).value - six_over_pi2) < 1e-8);

  SUBCASE("b(2) against a long partial product") {
    const auto full = b_constant(2, 1e-8);
    const auto partial = b_constant_partial(2, 10'000'000);
    CHECK(partial.truncation_prime < 10'000'000);
    CHECK(std::abs(std::log(full.value / partial.value)) <= full.tail_bound + partial.tail_bound);
  }

  SUBCASE("tail bound shrinks with the tolerance") {
    const auto coarse = a_constant(0.5, 1e-4);
    const auto fine = a_constant(0.5, 1e-8);
    CHECK(fine.tail_bound <= 1e-8);
    CHECK(coarse.tail_bound <= 1e-4);
    CHECK(fine.truncation_prime >= coarse.truncation_prime);
    CHECK(std::abs(std::log(coarse.value / fine.value)) <= coarse.tail_bound + fine.tail_bound);
  }

  CHECK_THROWS_AS(a_constant(-1.0, 1e-8), InvalidArgument);
}

TEST_CASE("local factors") {
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 101ULL}) {
    const double pd = static_cast<double>(p);
    CHECK(divisor_square_local_sum(1.0, p) == doctest::Approx(1.0 / (1.0 - 1.0 / pd)));
    // sum (m+1)^2 p^-m = (1 + 1/p) / (1 - 1/p)^3
    CHECK(divisor_square_local_sum(2.0, p) == doctest::Approx((1.0 + 1.0 / pd) / std::pow(1.0 - 1.0 / pd, 3)));
    CHECK(char_local_factor(1, factorize(p)) == doctest::Approx(1.0 - 1.0 / pd));
  }
  CHECK(char_local_factor(2, factorize(1)) == 1.0);
  CHECK(char_local_factor(2, factorize(2)) == doctest::Approx(1.0 / 12.0));
  CHECK(char_local_factor(1, factorize(6)) == doctest::Approx(0.5 * 2.0 / 3.0));
}
