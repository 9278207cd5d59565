#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "randmult/errors.hpp"
#include "randmult/exact_count.hpp"

using namespace randmult;

namespace {

// sum over 2k-tuples with n_1...n_k = n_{k+1}...n_{2k} of (n_1...n_k)^{-2 sigma}
double brute_energy(int k, std::uint64_t x, double sigma, std::uint64_t q = 1) {
  std::map<std::uint64_t, std::uint64_t> r;
  std::vector<std::uint64_t> t(k, 1);
  while (true) {
    std::uint64_t prod = 1;
    bool ok = true;
    for (auto v : t) {
      prod *= v;
      ok = ok && std::gcd(v, q) == 1;
    }
    if (ok) ++r[prod];
    int i = 0;
    while (i < k && t[i] == x) t[i++] = 1;
    if (i == k) break;
    ++t[i];
  }
  double total = 0.0;
  for (auto [n, c] : r) total += static_cast<double>(c) * c * std::pow(static_cast<double>(n), -2.0 * sigma);
  return total;
}

bool squarefree(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

bool perfect_square(std::uint64_t n) {
  const auto r = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  return r * r == n;
}

std::uint64_t brute_rademacher(int k, std::uint64_t x) {
  std::vector<std::uint64_t> sf;
  for (std::uint64_t n = 1; n <= x; ++n)
    if (squarefree(n)) sf.push_back(n);
  std::uint64_t count = 0;
  std::vector<std::size_t> idx(2 * k, 0);
  while (true) {
    std::uint64_t prod = 1;
    for (auto i : idx) prod *= sf[i];
    count += perfect_square(prod);
    std::size_t i = 0;
    while (i < idx.size() && idx[i] == sf.size() - 1) idx[i++] = 0;
    if (i == idx.size()) break;
    ++idx[i];
  }
  return count;
}

// Characters of (Z/q)^* built from a brute-force generator and discrete log.
double brute_char_average(int k, std::uint64_t q, std::uint64_t x) {
  std::uint64_t g = 2;
  for (;; ++g) {
    std::uint64_t v = 1, order = 0;
    do {
      v = v * g % q;
      ++order;
    } while (v != 1);
    if (order == q - 1) break;
  }
  std::vector<std::uint64_t> ind(q, 0);
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < q - 1; ++i) {
    ind[v] = i;
    v = v * g % q;
  }
  double total = 0.0;
  for (std::uint64_t j = 0; j < q - 1; ++j) {
    std::complex<double> s = 0.0;
    for (std::uint64_t n = 1; n <= x; ++n) {
      if (n % q == 0) continue;
      const double a = 2.0 * std::numbers::pi * static_cast<double>(j * ind[n % q] % (q - 1)) / (q - 1);
      s += std::polar(1.0, a);
    }
    total += std::pow(std::norm(s), k);
  }
  return total / static_cast<double>(q - 1);
}

}  // namespace

TEST_CASE("Steinhaus energy examples") {
  CHECK(steinhaus_energy(2, 2, 0.0).exact == 6);
  CHECK(steinhaus_energy(2, 3, 0.0).exact == 15);
  CHECK(steinhaus_energy(2, 2, 0.0).tuple_space_size == 16);
  for (std::uint64_t x = 1; x <= 300; ++x) CHECK(steinhaus_energy(1, x, 0.0).exact == x);
}

TEST_CASE("Steinhaus energy against enumeration") {
  for (int k = 1; k <= 3; ++k)
    for (std::uint64_t x = 1; x <= 7; ++x)
      for (double sigma : {0.0, 0.2, 0.5}) {
        const auto e = steinhaus_energy(k, x, sigma);
        const double oracle = brute_energy(k, x, sigma);
        CHECK(e.value == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(steinhaus_energy_brute(k, x, sigma) == doctest::Approx(oracle).epsilon(1e-12));
        if (sigma == 0.0) CHECK(e.exact == static_cast<std::uint64_t>(oracle));
      }
}

TEST_CASE("energy is nonincreasing in sigma") {
  double prev = steinhaus_energy(2, 50, 0.0).value;
  for (double sigma = 0.05; sigma <= 0.5; sigma += 0.05) {
    const double v = steinhaus_energy(2, 50, sigma).value;
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("product multiplicities") {
  const std::uint64_t x = 60;
  const auto r = product_multiplicity_map(2, x);
  std::uint64_t total = 0;
  for (auto [n, c] : r) {
    std::uint64_t oracle = 0;
    for (std::uint64_t d = 1; d <= x; ++d)
      if (n % d == 0 && n / d <= x) ++oracle;
    CHECK(c == oracle);
    total += c;
  }
  CHECK(total == x * x);
}

TEST_CASE("coprime energy") {
  for (std::uint64_t q : {1ULL, 2ULL, 6ULL, 7ULL})
    for (std::uint64_t x : {3ULL, 8ULL}) CHECK(coprime_energy(2, x, q) == static_cast<std::uint64_t>(brute_energy(2, x, 0.0, q)));
}

TEST_CASE("Rademacher moments") {
  CHECK(rademacher_moment_sign_enum(2, 3) == 21);
  CHECK(rademacher_moment_tuple_count(2, 3) == 21);
  for (std::uint64_t x = 1; x <= 12; ++x) {
    const auto oracle = brute_rademacher(2, x);
    CHECK(rademacher_moment_sign_enum(2, x) == oracle);
    CHECK(rademacher_moment_tuple_count(2, x) == oracle);
  }
  // Second moment counts squarefree n <= x.
  std::uint64_t sf = 0;
  for (std::uint64_t x = 1; x <= 80; ++x) {
    sf += squarefree(x);
    CHECK(rademacher_moment_sign_enum(1, x) == sf);
    CHECK(rademacher_moment_tuple_count(1, x) == sf);
  }
  CHECK_THROWS_AS(rademacher_moment_sign_enum(2, 200), ResourceError);
}

TEST_CASE("character averages") {
  CHECK(primitive_root(5) == 2);
  CHECK(primitive_root(7) == 3);
  CHECK(primitive_root(23) == 5);
  for (std::uint64_t q : {5ULL, 7ULL, 11ULL, 13ULL})
    for (int k : {1, 2})
      for (std::uint64_t x : {2ULL, 3ULL, 4ULL, 9ULL}) {
        const auto c = char_moment_average(k, q, x);
        CHECK(c.avg_all == doctest::Approx(brute_char_average(k, q, x)).epsilon(1e-9));
        CHECK(std::abs(c.avg_all - to_double(c.congruence_count)) <= c.avg_all_error + 1e-6);
        CHECK(c.congruence_count == congruence_count(k, q, x));
        // principal character contributes (number of n <= x coprime to q)^{2k}
        std::uint64_t coprime = 0;
        for (std::uint64_t n = 1; n <= x; ++n) coprime += n % q != 0;
        const Rational principal = pow(BigInt(coprime), 2 * k);
        CHECK(c.nonprincipal_over_phi == (Rational(c.congruence_count) * (q - 1) - principal) / (q - 1));
        CHECK(c.avg_nonprincipal == (Rational(c.congruence_count) * (q - 1) - principal) / (q - 2));
      }
  CHECK_THROWS_AS(char_moment_average(2, 15, 3), Unsupported);
  CHECK_THROWS_AS(primitive_root(12), Unsupported);
}

TEST_CASE("congruence count reduces to the coprime equation count") {
  // With x^k <= q, congruent products are equal products.
  for (std::uint64_t q : {11ULL, 101ULL})
    for (int k : {1, 2})
      for (std::uint64_t x = 1; std::pow(static_cast<double>(x), k) <= static_cast<double>(q); ++x)
        CHECK(congruence_count(k, q, x) == coprime_energy(k, x, q));
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(steinhaus_energy(0, 5, 0.0), InvalidArgument);
  CHECK_THROWS_AS(steinhaus_energy(2, 5, 0.7), InvalidArgument);
  CHECK_THROWS_AS(steinhaus_energy(4, 1000, 0.0), ResourceError);
}
