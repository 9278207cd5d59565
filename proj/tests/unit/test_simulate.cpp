#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "randmult/errors.hpp"
#include "randmult/exact_count.hpp"
#include "randmult/parallel.hpp"
#include "randmult/simulate.hpp"

using namespace randmult;

TEST_CASE("phases are completely multiplicative") {
  const FactorSieve sieve(2000);
  SplitMix64 rng(17);
  const PhaseSieve phases(sieve, 2000, rng);
  CHECK(phases.theta(1) == 0.0);
  for (std::uint64_t m = 1; m <= 44; ++m)
    for (std::uint64_t n = 1; m * n <= 2000; ++n) {
      const double d = std::remainder(phases.theta(m * n) - phases.theta(m) - phases.theta(n), 1.0);
      CHECK(std::abs(d) < 1e-12);
    }
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    CHECK(phases.theta(n) >= 0.0);
    CHECK(phases.theta(n) < 1.0);
  }
}

TEST_CASE("small sums") {
  // S_4 = 1 + X_2 + X_3 + X_2^2
  SplitMix64 a(5), b(5);
  const auto s = sample_steinhaus_sum(4, 0.0, a);
  const FactorSieve sieve(4);
  const PhaseSieve phases(sieve, 4, b);
  const double t2 = 2.0 * std::numbers::pi * phases.theta(2), t3 = 2.0 * std::numbers::pi * phases.theta(3);
  const std::complex<double> expected =
      1.0 + std::polar(1.0, t2) + std::polar(1.0, t3) + std::polar(1.0, 2.0 * t2);
  CHECK(std::abs(s - expected) < 1e-12);

  // Rademacher sums have the parity of the number of squarefree n <= x.
  SplitMix64 rng(9);
  for (std::uint64_t x : {1ULL, 4ULL, 10ULL, 97ULL, 1000ULL}) {
    std::uint64_t squarefree = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
      bool sf = true;
      for (std::uint64_t p = 2; p * p <= n; ++p) sf = sf && n % (p * p) != 0;
      squarefree += sf;
    }
    const long long v = sample_rademacher_sum(x, rng);
    CHECK(std::llabs(v) <= static_cast<long long>(squarefree));
    CHECK((v - static_cast<long long>(squarefree)) % 2 == 0);
  }
}

TEST_CASE("estimates are reproducible and independent of the thread count") {
  set_thread_count(1);
  const auto one = estimate_abs_moment(Model::Steinhaus, 500, 0.1, 1.0, 300, 42);
  set_thread_count(3);
  const auto three = estimate_abs_moment(Model::Steinhaus, 500, 0.1, 1.0, 300, 42);
  set_thread_count(0);
  CHECK(one.mean == three.mean);
  CHECK(one.std_error == three.std_error);
  const auto other = estimate_abs_moment(Model::Steinhaus, 500, 0.1, 1.0, 300, 43);
  CHECK(other.mean != one.mean);
}

TEST_CASE("second moments equal the number of terms") {
  for (std::uint64_t x : {100ULL, 1000ULL}) {
    const auto e = estimate_abs_moment(Model::Steinhaus, x, 0.0, 2.0, 2000, kDefaultSeed);
    CHECK(e.within(static_cast<double>(x), 3.0));
  }
  const auto r = estimate_abs_moment(Model::Rademacher, 200, 0.0, 2.0, 2000, kDefaultSeed);
  CHECK(r.within(to_double(rademacher_moment_tuple_count(1, 200)), 3.0));
}

TEST_CASE("fourth moments match exact counts") {
  const auto s = estimate_abs_moment(Model::Steinhaus, 100, 0.0, 4.0, 4000, kDefaultSeed);
  CHECK(s.within(to_double(steinhaus_energy(2, 100, 0.0).exact), 3.0));
  const auto w = estimate_abs_moment(Model::Steinhaus, 60, 0.3, 4.0, 4000, kDefaultSeed);
  CHECK(w.within(steinhaus_energy(2, 60, 0.3).value, 3.0));
}

TEST_CASE("helson table") {
  const auto rows = helson_table({100, 400}, 200, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].ratio == doctest::Approx(rows[0].first_moment.mean / 10.0));
  CHECK(rows[1].conjectured == rows[0].conjectured);
  CHECK(rows[0].upper_bound == doctest::Approx(0.9036).epsilon(1e-3));
  const auto csv = helson_table_csv(rows);
  CHECK(csv.rfind("x,mean_abs,std_error,trials,seed,ratio_to_sqrt_x,conjectured_ratio,cs_upper_bound\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(estimate_abs_moment(Model::Steinhaus, 100, 0.0, 2.0, 10, 1), InvalidArgument);
  CHECK_THROWS_AS(estimate_abs_moment(Model::Steinhaus, 20'000'000, 0.0, 2.0, 100, 1), ResourceError);
  CHECK_THROWS_AS(estimate_abs_moment(Model::Steinhaus, 100, 0.7, 2.0, 100, 1), InvalidArgument);
}
