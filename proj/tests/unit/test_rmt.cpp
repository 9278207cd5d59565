#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <functional>

#include "randmult/errors.hpp"
#include "randmult/rmt.hpp"

using namespace randmult;
using cd = std::complex<double>;

namespace {

// E|Lambda_L|^{2k} coefficients by enumerating k x k matrices with line sums <= L.
std::vector<std::uint64_t> brute_unitary(int k, int L) {
  std::vector<std::uint64_t> out(k * L + 1, 0);
  std::vector<int> x(k * k, 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == k * k) {
      int total = 0;
      for (int i = 0; i < k; ++i) {
        int r = 0, c = 0;
        for (int j = 0; j < k; ++j) {
          r += x[i * k + j];
          c += x[j * k + i];
        }
        if (r > L || c > L) return;
        total += r;
      }
      ++out[total];
      return;
    }
    for (int v = 0; v <= L; ++v) {
      x[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
  return out;
}

// Coefficients of det(I - zM) = prod (1 - z lambda), written against (-z)^n.
std::vector<cd> coefficients_from_eigenvalues(const std::vector<cd>& m, int N) {
  Eigen::Map<const Eigen::MatrixXcd> mat(m.data(), N, N);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(mat);
  std::vector<cd> poly{1.0};
  for (int i = 0; i < N; ++i) {
    const cd lambda = es.eigenvalues()[i];
    std::vector<cd> next(poly.size() + 1, 0.0);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j] += poly[j];
      next[j + 1] += poly[j] * lambda;
    }
    poly = next;
  }
  return poly;
}

}  // namespace

TEST_CASE("exact unitary moments") {
  for (int L = 0; L <= 60; ++L) {
    const auto m = unitary_truncated_moment_exact(1, L, 1.3);
    REQUIRE(m.coefficients.size() == static_cast<std::size_t>(L + 1));
    for (const auto& c : m.coefficients) CHECK(c == 1);
  }
  const auto k2 = unitary_truncated_moment_exact(2, 1, 2.0);
  CHECK(k2.coefficients == std::vector<BigInt>{1, 4, 2});
  CHECK(k2.value == doctest::Approx(1 + 4 * 4.0 + 2 * 16.0));
  for (int k = 2; k <= 3; ++k)
    for (int L = 1; L <= (k == 2 ? 5 : 2); ++L) {
      const auto m = unitary_truncated_moment_exact(k, L, 1.5);
      const auto oracle = brute_unitary(k, L);
      for (std::size_t s = 0; s < oracle.size(); ++s) CHECK(m.coefficients[s] == oracle[s]);
    }
  CHECK_THROWS_AS(unitary_truncated_moment_exact(4, 50, 1.5), ResourceError);
}

TEST_CASE("exact SO moments") {
  for (int L = 0; L <= 30; ++L) {
    const auto m = so_truncated_moment_exact(1, L, 1.2);
    REQUIRE(m.coefficients.size() == static_cast<std::size_t>(L + 1));
    for (const auto& c : m.coefficients) CHECK(c == 1);
  }
  // Matchings of K4 by size: 1, 6, 3.
  CHECK(so_truncated_moment_exact(2, 1, 2.0).coefficients == std::vector<BigInt>{1, 6, 3});
}

TEST_CASE("secular coefficients agree with the eigenvalue product") {
  SplitMix64 rng(11);
  for (int N : {1, 2, 5, 12, 24}) {
    const auto u = haar_unitary(N, rng);
    const auto c = secular_coefficients(u, N);
    const auto oracle = coefficients_from_eigenvalues(u, N);
    for (int n = 0; n <= N; ++n) CHECK(std::abs(c[n] - oracle[n]) < 1e-9);
    CHECK(std::abs(std::abs(c[N]) - 1.0) < 1e-9);
  }
}

TEST_CASE("Haar samples are unitary") {
  SplitMix64 rng(3);
  const int N = 16;
  const auto u = haar_unitary(N, rng);
  Eigen::Map<const Eigen::MatrixXcd> m(u.data(), N, N);
  CHECK((m.adjoint() * m - Eigen::MatrixXcd::Identity(N, N)).norm() < 1e-12);
  CHECK_FALSE(haar_unitary_secular(N, rng).flagged);
}

TEST_CASE("hypergeometric factor and the residue identity") {
  for (double z : {1.1, 2.0, 5.0}) {
    CHECK(hyper_Fk(1, z) == 1.0);
    const double w = 1.0 - 1.0 / (z * z);
    CHECK(hyper_Fk(2, z) == doctest::Approx(1.0 - w / 2.0));
    // 2F1(-2,-2;-4;w) = 1 - w + w^2/6
    CHECK(hyper_Fk(3, z) == doctest::Approx(1.0 - w + w * w / 6.0));
    for (int k = 1; k <= 6; ++k) {
      const auto v = I1_two_ways(k, z);
      CHECK(v.residue == doctest::Approx(v.closed_form).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(hyper_Fk(2, 0.9), InvalidArgument);
}

TEST_CASE("Monte Carlo moments match exact values") {
  const auto est = mc_truncated_moment(1, 3, 1.5, 4, 4000, 5);
  CHECK(est.within(unitary_truncated_moment_exact(1, 3, 1.5).value, 4.0));
  const auto c1 = mc_secular_mixed_moment({1}, {1}, 6, 4000, 9);
  CHECK(c1.real.within(1.0, 4.0));
  CHECK(c1.imag.within(0.0, 4.0));
  const auto again = mc_truncated_moment(1, 3, 1.5, 4, 500, 5);
  const auto same = mc_truncated_moment(1, 3, 1.5, 4, 500, 5);
  CHECK(again.mean == same.mean);
  CHECK_THROWS_AS(mc_truncated_moment(2, 5, 1.5, 4, 100, 1), InvalidArgument);
}

TEST_CASE("asymptotic right-hand sides") {
  // k = 1 is exact up to the truncated geometric tail.
  const double z = std::exp(0.5);
  for (int L : {10, 20, 40}) {
    const double ratio = unitary_truncated_moment_exact(1, L, z).value / unitary_asymptotic_rhs(1, L, z);
    CHECK(ratio == doctest::Approx(1.0).epsilon(std::max(2.0 * std::pow(z, -2.0 * L), 1e-14)));
  }
  double prev = 10.0;
  for (int L : {10, 20, 40}) {
    const double gap = std::abs(unitary_truncated_moment_exact(2, L, z).value / unitary_asymptotic_rhs(2, L, z) - 1.0);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(so_asymptotic_rhs(1, 5, 2.0) > 0.0);
}
