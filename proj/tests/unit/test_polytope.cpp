#include <doctest.h>

#include <algorithm>
#include <functional>

#include "randmult/errors.hpp"
#include "randmult/polytope.hpp"
#include "randmult/rng.hpp"

using namespace randmult;

namespace {

// Nonnegative integer r x c matrices with the given row and column sums.
std::uint64_t brute_magic(const std::vector<int>& rows, const std::vector<int>& cols) {
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(cols.size());
  std::vector<int> col_left(cols);
  std::uint64_t count = 0;
  std::function<void(int, int, int)> rec = [&](int i, int j, int row_left) {
    if (i == r) {
      count += std::all_of(col_left.begin(), col_left.end(), [](int v) { return v == 0; });
      return;
    }
    if (j == c - 1) {
      if (row_left > col_left[j]) return;
      col_left[j] -= row_left;
      rec(i + 1, 0, i + 1 < r ? rows[i + 1] : 0);
      col_left[j] += row_left;
      return;
    }
    for (int v = 0; v <= std::min(row_left, col_left[j]); ++v) {
      col_left[j] -= v;
      rec(i, j + 1, row_left - v);
      col_left[j] += v;
    }
  };
  rec(0, 0, rows.empty() ? 0 : rows[0]);
  return count;
}

// Points of the (k-1) x k mixed polytope dilated by t.
std::uint64_t brute_beta_mixed(int k, int t) {
  std::uint64_t total = 0;
  std::function<void(int, std::vector<int>&)> rows = [&](int i, std::vector<int>& col) {
    if (i == k - 1) {
      ++total;
      return;
    }
    std::vector<int> row(k, 0);
    std::function<void(int, int)> fill = [&](int j, int left) {
      if (j == k - 1) {
        if (col[j] + left > t) return;
        col[j] += left;
        rows(i + 1, col);
        col[j] -= left;
        return;
      }
      for (int v = 0; v <= left && col[j] + v <= t; ++v) {
        col[j] += v;
        fill(j + 1, left - v);
        col[j] -= v;
      }
    };
    fill(0, t);
  };
  std::vector<int> col(k, 0);
  rows(0, col);
  return total;
}

}  // namespace

TEST_CASE("lattice counts of small polytopes") {
  CHECK(lattice_count(birkhoff(2), 5) == 6);
  CHECK(lattice_count(birkhoff(3), 1) == 6);
  CHECK(lattice_count(birkhoff(3), 2) == 21);
  for (int t = 0; t <= 5; ++t) {
    CHECK(lattice_count(birkhoff(3), t) == brute_magic({t, t, t}, {t, t, t}));
    CHECK(lattice_count(beta_mixed(3), t) == brute_beta_mixed(3, t));
  }
  for (int t = 0; t <= 3; ++t) CHECK(lattice_count(beta_mixed(4), t) == brute_beta_mixed(4, t));
}

TEST_CASE("magic counts") {
  CHECK(magic_count({1, 1}, {2}) == 1);
  CHECK(magic_count({2, 1}, {1, 1, 1}) == 3);
  const std::vector<std::vector<int>> parts = {{3, 1}, {2, 2}, {1, 1, 2}, {4}, {1, 1, 1, 1}, {2, 1, 1}};
  for (const auto& a : parts)
    for (const auto& b : parts) {
      CHECK(magic_count(a, b) == brute_magic(a, b));
      CHECK(magic_count(a, b) == magic_count(b, a));
    }
  CHECK_THROWS_AS(magic_count(std::vector<int>(13, 1), {13}), InvalidArgument);
}

TEST_CASE("lattice counts grow with the dilation") {
  for (const auto& spec : {birkhoff(3), beta_mixed(3), alpha_box(2), alpha_box(3), gamma_sym(2)})
    for (int t = 0; t < 6; ++t) CHECK(lattice_count(spec, t) <= lattice_count(spec, t + 1));
}

TEST_CASE("Ehrhart polynomials reproduce the counts") {
  for (const auto& spec : {birkhoff(2), birkhoff(3), beta_mixed(2), beta_mixed(3), alpha_box(2), alpha_box(3),
                           gamma_sym(2)}) {
    const auto poly = ehrhart_polynomial(spec);
    CHECK(poly.degree() == spec.dimension());
    for (int t = 0; t <= spec.dimension() + 5; ++t) CHECK(poly(t) == Rational(lattice_count(spec, t)));
    CHECK(poly(0) == 1);
  }
  // Known: (t+1)(t+2)(t^2+3t+4)/8.
  const auto b3 = ehrhart_polynomial(birkhoff(3));
  CHECK(b3.leading() == Rational(1, 8));
  CHECK(relative_volume(birkhoff(3)) == Rational(1, 8));
  CHECK(relative_volume(birkhoff(2)) == 1);
}

TEST_CASE("rational polynomial interpolation") {
  std::vector<BigInt> values;
  for (int t = 0; t < 6; ++t) values.push_back(BigInt(t) * t * t - 2 * t + 7);
  const auto p = RationalPolynomial::interpolate(values);
  CHECK(p.degree() == 3);
  CHECK(p.coefficients()[0] == 7);
  CHECK(p.coefficients()[1] == -2);
  CHECK(p.coefficients()[2] == 0);
  CHECK(p.coefficients()[3] == 1);
  CHECK(p(Rational(1, 2)) == Rational(1, 8) - 1 + 7);
}

TEST_CASE("constraint gcd and integer determinants") {
  CHECK(constraint_gcd(beta_mixed(2)) == 1);
  CHECK(constraint_gcd(beta_mixed(3)) == 1);
  CHECK(constraint_gcd(gamma_sym(2)) == 2);
  CHECK(constraint_gcd(alpha_box(3)) == 1);
  CHECK(integer_determinant({{2, 0, 1}, {1, 3, 2}, {1, 1, 2}}) == 6);
  CHECK(integer_determinant({{0, 1}, {1, 0}}) == -1);
  CHECK(integer_determinant({{1, 2}, {2, 4}}) == 0);
}

TEST_CASE("polytope constants") {
  CHECK(beta_constant(1) == 1);
  for (int k = 2; k <= 4; ++k) {
    const auto r = beta_routes(k);
    CHECK(r.birkhoff_route == r.direct_route);
    CHECK(r.value == r.direct_route);
  }
  const std::vector<BigInt> gram = {1, 4, 81, 4096};
  for (int k = 1; k <= 4; ++k) CHECK(beta_routes(k).kernel_gram_determinant == gram[k - 1]);
  CHECK(alpha_constant(1) == 1);
  CHECK(gamma_constant(2) == 1);
  CHECK(gamma_constant(2) == relative_volume(gamma_sym(2)) / Rational(constraint_gcd(gamma_sym(2))));
  CHECK_THROWS_AS(ehrhart_polynomial(alpha_box(5)), ResourceError);
}

TEST_CASE("Monte Carlo volume agrees with the exact volume") {
  for (const auto& spec : {beta_mixed(2), beta_mixed(3), alpha_box(2), alpha_box(3)}) {
    const auto est = mc_volume(spec, 200000, kDefaultSeed);
    const double exact = to_double(relative_volume(spec) / Rational(constraint_gcd(spec)));
    CHECK(est.within(exact, 4.0));
  }
  const auto a = mc_volume(alpha_box(3), 5000, 7);
  const auto b = mc_volume(alpha_box(3), 5000, 7);
  CHECK(a.mean == b.mean);
  CHECK_THROWS_AS(mc_volume(birkhoff(3), 5000, 1), Unsupported);
  CHECK_THROWS_AS(mc_volume(alpha_box(3), 10, 1), InvalidArgument);
}
