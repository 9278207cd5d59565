#pragma once

// Lattice-point counts, Ehrhart polynomials and lattice-relative volumes of the
// transportation-type polytopes behind the constants beta(k), gamma(k) and
// alpha(k).
//
// Each constant is a multiple contour integral in which every factor
// 1/(s_i + s_j) is written as a Laplace integral over a new variable x_ij >= 0.
// Integrating out the s variables turns a factor e^{c s} ds into the linear
// constraint (sum of incident x) = c and e^{c s} ds / s into (sum) <= c, so the
// constant becomes the volume of a polytope measured against the delta
// measure of its equality constraints. That measure equals the lattice-
// relative volume divided by the gcd of the maximal minors of the integer
// constraint matrix (constraint_gcd below).

#include <cstdint>
#include <string>
#include <vector>

#include "randmult/bigint.hpp"
#include "randmult/estimate.hpp"

namespace randmult {

enum class PolytopeFamily {
  Birkhoff,   // k x k, all row and column sums = t
  BetaMixed,  // (k-1) x k, row sums = t, column sums <= t
  AlphaBox,   // k x k, row and column sums <= t
  GammaSym,   // x_ij, i < j <= 2k, every vertex degree = 2t
};

struct PolytopeSpec {
  PolytopeFamily family;
  int k;

  int dimension() const;
  int variables() const;
  std::string name() const;
  // Equality constraints of the t = 1 member, one row per constraint, with
  // linearly dependent rows removed.
  std::vector<std::vector<int>> equality_matrix() const;
};

PolytopeSpec birkhoff(int k);
PolytopeSpec beta_mixed(int k);
PolytopeSpec alpha_box(int k);
PolytopeSpec gamma_sym(int k);

BigInt lattice_count(const PolytopeSpec& spec, int t);

class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coefficients);

  // Newton forward-difference interpolation through (0, v0), (1, v1), ...
  static RationalPolynomial interpolate(const std::vector<BigInt>& values);

  int degree() const;
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational leading() const;
  Rational operator()(const Rational& t) const;
  std::string to_string() const;

 private:
  std::vector<Rational> coeffs_;  // constant term first
};

RationalPolynomial ehrhart_polynomial(const PolytopeSpec& spec);
Rational relative_volume(const PolytopeSpec& spec);

// gcd of the maximal minors of equality_matrix() (1 when there are none).
BigInt constraint_gcd(const PolytopeSpec& spec);

struct BetaRoutes {
  Rational value;
  // Euclidean volume of the Birkhoff polytope divided by k^{k-1}.
  Rational birkhoff_route;
  // Contour-measure volume of the (k-1) x k mixed polytope.
  Rational direct_route;
  Rational birkhoff_relative_volume;
  Rational birkhoff_euclidean_volume;
  // Gram determinant of a basis of the integer kernel of the Birkhoff
  // constraints; its square root converts relative to Euclidean volume.
  BigInt kernel_gram_determinant;
};

BetaRoutes beta_routes(int k);
Rational beta_constant(int k);
Rational alpha_constant(int k);
Rational gamma_constant(int k);

// Hit-or-miss volume estimate; supports BetaMixed and AlphaBox.
MomentEstimate mc_volume(const PolytopeSpec& spec, std::uint64_t samples, std::uint64_t seed);

// Number of nonnegative integer matrices with the given row and column sums.
BigInt magic_count(const std::vector<int>& row_sums, const std::vector<int>& col_sums);

// Exact determinant by fraction-free elimination.
BigInt integer_determinant(std::vector<std::vector<BigInt>> m);

}  // namespace randmult
