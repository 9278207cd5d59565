#pragma once

// Moments of truncated characteristic polynomials over U(N) and SO(2N): exact
// lattice sums, Haar Monte Carlo, the hypergeometric factor F_k, the residue
// identity for the leading integral, and the asymptotic right-hand sides.

#include <complex>
#include <cstdint>
#include <vector>

#include "randmult/bigint.hpp"
#include "randmult/estimate.hpp"
#include "randmult/rng.hpp"

namespace randmult {

enum class MatrixGroup { Unitary, SpecialOrthogonal };

struct TruncatedMoment {
  // coefficients[s] multiplies w^s, w = |z|^2.
  std::vector<BigInt> coefficients;
  double value = 0.0;
};

// E|Lambda_L(z)|^{2k} over U(N), N >= kL: sum over k x k nonnegative integer
// matrices with all row and column sums <= L of |z|^{2 (sum of entries)}.
TruncatedMoment unitary_truncated_moment_exact(int k, int L, double z_abs);

// E Lambda_L(z)^{2k} over SO(2N): sum over x_ij >= 0, i < j <= 2k, with every
// vertex sum <= L, of z^{2 (sum of entries)}.
TruncatedMoment so_truncated_moment_exact(int k, int L, double z_abs);

double evaluate_polynomial(const std::vector<BigInt>& coefficients, double w);

// 2F1(1-k, 1-k; 2-2k; 1-|z|^{-2}) as a terminating sum; F_1 = 1.
double hyper_Fk(int k, double z_abs);

struct I1Values {
  double residue;
  double closed_form;
};
I1Values I1_two_ways(int k, double z_abs);

struct SecularSample {
  int N = 0;
  // c[n]: coefficient of (-z)^n in det(I - zM).
  std::vector<std::complex<double>> c;
  // | |c[N]| - 1 | exceeded 1e-6.
  bool flagged = false;
};

// Haar unitary from the QR factorization of a complex Ginibre matrix with the
// diagonal of R rotated to the positive reals.
std::vector<std::complex<double>> haar_unitary(int N, SplitMix64& rng);
SecularSample haar_unitary_secular(int N, SplitMix64& rng);

// Secular coefficients from a matrix via power traces and Newton's identities.
std::vector<std::complex<double>> secular_coefficients(const std::vector<std::complex<double>>& matrix, int N);

MomentEstimate mc_truncated_moment(int k, int L, double z_abs, int N, std::uint64_t samples, std::uint64_t seed);

// E[prod_j c(j)^{a_j} conj(c(j))^{b_j}] with a = mu, b = mu_tilde in
// multiplicity notation (a[j-1] = number of parts equal to j).
struct MixedMomentEstimate {
  MomentEstimate real;
  MomentEstimate imag;
};
MixedMomentEstimate mc_secular_mixed_moment(const std::vector<int>& a, const std::vector<int>& b, int N,
                                            std::uint64_t samples, std::uint64_t seed);

// Leading-order predictions at L = log x; beta(k) and gamma(k) are exact
// polytope volumes.
double unitary_asymptotic_rhs(int k, int L, double z_abs);
double so_asymptotic_rhs(int k, int L, double z_abs);

}  // namespace randmult
