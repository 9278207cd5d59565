#pragma once

// Exact moments as finite counts: the sigma-weighted multiplicative energy of
// the Steinhaus sum, Rademacher square-product counts, and moments of
// Dirichlet character sums to a prime modulus.

#include <cstdint>
#include <map>
#include <vector>

#include "randmult/bigint.hpp"

namespace randmult {

// r_k(n; x) = #{(n_1..n_k) : n_j <= x, n_1 ... n_k = n}.
using MultiplicityMap = std::map<std::uint64_t, std::uint64_t>;

// Refuses floor(x)^k above this many products.
inline constexpr std::uint64_t kMaxProductSpace = 1ULL << 33;

MultiplicityMap product_multiplicity_map(int k, std::uint64_t x);

struct EnergyResult {
  int k = 0;
  std::uint64_t x = 0;
  double sigma = 0.0;
  BigInt exact;        // sum_n r_k(n; x)^2, filled when sigma == 0
  double value = 0.0;  // sum_n n^{-2 sigma} r_k(n; x)^2
  BigInt tuple_space_size;  // floor(x)^{2k}
};

// E|sum_{n <= x} X_n n^{-sigma}|^{2k}. Fractional x is floored by the caller.
EnergyResult steinhaus_energy(int k, std::uint64_t x, double sigma);

// Same count restricted to n_j coprime to q.
BigInt coprime_energy(int k, std::uint64_t x, std::uint64_t q);

// Direct 2k-fold enumeration, for cross-checking small cases.
double steinhaus_energy_brute(int k, std::uint64_t x, double sigma);

// E[(sum_{n <= x} Y_n)^{2k}] by averaging over all sign vectors on primes <= x.
BigInt rademacher_moment_sign_enum(int k, std::uint64_t x);

// Number of 2k-tuples of squarefree n_j <= x with square product.
BigInt rademacher_moment_tuple_count(int k, std::uint64_t x);

struct CharAverageResult {
  int k = 0;
  std::uint64_t q = 0;
  std::uint64_t x = 0;
  // phi(q)^{-1} sum over all characters of |sum_{n <= x} chi(n)|^{2k}.
  double avg_all = 0.0;
  // Worst-case rounding bound on avg_all.
  double avg_all_error = 0.0;
  // (phi(q) avg_all - |sum chi_0|^{2k}) / (phi(q) - 1): mean over the
  // nonprincipal characters.
  Rational avg_nonprincipal;
  // Sum over nonprincipal characters divided by phi(q).
  Rational nonprincipal_over_phi;
  // Exact value of avg_all by orthogonality.
  BigInt congruence_count;
};

CharAverageResult char_moment_average(int k, std::uint64_t q, std::uint64_t x);

// #{(m_1..m_2k) : m_i <= x, (m_i, q) = 1, m_1..m_k == m_{k+1}..m_2k mod q}.
BigInt congruence_count(int k, std::uint64_t q, std::uint64_t x);

std::uint64_t primitive_root(std::uint64_t q);

}  // namespace randmult
