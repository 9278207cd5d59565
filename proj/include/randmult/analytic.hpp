#pragma once

// Asymptotic right-hand sides, the comparison constant between arithmetic and
// random-matrix moments, the fractional-moment conjecture, 2F1 / agm, and the
// two-variable Cauchy-Schwarz bound.

#include <cstdint>

#include "randmult/arith.hpp"

namespace randmult {

struct AsymptoticTerm {
  double constant = 0.0;
  double x_exponent = 0.0;
  double log_exponent = 0.0;

  // constant * x^x_exponent * (log x)^log_exponent, x > 1.
  double operator()(double x) const;
};

// sigma < 1/2: a(k) beta(k) Gamma(2k-1) / (Gamma(k)^2 (1-2 sigma)^{2k-1})
// times x^{k(1-2 sigma)} (log x)^{(k-1)^2}; sigma = 1/2: a(k) alpha(k) (log x)^{k^2}.
AsymptoticTerm steinhaus_asymptotic_rhs(int k, double sigma);

// gamma(k) b(k) 2^{2k} x^k (log x)^{2k^2-3k}, k >= 2.
AsymptoticTerm rademacher_asymptotic_rhs(int k);

// Nonprincipal character average for modulus q.
AsymptoticTerm char_asymptotic_rhs(int k, const Factorization& q);

// c_sigma(k) = ((1 - e^{2 sigma - 1}) / (1 - 2 sigma))^{2k-1} / F_k(e^{1/2 - sigma}); 1 at sigma = 1/2.
double comparison_constant(int k, double sigma);

// Gauss series with a certified tail below eps.
double hyper_2F1_series(double a, double b, double c, double w, double eps = 1e-15);

double agm(double a, double b);

// F_k(z) for real k >= 0: 2F1(1-k, 1-k; 2-2k; 1-|z|^{-2}).
double hyper_Fk_real(double k, double z_abs);

struct ConjecturedMoment {
  double coefficient;            // multiplies x^{k(1-2 sigma)}
  double coefficient_via_hughes; // same constant through the |z|->1 limit formula
  double arithmetic_factor;      // a(k)
  double inverse_Fk;             // F_k(e^{1/2-sigma})^{-1}
  double log_factor;             // (1 - e^{2 sigma - 1})^{-(k-1)^2}
  double value;                  // coefficient * x^{k(1-2 sigma)}
};

// Predicted E|sum_{n <= x} X_n n^{-sigma}|^{2k} for 0 <= k < 1, 0 <= sigma < 1/2.
ConjecturedMoment conjectured_moment(double k, double sigma, double x);

// Limit of E|Lambda_N(z)|^{2k} / |z|^{2kN} over U(N) as N grows, |z| > 1:
// (1 - |z|^{-2})^{-k^2}.
double hughes_limit(double k, double z_abs);

// f(u, v) = (1 - u + u^2)(1 - 2v/3 + v^2) / ((1 - u^2)(1 - v^2)).
double cs_objective(double u, double v);

struct BoundResult {
  double u_star = 0.0;
  double v_star = 0.0;
  double f_min = 0.0;
  double amplitude_bound = 0.0;  // sqrt(f_min)
};

BoundResult cs_bound_minimize();

}  // namespace randmult
