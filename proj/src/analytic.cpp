#include "randmult/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <utility>

#include "randmult/errors.hpp"
#include "randmult/polytope.hpp"

namespace randmult {

namespace {

constexpr double kConstantEps = 1e-8;

double cached_a(double k) {
  static std::mutex mutex;
  static std::map<double, double> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, a_constant(k, kConstantEps).value).first;
  return it->second;
}

double cached_b(int k) {
  static std::mutex mutex;
  static std::map<int, double> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, b_constant(k, kConstantEps).value).first;
  return it->second;
}

double gamma_ratio(int k) {
  const double g = real_gamma(k);
  return real_gamma(2.0 * k - 1.0) / (g * g);
}

}  // namespace

double AsymptoticTerm::operator()(double x) const {
  require(x > 1.0, "asymptotic terms are evaluated at x > 1");
  double v = constant * std::pow(x, x_exponent);
  if (log_exponent != 0.0) v *= std::pow(std::log(x), log_exponent);
  return v;
}

AsymptoticTerm steinhaus_asymptotic_rhs(int k, double sigma) {
  require(k >= 1 && k <= 4, "k must lie in [1, 4]");
  require(sigma >= 0.0 && sigma <= 0.5, "sigma must lie in [0, 1/2]");
  if (sigma == 0.5) return {cached_a(k) * to_double(alpha_constant(k)), 0.0, static_cast<double>(k * k)};
  const double constant =
      cached_a(k) * to_double(beta_constant(k)) * gamma_ratio(k) / std::pow(1.0 - 2.0 * sigma, 2 * k - 1);
  return {constant, k * (1.0 - 2.0 * sigma), static_cast<double>((k - 1) * (k - 1))};
}

AsymptoticTerm rademacher_asymptotic_rhs(int k) {
  require(k >= 2, "the Rademacher asymptotic needs k >= 2");
  require(k <= 3, "gamma(k) is available for k in {2, 3}");
  const double constant = to_double(gamma_constant(k)) * cached_b(k) * std::ldexp(1.0, 2 * k);
  return {constant, static_cast<double>(k), static_cast<double>(2 * k * k - 3 * k)};
}

AsymptoticTerm char_asymptotic_rhs(int k, const Factorization& q) {
  AsymptoticTerm t = steinhaus_asymptotic_rhs(k, 0.0);
  t.constant *= char_local_factor(k, q);
  return t;
}

double comparison_constant(int k, double sigma) {
  require(k >= 1, "k must be >= 1");
  require(sigma >= 0.0 && sigma <= 0.5, "sigma must lie in [0, 1/2]");
  if (sigma == 0.5) return 1.0;
  const double ratio = -std::expm1(2.0 * sigma - 1.0) / (1.0 - 2.0 * sigma);
  return std::pow(ratio, 2 * k - 1) / hyper_Fk_real(k, std::exp(0.5 - sigma));
}

double hyper_2F1_series(double a, double b, double c, double w, double eps) {
  require(std::abs(w) < 1.0, "2F1 series needs |w| < 1");
  require(eps > 0.0, "eps must be positive");
  double term = 1.0, sum = 1.0;
  for (int m = 0; m < 1'000'000; ++m) {
    if (a + m == 0.0 || b + m == 0.0) return sum;  // terminated
    if (c + m == 0.0) throw InvalidArgument("2F1 series hits a pole at c = " + std::to_string(c));
    term *= (a + m) * (b + m) / ((c + m) * (m + 1.0)) * w;
    sum += term;
    // For j > m+1 > |c| the term ratio is at most R(m+1), which decreases in m.
    const double j = m + 1.0;
    if (j > std::abs(c) + 1.0) {
      const double ratio_bound = std::abs(w) * (1.0 + std::abs(a) / j) * (1.0 + std::abs(b) / j) / (1.0 - std::abs(c) / j);
      if (ratio_bound < 1.0 && std::abs(term) * ratio_bound / (1.0 - ratio_bound) < eps) return sum;
    }
  }
  throw InternalError("2F1 series did not converge");
}

double agm(double a, double b) {
  require(a > 0.0 && b > 0.0, "agm needs positive arguments");
  for (int i = 0; i < 100; ++i) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    a = an;
    b = bn;
    if (std::abs(a - b) <= 1e-15 * a) break;
  }
  return 0.5 * (a + b);
}

double hyper_Fk_real(double k, double z_abs) {
  require(k >= 0.0, "k must be nonnegative");
  require(z_abs > 1.0, "|z| must be > 1");
  return hyper_2F1_series(1.0 - k, 1.0 - k, 2.0 - 2.0 * k, 1.0 - 1.0 / (z_abs * z_abs), 1e-16);
}

double hughes_limit(double k, double z_abs) {
  require(z_abs > 1.0, "|z| must be > 1");
  return std::pow(1.0 - 1.0 / (z_abs * z_abs), -k * k);
}

ConjecturedMoment conjectured_moment(double k, double sigma, double x) {
  require(k >= 0.0 && k < 1.0, "the conjecture covers 0 <= k < 1");
  require(sigma >= 0.0 && sigma < 0.5, "the conjecture covers 0 <= sigma < 1/2");
  require(x > 1.0, "x must be > 1");
  ConjecturedMoment out;
  const double z = std::exp(0.5 - sigma);
  const double gap = -std::expm1(2.0 * sigma - 1.0);  // 1 - e^{2 sigma - 1}
  out.arithmetic_factor = k == 0.0 ? 1.0 : cached_a(k);
  out.inverse_Fk = 1.0 / hyper_Fk_real(k, z);
  out.log_factor = std::pow(gap, -(k - 1.0) * (k - 1.0));
  out.coefficient = out.arithmetic_factor * out.inverse_Fk * out.log_factor / std::pow(1.0 - 2.0 * sigma, 2.0 * k - 1.0);

  // a(k) c_sigma(k) E_{U(N)}|Lambda(z_sigma)|^{2k} with N = log x, where the
  // functional equation gives |z|^{2kN} (1 - |z|^{-2})^{-k^2} for the average.
  const double c_sigma = std::pow(gap / (1.0 - 2.0 * sigma), 2.0 * k - 1.0) * out.inverse_Fk;
  out.coefficient_via_hughes = out.arithmetic_factor * c_sigma * hughes_limit(k, z);
  out.value = out.coefficient * std::pow(x, k * (1.0 - 2.0 * sigma));
  return out;
}

double cs_objective(double u, double v) {
  // Numerator in Horner form in u; its coefficients in v are c0, -c0, c0.
  const double c0 = 1.0 + v * (-2.0 / 3.0 + v);
  const double numerator = c0 + u * (-c0 + u * c0);
  return numerator / ((1.0 - u * u) * (1.0 - v * v));
}

BoundResult cs_bound_minimize() {
  constexpr int kGrid = 1000;  // step 1e-3 over [0, 1)
  double best = std::numeric_limits<double>::infinity();
  std::array<double, 2> start{0.0, 0.0};
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) {
      const double u = i * 1e-3, v = j * 1e-3;
      const double f = cs_objective(u, v);
      if (f < best) {
        best = f;
        start = {u, v};
      }
    }

  // Nelder-Mead with a fixed schedule; points outside [0,1)^2 score +inf.
  using Point = std::array<double, 2>;
  const auto score = [](const Point& p) {
    if (p[0] < 0.0 || p[0] >= 1.0 || p[1] < 0.0 || p[1] >= 1.0) return std::numeric_limits<double>::infinity();
    return cs_objective(p[0], p[1]);
  };
  std::array<Point, 3> s{start, Point{start[0] + 1e-3, start[1]}, Point{start[0], start[1] + 1e-3}};
  std::array<double, 3> fs{score(s[0]), score(s[1]), score(s[2])};
  for (int iter = 0; iter < 10'000; ++iter) {
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    const int lo = order[0], mid = order[1], hi = order[2];
    const double size = std::max(std::abs(s[hi][0] - s[lo][0]) + std::abs(s[hi][1] - s[lo][1]),
                                 std::abs(s[mid][0] - s[lo][0]) + std::abs(s[mid][1] - s[lo][1]));
    if (size < 1e-12 && fs[hi] - fs[lo] < 1e-15) break;
    const Point centroid{0.5 * (s[lo][0] + s[mid][0]), 0.5 * (s[lo][1] + s[mid][1])};
    const auto along = [&](double t) {
      return Point{centroid[0] + t * (s[hi][0] - centroid[0]), centroid[1] + t * (s[hi][1] - centroid[1])};
    };
    const Point reflected = along(-1.0);
    const double fr = score(reflected);
    if (fr < fs[lo]) {
      const Point expanded = along(-2.0);
      const double fe = score(expanded);
      if (fe < fr) {
        s[hi] = expanded;
        fs[hi] = fe;
      } else {
        s[hi] = reflected;
        fs[hi] = fr;
      }
    } else if (fr < fs[mid]) {
      s[hi] = reflected;
      fs[hi] = fr;
    } else {
      const Point contracted = fr < fs[hi] ? along(-0.5) : along(0.5);
      const double fc = score(contracted);
      if (fc < std::min(fr, fs[hi])) {
        s[hi] = contracted;
        fs[hi] = fc;
      } else {
        for (int i : {mid, hi}) {
          s[i] = Point{0.5 * (s[i][0] + s[lo][0]), 0.5 * (s[i][1] + s[lo][1])};
          fs[i] = score(s[i]);
        }
      }
    }
  }
  int lo = 0;
  for (int i = 1; i < 3; ++i)
    if (fs[i] < fs[lo]) lo = i;

  BoundResult out;
  out.u_star = s[lo][0];
  out.v_star = s[lo][1];
  out.f_min = fs[lo];
  out.amplitude_bound = std::sqrt(out.f_min);
  return out;
}

}  // namespace randmult
