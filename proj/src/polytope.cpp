#include "randmult/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>

#include "randmult/errors.hpp"
#include "randmult/parallel.hpp"
#include "randmult/rng.hpp"
#include "randmult/table_dp.hpp"

namespace randmult {

namespace {

constexpr int kMaxBipartiteK = 5;
constexpr int kMaxGammaK = 3;

void check_spec(const PolytopeSpec& spec) {
  require(spec.k >= 1, "polytope parameter k must be >= 1");
  if (spec.family == PolytopeFamily::GammaSym)
    require(spec.k <= kMaxGammaK, "gamma_sym supports k <= 3");
  else
    require(spec.k <= kMaxBipartiteK, "bipartite polytope families support k <= 5");
}

// Keeps a maximal linearly independent subset of rows (exact elimination).
std::vector<std::vector<int>> independent_rows(const std::vector<std::vector<int>>& rows) {
  std::vector<std::vector<int>> kept;
  std::vector<std::vector<Rational>> echelon;
  std::vector<std::size_t> pivots;
  for (const auto& row : rows) {
    std::vector<Rational> r(row.begin(), row.end());
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      const Rational f = r[pivots[e]] / echelon[e][pivots[e]];
      if (f == 0) continue;
      for (std::size_t c = 0; c < r.size(); ++c) r[c] -= f * echelon[e][c];
    }
    auto it = std::find_if(r.begin(), r.end(), [](const Rational& v) { return v != 0; });
    if (it == r.end()) continue;
    pivots.push_back(static_cast<std::size_t>(it - r.begin()));
    echelon.push_back(std::move(r));
    kept.push_back(row);
  }
  return kept;
}

struct EhrhartCache {
  std::mutex mutex;
  std::map<std::pair<int, int>, RationalPolynomial> polys;
};

EhrhartCache& ehrhart_cache() {
  static EhrhartCache cache;
  return cache;
}

}  // namespace

PolytopeSpec birkhoff(int k) { return {PolytopeFamily::Birkhoff, k}; }
PolytopeSpec beta_mixed(int k) { return {PolytopeFamily::BetaMixed, k}; }
PolytopeSpec alpha_box(int k) { return {PolytopeFamily::AlphaBox, k}; }
PolytopeSpec gamma_sym(int k) { return {PolytopeFamily::GammaSym, k}; }

int PolytopeSpec::dimension() const {
  switch (family) {
    case PolytopeFamily::Birkhoff:
    case PolytopeFamily::BetaMixed:
      return (k - 1) * (k - 1);
    case PolytopeFamily::AlphaBox:
      return k * k;
    case PolytopeFamily::GammaSym:
      return k == 1 ? 0 : 2 * k * k - 3 * k;
  }
  return 0;
}

int PolytopeSpec::variables() const {
  switch (family) {
    case PolytopeFamily::Birkhoff:
    case PolytopeFamily::AlphaBox:
      return k * k;
    case PolytopeFamily::BetaMixed:
      return (k - 1) * k;
    case PolytopeFamily::GammaSym:
      return k * (2 * k - 1);
  }
  return 0;
}

std::string PolytopeSpec::name() const {
  const std::string arg = "(" + std::to_string(k) + ")";
  switch (family) {
    case PolytopeFamily::Birkhoff:
      return "birkhoff" + arg;
    case PolytopeFamily::BetaMixed:
      return "beta_mixed" + arg;
    case PolytopeFamily::AlphaBox:
      return "alpha_box" + arg;
    case PolytopeFamily::GammaSym:
      return "gamma_sym" + arg;
  }
  return "unknown";
}

std::vector<std::vector<int>> PolytopeSpec::equality_matrix() const {
  const int n = variables();
  std::vector<std::vector<int>> rows;
  switch (family) {
    case PolytopeFamily::Birkhoff:
      for (int i = 0; i < k; ++i) {
        std::vector<int> r(n, 0);
        for (int j = 0; j < k; ++j) r[i * k + j] = 1;
        rows.push_back(r);
      }
      for (int j = 0; j < k; ++j) {
        std::vector<int> r(n, 0);
        for (int i = 0; i < k; ++i) r[i * k + j] = 1;
        rows.push_back(r);
      }
      break;
    case PolytopeFamily::BetaMixed:
      for (int i = 0; i + 1 < k; ++i) {
        std::vector<int> r(n, 0);
        for (int j = 0; j < k; ++j) r[i * k + j] = 1;
        rows.push_back(r);
      }
      break;
    case PolytopeFamily::AlphaBox:
      break;
    case PolytopeFamily::GammaSym: {
      const int v = 2 * k;
      std::vector<std::vector<int>> incidence(v, std::vector<int>(n, 0));
      int e = 0;
      for (int i = 0; i < v; ++i)
        for (int j = i + 1; j < v; ++j, ++e) incidence[i][e] = incidence[j][e] = 1;
      rows = incidence;
      break;
    }
  }
  return independent_rows(rows);
}

BigInt lattice_count(const PolytopeSpec& spec, int t) {
  check_spec(spec);
  require(t >= 0, "dilation t must be >= 0");
  const int k = spec.k;
  switch (spec.family) {
    case PolytopeFamily::Birkhoff:
      return count_tables({std::vector<int>(k, t), Bound::Equal, std::vector<int>(k, t), Bound::Equal});
    case PolytopeFamily::BetaMixed:
      return count_tables({std::vector<int>(k - 1, t), Bound::Equal, std::vector<int>(k, t), Bound::AtMost});
    case PolytopeFamily::AlphaBox:
      return count_tables({std::vector<int>(k, t), Bound::AtMost, std::vector<int>(k, t), Bound::AtMost});
    case PolytopeFamily::GammaSym: {
      BigInt total = 0;
      for (const auto& c : count_graph_by_total(2 * k, 2 * t, Bound::Equal)) total += c;
      return total;
    }
  }
  throw InternalError("unknown polytope family");
}

RationalPolynomial::RationalPolynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RationalPolynomial RationalPolynomial::interpolate(const std::vector<BigInt>& values) {
  require(!values.empty(), "interpolation needs at least one value");
  // Forward differences at 0, then sum_j diff_j * binomial(t, j).
  std::vector<BigInt> diff(values);
  std::vector<BigInt> leading_diffs;
  for (std::size_t level = 0; level < values.size(); ++level) {
    leading_diffs.push_back(diff[0]);
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
  }
  std::vector<Rational> coeffs(values.size(), Rational(0));
  std::vector<Rational> falling{Rational(1)};  // t (t-1) ... (t-j+1) / j!
  for (std::size_t j = 0; j < leading_diffs.size(); ++j) {
    for (std::size_t c = 0; c < falling.size(); ++c) coeffs[c] += Rational(leading_diffs[j]) * falling[c];
    std::vector<Rational> grown(falling.size() + 1, Rational(0));
    const Rational shift(static_cast<long long>(j));
    const Rational scale(1, static_cast<long long>(j + 1));
    for (std::size_t c = 0; c < falling.size(); ++c) {
      grown[c + 1] += falling[c] * scale;
      grown[c] -= falling[c] * shift * scale;
    }
    falling = std::move(grown);
  }
  return RationalPolynomial(std::move(coeffs));
}

int RationalPolynomial::degree() const { return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.size()) - 1; }

Rational RationalPolynomial::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational RationalPolynomial::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::string RationalPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int d = degree(); d >= 0; --d) {
    const Rational& c = coeffs_[d];
    if (c == 0) continue;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    const bool unit = (mag == 1 && d > 0);
    if (!unit) out += randmult::to_string(mag);
    if (d > 0) {
      if (!unit) out += "*";
      out += "t";
      if (d > 1) out += "^" + std::to_string(d);
    }
  }
  return out;
}

RationalPolynomial ehrhart_polynomial(const PolytopeSpec& spec) {
  check_spec(spec);
  if (spec.family == PolytopeFamily::AlphaBox && spec.k > 4)
    throw ResourceError("Ehrhart interpolation of alpha_box is limited to k <= 4");
  const auto key = std::make_pair(static_cast<int>(spec.family), spec.k);
  {
    std::lock_guard lock(ehrhart_cache().mutex);
    auto it = ehrhart_cache().polys.find(key);
    if (it != ehrhart_cache().polys.end()) return it->second;
  }

  const int d = spec.dimension();
  const int nodes = d + 4;
  std::vector<BigInt> counts(nodes);
  parallel_for(nodes, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t t = lo; t < hi; ++t) counts[t] = lattice_count(spec, static_cast<int>(t));
  });

  const auto poly = RationalPolynomial::interpolate(std::vector<BigInt>(counts.begin(), counts.begin() + d + 1));
  if (poly.degree() != d)
    throw InternalError(spec.name() + ": Ehrhart polynomial has degree " + std::to_string(poly.degree()) +
                        ", expected " + std::to_string(d));
  for (int t = d + 1; t < nodes; ++t)
    if (poly(Rational(t)) != Rational(counts[t]))
      throw InternalError(spec.name() + ": Ehrhart polynomial mispredicts the count at t = " + std::to_string(t));

  std::lock_guard lock(ehrhart_cache().mutex);
  ehrhart_cache().polys.emplace(key, poly);
  return poly;
}

Rational relative_volume(const PolytopeSpec& spec) { return ehrhart_polynomial(spec).leading(); }

BigInt integer_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) m[i][j] = (m[i][j] * m[c][c] - m[i][c] * m[c][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[c][c];
  }
  return sign * m[n - 1][n - 1];
}

BigInt constraint_gcd(const PolytopeSpec& spec) {
  check_spec(spec);
  const auto a = spec.equality_matrix();
  const std::size_t r = a.size();
  if (r == 0) return 1;
  const std::size_t n = a[0].size();

  constexpr std::uint64_t kMaxMinors = 20'000'000;
  std::vector<std::size_t> cols(r);
  std::iota(cols.begin(), cols.end(), 0);
  BigInt g = 0;
  std::uint64_t visited = 0;
  while (true) {
    std::vector<std::vector<BigInt>> minor(r, std::vector<BigInt>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) minor[i][j] = a[i][cols[j]];
    const BigInt det = abs(integer_determinant(std::move(minor)));
    g = gcd(g, det);
    if (g == 1) return g;
    if (++visited > kMaxMinors) throw ResourceError("too many maximal minors for " + spec.name());
    // Next r-subset of {0..n-1} in lexicographic order.
    std::size_t i = r;
    while (i > 0 && cols[i - 1] == n - r + i - 1) --i;
    if (i == 0) break;
    ++cols[i - 1];
    for (std::size_t j = i; j < r; ++j) cols[j] = cols[j - 1] + 1;
  }
  if (g == 0) throw InternalError(spec.name() + ": equality constraints are rank deficient");
  return g;
}

BetaRoutes beta_routes(int k) {
  require(k >= 1 && k <= 4, "beta_constant supports 1 <= k <= 4");
  BetaRoutes out;
  out.birkhoff_relative_volume = relative_volume(birkhoff(k));

  // Integer kernel basis: E_ij - E_im - E_mj + E_mm with m = k-1, i, j < m.
  const int m = k - 1;
  std::vector<std::vector<int>> basis;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::vector<int> v(k * k, 0);
      v[i * k + j] += 1;
      v[i * k + m] -= 1;
      v[m * k + j] -= 1;
      v[m * k + m] += 1;
      basis.push_back(v);
    }
  std::vector<std::vector<BigInt>> gram(basis.size(), std::vector<BigInt>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b)
      gram[a][b] = std::inner_product(basis[a].begin(), basis[a].end(), basis[b].begin(), 0);
  out.kernel_gram_determinant = integer_determinant(gram);
  const BigInt covolume = sqrt(out.kernel_gram_determinant);
  if (covolume * covolume != out.kernel_gram_determinant)
    throw InternalError("Birkhoff kernel covolume is not rational");

  out.birkhoff_euclidean_volume = out.birkhoff_relative_volume * Rational(covolume);
  out.birkhoff_route = out.birkhoff_euclidean_volume / Rational(pow(BigInt(k), static_cast<unsigned>(k - 1)));
  out.direct_route = relative_volume(beta_mixed(k)) / Rational(constraint_gcd(beta_mixed(k)));
  if (out.birkhoff_route != out.direct_route)
    throw InternalError("beta(" + std::to_string(k) + "): Birkhoff route " + to_string(out.birkhoff_route) +
                        " disagrees with direct route " + to_string(out.direct_route));
  out.value = out.direct_route;
  return out;
}

Rational beta_constant(int k) { return beta_routes(k).value; }

Rational alpha_constant(int k) {
  require(k >= 1 && k <= 4, "alpha_constant supports 1 <= k <= 4");
  return relative_volume(alpha_box(k));
}

Rational gamma_constant(int k) {
  require(k >= 2 && k <= kMaxGammaK, "gamma_constant supports k in {2, 3}");
  return relative_volume(gamma_sym(k)) / Rational(constraint_gcd(gamma_sym(k)));
}

MomentEstimate mc_volume(const PolytopeSpec& spec, std::uint64_t samples, std::uint64_t seed) {
  check_spec(spec);
  require(samples >= 1000, "mc_volume needs at least 1000 samples");
  const int k = spec.k;
  int rows = 0;
  bool equality_rows = true;
  if (spec.family == PolytopeFamily::BetaMixed) {
    rows = k - 1;
  } else if (spec.family == PolytopeFamily::AlphaBox) {
    rows = k;
    equality_rows = false;
  } else {
    throw Unsupported("mc_volume supports beta_mixed and alpha_box only");
  }

  // Each row is uniform on {x >= 0, sum = 1} (volume 1/(k-1)!) or on
  // {x >= 0, sum <= 1} (volume 1/k!), from normalized exponential spacings.
  const int spacings = equality_rows ? k : k + 1;
  double row_volume = 1.0;
  for (int i = 2; i < spacings; ++i) row_volume /= i;
  const double scale = std::pow(row_volume, rows);

  std::vector<unsigned char> hit(samples, 0);
  parallel_for(samples, [&](std::size_t lo, std::size_t hi) {
    std::vector<double> col(k), e(spacings);
    for (std::size_t s = lo; s < hi; ++s) {
      auto rng = SplitMix64::stream(seed, s);
      std::fill(col.begin(), col.end(), 0.0);
      for (int r = 0; r < rows; ++r) {
        double total = 0.0;
        for (int j = 0; j < spacings; ++j) total += (e[j] = rng.exponential());
        for (int j = 0; j < k; ++j) col[j] += e[j] / total;
      }
      hit[s] = std::all_of(col.begin(), col.end(), [](double c) { return c <= 1.0; });
    }
  });

  const std::uint64_t accepted = std::count(hit.begin(), hit.end(), 1);
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(accepted) / n;
  MomentEstimate est;
  est.trials = samples;
  est.seed = seed;
  est.mean = scale * p;
  est.std_error = scale * std::sqrt(p * (1.0 - p) / n);
  if (accepted == 0) est.upper_bound = scale * 3.0 / n;
  return est;
}

BigInt magic_count(const std::vector<int>& row_sums, const std::vector<int>& col_sums) {
  require(row_sums.size() <= 12 && col_sums.size() <= 12, "magic_count supports at most 12 parts");
  for (int v : row_sums) require(v >= 0 && v <= 12, "magic_count entries must lie in [0, 12]");
  for (int v : col_sums) require(v >= 0 && v <= 12, "magic_count entries must lie in [0, 12]");
  return count_tables({row_sums, Bound::Equal, col_sums, Bound::Equal});
}

}  // namespace randmult
