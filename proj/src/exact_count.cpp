#include "randmult/exact_count.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "randmult/arith.hpp"
#include "randmult/errors.hpp"
#include "randmult/numeric.hpp"
#include "randmult/parallel.hpp"

namespace randmult {

namespace {

constexpr std::uint64_t kSegment = 1ULL << 22;

std::uint64_t checked_power(std::uint64_t x, int k, std::uint64_t limit, const char* what) {
  std::uint64_t p = 1;
  for (int i = 0; i < k; ++i) {
    if (x != 0 && p > limit / x)
      throw ResourceError(std::string(what) + ": floor(x)^k exceeds the limit of " + std::to_string(limit));
    p *= x;
  }
  return p;
}

// Calls visit(n, r) for every product n in [lo, hi) of k factors <= x (factors
// restricted to `allowed` when given), with r its number of representations.
class ProductCounter {
 public:
  ProductCounter(int k, std::uint64_t x, const std::vector<unsigned char>* allowed)
      : k_(k), x_(x), allowed_(allowed) {}

  template <class Visit>
  void segment(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint32_t>& cells, Visit&& visit) const {
    cells.assign(hi - lo, 0);
    prefix(1, 0, lo, hi, cells);
    for (std::uint64_t i = 0; i < cells.size(); ++i)
      if (cells[i] != 0) visit(lo + i, cells[i]);
  }

 private:
  bool ok(std::uint64_t n) const { return allowed_ == nullptr || (*allowed_)[n]; }

  void prefix(std::uint64_t product, int depth, std::uint64_t lo, std::uint64_t hi,
              std::vector<std::uint32_t>& cells) const {
    if (depth == k_ - 1) {
      const std::uint64_t first = std::max<std::uint64_t>(1, (lo + product - 1) / product);
      const std::uint64_t last = std::min(x_, (hi - 1) / product);
      for (std::uint64_t n = first; n <= last; ++n)
        if (ok(n)) ++cells[product * n - lo];
      return;
    }
    for (std::uint64_t n = 1; n <= x_ && product * n < hi; ++n)
      if (ok(n)) prefix(product * n, depth + 1, lo, hi, cells);
  }

  int k_;
  std::uint64_t x_;
  const std::vector<unsigned char>* allowed_;
};

struct SegmentSums {
  u128 squares = 0;
  double weighted = 0.0;
};

std::vector<SegmentSums> energy_segments(int k, std::uint64_t x, double sigma,
                                         const std::vector<unsigned char>* allowed) {
  const std::uint64_t top = checked_power(x, k, kMaxProductSpace, "steinhaus_energy") + 1;
  const std::uint64_t n_segments = (top - 1) / kSegment + 1;
  std::vector<SegmentSums> sums(n_segments);
  ProductCounter counter(k, x, allowed);
  parallel_for(n_segments, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> cells;
    for (std::size_t s = begin; s < end; ++s) {
      const std::uint64_t lo = std::max<std::uint64_t>(1, s * kSegment);
      const std::uint64_t hi = std::min(top, (s + 1) * kSegment);
      if (lo >= hi) continue;
      CompensatedSum weighted;
      u128 squares = 0;
      counter.segment(lo, hi, cells, [&](std::uint64_t n, std::uint32_t r) {
        const std::uint64_t r2 = static_cast<std::uint64_t>(r) * r;
        squares += r2;
        if (sigma != 0.0) weighted += static_cast<double>(r2) * std::pow(static_cast<double>(n), -2.0 * sigma);
      });
      sums[s] = {squares, sigma == 0.0 ? static_cast<double>(squares) : weighted.value()};
    }
  });
  return sums;
}

std::vector<unsigned char> squarefree_table(std::uint64_t x) {
  std::vector<unsigned char> sf(x + 1, 1);
  sf[0] = 0;
  for (std::uint64_t p = 2; p * p <= x; ++p)
    for (std::uint64_t m = p * p; m <= x; m += p * p) sf[m] = 0;
  return sf;
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  u128 result = 1 % m, base = b % m;
  while (e) {
    if (e & 1) result = result * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

void check_prime_modulus(std::uint64_t q) {
  if (!is_prime(q)) throw Unsupported("characters are implemented for prime moduli only (q = " + std::to_string(q) + ")");
  require(q <= 1'000'000, "character modulus must be <= 10^6");
}

// Discrete logarithms to the base of a primitive root; ind[0] unused.
std::vector<std::uint32_t> index_table(std::uint64_t q) {
  const std::uint64_t g = primitive_root(q);
  std::vector<std::uint32_t> ind(q, 0);
  std::uint64_t v = 1;
  for (std::uint64_t e = 0; e + 1 < q; ++e) {
    ind[v] = static_cast<std::uint32_t>(e);
    v = v * g % q;
  }
  return ind;
}

}  // namespace

MultiplicityMap product_multiplicity_map(int k, std::uint64_t x) {
  require(k >= 1, "k must be >= 1");
  require(x >= 1, "x must be >= 1");
  const std::uint64_t top = checked_power(x, k, kMaxProductSpace, "product_multiplicity_map") + 1;
  MultiplicityMap out;
  ProductCounter counter(k, x, nullptr);
  std::vector<std::uint32_t> cells;
  for (std::uint64_t lo = 1; lo < top; lo += kSegment)
    counter.segment(lo, std::min(top, lo + kSegment), cells,
                    [&](std::uint64_t n, std::uint32_t r) { out.emplace_hint(out.end(), n, r); });
  return out;
}

EnergyResult steinhaus_energy(int k, std::uint64_t x, double sigma) {
  require(k >= 1, "k must be >= 1");
  require(x >= 1, "x must be >= 1");
  require(sigma >= 0.0 && sigma <= 0.5, "sigma must lie in [0, 1/2]");
  const auto sums = energy_segments(k, x, sigma, nullptr);
  EnergyResult out;
  out.k = k;
  out.x = x;
  out.sigma = sigma;
  out.tuple_space_size = pow(BigInt(x), static_cast<unsigned>(2 * k));
  std::vector<double> weighted;
  weighted.reserve(sums.size());
  for (const auto& s : sums) {
    out.exact += to_bigint(s.squares);
    weighted.push_back(s.weighted);
  }
  out.value = sigma == 0.0 ? to_double(out.exact) : pairwise_sum(weighted);
  if (sigma != 0.0) out.exact = 0;
  return out;
}

BigInt coprime_energy(int k, std::uint64_t x, std::uint64_t q) {
  require(k >= 1 && x >= 1 && q >= 1, "coprime_energy needs k, x, q >= 1");
  std::vector<unsigned char> allowed(x + 1, 0);
  for (std::uint64_t n = 1; n <= x; ++n) allowed[n] = std::gcd(n, q) == 1;
  BigInt total = 0;
  for (const auto& s : energy_segments(k, x, 0.0, &allowed)) total += to_bigint(s.squares);
  return total;
}

double steinhaus_energy_brute(int k, std::uint64_t x, double sigma) {
  require(k >= 1 && x >= 1, "k, x must be >= 1");
  checked_power(x, 2 * k, 1ULL << 26, "steinhaus_energy_brute");
  std::vector<std::uint64_t> n(2 * k, 1);
  CompensatedSum total;
  while (true) {
    std::uint64_t left = 1, right = 1;
    double weight = 1.0;
    for (int i = 0; i < 2 * k; ++i) {
      (i < k ? left : right) *= n[i];
      weight *= std::pow(static_cast<double>(n[i]), -sigma);
    }
    if (left == right) total += weight;
    int i = 0;
    while (i < 2 * k && n[i] == x) n[i++] = 1;
    if (i == 2 * k) break;
    ++n[i];
  }
  return total.value();
}

BigInt rademacher_moment_sign_enum(int k, std::uint64_t x) {
  require(k >= 1, "k must be >= 1");
  require(x >= 1, "x must be >= 1");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p <= x; ++p)
    if (is_prime(p)) primes.push_back(p);
  if (primes.size() > 24) throw ResourceError("sign enumeration needs pi(x) <= 24");

  const auto sf = squarefree_table(x);
  // Squarefree multiples of each prime; term[n] is the current sign of Y_n.
  std::vector<std::vector<std::uint32_t>> multiples(primes.size());
  std::vector<int> term(x + 1, 0);
  long long s = 0;
  for (std::uint64_t n = 1; n <= x; ++n)
    if (sf[n]) {
      term[n] = 1;
      ++s;
    }
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::uint64_t m = primes[i]; m <= x; m += primes[i])
      if (sf[m]) multiples[i].push_back(static_cast<std::uint32_t>(m));

  const long long offset = static_cast<long long>(x);
  std::vector<std::uint64_t> histogram(2 * x + 1, 0);
  const std::uint64_t vectors = 1ULL << primes.size();
  ++histogram[s + offset];
  // Gray code: step g flips the prime at the lowest set bit of g.
  for (std::uint64_t g = 1; g < vectors; ++g) {
    const int bit = std::countr_zero(g);
    long long delta = 0;
    for (std::uint32_t m : multiples[bit]) {
      delta -= 2 * term[m];
      term[m] = -term[m];
    }
    s += delta;
    ++histogram[s + offset];
  }

  BigInt total = 0;
  for (std::size_t i = 0; i < histogram.size(); ++i)
    if (histogram[i]) total += BigInt(histogram[i]) * pow(BigInt(static_cast<long long>(i) - offset), 2 * k);
  const BigInt denom = BigInt(1) << primes.size();
  if (total % denom != 0) throw InternalError("Rademacher moment is not an integer");
  return total / denom;
}

BigInt rademacher_moment_tuple_count(int k, std::uint64_t x) {
  require(k >= 1, "k must be >= 1");
  require(x >= 1, "x must be >= 1");
  require(x <= 10'000, "tuple count supports x <= 10^4");
  if (k * std::log2(static_cast<double>(x)) >= 63.0)
    throw ResourceError("square-class labels exceed 64 bits (k log2 x >= 63)");

  const auto sf = squarefree_table(x);
  std::vector<std::uint64_t> squarefree;
  for (std::uint64_t n = 1; n <= x; ++n)
    if (sf[n]) squarefree.push_back(n);
  if (k * std::log2(static_cast<double>(squarefree.size())) > 30.0)
    throw ResourceError("tuple count needs (#squarefree n <= x)^k <= 2^30");

  // A squarefree n is its own GF(2) prime-exponent vector; the sum of the
  // vectors of u and n is u n / gcd(u, n)^2.
  std::unordered_map<std::uint64_t, std::uint64_t> classes;
  for (std::uint64_t n : squarefree) classes[n] = 1;
  for (int step = 1; step < k; ++step) {
    std::unordered_map<std::uint64_t, std::uint64_t> next;
    for (const auto& [u, c] : classes)
      for (std::uint64_t n : squarefree) {
        const std::uint64_t g = std::gcd(u, n);
        next[(u / g) * (n / g)] += c;
      }
    classes.swap(next);
  }
  BigInt total = 0;
  for (const auto& [v, c] : classes) total += BigInt(c) * c;
  return total;
}

std::uint64_t primitive_root(std::uint64_t q) {
  require(q >= 2, "modulus must be >= 2");
  if (!is_prime(q)) throw Unsupported("primitive roots are computed for prime moduli only");
  if (q == 2) return 1;
  const auto factors = factorize(q - 1);
  for (std::uint64_t g = 2; g < q; ++g) {
    bool primitive = true;
    for (const auto& f : factors)
      if (pow_mod(g, (q - 1) / f.prime, q) == 1) {
        primitive = false;
        break;
      }
    if (primitive) return g;
  }
  throw InternalError("no primitive root found");
}

BigInt congruence_count(int k, std::uint64_t q, std::uint64_t x) {
  require(k >= 1 && x >= 1, "k, x must be >= 1");
  check_prime_modulus(q);
  if (k * std::log2(static_cast<double>(x)) >= 63.0) throw ResourceError("residue counts exceed 64 bits");
  const std::uint64_t phi = q - 1;
  const auto ind = index_table(q);
  // Histogram of discrete logs of n <= x, (n, q) = 1.
  std::vector<std::uint64_t> base(phi, 0);
  for (std::uint64_t n = 1; n <= x; ++n)
    if (n % q != 0) ++base[ind[n % q]];
  std::vector<std::pair<std::uint64_t, std::uint64_t>> support;
  for (std::uint64_t a = 0; a < phi; ++a)
    if (base[a]) support.emplace_back(a, base[a]);
  if (static_cast<double>(phi) * support.size() * k > 4e10) throw ResourceError("congruence count too large");

  std::vector<std::uint64_t> h = base, next(phi);
  for (int step = 1; step < k; ++step) {
    std::fill(next.begin(), next.end(), 0);
    for (std::uint64_t a = 0; a < phi; ++a) {
      if (!h[a]) continue;
      for (const auto& [b, c] : support) next[(a + b) % phi] += h[a] * c;
    }
    h.swap(next);
  }
  BigInt total = 0;
  for (std::uint64_t v : h)
    if (v) total += BigInt(v) * v;
  return total;
}

CharAverageResult char_moment_average(int k, std::uint64_t q, std::uint64_t x) {
  require(k >= 1 && x >= 1, "k, x must be >= 1");
  check_prime_modulus(q);
  require(q >= 3, "character averages need q >= 3");
  const std::uint64_t phi = q - 1;
  if (static_cast<double>(phi) * x > 1e10) throw ResourceError("phi(q) * x exceeds 10^10 character evaluations");

  const auto ind = index_table(q);
  std::vector<std::uint32_t> logs;
  for (std::uint64_t n = 1; n <= x; ++n)
    if (n % q != 0) logs.push_back(ind[n % q]);
  std::vector<double> cos_table(phi), sin_table(phi);
  for (std::uint64_t j = 0; j < phi; ++j) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(phi);
    cos_table[j] = std::cos(a);
    sin_table[j] = std::sin(a);
  }

  // chi_a(n) = e(a ind(n) / phi), a = 0 .. phi-1.
  std::vector<double> powers(phi);
  parallel_for(phi, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t a = lo; a < hi; ++a) {
      CompensatedSum re, im;
      for (std::uint32_t l : logs) {
        const std::uint64_t j = (static_cast<std::uint64_t>(a) * l) % phi;
        re += cos_table[j];
        im += sin_table[j];
      }
      const double m2 = re.value() * re.value() + im.value() * im.value();
      powers[a] = std::pow(m2, k);
    }
  });

  CharAverageResult out;
  out.k = k;
  out.q = q;
  out.x = x;
  const double phid = static_cast<double>(phi);
  out.avg_all = pairwise_sum(powers) / phid;
  const double eps = std::numeric_limits<double>::epsilon();
  const double n_terms = static_cast<double>(logs.size());
  const double top = std::pow(n_terms, 2 * k);
  // Table entries carry ~2 eps, so |S| is off by at most ~4 n eps.
  out.avg_all_error = 2.0 * k * top / std::max(1.0, n_terms) * 4.0 * n_terms * eps + top * eps * std::log2(phid + 1);

  out.congruence_count = congruence_count(k, q, x);
  const BigInt principal = pow(BigInt(logs.size()), static_cast<unsigned>(2 * k));
  const BigInt nonprincipal_sum = BigInt(phi) * out.congruence_count - principal;
  out.avg_nonprincipal = Rational(nonprincipal_sum, BigInt(phi - 1));
  out.nonprincipal_over_phi = Rational(nonprincipal_sum, BigInt(phi));
  return out;
}

}  // namespace randmult
