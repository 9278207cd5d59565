#include "randmult/table_dp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "randmult/errors.hpp"

namespace randmult {
namespace {

BigInt as_bigint(const BigInt& v) { return v; }
BigInt as_bigint(u128 v) { return to_bigint(v); }

// Mixed-radix packing of a vector of small nonnegative integers into 64 bits.
class StateCodec {
 public:
  explicit StateCodec(const std::vector<int>& maxima) : weight_(maxima.size()), radix_(maxima.size()) {
    double log_size = 0.0;
    std::uint64_t w = 1;
    for (std::size_t i = 0; i < maxima.size(); ++i) {
      radix_[i] = static_cast<std::uint64_t>(maxima[i]) + 1;
      weight_[i] = w;
      log_size += std::log2(static_cast<double>(radix_[i]));
      if (log_size > 62.0) throw ResourceError("lattice DP state does not fit a 64-bit key");
      w *= radix_[i];
    }
  }

  std::uint64_t encode(const std::vector<int>& s) const {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < s.size(); ++i) key += weight_[i] * static_cast<std::uint64_t>(s[i]);
    return key;
  }

  void decode(std::uint64_t key, std::vector<int>& s) const {
    s.resize(radix_.size());
    for (std::size_t i = 0; i < radix_.size(); ++i) {
      s[i] = static_cast<int>(key % radix_[i]);
      key /= radix_[i];
    }
  }

 private:
  std::vector<std::uint64_t> weight_;
  std::vector<std::uint64_t> radix_;
};

void check_state_budget(std::size_t states) {
  if (states > kMaxDpStates)
    throw ResourceError("lattice DP exceeded " + std::to_string(kMaxDpStates) + " states");
}

template <class Count>
std::vector<RowSumCount> run_tables(const std::vector<int>& rows, Bound row_kind, const std::vector<int>& cols,
                                    Bound col_kind) {
  const int n_rows = static_cast<int>(rows.size());
  StateCodec codec(rows);

  // Rows [i, group_end[i]) share a target when i starts a group.
  std::vector<int> group_end(n_rows);
  for (int i = 0; i < n_rows;) {
    int j = i;
    while (j < n_rows && rows[j] == rows[i]) ++j;
    for (int r = i; r < j; ++r) group_end[r] = j;
    i = j;
  }

  std::unordered_map<std::uint64_t, Count> current{{0, Count(1)}};
  std::unordered_map<std::uint64_t, Count> next;
  std::vector<int> state, updated(n_rows), room(n_rows), suffix(n_rows + 1);

  for (int c : cols) {
    next.clear();
    next.reserve(current.size() * 2);
    for (const auto& [key, count] : current) {
      codec.decode(key, state);
      suffix[n_rows] = 0;
      for (int i = n_rows - 1; i >= 0; --i) {
        room[i] = std::min(rows[i] - state[i], c);
        suffix[i] = suffix[i + 1] + room[i];
      }
      if (col_kind == Bound::Equal && suffix[0] < c) continue;

      auto emit = [&]() {
        std::vector<int> canon = updated;
        for (int i = 0; i < n_rows; i = group_end[i]) std::sort(canon.begin() + i, canon.begin() + group_end[i]);
        next[codec.encode(canon)] += count;
      };
      // Depth-first over the column's entries.
      auto place = [&](auto&& self, int i, int left) -> void {
        if (i == n_rows) {
          if (col_kind == Bound::AtMost || left == 0) emit();
          return;
        }
        int lo = 0;
        if (col_kind == Bound::Equal) lo = std::max(0, left - suffix[i + 1]);
        const int hi = std::min(room[i], left);
        for (int v = lo; v <= hi; ++v) {
          updated[i] = state[i] + v;
          self(self, i + 1, left - v);
        }
      };
      place(place, 0, c);
    }
    check_state_budget(next.size());
    current.swap(next);
  }

  std::vector<RowSumCount> out;
  out.reserve(current.size());
  for (const auto& [key, count] : current) {
    codec.decode(key, state);
    if (row_kind == Bound::Equal && state != rows) continue;
    out.push_back({state, as_bigint(count)});
  }
  std::sort(out.begin(), out.end(), [](const RowSumCount& a, const RowSumCount& b) { return a.row_sums < b.row_sums; });
  return out;
}

template <class Count>
std::vector<BigInt> run_graph(int vertices, int bound, Bound kind) {
  const int max_total = vertices * bound / 2;
  std::vector<int> maxima(vertices, bound);
  maxima.push_back(max_total);
  StateCodec codec(maxima);

  // Key layout: remaining vertex degrees (sorted, padded with 0), then total.
  auto pack = [&](const std::vector<int>& degrees, int total) {
    std::vector<int> s(vertices + 1, 0);
    std::copy(degrees.begin(), degrees.end(), s.begin());
    s[vertices] = total;
    return codec.encode(s);
  };

  std::unordered_map<std::uint64_t, Count> current{{pack(std::vector<int>(vertices, 0), 0), Count(1)}};
  std::unordered_map<std::uint64_t, Count> next;
  std::vector<int> raw, degrees, updated;

  for (int remaining = vertices; remaining > 0; --remaining) {
    next.clear();
    for (const auto& [key, count] : current) {
      codec.decode(key, raw);
      degrees.assign(raw.begin(), raw.begin() + remaining);
      const int total = raw[vertices];
      const int need = bound - degrees[0];
      const int others = remaining - 1;
      std::vector<int> room(others), suffix(others + 1, 0);
      for (int j = others - 1; j >= 0; --j) {
        room[j] = std::min(bound - degrees[j + 1], need);
        suffix[j] = suffix[j + 1] + room[j];
      }
      if (kind == Bound::Equal && suffix[0] < need) continue;
      updated.assign(others, 0);

      auto place = [&](auto&& self, int j, int left) -> void {
        if (j == others) {
          if (kind == Bound::Equal && left != 0) return;
          std::vector<int> sorted = updated;
          std::sort(sorted.begin(), sorted.end());
          next[pack(sorted, total + (need - left))] += count;
          return;
        }
        int lo = 0;
        if (kind == Bound::Equal) lo = std::max(0, left - suffix[j + 1]);
        const int hi = std::min(room[j], left);
        for (int v = lo; v <= hi; ++v) {
          updated[j] = degrees[j + 1] + v;
          self(self, j + 1, left - v);
        }
      };
      place(place, 0, need);
    }
    check_state_budget(next.size());
    current.swap(next);
  }

  std::vector<BigInt> by_total(max_total + 1);
  for (const auto& [key, count] : current) {
    codec.decode(key, raw);
    by_total[raw[vertices]] += as_bigint(count);
  }
  return by_total;
}

}  // namespace

std::vector<RowSumCount> count_tables_by_row_sums(const TableMargins& margins) {
  for (int v : margins.row_targets) require(v >= 0, "row targets must be nonnegative");
  for (int v : margins.col_targets) require(v >= 0, "column targets must be nonnegative");

  std::vector<int> rows = margins.row_targets;
  std::sort(rows.begin(), rows.end());
  const long long row_total = std::accumulate(rows.begin(), rows.end(), 0LL);
  const long long col_total = std::accumulate(margins.col_targets.begin(), margins.col_targets.end(), 0LL);
  if (margins.rows == Bound::Equal && margins.cols == Bound::Equal && row_total != col_total) return {};

  double log_matrices = 0.0;
  for (int r : rows)
    for (int c : margins.col_targets) log_matrices += std::log2(static_cast<double>(std::min(r, c)) + 1.0);
  if (log_matrices < 126.0) return run_tables<u128>(rows, margins.rows, margins.col_targets, margins.cols);
  return run_tables<BigInt>(rows, margins.rows, margins.col_targets, margins.cols);
}

BigInt count_tables(const TableMargins& margins) {
  BigInt total = 0;
  for (const auto& entry : count_tables_by_row_sums(margins)) total += entry.count;
  return total;
}

std::vector<BigInt> count_graph_by_total(int vertices, int bound, Bound kind) {
  require(vertices >= 1, "graph needs at least one vertex");
  require(bound >= 0, "degree bound must be nonnegative");
  const double edges = vertices * (vertices - 1) / 2.0;
  if (edges * std::log2(bound + 1.0) < 126.0) return run_graph<u128>(vertices, bound, kind);
  return run_graph<BigInt>(vertices, bound, kind);
}

}  // namespace randmult
