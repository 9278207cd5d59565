#pragma once

// Exact counting of nonnegative integer matrices under row/column sum
// constraints, and of edge weightings of a complete graph under vertex-degree
// constraints. Counts are exact; the DP runs in 128-bit integers when the
// number of candidate matrices provably fits and in BigInt otherwise.

#include <cstdint>
#include <vector>

#include "randmult/bigint.hpp"

namespace randmult {

enum class Bound { Equal, AtMost };

struct TableMargins {
  std::vector<int> row_targets;
  Bound rows = Bound::Equal;
  std::vector<int> col_targets;
  Bound cols = Bound::Equal;
};

struct RowSumCount {
  std::vector<int> row_sums;  // rows ordered by ascending target
  BigInt count;
};

// Column-by-column DP over residual row sums. Rows with equal targets are
// interchangeable, so states are canonicalized by sorting within such groups.
std::vector<RowSumCount> count_tables_by_row_sums(const TableMargins& margins);
BigInt count_tables(const TableMargins& margins);

// Edge weightings x_ij >= 0 (i < j) of the complete graph on `vertices`
// vertices whose every vertex degree is == bound or <= bound. Entry s of the
// result counts weightings with total edge weight s.
std::vector<BigInt> count_graph_by_total(int vertices, int bound, Bound kind);

// Upper limit on simultaneously live DP states before ResourceError.
inline constexpr std::size_t kMaxDpStates = 40'000'000;

}  // namespace randmult
