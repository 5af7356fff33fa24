#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "fitcomp/engine.hpp"

namespace fitcomp {

// Rank view of a matrix: fittest row on top, most complex column at the
// right. Frozen entities rank below every live one, later freezes first,
// remaining ties by original index.
struct OrderedMatrix {
  BipartiteMatrix base;
  std::vector<std::size_t> row_perm;  // row_perm[k] = original row shown at rank k (0 = top)
  std::vector<std::size_t> col_perm;  // col_perm[k] = original column at position k (0 = left)
  std::vector<double> fitness, complexity;  // ordering snapshot, original indexing

  std::size_t rows() const { return row_perm.size(); }
  std::size_t cols() const { return col_perm.size(); }
  std::uint8_t at_rank(std::size_t r, std::size_t c) const {
    return base.at(row_perm[r], col_perm[c]);
  }
  BipartiteMatrix materialize() const { return base.permuted(row_perm, col_perm); }
};

// The caller is expected to pass a state taken after the ranking has settled;
// the ordering is whatever the snapshot says.
OrderedMatrix order_matrix(const BipartiteMatrix& m, const IterationState& s);

struct Cell {
  int row = 0, col = 0;  // 1-based ranks, row 1 at the top
  auto operator<=>(const Cell&) const = default;
};

// Cells met by the straight segment from the bottom-left corner of the grid
// to the top-right corner. Single-point (lattice corner) contacts count: a
// verdict about "the diagonal passes through" must see cells the line
// grazes. For an n x n grid this is the main antidiagonal plus the two cells
// at each interior lattice point.
std::vector<Cell> diagonal_cells(std::size_t n_rows, std::size_t n_cols);

// 4-connected zero region of the ordered matrix containing the bottom-right
// cell (lowest fitness, highest complexity); empty if that cell holds a 1.
std::vector<Cell> external_area(const OrderedMatrix& om);

struct BellyReport {
  bool crossing = false;
  std::vector<Cell> external_cells, diagonal, crossing_cells;
  std::vector<int> crossing_rows;  // bottom-up row ranks where the diagonal runs through zeros
};

BellyReport belly_test(const OrderedMatrix& om);

struct RemovalRound {
  std::size_t removed_row = 0;             // original index
  std::vector<std::size_t> removed_cols;   // original indices
  std::vector<std::size_t> emptied_rows, emptied_cols;
};

struct RemovalResult {
  std::optional<std::size_t> crossing_country;  // original row index
  std::string crossing_country_name;
  std::vector<std::size_t> removed_rows, removed_cols;  // in removal order
  std::vector<RemovalRound> rounds;
  std::vector<std::size_t> surviving_rows, surviving_cols;
  BipartiteMatrix reduced;
  bool degenerate = false;  // reduced to one row or less
  BellyReport final_belly;
};

// Bottom-up removal: while the diagonal crosses the external area, drop the
// lowest-ranked country, every column it exports, and whatever that leaves
// empty; then re-run the dynamics on the remainder (warm-started from the
// survivors' values) and retest. The first surviving bottom country is the
// crossing country.
RemovalResult find_crossing_country(const BipartiteMatrix& m, const EngineParams& p);

}  // namespace fitcomp
