#include "fitcomp/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "fitcomp/runner.hpp"

namespace fitcomp {

namespace {

// descending: strongest first (rows). ascending: weakest first (columns).
// Frozen entities sit below every live one; a later freeze held its rank
// longer and counts as stronger. Remaining ties break by original index.
std::vector<std::size_t> rank_order(const std::vector<double>& value,
                                    const std::vector<std::uint8_t>& collapsed,
                                    const std::vector<long>& collapsed_at, bool descending) {
  std::vector<std::size_t> idx(value.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto strength = [&](std::size_t a, std::size_t b) {  // a strictly stronger than b
    if (collapsed[a] != collapsed[b]) return collapsed[a] < collapsed[b];
    if (collapsed[a]) return collapsed_at[a] > collapsed_at[b];
    return value[a] > value[b];
  };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (strength(a, b)) return descending;
    if (strength(b, a)) return !descending;
    return a < b;
  });
  return idx;
}

}  // namespace

OrderedMatrix order_matrix(const BipartiteMatrix& m, const IterationState& s) {
  if (s.fitness.size() != m.rows() || s.complexity.size() != m.cols())
    throw Error("state does not match matrix");
  OrderedMatrix om;
  om.base = m;
  om.fitness = s.fitness;
  om.complexity = s.complexity;
  om.row_perm = rank_order(s.fitness, s.row_collapsed, s.row_collapsed_at, true);
  om.col_perm = rank_order(s.complexity, s.col_collapsed, s.col_collapsed_at, false);
  return om;
}

std::vector<Cell> diagonal_cells(std::size_t n_rows, std::size_t n_cols) {
  if (n_rows == 0 || n_cols == 0) throw Error("diagonal of an empty grid");
  // Segment from (0,0) to (W,H) in x-right, y-up coordinates; the cell at
  // rank (r,c) is the unit box [c-1,c] x [H-r, H-r+1]. It meets the segment
  // iff the parameter intervals overlap, which reduces to two exact integer
  // comparisons (closed intervals, so corner grazes are kept).
  const long long H = static_cast<long long>(n_rows), W = static_cast<long long>(n_cols);
  std::vector<Cell> out;
  for (long long r = 1; r <= H; ++r) {
    const long long b = H - r;
    for (long long c = 1; c <= W; ++c) {
      const long long a = c - 1;
      if (a * H <= (b + 1) * W && b * W <= (a + 1) * H)
        out.push_back({static_cast<int>(r), static_cast<int>(c)});
    }
  }
  return out;
}

std::vector<Cell> external_area(const OrderedMatrix& om) {
  const std::size_t H = om.rows(), W = om.cols();
  std::vector<Cell> out;
  if (H == 0 || W == 0) return out;
  if (om.at_rank(H - 1, W - 1) != 0) return out;
  std::vector<std::uint8_t> seen(H * W, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{H - 1, W - 1}};
  seen[(H - 1) * W + (W - 1)] = 1;
  while (!stack.empty()) {
    auto [r, c] = stack.back();
    stack.pop_back();
    out.push_back({static_cast<int>(r + 1), static_cast<int>(c + 1)});
    const std::pair<long, long> nbrs[4] = {{static_cast<long>(r) - 1, static_cast<long>(c)},
                                           {static_cast<long>(r) + 1, static_cast<long>(c)},
                                           {static_cast<long>(r), static_cast<long>(c) - 1},
                                           {static_cast<long>(r), static_cast<long>(c) + 1}};
    for (auto [nr, nc] : nbrs) {
      if (nr < 0 || nc < 0 || nr >= static_cast<long>(H) || nc >= static_cast<long>(W)) continue;
      std::size_t off = static_cast<std::size_t>(nr) * W + static_cast<std::size_t>(nc);
      if (seen[off] || om.at_rank(nr, nc) != 0) continue;
      seen[off] = 1;
      stack.emplace_back(nr, nc);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BellyReport belly_test(const OrderedMatrix& om) {
  BellyReport rep;
  rep.diagonal = diagonal_cells(om.rows(), om.cols());
  rep.external_cells = external_area(om);
  std::set<Cell> ext(rep.external_cells.begin(), rep.external_cells.end());
  for (const Cell& cell : rep.diagonal)
    if (ext.count(cell)) rep.crossing_cells.push_back(cell);
  rep.crossing = !rep.crossing_cells.empty();
  std::set<int, std::greater<int>> rows;
  for (const Cell& cell : rep.crossing_cells) rows.insert(cell.row);
  rep.crossing_rows.assign(rows.begin(), rows.end());
  return rep;
}

namespace {

// Settles the dynamics far enough for a stable ordering. Convergent systems
// exit on the relative-change rule; decaying ones run the budget out, by
// which point the per-entity decay rates (hence the ranking) are fixed.
IterationState settle(const BipartiteMatrix& m, const EngineParams& p,
                      const IterationState& init) {
  EngineParams pp = p;
  pp.max_iterations = std::min<long>(p.max_iterations, 5000);
  pp.record_every = std::max<long>(pp.max_iterations, 1);
  pp.record_complexity = false;
  return iterate(m, init, pp, StopOnRelativeChange{1e-13}).state;
}

}  // namespace

RemovalResult find_crossing_country(const BipartiteMatrix& m, const EngineParams& p) {
  p.validate();
  RemovalResult res;
  std::vector<std::size_t> rows(m.rows()), cols(m.cols());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::iota(cols.begin(), cols.end(), std::size_t{0});

  // Each reduction restarts the dynamics from the surviving entities'
  // current values, not from scratch: excising dead lines leaves the
  // survivors' relative state intact, and a cold restart on a reduced
  // matrix that fell apart into tied components would erase the ranking
  // information the removal is built on.
  std::vector<double> warm;

  while (!rows.empty() && !cols.empty()) {
    BipartiteMatrix sub = m.submatrix(rows, cols);
    IterationState st = settle(sub, p,
                               warm.empty() ? init_uniform(sub) : init_with_fitness(sub, warm));
    OrderedMatrix om = order_matrix(sub, st);
    BellyReport belly = belly_test(om);
    if (!belly.crossing) {
      res.crossing_country = rows[om.row_perm.back()];
      res.final_belly = std::move(belly);
      break;
    }

    RemovalRound round;
    const std::size_t bottom_local = om.row_perm.back();
    round.removed_row = rows[bottom_local];
    std::vector<std::uint8_t> drop_row(rows.size(), 0), drop_col(cols.size(), 0);
    drop_row[bottom_local] = 1;
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (sub.at(bottom_local, c)) {
        drop_col[c] = 1;
        round.removed_cols.push_back(cols[c]);
      }
    // Dropping lines can empty others; sweep until stable.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (drop_row[r]) continue;
        std::size_t deg = 0;
        for (std::size_t c = 0; c < cols.size(); ++c)
          if (!drop_col[c] && sub.at(r, c)) ++deg;
        if (deg == 0) {
          drop_row[r] = 1;
          round.emptied_rows.push_back(rows[r]);
          changed = true;
        }
      }
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (drop_col[c]) continue;
        std::size_t deg = 0;
        for (std::size_t r = 0; r < rows.size(); ++r)
          if (!drop_row[r] && sub.at(r, c)) ++deg;
        if (deg == 0) {
          drop_col[c] = 1;
          round.emptied_cols.push_back(cols[c]);
          changed = true;
        }
      }
    }

    res.removed_rows.push_back(round.removed_row);
    for (auto r : round.emptied_rows) res.removed_rows.push_back(r);
    for (auto c : round.removed_cols) res.removed_cols.push_back(c);
    for (auto c : round.emptied_cols) res.removed_cols.push_back(c);

    std::vector<std::size_t> next_rows, next_cols;
    warm.clear();
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (!drop_row[r]) {
        next_rows.push_back(rows[r]);
        warm.push_back(st.fitness[r]);
      }
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (!drop_col[c]) next_cols.push_back(cols[c]);
    rows = std::move(next_rows);
    cols = std::move(next_cols);
    res.rounds.push_back(std::move(round));
  }

  res.surviving_rows = rows;
  res.surviving_cols = cols;
  res.reduced = m.submatrix(rows, cols);
  res.degenerate = rows.size() <= 1;
  if (res.crossing_country) res.crossing_country_name = m.row_name(*res.crossing_country);
  return res;
}

}  // namespace fitcomp
