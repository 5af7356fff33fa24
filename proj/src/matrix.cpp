#include "fitcomp/matrix.hpp"

#include <numeric>

namespace fitcomp {

BipartiteMatrix::BipartiteMatrix(std::size_t n_rows, std::size_t n_cols)
    : n_rows_(n_rows), n_cols_(n_cols), cells_(n_rows * n_cols, 0) {}

BipartiteMatrix BipartiteMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw Error("matrix literal has no rows");
  BipartiteMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.n_cols_) throw Error("matrix literal has ragged rows");
    for (std::size_t c = 0; c < m.n_cols_; ++c) {
      int v = rows[r][c];
      if (v != 0 && v != 1) throw Error("matrix literal cell is not 0/1");
      m.set(r, c, v == 1);
    }
  }
  return m;
}

std::size_t BipartiteMatrix::row_degree(std::size_t r) const {
  std::size_t d = 0;
  for (std::size_t c = 0; c < n_cols_; ++c) d += at(r, c);
  return d;
}

std::size_t BipartiteMatrix::col_degree(std::size_t c) const {
  std::size_t d = 0;
  for (std::size_t r = 0; r < n_rows_; ++r) d += at(r, c);
  return d;
}

std::size_t BipartiteMatrix::ones() const {
  return std::accumulate(cells_.begin(), cells_.end(), std::size_t{0});
}

std::vector<std::size_t> BipartiteMatrix::empty_rows() const {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < n_rows_; ++r)
    if (row_degree(r) == 0) out.push_back(r);
  return out;
}

std::vector<std::size_t> BipartiteMatrix::empty_cols() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < n_cols_; ++c)
    if (col_degree(c) == 0) out.push_back(c);
  return out;
}

void BipartiteMatrix::set_labels(std::vector<std::string> row_labels,
                                 std::vector<std::string> col_labels) {
  if (!row_labels.empty() && row_labels.size() != n_rows_)
    throw Error("row label count does not match matrix");
  if (!col_labels.empty() && col_labels.size() != n_cols_)
    throw Error("column label count does not match matrix");
  row_labels_ = std::move(row_labels);
  col_labels_ = std::move(col_labels);
}

std::string BipartiteMatrix::row_name(std::size_t r) const {
  return row_labels_.empty() ? std::to_string(r) : row_labels_[r];
}

std::string BipartiteMatrix::col_name(std::size_t c) const {
  return col_labels_.empty() ? std::to_string(c) : col_labels_[c];
}

BipartiteMatrix BipartiteMatrix::submatrix(const std::vector<std::size_t>& keep_rows,
                                           const std::vector<std::size_t>& keep_cols) const {
  BipartiteMatrix m(keep_rows.size(), keep_cols.size());
  for (std::size_t r = 0; r < keep_rows.size(); ++r)
    for (std::size_t c = 0; c < keep_cols.size(); ++c)
      m.set(r, c, at(keep_rows[r], keep_cols[c]) != 0);
  if (!row_labels_.empty() || !col_labels_.empty()) {
    std::vector<std::string> rl, cl;
    rl.reserve(keep_rows.size());
    cl.reserve(keep_cols.size());
    for (auto r : keep_rows) rl.push_back(row_name(r));
    for (auto c : keep_cols) cl.push_back(col_name(c));
    m.set_labels(std::move(rl), std::move(cl));
  }
  return m;
}

BipartiteMatrix BipartiteMatrix::permuted(const std::vector<std::size_t>& row_perm,
                                          const std::vector<std::size_t>& col_perm) const {
  if (row_perm.size() != n_rows_ || col_perm.size() != n_cols_)
    throw Error("permutation size mismatch");
  return submatrix(row_perm, col_perm);
}

std::uint64_t BipartiteMatrix::fingerprint() const {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 1099511628211ULL;
  };
  auto mix_size = [&](std::size_t v) {
    for (int i = 0; i < 8; ++i) mix(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  auto mix_str = [&](const std::string& s) {
    mix_size(s.size());
    for (char ch : s) mix(static_cast<std::uint8_t>(ch));
  };
  mix_size(n_rows_);
  mix_size(n_cols_);
  for (auto b : cells_) mix(b);
  mix_size(row_labels_.size());
  for (const auto& s : row_labels_) mix_str(s);
  mix_size(col_labels_.size());
  for (const auto& s : col_labels_) mix_str(s);
  return h;
}

BipartiteMatrix drop_empty(const BipartiteMatrix& m, SanitationReport* report) {
  auto er = m.empty_rows();
  auto ec = m.empty_cols();
  if (report) {
    report->dropped_rows = er;
    report->dropped_cols = ec;
    report->dropped_row_names.clear();
    report->dropped_col_names.clear();
    for (auto r : er) report->dropped_row_names.push_back(m.row_name(r));
    for (auto c : ec) report->dropped_col_names.push_back(m.col_name(c));
  }
  if (er.empty() && ec.empty()) return m;
  std::vector<std::size_t> keep_rows, keep_cols;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (m.row_degree(r) > 0) keep_rows.push_back(r);
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (m.col_degree(c) > 0) keep_cols.push_back(c);
  return m.submatrix(keep_rows, keep_cols);
}

}  // namespace fitcomp
