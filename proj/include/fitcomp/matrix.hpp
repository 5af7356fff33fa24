#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fitcomp {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Binary membership matrix of a bipartite network. Rows are called countries
// and columns products throughout, but nothing here is trade-specific.
class BipartiteMatrix {
public:
  BipartiteMatrix() = default;
  BipartiteMatrix(std::size_t n_rows, std::size_t n_cols);

  static BipartiteMatrix from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t rows() const { return n_rows_; }
  std::size_t cols() const { return n_cols_; }
  bool empty() const { return n_rows_ == 0 || n_cols_ == 0; }

  std::uint8_t at(std::size_t r, std::size_t c) const { return cells_[r * n_cols_ + c]; }
  void set(std::size_t r, std::size_t c, bool v) { cells_[r * n_cols_ + c] = v ? 1 : 0; }

  std::size_t row_degree(std::size_t r) const;
  std::size_t col_degree(std::size_t c) const;
  std::size_t ones() const;

  std::vector<std::size_t> empty_rows() const;
  std::vector<std::size_t> empty_cols() const;

  bool has_labels() const { return !row_labels_.empty() || !col_labels_.empty(); }
  void set_labels(std::vector<std::string> row_labels, std::vector<std::string> col_labels);
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }
  // Label when present, otherwise the 0-based index as text.
  std::string row_name(std::size_t r) const;
  std::string col_name(std::size_t c) const;

  // keep[i] = original index placed at position i of the result.
  BipartiteMatrix submatrix(const std::vector<std::size_t>& keep_rows,
                            const std::vector<std::size_t>& keep_cols) const;
  BipartiteMatrix permuted(const std::vector<std::size_t>& row_perm,
                           const std::vector<std::size_t>& col_perm) const;

  // FNV-1a over dimensions, cells and labels; stable across runs and platforms.
  std::uint64_t fingerprint() const;

  bool operator==(const BipartiteMatrix& other) const = default;

private:
  std::size_t n_rows_ = 0, n_cols_ = 0;
  std::vector<std::uint8_t> cells_;
  std::vector<std::string> row_labels_, col_labels_;  // empty or sized to match
};

struct SanitationReport {
  std::vector<std::size_t> dropped_rows, dropped_cols;
  std::vector<std::string> dropped_row_names, dropped_col_names;
  bool clean() const { return dropped_rows.empty() && dropped_cols.empty(); }
};

// Removes all-zero rows and columns; the iteration is undefined on them.
BipartiteMatrix drop_empty(const BipartiteMatrix& m, SanitationReport* report = nullptr);

}  // namespace fitcomp
