#pragma once

#include <string>
#include <vector>

#include "fitcomp/matrix.hpp"

namespace fitcomp {

struct FlowRecord {
  std::string exporter, product;
  double value = 0;  // non-negative; duplicate (exporter, product) pairs add up
};

struct RcaMatrix {
  std::size_t n_rows = 0, n_cols = 0;
  std::vector<std::string> row_labels, col_labels;
  std::vector<double> values;  // row-major
  std::vector<std::size_t> zero_rows, zero_cols;  // lines with no flow at all

  double at(std::size_t r, std::size_t c) const { return values[r * n_cols + c]; }
};

// Balassa index: the exporter's share of a product relative to the product's
// share of total trade. Entries whose row or column carries no flow are set
// to 0 and the line is reported in zero_rows / zero_cols.
RcaMatrix compute_rca(const std::vector<FlowRecord>& flows);

struct BinarizeResult {
  BipartiteMatrix matrix;
  std::vector<std::size_t> empty_rows, empty_cols;  // all-zero lines of the result
  std::vector<std::string> empty_row_names, empty_col_names;
};

// M = 1 where RCA clears the threshold (>= by default, > with
// strict_greater). The empty lines listed must be dropped before iterating.
BinarizeResult binarize(const RcaMatrix& rca, double threshold = 1.0,
                        bool strict_greater = false);

}  // namespace fitcomp
