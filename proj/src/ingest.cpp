#include "fitcomp/ingest.hpp"

#include <cmath>
#include <map>

namespace fitcomp {

RcaMatrix compute_rca(const std::vector<FlowRecord>& flows) {
  if (flows.empty()) throw Error("no flow records");
  RcaMatrix rca;
  std::map<std::string, std::size_t> row_ids, col_ids;
  for (const auto& f : flows) {
    if (!(f.value >= 0) || !std::isfinite(f.value))
      throw Error("flow value must be finite and non-negative");
    if (row_ids.emplace(f.exporter, rca.row_labels.size()).second)
      rca.row_labels.push_back(f.exporter);
    if (col_ids.emplace(f.product, rca.col_labels.size()).second)
      rca.col_labels.push_back(f.product);
  }
  rca.n_rows = rca.row_labels.size();
  rca.n_cols = rca.col_labels.size();

  std::vector<double> x(rca.n_rows * rca.n_cols, 0.0);
  for (const auto& f : flows) x[row_ids[f.exporter] * rca.n_cols + col_ids[f.product]] += f.value;

  std::vector<long double> row_sum(rca.n_rows, 0.0L), col_sum(rca.n_cols, 0.0L);
  long double total = 0.0L;
  for (std::size_t r = 0; r < rca.n_rows; ++r)
    for (std::size_t c = 0; c < rca.n_cols; ++c) {
      row_sum[r] += x[r * rca.n_cols + c];
      col_sum[c] += x[r * rca.n_cols + c];
      total += x[r * rca.n_cols + c];
    }
  if (!(total > 0.0L)) throw Error("all flow values are zero");

  for (std::size_t r = 0; r < rca.n_rows; ++r)
    if (row_sum[r] == 0.0L) rca.zero_rows.push_back(r);
  for (std::size_t c = 0; c < rca.n_cols; ++c)
    if (col_sum[c] == 0.0L) rca.zero_cols.push_back(c);

  rca.values.assign(rca.n_rows * rca.n_cols, 0.0);
  for (std::size_t r = 0; r < rca.n_rows; ++r) {
    if (row_sum[r] == 0.0L) continue;
    for (std::size_t c = 0; c < rca.n_cols; ++c) {
      if (col_sum[c] == 0.0L) continue;
      long double share = x[r * rca.n_cols + c] / row_sum[r];
      long double global = col_sum[c] / total;
      rca.values[r * rca.n_cols + c] = static_cast<double>(share / global);
    }
  }
  return rca;
}

BinarizeResult binarize(const RcaMatrix& rca, double threshold, bool strict_greater) {
  if (!(threshold > 0)) throw Error("threshold must be positive");
  BinarizeResult out;
  out.matrix = BipartiteMatrix(rca.n_rows, rca.n_cols);
  out.matrix.set_labels(rca.row_labels, rca.col_labels);
  for (std::size_t r = 0; r < rca.n_rows; ++r)
    for (std::size_t c = 0; c < rca.n_cols; ++c) {
      double v = rca.at(r, c);
      out.matrix.set(r, c, strict_greater ? v > threshold : v >= threshold);
    }
  out.empty_rows = out.matrix.empty_rows();
  out.empty_cols = out.matrix.empty_cols();
  for (auto r : out.empty_rows) out.empty_row_names.push_back(out.matrix.row_name(r));
  for (auto c : out.empty_cols) out.empty_col_names.push_back(out.matrix.col_name(c));
  return out;
}

}  // namespace fitcomp
