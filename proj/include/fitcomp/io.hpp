#pragma once

#include <string>
#include <vector>

#include "fitcomp/decay.hpp"
#include "fitcomp/engine.hpp"
#include "fitcomp/ingest.hpp"
#include "fitcomp/matrix.hpp"

namespace fitcomp {

enum class MatrixFormat { DenseCsv, SparsePairs };

// Dense CSV: rows of 0/1 cells, optionally wrapped in a label header row and
// a leading label column. Sparse pairs: one "row_label,col_label" line per
// 1-cell. Malformed input reports the offending line number.
BipartiteMatrix load_matrix(const std::string& path, MatrixFormat format);
BipartiteMatrix load_matrix_auto(const std::string& path);  // sniffs the format
void save_matrix(const BipartiteMatrix& m, const std::string& path, MatrixFormat format);

// Flows CSV: header "exporter,product,value", then one record per line.
std::vector<FlowRecord> load_flows(const std::string& path);

// "iteration,entity_id,log10_fitness" (or log10_complexity), one line per
// sample and entity, floats at 17 significant digits.
void write_trajectory_csv(const Trajectory& traj, const BipartiteMatrix& m,
                          const std::string& path, Side side = Side::Rows);

void write_crossing_counts_csv(const std::vector<CrossingCount>& counts,
                               const std::string& path);

std::string format_double(double v);  // %.17g

}  // namespace fitcomp
