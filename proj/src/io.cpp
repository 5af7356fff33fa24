#include "fitcomp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace fitcomp {

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw Error(path + " is empty");
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

bool is_binary_token(const std::string& t, int& value) {
  if (t == "0") value = 0;
  else if (t == "1") value = 1;
  else return false;
  return true;
}

Error line_error(const std::string& path, std::size_t line_no, const std::string& what) {
  std::ostringstream os;
  os << path << ":" << line_no << ": " << what;
  return Error(os.str());
}

BipartiteMatrix load_dense(const std::string& path) {
  auto lines = read_lines(path);
  auto first = split_csv(lines[0]);
  int v = 0;
  bool labeled = !is_binary_token(first.empty() ? "" : first[0], v);
  std::vector<std::string> col_labels, row_labels;
  std::size_t start = 0;
  if (labeled) {
    // Header row: an ignorable corner cell, then column labels.
    col_labels.assign(first.begin() + 1, first.end());
    start = 1;
    if (lines.size() == 1) throw line_error(path, 1, "header without data rows");
  }
  std::size_t n_cols = labeled ? col_labels.size() : first.size();
  BipartiteMatrix m(lines.size() - start, n_cols);
  for (std::size_t i = start; i < lines.size(); ++i) {
    auto toks = split_csv(lines[i]);
    std::size_t cell0 = 0;
    if (labeled) {
      if (toks.empty()) throw line_error(path, i + 1, "blank row");
      row_labels.push_back(toks[0]);
      cell0 = 1;
    }
    if (toks.size() - cell0 != n_cols)
      throw line_error(path, i + 1, "expected " + std::to_string(n_cols) + " cells, found " +
                                        std::to_string(toks.size() - cell0));
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (!is_binary_token(toks[cell0 + c], v))
        throw line_error(path, i + 1, "cell '" + toks[cell0 + c] + "' is not 0 or 1");
      m.set(i - start, c, v == 1);
    }
  }
  if (labeled) m.set_labels(std::move(row_labels), std::move(col_labels));
  return m;
}

// A pair list carries no line order, so the loader canonicalizes: when the
// labels are exactly the index strings 0..n-1 they are restored as plain
// indices (unlabeled matrices round-trip); otherwise labels sort
// lexicographically.
BipartiteMatrix load_pairs(const std::string& path) {
  auto lines = read_lines(path);
  std::map<std::string, std::size_t> row_ids, col_ids;
  std::vector<std::pair<std::string, std::string>> cells;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto toks = split_csv(lines[i]);
    if (toks.size() != 2 || toks[0].empty() || toks[1].empty())
      throw line_error(path, i + 1, "expected 'row_label,col_label'");
    row_ids.emplace(toks[0], 0);
    col_ids.emplace(toks[1], 0);
    cells.emplace_back(toks[0], toks[1]);
  }
  auto index_like = [](const std::map<std::string, std::size_t>& ids) {
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (!ids.count(std::to_string(i))) return false;
    return true;
  };
  const bool plain = index_like(row_ids) && index_like(col_ids);
  auto assign = [plain](std::map<std::string, std::size_t>& ids) {
    std::size_t next = 0;
    if (plain) {
      for (std::size_t i = 0; i < ids.size(); ++i) ids[std::to_string(i)] = i;
    } else {
      for (auto& [label, id] : ids) id = next++;  // std::map iterates sorted
    }
  };
  assign(row_ids);
  assign(col_ids);
  BipartiteMatrix m(row_ids.size(), col_ids.size());
  for (const auto& [r, c] : cells) m.set(row_ids[r], col_ids[c], true);
  if (!plain) {
    std::vector<std::string> row_labels(row_ids.size()), col_labels(col_ids.size());
    for (const auto& [label, id] : row_ids) row_labels[id] = label;
    for (const auto& [label, id] : col_ids) col_labels[id] = label;
    m.set_labels(std::move(row_labels), std::move(col_labels));
  }
  return m;
}

}  // namespace

BipartiteMatrix load_matrix(const std::string& path, MatrixFormat format) {
  return format == MatrixFormat::DenseCsv ? load_dense(path) : load_pairs(path);
}

BipartiteMatrix load_matrix_auto(const std::string& path) {
  auto lines = read_lines(path);
  auto toks = split_csv(lines[0]);
  // Two non-binary tokens per line is the pair format; anything else is a
  // dense sheet (possibly labeled).
  int v = 0;
  if (toks.size() == 2 && !is_binary_token(toks[0], v) && !is_binary_token(toks[1], v))
    return load_pairs(path);
  return load_dense(path);
}

void save_matrix(const BipartiteMatrix& m, const std::string& path, MatrixFormat format) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  if (format == MatrixFormat::DenseCsv) {
    if (m.has_labels()) {
      out << "label";
      for (std::size_t c = 0; c < m.cols(); ++c) out << ',' << m.col_name(c);
      out << '\n';
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (m.has_labels()) out << m.row_name(r) << ',';
      for (std::size_t c = 0; c < m.cols(); ++c) {
        if (c) out << ',';
        out << int(m.at(r, c));
      }
      out << '\n';
    }
  } else {
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (m.at(r, c)) out << m.row_name(r) << ',' << m.col_name(c) << '\n';
  }
}

std::vector<FlowRecord> load_flows(const std::string& path) {
  auto lines = read_lines(path);
  auto header = split_csv(lines[0]);
  if (header.size() != 3 || header[0] != "exporter" || header[1] != "product" ||
      header[2] != "value")
    throw line_error(path, 1, "expected header 'exporter,product,value'");
  if (lines.size() == 1) throw Error(path + " has no flow records");
  std::vector<FlowRecord> flows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto toks = split_csv(lines[i]);
    if (toks.size() != 3 || toks[0].empty() || toks[1].empty())
      throw line_error(path, i + 1, "expected 'exporter,product,value'");
    double value = 0;
    try {
      std::size_t pos = 0;
      value = std::stod(toks[2], &pos);
      if (pos != toks[2].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw line_error(path, i + 1, "value '" + toks[2] + "' is not a number");
    }
    if (!(value >= 0) || !std::isfinite(value))
      throw line_error(path, i + 1, "value must be finite and non-negative");
    flows.push_back({toks[0], toks[1], value});
  }
  if (flows.empty()) throw Error(path + " has no flow records");
  return flows;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(const Trajectory& traj, const BipartiteMatrix& m,
                          const std::string& path, Side side) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  const auto& data = side == Side::Rows ? traj.log_fitness : traj.log_complexity;
  out << "iteration,entity_id," << (side == Side::Rows ? "log10_fitness" : "log10_complexity")
      << '\n';
  const double ln10 = std::log(10.0);
  for (std::size_t s = 0; s < data.size(); ++s)
    for (std::size_t e = 0; e < data[s].size(); ++e)
      out << traj.iterations[s] << ','
          << (side == Side::Rows ? m.row_name(e) : m.col_name(e)) << ','
          << format_double(data[s][e] / ln10) << '\n';
}

void write_crossing_counts_csv(const std::vector<CrossingCount>& counts,
                               const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "iteration,crossings\n";
  for (const auto& c : counts) out << c.iteration << ',' << c.count << '\n';
}

}  // namespace fitcomp
