#include "fitcomp/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace fitcomp {

using nlohmann::json;

namespace {

json cells_to_json(const std::vector<Cell>& cells) {
  json arr = json::array();
  for (const auto& c : cells) arr.push_back({c.row, c.col});
  return arr;
}

json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << "0x" << std::hex << v;
  return os.str();
}

}  // namespace

json belly_to_json(const BellyReport& b) {
  return json{{"crossing", b.crossing},
              {"crossing_rows", b.crossing_rows},
              {"crossing_cells", cells_to_json(b.crossing_cells)},
              {"external_cells", cells_to_json(b.external_cells)},
              {"diagonal_cells", cells_to_json(b.diagonal)}};
}

json removal_to_json(const RemovalResult& r, const BipartiteMatrix& m) {
  json rounds = json::array();
  for (const auto& round : r.rounds) {
    json jr{{"removed_row", m.row_name(round.removed_row)},
            {"removed_cols", json::array()},
            {"emptied_rows", json::array()},
            {"emptied_cols", json::array()}};
    for (auto c : round.removed_cols) jr["removed_cols"].push_back(m.col_name(c));
    for (auto rr : round.emptied_rows) jr["emptied_rows"].push_back(m.row_name(rr));
    for (auto c : round.emptied_cols) jr["emptied_cols"].push_back(m.col_name(c));
    rounds.push_back(std::move(jr));
  }
  json removed_rows = json::array(), removed_cols = json::array();
  json surviving_rows = json::array(), surviving_cols = json::array();
  for (auto x : r.removed_rows) removed_rows.push_back(m.row_name(x));
  for (auto x : r.removed_cols) removed_cols.push_back(m.col_name(x));
  for (auto x : r.surviving_rows) surviving_rows.push_back(m.row_name(x));
  for (auto x : r.surviving_cols) surviving_cols.push_back(m.col_name(x));
  return json{{"crossing_country", r.crossing_country ? json(r.crossing_country_name) : json()},
              {"removed_rows", removed_rows},
              {"removed_cols", removed_cols},
              {"surviving_rows", surviving_rows},
              {"surviving_cols", surviving_cols},
              {"reduced_rows", r.reduced.rows()},
              {"reduced_cols", r.reduced.cols()},
              {"degenerate", r.degenerate},
              {"rounds", rounds}};
}

json decay_to_json(const DecayReport& d, const BipartiteMatrix& m, Side side) {
  json arr = json::array();
  for (std::size_t e = 0; e < d.entities.size(); ++e) {
    const auto& ent = d.entities[e];
    json je{{"entity", side == Side::Rows ? m.row_name(e) : m.col_name(e)},
            {"class", to_string(ent.cls)},
            {"collapsed", ent.collapsed},
            {"collapsed_at", ent.collapsed_at},
            {"final_value", finite_or_null(ent.final_value)},
            {"loglog_slope", finite_or_null(ent.loglog_slope)},
            {"loglog_drift", finite_or_null(ent.loglog_drift)},
            {"semilog_slope", finite_or_null(ent.semilog_slope)},
            {"semilog_drift", finite_or_null(ent.semilog_drift)}};
    if (ent.cls == DecayClass::Converged || ent.cls == DecayClass::Stationary)
      je["limit"] = ent.limit;
    if (ent.cls == DecayClass::PowerLaw) je["alpha"] = ent.alpha;
    if (ent.cls == DecayClass::Exponential) je["rate"] = ent.rate;
    arr.push_back(std::move(je));
  }
  return arr;
}

json crossing_to_json(const CrossingEstimates& c) {
  json pairs = json::array();
  for (const auto& p : c.pairs) {
    pairs.push_back({{"upper", p.upper},
                     {"lower", p.lower},
                     {"alpha_upper", finite_or_null(p.alpha_upper)},
                     {"alpha_lower", finite_or_null(p.alpha_lower)},
                     {"ci", finite_or_null(p.ci)},
                     {"valid", p.valid},
                     {"diverging", p.diverging},
                     {"parallel", p.parallel}});
  }
  return json{{"at_iteration", c.at_iteration},
              {"mci", finite_or_null(c.mci)},
              {"any_valid", c.any_valid},
              {"pairs", pairs}};
}

json build_run_report(const RunInputs& in, const RunResult& run, const DecayReport& row_decay,
                      const std::optional<DecayReport>& col_decay, const BellyReport& belly,
                      const RemovalResult& removal, const CrossingEstimates& crossings) {
  const BipartiteMatrix& m = in.matrix;
  json fitness = json::array(), complexity = json::array();
  for (double v : run.state.fitness) fitness.push_back(v);
  for (double v : run.state.complexity) complexity.push_back(v);

  json report{
      {"schema_version", kReportSchemaVersion},
      {"input",
       {{"source", in.source},
        {"rows", m.rows()},
        {"cols", m.cols()},
        {"fingerprint", hex64(m.fingerprint())},
        {"dropped_rows", in.sanitation.dropped_row_names},
        {"dropped_cols", in.sanitation.dropped_col_names}}},
      {"params",
       {{"gamma", in.params.gamma},
        {"underflow_floor", in.params.underflow_floor},
        {"max_iterations", in.params.max_iterations},
        {"record_every", in.params.record_every}}},
      {"stopping",
       {{"rule", run.rule},
        {"outcome", to_string(run.outcome)},
        {"iterations", run.stopped_at},
        {"mci", finite_or_null(run.last_mci)},
        {"no_crossing_predicted", run.mci_none_valid}}},
      {"fitness", fitness},
      {"complexity", complexity},
      {"row_collapsed_at", run.state.row_collapsed_at},
      {"col_collapsed_at", run.state.col_collapsed_at},
      {"decay", {{"rows", decay_to_json(row_decay, m, Side::Rows)}}},
      {"belly", belly_to_json(belly)},
      {"removal", removal_to_json(removal, m)},
      {"crossing_estimates", crossing_to_json(crossings)},
  };
  if (col_decay) report["decay"]["cols"] = decay_to_json(*col_decay, m, Side::Cols);
  return report;
}

void write_heatmap_csv(const OrderedMatrix& om, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "row_rank,col_rank,value\n";
  for (std::size_t r = 0; r < om.rows(); ++r)
    for (std::size_t c = 0; c < om.cols(); ++c)
      out << (r + 1) << ',' << (c + 1) << ',' << int(om.at_rank(r, c)) << '\n';
}

json heatmap_sidecar(const OrderedMatrix& om, const BellyReport& b) {
  json row_perm = json::array(), col_perm = json::array();
  for (auto r : om.row_perm) row_perm.push_back(om.base.row_name(r));
  for (auto c : om.col_perm) col_perm.push_back(om.base.col_name(c));
  return json{{"rows", om.rows()},
              {"cols", om.cols()},
              {"row_order", row_perm},
              {"col_order", col_perm},
              {"diagonal_cells", cells_to_json(b.diagonal)},
              {"external_cells", cells_to_json(b.external_cells)},
              {"crossing_cells", cells_to_json(b.crossing_cells)},
              {"crossing", b.crossing},
              {"crossing_rows", b.crossing_rows}};
}

}  // namespace fitcomp
