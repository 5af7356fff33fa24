// fitcomp: run the fitness-complexity iteration on binary bipartite matrices
// and characterize its convergence. Subcommands:
//   synth  - emit a generated block matrix or one of the named sample matrices
//   run    - full pipeline: iterate, classify decays, belly test, removal,
//            crossing estimates; writes a JSON report plus CSV sidecars
//   rca    - build a binary matrix from trade flows via Balassa thresholding
//
// Exit codes: 0 ok, 2 input error, 3 degenerate reduction, 4 iteration budget
// exhausted before the stopping rule fired.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>

#include "fitcomp/blocks.hpp"
#include "fitcomp/gallery.hpp"
#include "fitcomp/geometry.hpp"
#include "fitcomp/ingest.hpp"
#include "fitcomp/io.hpp"
#include "fitcomp/report.hpp"
#include "fitcomp/runner.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitBudget = 4;

// Flat key-value record: R1,R2,C1,C2 plus densities (d or d1/d2/d3), an
// optional pattern seed and an optional gamma for the run.
fitcomp::BlockSpec parse_block_spec(const std::string& text, long& seed,
                                    std::optional<std::string>* gamma = nullptr) {
  fitcomp::BlockSpec spec;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw fitcomp::Error("--blocks items look like key=value; got '" + item + "'");
    std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    if (key == "R1") spec.r1 = std::stol(val);
    else if (key == "R2") spec.r2 = std::stol(val);
    else if (key == "C1") spec.c1 = std::stol(val);
    else if (key == "C2") spec.c2 = std::stol(val);
    else if (key == "d") spec.d1 = spec.d2 = spec.d3 = std::stod(val);
    else if (key == "d1") spec.d1 = std::stod(val);
    else if (key == "d2") spec.d2 = std::stod(val);
    else if (key == "d3") spec.d3 = std::stod(val);
    else if (key == "seed") seed = std::stol(val);
    else if (key == "gamma" && gamma) *gamma = val;
    else throw fitcomp::Error("unknown --blocks key '" + key + "'");
  }
  spec.validate();
  return spec;
}

fitcomp::StoppingRule parse_stop(const std::string& text, const fitcomp::DecayParams& dp) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "fixed") return fitcomp::StopAfter{std::stol(arg)};
  if (kind == "rel") return fitcomp::StopOnRelativeChange{std::stod(arg)};
  if (kind == "mci") return fitcomp::mci_stopping_rule(std::stod(arg), fitcomp::Side::Rows, dp);
  if (kind == "mci-products")
    return fitcomp::mci_stopping_rule(std::stod(arg), fitcomp::Side::Cols, dp);
  throw fitcomp::Error("unknown stopping rule '" + text +
                       "' (use fixed:N, rel:TOL, mci:T or mci-products:T)");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw fitcomp::Error("cannot write " + path.string());
  out << text;
}

struct RunOptions {
  fitcomp::EngineParams engine;
  fitcomp::DecayParams decay;
  std::string stop = "mci:1e6";
  std::string out_dir;
  bool skip_removal = false;
  std::optional<fitcomp::BlockSpec> block_spec;  // set for generated inputs
};

int run_one(const std::string& source, const fitcomp::BipartiteMatrix& raw,
            const RunOptions& opt, const fs::path& out_dir) {
  using namespace fitcomp;
  RunInputs in;
  in.source = source;
  in.params = opt.engine;
  in.decay_params = opt.decay;
  in.matrix = drop_empty(raw, &in.sanitation);
  if (in.matrix.empty()) throw Error(source + ": nothing left after dropping empty lines");

  StoppingRule rule = parse_stop(opt.stop, opt.decay);
  RunResult run = iterate(in.matrix, init_uniform(in.matrix), opt.engine, rule);

  DecayReport row_decay = classify_decay(run.trajectory, opt.decay, Side::Rows);
  std::optional<DecayReport> col_decay;
  if (!run.trajectory.log_complexity.empty())
    col_decay = classify_decay(run.trajectory, opt.decay, Side::Cols);

  OrderedMatrix om = order_matrix(in.matrix, run.state);
  BellyReport belly = belly_test(om);
  RemovalResult removal;
  if (!opt.skip_removal) removal = find_crossing_country(in.matrix, opt.engine);

  CrossingEstimates crossings = min_crossing_iteration(run.trajectory, opt.decay, Side::Rows);

  fs::create_directories(out_dir);
  json report = build_run_report(in, run, row_decay, col_decay, belly, removal, crossings);
  if (opt.block_spec) {
    auto regime = classify_regime(*opt.block_spec, opt.engine.gamma);
    report["regime"] = {
        {"a1", regime.a1 ? json(*regime.a1) : json()},
        {"a2", regime.a2},
        {"regime", to_string(regime.regime)},
        {"limit_value", regime.limit_value ? json(*regime.limit_value) : json()},
        {"characteristic_time",
         regime.characteristic_time ? json(*regime.characteristic_time) : json()},
        {"inexact_gamma", regime.inexact_gamma}};
  }
  write_text(out_dir / "report.json", report.dump(2) + "\n");
  write_trajectory_csv(run.trajectory, in.matrix, (out_dir / "trajectory.csv").string());
  if (opt.engine.record_every == 1) {
    auto counts = count_rank_crossings(run.trajectory, Side::Rows);
    write_crossing_counts_csv(counts, (out_dir / "crossing_counts.csv").string());
  }
  write_heatmap_csv(om, (out_dir / "heatmap.csv").string());
  write_text(out_dir / "geometry.json", heatmap_sidecar(om, belly).dump(2) + "\n");

  std::cout << source << ": " << to_string(run.outcome) << " at n=" << run.stopped_at
            << ", crossing=" << (belly.crossing ? "true" : "false");
  if (removal.crossing_country)
    std::cout << ", crossing_country=" << removal.crossing_country_name;
  std::cout << ", report=" << (out_dir / "report.json").string() << '\n';

  if (run.outcome == StopOutcome::BudgetExhausted) return kExitBudget;
  if (!opt.skip_removal && removal.degenerate) return kExitDegenerate;
  return kExitOk;
}

std::string default_out_dir() {
  if (const char* env = std::getenv("FITCOMP_OUT")) return env;
  return "fitcomp_out";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fitness-complexity convergence toolkit"};
  app.require_subcommand(1);

  // --- synth ---
  auto* synth = app.add_subcommand("synth", "emit a block-generated or named matrix");
  std::string synth_named, synth_blocks, synth_out = "matrix.csv", synth_format = "dense";
  synth->add_option("--named", synth_named,
                    "named matrix (eq5, blockdiag, monopoly6, common4, threeblock, "
                    "threeblock34, exp45, A..G)");
  synth->add_option("--blocks", synth_blocks,
                    "block spec, e.g. R1=3,R2=4,C1=3,C2=6,d=1 (d1/d2/d3/seed also accepted)");
  synth->add_option("-o,--out", synth_out, "output file");
  synth->add_option("--format", synth_format, "dense|sparse")
      ->check(CLI::IsMember({"dense", "sparse"}));

  // --- run ---
  auto* run = app.add_subcommand("run", "iterate a matrix and report its convergence");
  std::vector<std::string> run_inputs;
  std::string run_named, run_blocks, run_stop = "mci:1e6";
  std::string run_out = default_out_dir();
  RunOptions opt;
  long run_jobs = 1;
  run->add_option("matrix", run_inputs, "matrix file(s), dense CSV or sparse pairs");
  run->add_option("--named", run_named, "use a named matrix instead of a file");
  run->add_option("--blocks", run_blocks, "use a generated block matrix");
  run->add_option("--stop", run_stop, "stopping rule: fixed:N, rel:TOL, mci:T, mci-products:T");
  run->add_option("--gamma", opt.engine.gamma, "complexity elasticity (negative)");
  run->add_option("--floor", opt.engine.underflow_floor, "collapse floor");
  run->add_option("--max-iter", opt.engine.max_iterations, "iteration budget");
  run->add_option("--record-every", opt.engine.record_every, "trajectory sampling stride");
  run->add_option("--delta", opt.decay.delta, "alpha-estimate delay");
  run->add_option("--window", opt.decay.window, "classification window (iterations)");
  run->add_option("--classify-at", opt.decay.classify_at, "earliest classification iteration");
  run->add_option("--out-dir", run_out, "output directory (env FITCOMP_OUT)");
  run->add_flag("--no-removal", opt.skip_removal, "skip the removal analysis");
  run->add_option("--jobs", run_jobs, "parallel runs across input matrices");

  // --- rca ---
  auto* rca = app.add_subcommand("rca", "threshold trade flows into a binary matrix");
  std::string rca_flows, rca_out = "matrix.csv", rca_report;
  double rca_threshold = 1.0;
  bool rca_strict = false;
  rca->add_option("--flows", rca_flows, "flows CSV (exporter,product,value)")->required();
  rca->add_option("-o,--out", rca_out, "output matrix file");
  rca->add_option("--threshold", rca_threshold, "advantage threshold");
  rca->add_flag("--strict-greater", rca_strict, "use RCA > threshold instead of >=");
  rca->add_option("--report", rca_report, "write the sanitation report JSON here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      if (synth_named.empty() == synth_blocks.empty())
        throw fitcomp::Error("synth needs exactly one of --named / --blocks");
      fitcomp::BipartiteMatrix m;
      if (!synth_named.empty()) {
        m = fitcomp::gallery_matrix(synth_named);
      } else {
        long seed = 0;
        m = fitcomp::generate_block_matrix(parse_block_spec(synth_blocks, seed), seed);
      }
      fitcomp::save_matrix(m, synth_out,
                           synth_format == "dense" ? fitcomp::MatrixFormat::DenseCsv
                                                   : fitcomp::MatrixFormat::SparsePairs);
      std::cout << synth_out << ": " << m.rows() << "x" << m.cols() << ", " << m.ones()
                << " ones\n";
      return kExitOk;
    }

    if (run->parsed()) {
      opt.stop = run_stop;
      opt.engine.validate();
      opt.decay.validate();
      struct Job {
        std::string source;
        fitcomp::BipartiteMatrix matrix;
        fs::path out_dir;
        std::optional<fitcomp::BlockSpec> spec;
      };
      std::vector<Job> jobs;
      if (!run_named.empty()) {
        jobs.push_back({"named:" + run_named, fitcomp::gallery_matrix(run_named), run_out, {}});
      } else if (!run_blocks.empty()) {
        long seed = 0;
        std::optional<std::string> gamma;
        auto spec = parse_block_spec(run_blocks, seed, &gamma);
        if (gamma) opt.engine.gamma = fitcomp::Rational::parse(*gamma).value();
        jobs.push_back(
            {"blocks:" + run_blocks, fitcomp::generate_block_matrix(spec, seed), run_out, spec});
      }
      for (const auto& path : run_inputs)
        jobs.push_back({path, fitcomp::load_matrix_auto(path), "", {}});
      if (jobs.empty()) throw fitcomp::Error("run needs a matrix file, --named or --blocks");
      // One directory per input when several run together.
      if (jobs.size() == 1) {
        jobs[0].out_dir = run_out;
      } else {
        for (auto& j : jobs)
          j.out_dir = fs::path(run_out) / fs::path(j.source).stem();
      }
      opt.engine.validate();
      auto run_job = [&opt](const Job& j) {
        RunOptions job_opt = opt;
        job_opt.block_spec = j.spec;
        return run_one(j.source, j.matrix, job_opt, j.out_dir);
      };
      int worst = kExitOk;
      if (run_jobs <= 1 || jobs.size() == 1) {
        for (const auto& j : jobs) worst = std::max(worst, run_job(j));
      } else {
        std::vector<std::future<int>> futures;
        for (const auto& j : jobs)
          futures.push_back(std::async(std::launch::async, [&run_job, &j] { return run_job(j); }));
        for (auto& f : futures) worst = std::max(worst, f.get());
      }
      return worst;
    }

    if (rca->parsed()) {
      auto flows = fitcomp::load_flows(rca_flows);
      auto rca_matrix = fitcomp::compute_rca(flows);
      auto bin = fitcomp::binarize(rca_matrix, rca_threshold, rca_strict);
      fitcomp::save_matrix(bin.matrix, rca_out, fitcomp::MatrixFormat::DenseCsv);
      json report{{"rows", bin.matrix.rows()},
                  {"cols", bin.matrix.cols()},
                  {"ones", bin.matrix.ones()},
                  {"threshold", rca_threshold},
                  {"strict_greater", rca_strict},
                  {"empty_rows", bin.empty_row_names},
                  {"empty_cols", bin.empty_col_names}};
      if (!rca_report.empty())
        write_text(rca_report, report.dump(2) + "\n");
      else
        std::cout << report.dump(2) << '\n';
      if (bin.matrix.ones() == 0) throw fitcomp::Error("threshold leaves an all-zero matrix");
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
