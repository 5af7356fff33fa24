#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "fitcomp/decay.hpp"
#include "fitcomp/geometry.hpp"
#include "fitcomp/runner.hpp"

namespace fitcomp {

inline constexpr int kReportSchemaVersion = 1;

struct RunInputs {
  std::string source;  // file path, named matrix or generator spec
  BipartiteMatrix matrix;
  SanitationReport sanitation;
  EngineParams params;
  DecayParams decay_params;
};

nlohmann::json belly_to_json(const BellyReport& b);
nlohmann::json removal_to_json(const RemovalResult& r, const BipartiteMatrix& m);
nlohmann::json decay_to_json(const DecayReport& d, const BipartiteMatrix& m, Side side);
nlohmann::json crossing_to_json(const CrossingEstimates& c);

nlohmann::json build_run_report(const RunInputs& in, const RunResult& run,
                                const DecayReport& row_decay,
                                const std::optional<DecayReport>& col_decay,
                                const BellyReport& belly, const RemovalResult& removal,
                                const CrossingEstimates& crossings);

// Ordered-matrix dump for external plotting: "row_rank,col_rank,value" CSV
// plus a JSON sidecar carrying the permutations, diagonal, external area and
// crossing cells.
void write_heatmap_csv(const OrderedMatrix& om, const std::string& path);
nlohmann::json heatmap_sidecar(const OrderedMatrix& om, const BellyReport& b);

}  // namespace fitcomp
