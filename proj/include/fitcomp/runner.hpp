#pragma once

#include <string>
#include <variant>

#include "fitcomp/decay.hpp"
#include "fitcomp/engine.hpp"

namespace fitcomp {

struct StopAfter {
  long iterations = 0;
};

// Fires when every live component of F and Q moved by less than tol,
// relatively, in one step. Note this says nothing about the ranking still
// being in flux; the MCI rule exists for that.
struct StopOnRelativeChange {
  double tol = 1e-12;
};

// Fires once the predicted next rank change lies beyond the threshold (or no
// crossing is predicted at all). Checked from classify_at onwards.
struct StopOnMci {
  double threshold = 1e6;
  Side side = Side::Rows;
  DecayParams params{};
};

using StoppingRule = std::variant<StopAfter, StopOnRelativeChange, StopOnMci>;

StoppingRule mci_stopping_rule(double threshold, Side side = Side::Rows, DecayParams params = {});
std::string describe(const StoppingRule& rule);

enum class StopOutcome { RuleFired, BudgetExhausted, AllCollapsed };
std::string to_string(StopOutcome o);

struct RunResult {
  IterationState state;
  Trajectory trajectory;
  StopOutcome outcome = StopOutcome::BudgetExhausted;
  std::string rule;
  long stopped_at = 0;
  double last_mci = 0;          // populated when an MCI rule was active
  bool mci_none_valid = false;  // no pair predicted any future crossing
};

// Drives the iteration to the stopping rule or the budget. Deterministic:
// identical inputs give bit-identical trajectories.
RunResult iterate(const BipartiteMatrix& m, const IterationState& init, const EngineParams& p,
                  const StoppingRule& rule);

}  // namespace fitcomp
