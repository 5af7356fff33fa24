#include "fitcomp/runner.hpp"

#include <cmath>
#include <deque>
#include <sstream>

namespace fitcomp {

StoppingRule mci_stopping_rule(double threshold, Side side, DecayParams params) {
  if (!(threshold > 0)) throw Error("MCI threshold must be positive");
  return StopOnMci{threshold, side, params};
}

std::string describe(const StoppingRule& rule) {
  std::ostringstream os;
  if (const auto* f = std::get_if<StopAfter>(&rule)) {
    os << "fixed:" << f->iterations;
  } else if (const auto* r = std::get_if<StopOnRelativeChange>(&rule)) {
    os << "rel:" << r->tol;
  } else if (const auto* m = std::get_if<StopOnMci>(&rule)) {
    os << (m->side == Side::Rows ? "mci:" : "mci-products:") << m->threshold;
  }
  return os.str();
}

std::string to_string(StopOutcome o) {
  switch (o) {
    case StopOutcome::RuleFired: return "rule_fired";
    case StopOutcome::BudgetExhausted: return "budget_exhausted";
    case StopOutcome::AllCollapsed: return "all_collapsed";
  }
  return "?";
}

namespace {

void record_sample(Trajectory& traj, const IterationState& s, bool with_complexity) {
  traj.iterations.push_back(s.n);
  std::vector<double> lf(s.fitness.size());
  for (std::size_t i = 0; i < lf.size(); ++i) lf[i] = std::log(s.fitness[i]);
  traj.log_fitness.push_back(std::move(lf));
  if (with_complexity) {
    std::vector<double> lq(s.complexity.size());
    for (std::size_t i = 0; i < lq.size(); ++i) lq[i] = std::log(s.complexity[i]);
    traj.log_complexity.push_back(std::move(lq));
  }
}

double max_relative_change(const std::vector<double>& now, const std::vector<double>& prev,
                           const std::vector<std::uint8_t>& collapsed) {
  double worst = 0;
  for (std::size_t i = 0; i < now.size(); ++i) {
    if (collapsed[i]) continue;
    worst = std::max(worst, std::abs(now[i] - prev[i]) / now[i]);
  }
  return worst;
}

}  // namespace

RunResult iterate(const BipartiteMatrix& m, const IterationState& init, const EngineParams& p,
                  const StoppingRule& rule) {
  p.validate();
  RunResult out;
  out.rule = describe(rule);

  const auto* mci_rule = std::get_if<StopOnMci>(&rule);
  if (mci_rule) mci_rule->params.validate();
  const long delta = mci_rule ? mci_rule->params.delta : 0;

  IterationState s = init;
  record_sample(out.trajectory, s, p.record_complexity);

  if (const auto* f = std::get_if<StopAfter>(&rule); f && f->iterations <= s.n) {
    out.outcome = StopOutcome::RuleFired;
    out.stopped_at = s.n;
    out.trajectory.row_collapsed_at = s.row_collapsed_at;
    out.trajectory.col_collapsed_at = s.col_collapsed_at;
    out.state = std::move(s);
    return out;
  }

  // Recent values for the MCI estimator; the trajectory itself may be
  // sampled too sparsely for a delay of a couple of iterations.
  std::deque<std::pair<long, std::vector<double>>> recent;
  if (mci_rule)
    recent.emplace_back(s.n, mci_rule->side == Side::Rows ? s.fitness : s.complexity);

  bool fired = false;
  while (s.n < p.max_iterations) {
    IterationState next = step(m, s, p);
    const bool all_dead = next.live_rows() == 0 || next.live_cols() == 0;

    if (mci_rule) {
      recent.emplace_back(next.n, mci_rule->side == Side::Rows ? next.fitness : next.complexity);
      while (recent.size() > static_cast<std::size_t>(delta) + 1) recent.pop_front();
    }

    // Stopping checks on the fresh state.
    if (const auto* f = std::get_if<StopAfter>(&rule)) {
      fired = next.n >= f->iterations;
    } else if (const auto* r = std::get_if<StopOnRelativeChange>(&rule)) {
      fired = max_relative_change(next.fitness, s.fitness, next.row_collapsed) < r->tol &&
              max_relative_change(next.complexity, s.complexity, next.col_collapsed) < r->tol;
    } else if (mci_rule && next.n >= mci_rule->params.classify_at &&
               recent.size() == static_cast<std::size_t>(delta) + 1) {
      const auto& collapsed =
          mci_rule->side == Side::Rows ? next.row_collapsed : next.col_collapsed;
      auto est = crossing_estimates(recent.back().second, recent.front().second, collapsed,
                                    next.n, delta);
      out.last_mci = est.mci;
      out.mci_none_valid = !est.any_valid;
      fired = !est.any_valid || est.mci > mci_rule->threshold;
    }

    s = std::move(next);
    const bool final_state = fired || all_dead || s.n >= p.max_iterations;
    if (s.n % p.record_every == 0 || final_state)
      record_sample(out.trajectory, s, p.record_complexity);
    if (all_dead && !fired) {
      out.outcome = StopOutcome::AllCollapsed;
      out.stopped_at = s.n;
      break;
    }
    if (fired) {
      out.outcome = StopOutcome::RuleFired;
      out.stopped_at = s.n;
      break;
    }
  }
  if (!fired && out.outcome != StopOutcome::AllCollapsed) {
    out.outcome = StopOutcome::BudgetExhausted;
    out.stopped_at = s.n;
  }
  out.trajectory.row_collapsed_at = s.row_collapsed_at;
  out.trajectory.col_collapsed_at = s.col_collapsed_at;
  out.state = std::move(s);
  return out;
}

}  // namespace fitcomp
