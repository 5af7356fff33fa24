#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fitcomp/engine.hpp"

namespace fitcomp {

struct DecayParams {
  long delta = 2;            // finite-difference delay for alpha estimates
  long window = 50;          // iterations per slope-stability window
  // Slope drift tolerance between adjacent windows. An exponential settling
  // against a converged survivor still drifts ~0.2% at iteration 200, while
  // a power law's per-iteration slope drifts by window/n (25% there), so
  // 1e-2 separates the two with a wide margin either way.
  double slope_tol = 1e-2;
  double conv_tol = 1e-12;   // per-iteration relative change for convergence
  double alpha_min = 0.05;   // smallest slope magnitude treated as real decay
  double stationary_tol = 1e-14;
  long classify_at = 200;    // minimum trajectory length before classifying
  double floor_hint = 1e-280;

  void validate() const;
};

enum class DecayClass { Converged, PowerLaw, Exponential, Stationary, Undetermined };
std::string to_string(DecayClass c);

struct EntityDecay {
  DecayClass cls = DecayClass::Undetermined;
  double limit = 0;  // Converged: the value settled on
  double alpha = 0;  // PowerLaw: exponent, negative
  double rate = 0;   // Exponential: per-iteration log change, negative
  bool collapsed = false;
  long collapsed_at = -1;
  // diagnostics: trailing-window slopes in both fit spaces and their drift
  double loglog_slope = 0, loglog_drift = 0;
  double semilog_slope = 0, semilog_drift = 0;
  double final_value = 0;
};

struct DecayReport {
  std::vector<EntityDecay> entities;
};

enum class Side { Rows, Cols };

// Finite-difference estimate of the power-law exponent at iteration n:
// (log F(n) - log F(n - delta)) / (log n - log(n - delta)).
// Empty when either sample is missing or frozen.
std::optional<double> estimate_alpha(const Trajectory& traj, std::size_t entity, long n,
                                     long delta);

// One class per entity. Stationary and converged states are recognized
// directly; everything else is decided by competing straight-line fits of
// log F against log n and against n, whichever is stable across two trailing
// windows. Frozen entities are classified from their pre-freeze samples.
DecayReport classify_decay(const Trajectory& traj, const DecayParams& p, Side side = Side::Rows);

struct PairCrossing {
  std::size_t upper = 0, lower = 0;  // entity indices with F[upper] >= F[lower]
  double alpha_upper = 0, alpha_lower = 0;
  double ci = 0;           // predicted crossing iteration
  bool valid = false;      // finite prediction in the future (ci > n)
  bool diverging = false;  // the upper entity decays more slowly; gap widens
  bool parallel = false;   // equal slopes, no prediction possible
};

struct CrossingEstimates {
  long at_iteration = 0;
  std::vector<PairCrossing> pairs;
  bool any_valid = false;
  double mci = 0;  // minimum predicted crossing over valid pairs
};

// Predicted crossing of one adjacent pair assuming both keep their power
// laws: n * (F_up/F_lo)^(1 / (alpha_lo - alpha_up)). May be infinite.
double crossing_iteration(double f_upper, double f_lower, double alpha_upper,
                          double alpha_lower, long n);

// Adjacent-pair estimates from values at n and n - delta. Frozen entities
// carry no rank information and are skipped.
CrossingEstimates crossing_estimates(const std::vector<double>& now,
                                     const std::vector<double>& before,
                                     const std::vector<std::uint8_t>& collapsed, long n,
                                     long delta);

// Same, reading the trajectory's last sample and the one delta back.
CrossingEstimates min_crossing_iteration(const Trajectory& traj, const DecayParams& p,
                                         Side side = Side::Rows);

struct CrossingCount {
  long iteration = 0;
  long count = 0;  // adjacent-rank inversions against the previous sample
};

std::vector<CrossingCount> count_rank_crossings(const Trajectory& traj, Side side = Side::Rows);

}  // namespace fitcomp
