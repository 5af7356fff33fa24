#pragma once

#include <cstdint>
#include <vector>

#include "fitcomp/matrix.hpp"

namespace fitcomp {

struct EngineParams {
  // Elasticity of the complexity mean. -1 is the standard harmonic update;
  // only negative values make sense (a positive one would reward ubiquity).
  double gamma = -1.0;
  // Values at or below this freeze and leave the dynamics. Keeps 1/F sums
  // representable; must stay above the denormal range.
  double underflow_floor = 1e-280;
  long max_iterations = 100000;
  long record_every = 1;  // trajectory sampling stride
  bool record_complexity = true;

  void validate() const;  // throws Error on nonsense
};

struct IterationState {
  std::vector<double> fitness;     // per row; mean 1 over live rows
  std::vector<double> complexity;  // per column; mean 1 over live columns
  long n = 0;
  std::vector<std::uint8_t> row_collapsed, col_collapsed;
  std::vector<long> row_collapsed_at, col_collapsed_at;  // -1 while live

  std::size_t live_rows() const;
  std::size_t live_cols() const;
};

// Sampled per-entity histories, kept as natural logs so deep decays stay
// measurable long after the linear values stop being interesting.
struct Trajectory {
  std::vector<long> iterations;                      // strictly increasing, starts at 0
  std::vector<std::vector<double>> log_fitness;      // [sample][row]
  std::vector<std::vector<double>> log_complexity;   // empty when not recorded
  std::vector<long> row_collapsed_at, col_collapsed_at;

  std::size_t samples() const { return iterations.size(); }
  std::size_t entities() const { return log_fitness.empty() ? 0 : log_fitness.front().size(); }
  // Index of the sample taken exactly at iteration n, or -1.
  std::ptrdiff_t sample_at(long n) const;
};

// F = Q = 1 everywhere. Rejects matrices with all-zero rows or columns: the
// complexity update is undefined on an empty column and an empty row is stuck
// at zero forever.
IterationState init_uniform(const BipartiteMatrix& m);

// Arbitrary positive start, rescaled to unit mean; complexity starts at 1.
IterationState init_with_fitness(const BipartiteMatrix& m, std::vector<double> f0);

// One full update at iteration n -> n+1: complexity from the current fitness,
// then fitness from the fresh complexity, each renormalized to unit mean over
// live entities. Entities dropping below the floor are frozen there and
// excluded from later sums and means; a frozen country also freezes every
// product it exports (their complexity is pinned to the floor).
IterationState step(const BipartiteMatrix& m, const IterationState& s, const EngineParams& p);

// Update pieces, exposed for cross-checks. Both return raw (unnormalized)
// values; for gamma != -1 the complexity update works in the log domain and
// returns values on an arbitrary common scale.
std::vector<double> complexity_update(const BipartiteMatrix& m,
                                      const std::vector<double>& fitness,
                                      const std::vector<std::uint8_t>& row_collapsed,
                                      const std::vector<std::uint8_t>& col_collapsed,
                                      double gamma);
std::vector<double> fitness_update(const BipartiteMatrix& m,
                                   const std::vector<double>& complexity,
                                   const std::vector<std::uint8_t>& col_collapsed,
                                   const std::vector<std::uint8_t>& row_collapsed);

// Divides live entries by their mean. Frozen entries are left alone and do
// not contribute; once values sit at the floor they must not re-inflate the
// survivors' scale.
void normalize_to_unit_mean(std::vector<double>& v, const std::vector<std::uint8_t>& collapsed);

}  // namespace fitcomp
