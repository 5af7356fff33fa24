#include "fitcomp/engine.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>

namespace fitcomp {

void EngineParams::validate() const {
  if (!(gamma < 0)) throw Error("gamma must be negative");
  if (!(underflow_floor > 0) || underflow_floor < DBL_MIN)
    throw Error("underflow_floor must be positive and above the denormal range");
  if (max_iterations < 0) throw Error("max_iterations must be >= 0");
  if (record_every < 1) throw Error("record_every must be >= 1");
}

std::size_t IterationState::live_rows() const {
  std::size_t n = 0;
  for (auto c : row_collapsed) n += (c == 0);
  return n;
}

std::size_t IterationState::live_cols() const {
  std::size_t n = 0;
  for (auto c : col_collapsed) n += (c == 0);
  return n;
}

std::ptrdiff_t Trajectory::sample_at(long n) const {
  auto it = std::lower_bound(iterations.begin(), iterations.end(), n);
  if (it == iterations.end() || *it != n) return -1;
  return it - iterations.begin();
}

IterationState init_uniform(const BipartiteMatrix& m) {
  if (m.empty()) throw Error("matrix is empty");
  auto er = m.empty_rows();
  auto ec = m.empty_cols();
  if (!er.empty() || !ec.empty()) {
    std::ostringstream msg;
    msg << "matrix has all-zero lines, drop them before iterating:";
    for (auto r : er) msg << " row " << m.row_name(r);
    for (auto c : ec) msg << " col " << m.col_name(c);
    throw Error(msg.str());
  }
  IterationState s;
  s.fitness.assign(m.rows(), 1.0);
  s.complexity.assign(m.cols(), 1.0);
  s.row_collapsed.assign(m.rows(), 0);
  s.col_collapsed.assign(m.cols(), 0);
  s.row_collapsed_at.assign(m.rows(), -1);
  s.col_collapsed_at.assign(m.cols(), -1);
  s.n = 0;
  return s;
}

IterationState init_with_fitness(const BipartiteMatrix& m, std::vector<double> f0) {
  IterationState s = init_uniform(m);
  if (f0.size() != m.rows()) throw Error("initial fitness size mismatch");
  for (double v : f0)
    if (!(v > 0) || !std::isfinite(v)) throw Error("initial fitness must be positive and finite");
  s.fitness = std::move(f0);
  normalize_to_unit_mean(s.fitness, s.row_collapsed);
  return s;
}

void normalize_to_unit_mean(std::vector<double>& v, const std::vector<std::uint8_t>& collapsed) {
  long double sum = 0.0L;
  std::size_t count = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!collapsed[i]) {
      sum += v[i];
      ++count;
    }
  }
  if (count == 0) return;
  const long double mean = sum / static_cast<long double>(count);
  if (!(mean > 0.0L) || !std::isfinite(static_cast<double>(mean)))
    throw Error("normalization mean is not positive finite");
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!collapsed[i]) v[i] = static_cast<double>(v[i] / mean);
}

std::vector<double> complexity_update(const BipartiteMatrix& m,
                                      const std::vector<double>& fitness,
                                      const std::vector<std::uint8_t>& row_collapsed,
                                      const std::vector<std::uint8_t>& col_collapsed,
                                      double gamma) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<double> out(C, 0.0);
  if (gamma == -1.0) {
    // Harmonic form: Q_p = 1 / sum_c M_cp / F_c. Live fitness is floored, so
    // the reciprocal sum cannot overflow.
    for (std::size_t p = 0; p < C; ++p) {
      if (col_collapsed[p]) continue;
      long double acc = 0.0L;
      for (std::size_t c = 0; c < R; ++c)
        if (m.at(c, p) && !row_collapsed[c]) acc += 1.0L / fitness[c];
      out[p] = acc > 0.0L ? static_cast<double>(1.0L / acc) : 0.0;
    }
    return out;
  }
  // Generalized mean, log domain: log Q_p = gamma * LSE_c(log F_c / gamma).
  // F^(1/gamma) can overflow in linear arithmetic once values sit near the
  // floor, so everything stays logarithmic until a common shift at the end.
  std::vector<double> logf(R, 0.0);
  for (std::size_t c = 0; c < R; ++c)
    if (!row_collapsed[c]) logf[c] = std::log(fitness[c]) / gamma;
  std::vector<double> logq(C, 0.0);
  double max_logq = -HUGE_VAL;
  for (std::size_t p = 0; p < C; ++p) {
    if (col_collapsed[p]) continue;
    double hi = -HUGE_VAL;
    for (std::size_t c = 0; c < R; ++c)
      if (m.at(c, p) && !row_collapsed[c]) hi = std::max(hi, logf[c]);
    if (hi == -HUGE_VAL) continue;  // no live exporter
    long double acc = 0.0L;
    for (std::size_t c = 0; c < R; ++c)
      if (m.at(c, p) && !row_collapsed[c]) acc += std::exp(logf[c] - hi);
    logq[p] = gamma * (hi + std::log(static_cast<double>(acc)));
    max_logq = std::max(max_logq, logq[p]);
  }
  if (max_logq == -HUGE_VAL) return out;
  // The shift rescales everything by a common factor; normalization removes it.
  for (std::size_t p = 0; p < C; ++p)
    if (!col_collapsed[p]) out[p] = std::exp(logq[p] - max_logq);
  return out;
}

std::vector<double> fitness_update(const BipartiteMatrix& m,
                                   const std::vector<double>& complexity,
                                   const std::vector<std::uint8_t>& col_collapsed,
                                   const std::vector<std::uint8_t>& row_collapsed) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<double> out(R, 0.0);
  for (std::size_t c = 0; c < R; ++c) {
    if (row_collapsed[c]) continue;
    long double acc = 0.0L;
    for (std::size_t p = 0; p < C; ++p)
      if (m.at(c, p) && !col_collapsed[p]) acc += complexity[p];
    out[c] = static_cast<double>(acc);
  }
  return out;
}

IterationState step(const BipartiteMatrix& m, const IterationState& s, const EngineParams& p) {
  if (s.fitness.size() != m.rows() || s.complexity.size() != m.cols())
    throw Error("state does not match matrix");
  IterationState t = s;
  t.n = s.n + 1;

  // Complexity from the previous fitness, then renormalize and freeze
  // anything that dipped below the floor.
  auto q = complexity_update(m, s.fitness, s.row_collapsed, s.col_collapsed, p.gamma);
  for (std::size_t i = 0; i < q.size(); ++i)
    if (s.col_collapsed[i]) q[i] = s.complexity[i];
  normalize_to_unit_mean(q, s.col_collapsed);
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!t.col_collapsed[i] && q[i] < p.underflow_floor) {
      t.col_collapsed[i] = 1;
      t.col_collapsed_at[i] = t.n;
      q[i] = p.underflow_floor;
    }
  }
  t.complexity = std::move(q);

  // Fitness from the fresh complexity.
  auto f = fitness_update(m, t.complexity, t.col_collapsed, s.row_collapsed);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (s.row_collapsed[i]) f[i] = s.fitness[i];
  normalize_to_unit_mean(f, s.row_collapsed);
  t.fitness = std::move(f);
  for (std::size_t i = 0; i < t.fitness.size(); ++i) {
    if (!t.row_collapsed[i] && t.fitness[i] < p.underflow_floor) {
      t.row_collapsed[i] = 1;
      t.row_collapsed_at[i] = t.n;
      t.fitness[i] = p.underflow_floor;
      // A dead country pins every product it exports: their complexity is
      // dominated by the smallest exporter fitness and follows it down.
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m.at(i, j) && !t.col_collapsed[j]) {
          t.col_collapsed[j] = 1;
          t.col_collapsed_at[j] = t.n;
          t.complexity[j] = p.underflow_floor;
        }
      }
    }
  }
  return t;
}

}  // namespace fitcomp
