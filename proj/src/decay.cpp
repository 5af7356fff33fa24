#include "fitcomp/decay.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fitcomp {

void DecayParams::validate() const {
  if (delta < 1) throw Error("delta must be >= 1");
  if (window <= delta) throw Error("window must exceed delta");
  if (!(slope_tol > 0) || !(conv_tol > 0) || !(alpha_min > 0) || !(stationary_tol > 0))
    throw Error("decay tolerances must be positive");
  if (classify_at < 1) throw Error("classify_at must be >= 1");
}

std::string to_string(DecayClass c) {
  switch (c) {
    case DecayClass::Converged: return "converged";
    case DecayClass::PowerLaw: return "power_law";
    case DecayClass::Exponential: return "exponential";
    case DecayClass::Stationary: return "stationary";
    case DecayClass::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

const std::vector<std::vector<double>>& series(const Trajectory& traj, Side side) {
  return side == Side::Rows ? traj.log_fitness : traj.log_complexity;
}

const std::vector<long>& collapse_marks(const Trajectory& traj, Side side) {
  return side == Side::Rows ? traj.row_collapsed_at : traj.col_collapsed_at;
}

struct Fit {
  double slope = 0;
  bool ok = false;
};

// OLS slope of y against x over samples [lo, hi] (indices into the series).
Fit fit_slope(const Trajectory& traj, Side side, std::size_t entity, std::size_t lo,
              std::size_t hi, bool log_x) {
  Fit f;
  if (hi <= lo + 1) return f;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t k = 0;
  const auto& data = series(traj, side);
  for (std::size_t i = lo; i <= hi; ++i) {
    long n = traj.iterations[i];
    if (log_x && n < 1) continue;
    double x = log_x ? std::log(static_cast<double>(n)) : static_cast<double>(n);
    double y = data[i][entity];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  if (k < 3) return f;
  double denom = static_cast<double>(k) * sxx - sx * sx;
  if (denom == 0) return f;
  f.slope = (static_cast<double>(k) * sxy - sx * sy) / denom;
  f.ok = true;
  return f;
}

// Largest sample index with iteration <= n_max.
std::ptrdiff_t last_sample_leq(const Trajectory& traj, long n_max) {
  auto it = std::upper_bound(traj.iterations.begin(), traj.iterations.end(), n_max);
  if (it == traj.iterations.begin()) return -1;
  return (it - traj.iterations.begin()) - 1;
}

// First sample index with iteration >= n_min.
std::ptrdiff_t first_sample_geq(const Trajectory& traj, long n_min) {
  auto it = std::lower_bound(traj.iterations.begin(), traj.iterations.end(), n_min);
  if (it == traj.iterations.end()) return -1;
  return it - traj.iterations.begin();
}

}  // namespace

std::optional<double> estimate_alpha(const Trajectory& traj, std::size_t entity, long n,
                                     long delta) {
  if (n - delta < 1) return std::nullopt;
  auto i1 = traj.sample_at(n);
  auto i0 = traj.sample_at(n - delta);
  if (i0 < 0 || i1 < 0) return std::nullopt;
  const auto& marks = traj.row_collapsed_at;
  if (entity < marks.size() && marks[entity] >= 0 && marks[entity] <= n) return std::nullopt;
  double y1 = traj.log_fitness[i1][entity];
  double y0 = traj.log_fitness[i0][entity];
  return (y1 - y0) / (std::log(static_cast<double>(n)) - std::log(static_cast<double>(n - delta)));
}

DecayReport classify_decay(const Trajectory& traj, const DecayParams& p, Side side) {
  p.validate();
  const auto& data = series(traj, side);
  if (data.empty()) throw Error("trajectory has no samples for this side");
  if (traj.iterations.back() < p.classify_at)
    throw Error("trajectory shorter than classify_at");
  const std::size_t n_entities = data.front().size();
  const auto& marks = collapse_marks(traj, side);

  DecayReport rep;
  rep.entities.resize(n_entities);
  for (std::size_t e = 0; e < n_entities; ++e) {
    EntityDecay& d = rep.entities[e];
    d.collapsed_at = e < marks.size() ? marks[e] : -1;
    d.collapsed = d.collapsed_at >= 0;

    // Frozen entities are read up to the last live sample.
    long n_end = d.collapsed ? d.collapsed_at - 1 : traj.iterations.back();
    std::ptrdiff_t end = last_sample_leq(traj, n_end);
    if (end < 1) continue;  // nothing usable: stays Undetermined
    n_end = traj.iterations[end];
    d.final_value = std::exp(data[end][e]);

    // Stationary: never moved off the (normalized) start.
    double y0 = data[0][e];
    double moved = 0;
    for (std::ptrdiff_t i = 0; i <= end; ++i)
      moved = std::max(moved, std::abs(std::expm1(data[i][e] - y0)));
    if (moved <= p.stationary_tol) {
      d.cls = DecayClass::Stationary;
      d.limit = d.final_value;
      continue;
    }

    // Converged: per-iteration relative change dropped below tolerance over
    // the whole trailing window and the value is nowhere near the floor.
    std::ptrdiff_t wlo = first_sample_geq(traj, n_end - p.window);
    bool conv = wlo >= 0 && wlo < end && !d.collapsed && d.final_value > 1e3 * p.floor_hint;
    if (conv) {
      for (std::ptrdiff_t i = wlo; i < end; ++i) {
        double dy = (data[i + 1][e] - data[i][e]) /
                    static_cast<double>(traj.iterations[i + 1] - traj.iterations[i]);
        if (std::abs(std::expm1(dy)) >= p.conv_tol) {
          conv = false;
          break;
        }
      }
    }
    if (conv) {
      d.cls = DecayClass::Converged;
      d.limit = d.final_value;
      continue;
    }

    // Competing fits over the two trailing windows.
    std::ptrdiff_t lo1 = first_sample_geq(traj, n_end - p.window);
    std::ptrdiff_t lo2 = first_sample_geq(traj, n_end - 2 * p.window);
    std::ptrdiff_t hi2 = last_sample_leq(traj, n_end - p.window);
    if (lo1 < 0 || lo2 < 0 || hi2 <= lo2 || hi2 > end) continue;
    Fit ll1 = fit_slope(traj, side, e, lo1, end, true);
    Fit ll2 = fit_slope(traj, side, e, lo2, hi2, true);
    Fit sl1 = fit_slope(traj, side, e, lo1, end, false);
    Fit sl2 = fit_slope(traj, side, e, lo2, hi2, false);
    if (!(ll1.ok && ll2.ok && sl1.ok && sl2.ok)) continue;
    d.loglog_slope = ll1.slope;
    d.loglog_drift = std::abs(ll1.slope - ll2.slope);
    d.semilog_slope = sl1.slope;
    d.semilog_drift = std::abs(sl1.slope - sl2.slope);
    bool stable_ll = d.loglog_drift <= p.slope_tol * std::max(std::abs(ll1.slope), 1.0);
    bool stable_sl = d.semilog_drift <= p.slope_tol * std::max(std::abs(sl1.slope), 1e-9);

    // A per-iteration slope of s looks like a power law of exponent s*n at
    // this horizon; when that is below alpha_min the decay is invisible on
    // the power-law scale and only the log-log fit can speak.
    const double expo_scale = std::abs(sl1.slope) * static_cast<double>(n_end);
    if (expo_scale < p.alpha_min) {
      if (stable_ll && std::abs(ll1.slope) < p.alpha_min &&
          d.final_value > 1e3 * p.floor_hint && !d.collapsed) {
        d.cls = DecayClass::Converged;
        d.limit = d.final_value;
      } else if (stable_ll && ll1.slope <= -p.alpha_min) {
        d.cls = DecayClass::PowerLaw;
        d.alpha = ll1.slope;
      }
      continue;
    }
    if (stable_ll && ll1.slope <= -p.alpha_min) {
      d.cls = DecayClass::PowerLaw;
      d.alpha = ll1.slope;
    } else if ((stable_sl || d.collapsed) && sl1.slope < 0) {
      // Hitting the floor is itself conclusive: no power law crosses
      // hundreds of decades at these horizons, so a frozen entity is
      // exponential even when a late structural kink (a co-exported product
      // dying) spoils the drift test.
      d.cls = DecayClass::Exponential;
      d.rate = sl1.slope;
    }
  }
  return rep;
}

double crossing_iteration(double f_upper, double f_lower, double alpha_upper,
                          double alpha_lower, long n) {
  if (!(f_upper >= f_lower) || !(f_lower > 0)) throw Error("pair must be fitness-ordered and positive");
  double dalpha = alpha_lower - alpha_upper;
  if (dalpha == 0) return HUGE_VAL;  // parallel, never predicted to meet
  double log_ci = std::log(static_cast<double>(n)) + std::log(f_upper / f_lower) / dalpha;
  return std::exp(log_ci);
}

CrossingEstimates crossing_estimates(const std::vector<double>& now,
                                     const std::vector<double>& before,
                                     const std::vector<std::uint8_t>& collapsed, long n,
                                     long delta) {
  if (now.size() != before.size()) throw Error("value vectors differ in size");
  if (n - delta < 1) throw Error("crossing estimates need n - delta >= 1");
  CrossingEstimates est;
  est.at_iteration = n;

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < now.size(); ++i)
    if (collapsed.empty() || !collapsed[i]) order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return now[a] > now[b]; });

  const double log_dn =
      std::log(static_cast<double>(n)) - std::log(static_cast<double>(n - delta));
  est.mci = HUGE_VAL;
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    PairCrossing pc;
    pc.upper = order[k];
    pc.lower = order[k + 1];
    pc.alpha_upper = std::log(now[pc.upper] / before[pc.upper]) / log_dn;
    pc.alpha_lower = std::log(now[pc.lower] / before[pc.lower]) / log_dn;
    pc.parallel = pc.alpha_upper == pc.alpha_lower;
    pc.diverging = pc.alpha_upper > pc.alpha_lower;
    pc.ci = crossing_iteration(now[pc.upper], now[pc.lower], pc.alpha_upper, pc.alpha_lower, n);
    pc.valid = std::isfinite(pc.ci) && pc.ci > static_cast<double>(n);
    if (pc.valid) {
      est.any_valid = true;
      est.mci = std::min(est.mci, pc.ci);
    }
    est.pairs.push_back(pc);
  }
  if (!est.any_valid) est.mci = HUGE_VAL;
  return est;
}

CrossingEstimates min_crossing_iteration(const Trajectory& traj, const DecayParams& p,
                                         Side side) {
  p.validate();
  const auto& data = series(traj, side);
  if (data.empty()) throw Error("trajectory has no samples for this side");
  long n = traj.iterations.back();
  auto inow = traj.sample_at(n);
  auto ibefore = traj.sample_at(n - p.delta);
  if (ibefore < 0)
    throw Error("trajectory lacks the sample delta iterations back");
  const auto& marks = collapse_marks(traj, side);
  std::size_t k = data.front().size();
  std::vector<double> now(k), before(k);
  std::vector<std::uint8_t> dead(k, 0);
  for (std::size_t e = 0; e < k; ++e) {
    now[e] = std::exp(data[inow][e]);
    before[e] = std::exp(data[ibefore][e]);
    if (e < marks.size() && marks[e] >= 0 && marks[e] <= n) dead[e] = 1;
  }
  return crossing_estimates(now, before, dead, n, p.delta);
}

namespace {

// Discordant adjacent-sample pairs, i.e. the Kendall distance between the two
// rankings: merge-count of strict inversions.
long count_inversions(std::vector<double> values, std::vector<std::size_t> idx) {
  std::vector<std::size_t> buf(idx.size());
  long count = 0;
  for (std::size_t width = 1; width < idx.size(); width *= 2) {
    for (std::size_t lo = 0; lo + width < idx.size(); lo += 2 * width) {
      std::size_t mid = lo + width, hi = std::min(lo + 2 * width, idx.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (values[idx[j]] > values[idx[i]]) {  // strict: ties are concordant
          count += static_cast<long>(mid - i);
          buf[k++] = idx[j++];
        } else {
          buf[k++] = idx[i++];
        }
      }
      while (i < mid) buf[k++] = idx[i++];
      while (j < hi) buf[k++] = idx[j++];
      std::copy(buf.begin() + lo, buf.begin() + hi, idx.begin() + lo);
    }
  }
  return count;
}

}  // namespace

std::vector<CrossingCount> count_rank_crossings(const Trajectory& traj, Side side) {
  const auto& data = series(traj, side);
  std::vector<CrossingCount> out;
  if (data.size() < 2) return out;
  const std::size_t k = data.front().size();
  for (std::size_t s = 1; s < data.size(); ++s) {
    // Order by the previous sample (descending, ties by index), then count
    // how many pairs the new sample flips.
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const auto& prev = data[s - 1];
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return prev[a] > prev[b]; });
    std::vector<double> now(k);
    for (std::size_t e = 0; e < k; ++e) now[e] = data[s][e];
    out.push_back({traj.iterations[s], count_inversions(std::move(now), std::move(idx))});
  }
  return out;
}

}  // namespace fitcomp
