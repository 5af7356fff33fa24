#include "fitcomp/blocks.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numeric>
#include <sstream>

namespace fitcomp {

using boost::multiprecision::cpp_int;

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw Error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    long long n = std::stoll(text.substr(0, slash));
    long long d = std::stoll(text.substr(slash + 1));
    return Rational(n, d);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (frac_len > 18) throw Error("too many decimal places in rational: " + text);
    long long n = std::stoll(digits);
    long long d = 1;
    for (std::size_t i = 0; i < frac_len; ++i) d *= 10;
    return Rational(n, d);
  }
  return Rational(std::stoll(text), 1);
}

std::optional<Rational> Rational::from_double(double v, long long max_den) {
  for (long long d = 1; d <= max_den; ++d) {
    double r = std::round(v * static_cast<double>(d));
    if (std::abs(r) < 9e15 && r / static_cast<double>(d) == v)
      return Rational(static_cast<long long>(r), d);
  }
  return std::nullopt;
}

void BlockSpec::validate() const {
  if (r1 < 1 || r2 < 1 || c1 < 1 || c2 < 1)
    throw Error("block sizes must be positive");
  for (double d : {d1, d2, d3})
    if (!(d >= 0) || !(d <= 1)) throw Error("block densities must lie in [0,1]");
}

ACoefficients a_coefficients(const BlockSpec& spec) {
  spec.validate();
  ACoefficients a;
  a.a2 = static_cast<double>(spec.c2) * static_cast<double>(spec.r1) /
         (static_cast<double>(spec.c1) * static_cast<double>(spec.r2));
  if (spec.unit_density())
    a.a1 = 1.0 + static_cast<double>(spec.c2) * static_cast<double>(spec.r2 - spec.r1) /
                     (static_cast<double>(spec.c1) * static_cast<double>(spec.r2));
  return a;
}

double closed_form_log_f2(const BlockSpec& spec, long n) {
  auto a = a_coefficients(spec);
  if (!a.a1) throw Error("closed form needs unit densities");
  const double a1 = *a.a1, a2 = a.a2;
  if (n < 0) throw Error("closed form needs n >= 0");
  if (n == 0) return 0.0;
  if (a2 == 1.0) return -std::log1p(a1 * static_cast<double>(n));
  if (a2 < 1.0) {
    double geo = (1.0 - std::pow(a2, static_cast<double>(n))) / (1.0 - a2);
    return -std::log(a1 * geo + std::pow(a2, static_cast<double>(n)));
  }
  // A2 > 1: factor A2^n out so nothing overflows.
  double a2mn = std::exp(-static_cast<double>(n) * std::log(a2));
  return -static_cast<double>(n) * std::log(a2) -
         std::log1p(a1 * (1.0 - a2mn) / (a2 - 1.0));
}

double closed_form_f2(const BlockSpec& spec, long n) {
  return std::exp(closed_form_log_f2(spec, n));
}

TwoBlockSolution two_block_solution(const BlockSpec& spec, long n) {
  TwoBlockSolution sol;
  sol.n = n;
  sol.lower = closed_form_f2(spec, n);
  sol.upper = (static_cast<double>(spec.r1 + spec.r2) - static_cast<double>(spec.r1) * sol.lower) /
              static_cast<double>(spec.r2);
  return sol;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::ZeroExponential: return "zero_exponential";
    case Regime::ZeroPowerLaw: return "zero_power_law";
    case Regime::PositiveLimit: return "positive_limit";
  }
  return "?";
}

namespace {

// Sign of A2(gamma) - 1 for gamma = -u/v: compare C2^v * R1^u with C1^v * R2^u.
int a2_vs_one_exact(const BlockSpec& spec, long long u, long long v) {
  auto ipow = [](long long base, long long e) {
    cpp_int r = 1;
    for (long long i = 0; i < e; ++i) r *= base;
    return r;
  };
  cpp_int lhs = ipow(spec.c2, v) * ipow(spec.r1, u);
  cpp_int rhs = ipow(spec.c1, v) * ipow(spec.r2, u);
  if (lhs > rhs) return 1;
  if (lhs < rhs) return -1;
  return 0;
}

RegimeReport report_from_sign(const BlockSpec& spec, double gamma, int sign, bool inexact) {
  RegimeReport rep;
  rep.inexact_gamma = inexact;
  rep.a2 = (static_cast<double>(spec.c2) / static_cast<double>(spec.c1)) *
           std::pow(static_cast<double>(spec.r2) / static_cast<double>(spec.r1), gamma);
  if (gamma == -1.0 && spec.unit_density()) {
    auto a = a_coefficients(spec);
    rep.a1 = a.a1;
  }
  if (sign > 0) {
    rep.regime = Regime::ZeroExponential;
  } else if (sign == 0) {
    rep.regime = Regime::ZeroPowerLaw;
  } else {
    rep.regime = Regime::PositiveLimit;
    if (rep.a1) rep.limit_value = (1.0 - rep.a2) / *rep.a1;
  }
  if (sign != 0) rep.characteristic_time = 1.0 / std::abs(rep.a2 - 1.0);
  return rep;
}

}  // namespace

RegimeReport classify_regime(const BlockSpec& spec, const Rational& gamma) {
  spec.validate();
  if (!(gamma.value() < 0)) throw Error("gamma must be negative");
  long long u = -gamma.num, v = gamma.den;  // gamma = -u/v with u, v > 0
  return report_from_sign(spec, gamma.value(), a2_vs_one_exact(spec, u, v), false);
}

RegimeReport classify_regime(const BlockSpec& spec, double gamma) {
  spec.validate();
  if (!(gamma < 0)) throw Error("gamma must be negative");
  if (auto r = Rational::from_double(gamma)) return classify_regime(spec, *r);
  // Irrational (or wild) gamma: no exact boundary test exists; a narrow band
  // around 1 maps to the power-law regime and is flagged as such.
  double a2 = (static_cast<double>(spec.c2) / static_cast<double>(spec.c1)) *
              std::pow(static_cast<double>(spec.r2) / static_cast<double>(spec.r1), gamma);
  int sign = std::abs(a2 - 1.0) < 1e-12 ? 0 : (a2 > 1.0 ? 1 : -1);
  return report_from_sign(spec, gamma, sign, true);
}

double gamma_frontier(double c1, double c2, double r_total, double gamma) {
  if (!(gamma < 0)) throw Error("gamma must be negative");
  if (!(c1 > 0) || !(c2 > 0) || !(r_total > 0)) throw Error("frontier arguments must be positive");
  double p1 = std::pow(c1, 1.0 / gamma), p2 = std::pow(c2, 1.0 / gamma);
  return r_total * p2 / (p1 + p2);
}

namespace {

// Exact-density regular fill of one block. Prefers the interleaved stride
// pattern when it is feasible (the layout visible in the reference family);
// otherwise lays the ones out round-robin, which is regular for every
// feasible density.
void fill_block(BipartiteMatrix& m, std::size_t r0, std::size_t c0, long h, long w,
                double d, long seed, const char* block_name) {
  double kd = d * static_cast<double>(w);
  double md = d * static_cast<double>(h);
  long k = std::lround(kd);
  long mm = std::lround(md);
  if (std::abs(kd - static_cast<double>(k)) > 1e-9 || std::abs(md - static_cast<double>(mm)) > 1e-9) {
    std::ostringstream msg;
    msg << "infeasible density " << d << " for " << block_name << " (" << h << "x" << w
        << "): needs integral ones per row and per column";
    throw Error(msg.str());
  }
  if (k == 0) return;
  const long s = (w % k == 0) ? w / k : 0;
  const bool stride_ok = s > 0 && h % s == 0;
  for (long i = 0; i < h; ++i) {
    for (long t = 0; t < k; ++t) {
      long j = stride_ok ? (i + t * s + seed) % w : (i * k + t + seed) % w;
      m.set(r0 + static_cast<std::size_t>(i), c0 + static_cast<std::size_t>(j), true);
    }
  }
}

}  // namespace

BipartiteMatrix generate_block_matrix(const BlockSpec& spec, long pattern_seed) {
  spec.validate();
  const long rows = spec.r1 + spec.r2, cols = spec.c1 + spec.c2;
  BipartiteMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  long seed = ((pattern_seed % cols) + cols) % cols;
  fill_block(m, 0, 0, spec.r2, spec.c1, spec.d2, seed % spec.c1, "block 2 (top-left)");
  fill_block(m, 0, static_cast<std::size_t>(spec.c1), spec.r2, spec.c2, spec.d1,
             seed % spec.c2, "block 1 (top-right)");
  fill_block(m, static_cast<std::size_t>(spec.r2), 0, spec.r1, spec.c1, spec.d3,
             seed % spec.c1, "block 3 (bottom-left)");
  return m;
}

}  // namespace fitcomp
