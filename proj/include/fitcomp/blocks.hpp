#pragma once

#include <optional>
#include <string>

#include "fitcomp/matrix.hpp"

namespace fitcomp {

// Exact fraction, used where floating comparison against 1 would be
// meaningless (regime boundaries).
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);
  static Rational parse(const std::string& text);             // "-1", "-1/2", "-0.5"
  static std::optional<Rational> from_double(double v, long long max_den = 64);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// The four-block matrix family: R2 upper rows over R1 lower rows, C1 left
// columns beside C2 right columns. Block densities, counted anticlockwise
// from the top right: d1 top-right, d2 top-left, d3 bottom-left; the
// bottom-right block is all zeros.
struct BlockSpec {
  long r1 = 1, r2 = 1, c1 = 1, c2 = 1;
  double d1 = 1, d2 = 1, d3 = 1;

  void validate() const;
  bool unit_density() const { return d1 == 1 && d2 == 1 && d3 == 1; }
};

struct ACoefficients {
  std::optional<double> a1;  // only available at unit densities
  double a2 = 0;             // area ratio of the empty block to the internal block
};

ACoefficients a_coefficients(const BlockSpec& spec);

// Lower-group fitness after n steps from the uniform start, unit densities:
// 1 / (A1 * sum_{i<n} A2^i + A2^n), evaluated in a form that cannot overflow.
double closed_form_f2(const BlockSpec& spec, long n);
double closed_form_log_f2(const BlockSpec& spec, long n);  // natural log, any n

// The full two-number state. The mean-1 normalization ties the groups
// together: R2 * upper + R1 * lower = R1 + R2.
struct TwoBlockSolution {
  double upper = 1;  // fitness of each of the R2 diversified rows
  double lower = 1;  // fitness of each of the R1 thin rows
  long n = 0;
};

TwoBlockSolution two_block_solution(const BlockSpec& spec, long n);

enum class Regime { ZeroExponential, ZeroPowerLaw, PositiveLimit };
std::string to_string(Regime r);

struct RegimeReport {
  std::optional<double> a1;
  double a2 = 0;
  Regime regime = Regime::ZeroPowerLaw;
  std::optional<double> limit_value;          // (1-A2)/A1, unit densities with A2<1
  std::optional<double> characteristic_time;  // 1/|A2-1|, undefined on the boundary
  bool inexact_gamma = false;  // boundary decided by a 1e-12 band, not exactly
};

// A2(gamma) = (C2/C1) * (R2/R1)^gamma; gamma = -1 recovers the plain area
// ratio. The three-way comparison against 1 is done in exact integer
// arithmetic when gamma is rational.
RegimeReport classify_regime(const BlockSpec& spec, const Rational& gamma);
RegimeReport classify_regime(const BlockSpec& spec, double gamma);

// R1 on the A2(gamma) = 1 curve for a fixed total row count.
double gamma_frontier(double c1, double c2, double r_total, double gamma);

// Deterministic generator: every block gets exactly its requested density,
// regular in both rows and columns. pattern_seed cyclically shifts the
// patterns inside each block.
BipartiteMatrix generate_block_matrix(const BlockSpec& spec, long pattern_seed = 0);

}  // namespace fitcomp
