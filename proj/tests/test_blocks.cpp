#include <doctest.h>

#include <cmath>
#include <random>

#include "fitcomp/blocks.hpp"
#include "fitcomp/engine.hpp"
#include "fitcomp/gallery.hpp"

using namespace fitcomp;

namespace {

// Independent route to the lower-group fitness: the scalar recursion
// b <- b / (A1 b + A2) stepped directly.
double recursion_f2(double a1, double a2, long n) {
  double b = 1.0;
  for (long i = 0; i < n; ++i) b = b / (a1 * b + a2);
  return b;
}

}  // namespace

TEST_CASE("area coefficients") {
  BlockSpec eq5{.r1 = 3, .r2 = 4, .c1 = 3, .c2 = 6};
  auto a = a_coefficients(eq5);
  CHECK(a.a2 == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(*a.a1 == doctest::Approx(1.5).epsilon(1e-15));

  BlockSpec square{.r1 = 5, .r2 = 5, .c1 = 7, .c2 = 7};
  auto asq = a_coefficients(square);
  CHECK(asq.a2 == 1.0);
  CHECK(*asq.a1 == 1.0);

  BlockSpec unit{.r1 = 1, .r2 = 1, .c1 = 1, .c2 = 1};
  auto au = a_coefficients(unit);
  CHECK(au.a2 == 1.0);
  CHECK(*au.a1 == 1.0);

  BlockSpec dens = eq5;
  dens.d1 = 0.5;
  CHECK_FALSE(a_coefficients(dens).a1.has_value());
  CHECK(a_coefficients(dens).a2 == doctest::Approx(1.5));
}

TEST_CASE("closed form matches the scalar recursion") {
  BlockSpec specs[] = {
      {.r1 = 1, .r2 = 1, .c1 = 1, .c2 = 1},  // A2 = 1
      {.r1 = 3, .r2 = 4, .c1 = 3, .c2 = 6},  // A2 = 1.5
      {.r1 = 1, .r2 = 2, .c1 = 2, .c2 = 1},  // A2 = 0.25
      {.r1 = 9, .r2 = 10, .c1 = 1, .c2 = 1},  // A2 = 0.9
      {.r1 = 11, .r2 = 10, .c1 = 1, .c2 = 1},  // A2 = 1.1
  };
  for (const auto& spec : specs) {
    auto a = a_coefficients(spec);
    for (long n : {0L, 1L, 2L, 10L, 100L, 300L}) {
      double direct = recursion_f2(*a.a1, a.a2, n);
      double closed = closed_form_f2(spec, n);
      CHECK(std::abs(closed - direct) / direct < 1e-12);
    }
  }
}

TEST_CASE("closed form endpoints") {
  BlockSpec unit{.r1 = 1, .r2 = 1, .c1 = 1, .c2 = 1};
  CHECK(closed_form_f2(unit, 10) == doctest::Approx(1.0 / 11.0).epsilon(1e-15));
  BlockSpec any{.r1 = 3, .r2 = 4, .c1 = 3, .c2 = 6};
  CHECK(closed_form_f2(any, 0) == 1.0);

  // A2 < 1 settles at (1-A2)/A1 well within 50 characteristic times.
  BlockSpec low{.r1 = 9, .r2 = 10, .c1 = 1, .c2 = 1};
  auto a = a_coefficients(low);
  double limit = (1.0 - a.a2) / *a.a1;
  long n_star = std::lround(1.0 / (1.0 - a.a2));
  CHECK(std::abs(closed_form_f2(low, 50 * n_star) - limit) < 1e-10);
}

TEST_CASE("iterating the generated matrix reproduces the closed form") {
  BlockSpec specs[] = {
      {.r1 = 1, .r2 = 1, .c1 = 2, .c2 = 1},  // A2 = 0.5
      {.r1 = 2, .r2 = 3, .c1 = 4, .c2 = 6},  // A2 = 1
      {.r1 = 3, .r2 = 4, .c1 = 3, .c2 = 6},  // A2 = 1.5
  };
  EngineParams p;
  for (const auto& spec : specs) {
    auto m = generate_block_matrix(spec);
    auto s = init_uniform(m);
    for (long n = 1; n <= 200; ++n) {
      s = step(m, s, p);
      double expect = closed_form_f2(spec, n);
      CHECK(std::abs(s.fitness.back() - expect) / expect < 1e-8);
    }
  }
}

TEST_CASE("the two-number state satisfies normalization and matches the engine") {
  BlockSpec spec{.r1 = 3, .r2 = 4, .c1 = 3, .c2 = 6};
  auto m = generate_block_matrix(spec);
  EngineParams p;
  auto s = init_uniform(m);
  for (long n = 0; n <= 150; ++n) {
    auto sol = two_block_solution(spec, n);
    double mass = spec.r2 * sol.upper + spec.r1 * sol.lower;
    CHECK(std::abs(mass - double(spec.r1 + spec.r2)) < 1e-12 * mass);
    CHECK(std::abs(sol.upper - s.fitness.front()) / s.fitness.front() < 1e-8);
    CHECK(std::abs(sol.lower - s.fitness.back()) / s.fitness.back() < 1e-8);
    s = step(m, s, p);
  }
}

TEST_CASE("regimes with the standard update") {
  BlockSpec eq5{.r1 = 3, .r2 = 4, .c1 = 3, .c2 = 6};
  auto rep = classify_regime(eq5, Rational(-1, 1));
  CHECK(rep.a2 == doctest::Approx(1.5));
  CHECK(rep.regime == Regime::ZeroExponential);
  CHECK(*rep.characteristic_time == doctest::Approx(2.0));

  BlockSpec crit{.r1 = 101, .r2 = 100, .c1 = 1, .c2 = 1};  // A2 = 1.01
  auto rc = classify_regime(crit, Rational(-1, 1));
  CHECK(rc.regime == Regime::ZeroExponential);
  CHECK(*rc.characteristic_time == doctest::Approx(100.0).epsilon(1e-9));

  BlockSpec low{.r1 = 1, .r2 = 2, .c1 = 2, .c2 = 1};  // A2 = 0.25
  auto rl = classify_regime(low, Rational(-1, 1));
  CHECK(rl.regime == Regime::PositiveLimit);
  CHECK(*rl.limit_value == doctest::Approx((1.0 - 0.25) / *rl.a1));

  BlockSpec unit{.r1 = 1, .r2 = 1, .c1 = 1, .c2 = 1};
  CHECK(classify_regime(unit, Rational(-1, 1)).regime == Regime::ZeroPowerLaw);
  CHECK_FALSE(classify_regime(unit, Rational(-1, 1)).characteristic_time.has_value());
}

TEST_CASE("generalized A2 reduces to the area ratio at gamma=-1") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<long> d(1, 30);
  for (int i = 0; i < 100; ++i) {
    BlockSpec spec{.r1 = d(rng), .r2 = d(rng), .c1 = d(rng), .c2 = d(rng)};
    auto grep = classify_regime(spec, Rational(-1, 1));
    auto a = a_coefficients(spec);
    CHECK(grep.a2 == doctest::Approx(a.a2).epsilon(1e-14));
    // Exact three-way agreement with the plain integer cross comparison.
    long long lhs = static_cast<long long>(spec.c2) * spec.r1;
    long long rhs = static_cast<long long>(spec.c1) * spec.r2;
    Regime expect = lhs > rhs   ? Regime::ZeroExponential
                    : lhs < rhs ? Regime::PositiveLimit
                                : Regime::ZeroPowerLaw;
    CHECK(grep.regime == expect);
  }
}

TEST_CASE("regime boundary is exact for rational gamma") {
  // gamma = -1/2: A2 = (C2/C1) * (R2/R1)^(-1/2); with C2/C1 = 2 and
  // R2/R1 = 4 this is exactly 1.
  BlockSpec spec{.r1 = 2, .r2 = 8, .c1 = 5, .c2 = 10};
  auto rep = classify_regime(spec, Rational(-1, 2));
  CHECK(rep.regime == Regime::ZeroPowerLaw);
  CHECK_FALSE(rep.inexact_gamma);
  spec.r1 = 3;  // nudges A2 above 1
  CHECK(classify_regime(spec, Rational(-1, 2)).regime == Regime::ZeroExponential);
}

TEST_CASE("frontier curve") {
  for (double c1 : {3.0, 10.0})
    for (double c2 : {4.0, 20.0})
      for (double rt : {7.0, 10.0}) {
        CHECK(gamma_frontier(c1, c2, rt, -1.0) ==
              doctest::Approx(rt * c1 / (c1 + c2)).epsilon(1e-12));
        for (double g : {-0.5, -1.0, -2.0, -3.7})
          CHECK(gamma_frontier(c1, c1, rt, g) == doctest::Approx(rt / 2).epsilon(1e-12));
      }
  // 10 * 20^(-1/2) / (10^(-1/2) + 20^(-1/2)) = 10 (sqrt 2 - 1)
  CHECK(gamma_frontier(10, 20, 10, -2.0) ==
        doctest::Approx(10.0 * (std::sqrt(2.0) - 1.0)).epsilon(1e-12));
}

TEST_CASE("generator reproduces the reference layout block by block") {
  BlockSpec spec{.r1 = 3, .r2 = 4, .c1 = 3, .c2 = 6, .d1 = 0.5, .d2 = 1.0, .d3 = 1.0 / 3.0};
  auto m = generate_block_matrix(spec);
  auto ref = gallery_matrix("eq5");
  REQUIRE(m.rows() == 7);
  REQUIRE(m.cols() == 9);
  // Top blocks match the printed pattern cell for cell.
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 9; ++c) CHECK(m.at(r, c) == ref.at(r, c));
  // The bottom-left permutation block is regular at 1/3 and the bottom-right
  // block is empty; the exact permutation may differ from the printed one.
  for (std::size_t r = 4; r < 7; ++r) {
    std::size_t deg = 0;
    for (std::size_t c = 0; c < 3; ++c) deg += m.at(r, c);
    CHECK(deg == 1);
    for (std::size_t c = 3; c < 9; ++c) CHECK(m.at(r, c) == 0);
  }
  for (std::size_t c = 0; c < 3; ++c) {
    std::size_t deg = 0;
    for (std::size_t r = 4; r < 7; ++r) deg += m.at(r, c);
    CHECK(deg == 1);
  }
  // Same dynamics as the printed matrix: the block structure is what counts.
  EngineParams p;
  auto s1 = init_uniform(m);
  auto s2 = init_uniform(ref);
  for (long n = 0; n < 100; ++n) {
    s1 = step(m, s1, p);
    s2 = step(ref, s2, p);
    for (std::size_t r = 0; r < 7; ++r)
      CHECK(std::abs(s1.fitness[r] - s2.fitness[r]) / s2.fitness[r] < 1e-12);
  }
}

TEST_CASE("generator rejects infeasible densities") {
  BlockSpec spec{.r1 = 2, .r2 = 2, .c1 = 3, .c2 = 3, .d3 = 0.5};
  CHECK_THROWS_WITH_AS(generate_block_matrix(spec), doctest::Contains("block 3"), Error);
}

TEST_CASE("full-density spec gives three solid blocks") {
  BlockSpec spec{.r1 = 2, .r2 = 3, .c1 = 2, .c2 = 4};
  auto m = generate_block_matrix(spec);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 6; ++c) CHECK(m.at(r, c) == 1);
  for (std::size_t r = 3; r < 5; ++r) {
    for (std::size_t c = 0; c < 2; ++c) CHECK(m.at(r, c) == 1);
    for (std::size_t c = 2; c < 6; ++c) CHECK(m.at(r, c) == 0);
  }
}

TEST_CASE("density changes leave A2 and the critical sequence alone") {
  // Shape with A2 = 1. Equal frontier densities keep the whole sequence;
  // any feasible densities keep the regime.
  BlockSpec unit{.r1 = 4, .r2 = 8, .c1 = 4, .c2 = 8};
  EngineParams p;
  auto m0 = generate_block_matrix(unit);
  auto s0 = init_uniform(m0);
  std::vector<double> seq0;
  for (long n = 0; n < 150; ++n) {
    s0 = step(m0, s0, p);
    seq0.push_back(s0.fitness.back());
  }
  for (double d1 : {0.25, 0.5, 1.0}) {
    for (double dfront : {0.25, 0.5, 1.0}) {
      BlockSpec spec = unit;
      spec.d1 = d1;
      spec.d2 = spec.d3 = dfront;
      auto m = generate_block_matrix(spec);
      auto s = init_uniform(m);
      for (long n = 0; n < 150; ++n) {
        s = step(m, s, p);
        CHECK(std::abs(s.fitness.back() - seq0[n]) / seq0[n] < 1e-10);
      }
    }
  }
  // d2 != d3 shifts the curve but not the regime: still a power-law decay
  // to zero, here with a different slope constant.
  BlockSpec uneven = unit;
  uneven.d2 = 0.5;
  auto mu = generate_block_matrix(uneven);
  auto su = init_uniform(mu);
  for (long n = 0; n < 2000; ++n) su = step(mu, su, p);
  CHECK(su.fitness.back() > 0);
  CHECK(su.fitness.back() < 1e-2);  // decaying, not settled
  CHECK(su.row_collapsed.back() == 0);  // but nowhere near the floor: power law
}

TEST_CASE("empty internal block: any start is stationary exactly at A2=1") {
  // d2 = 0 disconnects the groups; shapes with A2 = 1 freeze any start.
  BlockSpec spec{.r1 = 2, .r2 = 4, .c1 = 2, .c2 = 4, .d1 = 1, .d2 = 0, .d3 = 1};
  auto m = generate_block_matrix(spec);
  EngineParams p;
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    double upper = u(rng), lower = u(rng);
    std::vector<double> f0(6);
    for (int r = 0; r < 4; ++r) f0[r] = upper;
    for (int r = 4; r < 6; ++r) f0[r] = lower;
    auto s = init_with_fitness(m, f0);
    auto start = s.fitness;
    for (long n = 0; n < 500; ++n) {
      s = step(m, s, p);
      for (std::size_t i = 0; i < 6; ++i)
        CHECK(std::abs(s.fitness[i] - start[i]) / start[i] < 1e-13);
    }
  }
}

TEST_CASE("empty internal block with A2 != 1 starves one group") {
  BlockSpec spec{.r1 = 1, .r2 = 4, .c1 = 2, .c2 = 4, .d1 = 1, .d2 = 0, .d3 = 1};
  auto rep = classify_regime(spec, Rational(-1, 1));
  CHECK(rep.a2 == doctest::Approx(0.5));  // lower group favored
  auto m = generate_block_matrix(spec);
  EngineParams p;
  auto s = init_uniform(m);
  for (long n = 0; n < 400; ++n) s = step(m, s, p);
  CHECK(s.fitness.back() > 1.0);       // lower group holds
  CHECK(s.fitness.front() < 1e-10);    // upper group decays geometrically

  spec.r1 = 4;  // now A2 = 2: the lower group loses instead
  auto m2 = generate_block_matrix(spec);
  auto s2 = init_uniform(m2);
  for (long n = 0; n < 400; ++n) s2 = step(m2, s2, p);
  CHECK(s2.fitness.back() < 1e-10);
  CHECK(s2.fitness.front() > 1.0);
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("-1").value() == -1.0);
  CHECK(Rational::parse("-1/2").value() == -0.5);
  CHECK(Rational::parse("-0.5").value() == -0.5);
  CHECK(Rational::parse("2/4").num == 1);
  CHECK(Rational::parse("2/4").den == 2);
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  auto r = Rational::from_double(-0.25);
  REQUIRE(r.has_value());
  CHECK(r->num == -1);
  CHECK(r->den == 4);
  CHECK_FALSE(Rational::from_double(-3.14159265358979).has_value());
}
