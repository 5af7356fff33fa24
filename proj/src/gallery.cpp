#include "fitcomp/gallery.hpp"

#include <map>

namespace fitcomp {

namespace {

using Rows = std::vector<std::vector<int>>;

const std::map<std::string, Rows>& table() {
  // Each entry notes the per-row long-run behavior under the uniform start:
  // c = positive limit, n^-a = power-law decay, e = exponential decay,
  // s = stationary.
  static const std::map<std::string, Rows> t = {
      // Two-block family sample: upper 4 rows diversified, lower 3 rows on a
      // thin left block; the lower group decays exponentially (A2 = 1.5).
      {"eq5",
       {{1, 1, 1, 1, 0, 1, 0, 1, 0},
        {1, 1, 1, 0, 1, 0, 1, 0, 1},
        {1, 1, 1, 1, 0, 1, 0, 1, 0},
        {1, 1, 1, 0, 1, 0, 1, 0, 1},
        {0, 1, 0, 0, 0, 0, 0, 0, 0},
        {1, 0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 1, 0, 0, 0, 0, 0, 0}}},
      // Disconnected blocks: every start is a fixed point (all s).
      {"blockdiag",
       {{0, 0, 0, 0, 1, 1},
        {0, 0, 0, 0, 1, 1},
        {0, 0, 0, 1, 0, 0},
        {1, 1, 1, 0, 0, 0},
        {1, 1, 1, 0, 0, 0},
        {1, 1, 1, 0, 0, 0}}},
      // One monopoly on top of a common-products pool: c, n^-1, n^-1, n^-2 x3.
      {"monopoly6",
       {{1, 1, 1, 1, 0, 1},
        {1, 1, 1, 1, 1, 0},
        {1, 1, 0, 1, 1, 0},
        {0, 1, 1, 0, 0, 0},
        {1, 0, 1, 0, 0, 0},
        {1, 1, 0, 0, 0, 0}}},
      // Nested 4x4 ladder: c, n^-1, n^-2, n^-3.
      {"common4", {{1, 0, 1, 1}, {1, 1, 1, 0}, {1, 1, 0, 0}, {1, 0, 0, 0}}},
      // Duopoly + monopoly + common pool, duopoly linked outward:
      // c, c, n^-0.6, n^-1 x3.
      {"threeblock",
       {{1, 0, 0, 0, 1, 1},
        {0, 0, 0, 0, 1, 1},
        {0, 0, 0, 1, 0, 0},
        {0, 1, 1, 0, 0, 0},
        {1, 0, 1, 0, 0, 0},
        {1, 1, 0, 0, 0, 0}}},
      // Same blocks with the outward link moved to the monopoly:
      // n^-3/4 x2, c, n^-1 x3.
      {"threeblock34",
       {{0, 0, 0, 0, 1, 1},
        {0, 0, 0, 0, 1, 1},
        {0, 1, 0, 1, 0, 0},
        {0, 1, 1, 0, 0, 0},
        {1, 0, 1, 0, 0, 0},
        {1, 1, 0, 0, 0, 0}}},
      // Unshared monopolies force exponential decay on the competitors:
      // c, e, e, e.
      {"exp45", {{0, 1, 0, 1, 1}, {1, 0, 1, 0, 0}, {0, 1, 0, 0, 0}, {1, 0, 0, 0, 0}}},
      // Borderline full staircase: c, n^-1, n^-2, n^-3, n^-4.
      {"A",
       {{1, 1, 1, 1, 1},
        {1, 1, 1, 1, 0},
        {1, 1, 1, 0, 0},
        {1, 1, 0, 0, 0},
        {1, 0, 0, 0, 0}}},
      // Clear inward belly: c, e, e, e, e.
      {"B",
       {{1, 1, 1, 1, 1},
        {1, 1, 1, 0, 0},
        {1, 1, 0, 0, 0},
        {1, 0, 0, 0, 0},
        {1, 0, 0, 0, 0}}},
      // Clear outward belly: all c.
      {"C",
       {{1, 1, 1, 1, 1},
        {1, 1, 1, 1, 1},
        {1, 1, 1, 1, 0},
        {1, 1, 1, 0, 0},
        {1, 1, 0, 0, 0}}},
      // C with one product removed from row 2; the crossing sits at a high
      // rank: c, n^-1 x4.
      {"D",
       {{1, 1, 1, 1, 1},
        {1, 1, 1, 1, 0},
        {1, 1, 1, 1, 0},
        {1, 1, 1, 0, 0},
        {1, 1, 0, 0, 0}}},
      // Rectangular, fully convergent: all c.
      {"E",
       {{1, 1, 1, 1, 1, 1},
        {1, 1, 1, 1, 1, 0},
        {1, 1, 1, 1, 0, 0},
        {1, 1, 0, 0, 0, 0}}},
      // One product fewer: the two bottom rows decay: c, c, n^-1, n^-1.
      {"F",
       {{1, 1, 1, 1, 1, 1},
        {1, 1, 1, 1, 1, 0},
        {1, 1, 1, 0, 0, 0},
        {1, 1, 0, 0, 0, 0}}},
      // One more removed and the decay turns exponential: c, c, e, e.
      {"G",
       {{1, 1, 1, 1, 1, 1},
        {1, 1, 1, 1, 1, 0},
        {1, 1, 0, 0, 0, 0},
        {1, 1, 0, 0, 0, 0}}},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, rows] : table()) v.push_back(name);
    return v;
  }();
  return names;
}

BipartiteMatrix gallery_matrix(const std::string& name) {
  auto it = table().find(name);
  if (it == table().end()) throw Error("unknown named matrix: " + name);
  return BipartiteMatrix::from_rows(it->second);
}

}  // namespace fitcomp
