#pragma once

#include <array>
#include <istream>
#include <optional>
#include <ostream>
#include <vector>

#include "qmst/instance.hpp"
#include "qmst/rng.hpp"

namespace qmst {

struct Literal {
  int var = 0;  // 0-based
  bool negated = false;
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct ThreeSatInstance {
  int num_vars = 0;
  std::vector<std::array<Literal, 3>> clauses;
};

/// Throws std::invalid_argument on out-of-range variables.
void check_formula(const ThreeSatInstance& sat);

/// DIMACS CNF; every clause must have exactly three literals.
ThreeSatInstance read_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const ThreeSatInstance& sat);

ThreeSatInstance random_three_sat(int num_vars, int num_clauses, Rng& rng);

using Assignment = std::vector<bool>;

bool satisfies(const ThreeSatInstance& sat, const Assignment& assignment);

inline constexpr int kSatBruteForceMaxVars = 24;

struct SatVerdict {
  bool satisfiable = false;
  std::optional<Assignment> model;
};

/// Truth-table search; the first model in binary counting order.
SatVerdict sat_brute_force(const ThreeSatInstance& sat);

struct ReductionOutput {
  Instance instance;
  ThreeSatInstance formula;
  /// literal_edges[i][j] is the edge standing for literal j of clause i.
  std::vector<std::array<EdgeIndex, 3>> literal_edges;
};

/**
   FSTAC on the fan-star FS_{3n}: clause i owns path vertices 3i..3i+2 and
   its literals are their spokes. Spokes of complementary literals conflict;
   they all meet at the hub, so the conflicts are adjacent.
 */
ReductionOutput reduce_to_fanstar(const ThreeSatInstance& sat);

/**
   FSTC on the rung ladder L_{2n+1} (v-rail on top, u-rail at the bottom).
   Clause i (1-based) owns bottom vertex u_{2i}; its literals are the three
   edges at that vertex: the bottom edge to the left, the rung, the bottom
   edge to the right. Top rail and odd rungs are free filler. Complementary
   literals conflict; such pairs need not be adjacent.
 */
ReductionOutput reduce_to_ladder(const ThreeSatInstance& sat);

/// x is true when a positive occurrence of x has its edge in the tree.
/// Throws if the tree violates a conflict pair.
Assignment decode_assignment(const ReductionOutput& out, const SpanningTree& tree);

}  // namespace qmst
