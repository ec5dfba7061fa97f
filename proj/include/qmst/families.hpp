#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmst/graph.hpp"

namespace qmst {

/**
   A (k,n)-ladder together with the cycle labelling the ladder DP runs on.

   cycle_edges[i][l-1] is the edge labelled e^{i+1}_l (cycles are 0-based
   here, labels 1-based as usual): position 0 is the edge shared with the
   previous cycle, position k-1 the edge shared with the next one, positions
   k-2 and k-3 the two edges adjacent to it. anchors[i] = (v1, v2) are the
   endpoints of the last edge, with cycle_edges[i][k-2] touching v1 and
   cycle_edges[i][k-3] touching v2.
 */
struct LadderStructure {
  Graph graph;
  int k = 0;
  int n = 0;
  std::vector<std::vector<EdgeIndex>> cycle_edges;
  std::vector<std::pair<Vertex, Vertex>> anchors;
};

/**
   A (k,n)-accordion with its construction trace. cycle_edges[i] lists cycle
   i in walk order starting with the fused edge; free_edge_choices[i-1] is
   the edge cycle i was fused on.
 */
struct AccordionStructure {
  Graph graph;
  int k = 0;
  int n = 0;
  std::vector<std::vector<EdgeIndex>> cycle_edges;
  std::vector<EdgeIndex> free_edge_choices;
};

// Fan F_n: path vertices v_1..v_n are 0..n-1, the hub is vertex n. Edge
// order is the path edges (v_1v_2, ..., v_{n-1}v_n) followed by the spokes
// (uv_1, ..., uv_n).
Graph make_fan(int n);
// Wheel W_n: F_n with the rim-closing edge (v_1, v_n) appended last.
Graph make_wheel(int n);
// Fan-star FS_n: F_n without the path edges (v_{3i}, v_{3i+1}), i = 1..n/3-1.
Graph make_fan_star(int n);
/// Structural check, independent of labels: one hub joined to every other
/// vertex, the rest splits into n/3 paths on three vertices.
bool is_fan_star(const Graph& g);

/// The rung ladder L_n: v_1..v_n are 0..n-1, u_1..u_n are n..2n-1. Edge order
/// is the v-path, the u-path, then the rungs (v_i, u_i).
Graph make_ladder_graph(int n);
/// L_n labelled as the (4, n-1)-ladder it is; L_n has n rungs but n-1 squares.
LadderStructure make_ladder(int n);

/// Member of L(k,n); each step fuses on the lowest-index free edge.
LadderStructure make_kn_ladder(int k, int n);

/// Member of A(k,n) replaying an explicit list of n-1 free-edge choices.
AccordionStructure make_kn_accordion(int k, int n, const std::vector<EdgeIndex>& choices);
/// Member of A(k,n) drawing each free edge uniformly from the seed.
AccordionStructure make_kn_accordion(int k, int n, std::uint64_t seed);

/// Free edges available for the next fusion step of a partial accordion.
std::vector<EdgeIndex> accordion_free_edges(const AccordionStructure& acc);
/// Ladder-free edges (both endpoints introduced by the last cycle).
std::vector<EdgeIndex> ladder_free_edges(const AccordionStructure& acc);

/**
   Labels the cycles of an accordion built with ladder-free choices. The last
   cycle's outgoing edge is the lowest-index ladder-free edge (any edge of C_1
   when n = 1). Throws if the accordion is not a ladder.
 */
LadderStructure label_ladder(const AccordionStructure& acc);

/// Independent structural check; returns a description of the first defect.
std::optional<std::string> ladder_defect(const LadderStructure& ladder);

}  // namespace qmst
