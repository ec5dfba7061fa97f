#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include "qmst/instance.hpp"

namespace qmst {

/// Thrown when a size guard would be exceeded.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SolveStatus { Optimal, Infeasible };

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  SpanningTree tree;
  Cost value = 0;
  std::int64_t violations = 0;
  std::uint64_t trees_enumerated = 0;
  std::string method;
};

struct EnumOptions {
  /// Largest tau(G) enumerated without conflict pruning.
  std::uint64_t tree_limit = 10'000'000;
  /// Search-node budget for kinds whose conflicts prune the search; the tau
  /// precheck does not apply to them.
  std::uint64_t node_limit = 500'000'000;
  bool include_diagonal = true;
  int threads = 1;
};

using TreeVisitor = std::function<void(std::span<const EdgeIndex>)>;

/// Visits every spanning tree once, in lexicographic order of the sorted
/// edge lists. Returns the number visited.
std::uint64_t enumerate_spanning_trees(const Graph& g, const TreeVisitor& visit,
                                       std::uint64_t tree_limit = EnumOptions{}.tree_limit);

/**
   Exact optimum of inst.kind over all spanning trees. Conflict kinds only
   consider zero-violation trees and report Infeasible when none exists.
   Among equal values the lexicographically smallest edge set wins.
 */
SolveResult solve_exact(const Instance& inst, const EnumOptions& options = {});

/**
   Is there a tree whose bottleneck is at most mu? Solved as FSTC on the
   pairs with q > mu, with edges whose diagonal exceeds mu removed.
 */
SolveResult solve_qbst_threshold(const Instance& inst, Cost mu, const EnumOptions& options = {});

/// QBST optimum by searching mu over the distinct entries of Q.
SolveResult solve_qbst_by_thresholds(const Instance& inst, const EnumOptions& options = {});

}  // namespace qmst
