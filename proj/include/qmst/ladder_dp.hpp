#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qmst/enumerate.hpp"
#include "qmst/families.hpp"
#include "qmst/instance.hpp"

namespace qmst {

/**
   Boundary configurations of cycle i in a partial solution on L^i.

   T1..T4 are spanning trees of L^i and differ in which of e_k, e_{k-1},
   e_{k-2} they contain: T1 = {e_k, e_{k-1}}, T2 = {e_k, e_{k-2}},
   T3 = {e_{k-1}, e_{k-2}}, T4 = all three. F1..F3 are spanning forests with
   two components separating the endpoints of e_k (so e_k is absent):
   F1 = {e_{k-1}}, F2 = {e_{k-2}}, F3 = both.
 */
enum class DpState : std::uint8_t { T1, T2, T3, T4, F1, F2, F3 };
inline constexpr int kNumDpStates = 7;

std::string_view to_string(DpState state);

/// Ordered lexicographically: fewer conflict violations first, then cost.
struct DpValue {
  std::int64_t violations = 0;
  Cost cost = 0;
  friend auto operator<=>(const DpValue&, const DpValue&) = default;
};

struct DpOptions {
  Aggregation aggregation = Aggregation::Sum;
  /// Count conflict violations as the leading component of the value.
  bool conflict_layer = false;
  /// Bottleneck only: whether c_e = q(e,e) takes part in the max.
  bool include_diagonal = true;
  /// Evaluate each candidate with dp_delta_cost instead of the O(k) step.
  bool reference_transitions = false;
};

DpOptions dp_options_for(ProblemKind kind, bool include_diagonal = true);

struct DpStats {
  /// One per state per layer after the first.
  std::uint64_t recurrence_applications = 0;
  /// One per (predecessor, removed edges) candidate examined.
  std::uint64_t candidate_evaluations = 0;
};

/// Backpointer of one table entry.
struct DpChoice {
  std::int8_t predecessor = -1;  // -1 in the first layer
  /// Labels (1-based) of the cycle left out of the entry's edge set.
  std::array<std::int32_t, 2> removed{-1, -1};
};

struct DpTable {
  int k = 0;
  int n = 0;
  std::vector<std::array<std::optional<DpValue>, kNumDpStates>> value;
  std::vector<std::array<DpChoice, kNumDpStates>> choice;
};

template <typename MatrixType>
DpTable dp_run(const BasicInstance<MatrixType>& inst, const LadderStructure& ladder,
               const DpOptions& options, DpStats* stats = nullptr);

/// Edge set behind table entry (last layer, state).
EdgeSet dp_reconstruct(const DpTable& table, const LadderStructure& ladder, DpState state);

/**
   Value contributed by adding `added` to a partial solution whose edges
   near the attachment point are `boundary`: pairs inside `added` and pairs
   between `added` and `boundary`. Quadratic in the set sizes; the reference
   the linear step is checked against.
 */
template <typename MatrixType>
DpValue dp_delta_cost(const BasicInstance<MatrixType>& inst, std::span<const EdgeIndex> boundary,
                      std::span<const EdgeIndex> added, const DpOptions& options);

/// Optimal tree over the whole ladder. Conflict kinds report Infeasible when
/// every tree violates some pair.
template <typename MatrixType>
SolveResult dp_solve(const BasicInstance<MatrixType>& inst, const LadderStructure& ladder,
                     const DpOptions& options, DpStats* stats = nullptr);

template <typename MatrixType>
SolveResult dp_solve(const BasicInstance<MatrixType>& inst, const LadderStructure& ladder,
                     DpStats* stats = nullptr) {
  return dp_solve(inst, ladder, dp_options_for(inst.kind), stats);
}

}  // namespace qmst
