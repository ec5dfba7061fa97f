#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmst/graph.hpp"

namespace qmst {

using Cost = std::int64_t;

/// Q with q(e,e) = c_e on the diagonal and q(e,f) off it. Not symmetrised.
template <typename Scalar>
using CostMatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using CostMatrix = CostMatrixT<Cost>;
/// Large instances (adjacent-only costs on long ladders) store Q sparsely.
using SparseCostMatrix = Eigen::SparseMatrix<Cost, Eigen::RowMajor>;

/// Unordered conflict pair, stored with first < second.
using ConflictPair = std::pair<EdgeIndex, EdgeIndex>;
/// Sorted, duplicate-free list of conflict pairs.
using ConflictSet = std::vector<ConflictPair>;

ConflictSet make_conflict_set(std::vector<ConflictPair> pairs);

enum class ProblemKind { QMST, AQMST, QBST, AQBST, MSTC, MSTAC, BSTC, BSTAC, FSTC, FSTAC };

enum class Aggregation { Sum, Max };

std::string_view to_string(ProblemKind kind);
std::optional<ProblemKind> parse_problem_kind(std::string_view name);

Aggregation aggregation_of(ProblemKind kind);
/// Kinds with "at most one edge per conflict pair" feasibility.
bool uses_conflicts(ProblemKind kind);
/// FSTC and FSTAC only ask for a feasible tree.
bool is_feasibility(ProblemKind kind);
/// Kinds whose interactions or conflicts must be between adjacent edges.
bool is_adjacent_only(ProblemKind kind);

template <typename MatrixType>
struct BasicInstance {
  Graph graph;
  MatrixType q;
  ConflictSet conflicts;
  ProblemKind kind = ProblemKind::QMST;
};

using Instance = BasicInstance<CostMatrix>;
using SparseInstance = BasicInstance<SparseCostMatrix>;

/// Checks dimensions and conflict indices; throws std::invalid_argument.
template <typename MatrixType>
void check_instance(const BasicInstance<MatrixType>& inst) {
  const int m = inst.graph.num_edges();
  if (inst.q.rows() != m || inst.q.cols() != m)
    throw std::invalid_argument("cost matrix is " + std::to_string(inst.q.rows()) + "x" +
                                std::to_string(inst.q.cols()) + " but the graph has " +
                                std::to_string(m) + " edges");
  for (auto [a, b] : inst.conflicts)
    if (a < 0 || b < 0 || a >= m || b >= m || a == b)
      throw std::invalid_argument("conflict pair refers to an invalid edge");
}

namespace detail {

inline void check_tree_indices(Eigen::Index m, std::span<const EdgeIndex> tree) {
  for (EdgeIndex e : tree)
    if (e < 0 || e >= m) throw std::invalid_argument("tree edge outside the cost matrix");
}

inline std::vector<bool> membership(Eigen::Index m, std::span<const EdgeIndex> tree) {
  std::vector<bool> in(static_cast<std::size_t>(m), false);
  for (EdgeIndex e : tree) in[e] = true;
  return in;
}

}  // namespace detail

// Evaluators take any dense or sparse Eigen expression for Q and a list of
// distinct tree edges.

/// z(T) = sum over ordered pairs e != f of q(e,f) plus the diagonal once;
/// that is the full double sum of Q restricted to T.
template <typename Derived>
typename Derived::Scalar objective_sum(const Eigen::MatrixBase<Derived>& q,
                                       std::span<const EdgeIndex> tree) {
  using Scalar = typename Derived::Scalar;
  if (q.rows() != q.cols()) throw std::invalid_argument("cost matrix must be square");
  detail::check_tree_indices(q.rows(), tree);
  if (tree.empty()) return Scalar(0);
  const std::vector<EdgeIndex> idx(tree.begin(), tree.end());
  return q(idx, idx).sum();
}

template <typename Derived>
typename Derived::Scalar objective_sum(const Eigen::SparseMatrixBase<Derived>& q,
                                       std::span<const EdgeIndex> tree) {
  using Scalar = typename Derived::Scalar;
  if (q.rows() != q.cols()) throw std::invalid_argument("cost matrix must be square");
  detail::check_tree_indices(q.rows(), tree);
  const auto in = detail::membership(q.rows(), tree);
  const Derived& mat = q.derived();
  Scalar total(0);
  for (Eigen::Index o = 0; o < mat.outerSize(); ++o) {
    if (!in[o]) continue;
    for (typename Derived::InnerIterator it(mat, o); it; ++it)
      if (in[it.index()]) total += it.value();
  }
  return total;
}

/// max q(e,f) over e, f in T. The diagonal (c_e) takes part unless
/// include_diagonal is false.
template <typename Derived>
typename Derived::Scalar objective_bottleneck(const Eigen::MatrixBase<Derived>& q,
                                              std::span<const EdgeIndex> tree,
                                              bool include_diagonal = true) {
  using Scalar = typename Derived::Scalar;
  if (q.rows() != q.cols()) throw std::invalid_argument("cost matrix must be square");
  detail::check_tree_indices(q.rows(), tree);
  if (include_diagonal) {
    if (tree.empty()) throw std::invalid_argument("bottleneck of an empty edge set");
    const std::vector<EdgeIndex> idx(tree.begin(), tree.end());
    return q(idx, idx).maxCoeff();
  }
  if (tree.size() < 2) throw std::invalid_argument("off-diagonal bottleneck needs two edges");
  std::optional<Scalar> best;
  for (EdgeIndex e : tree)
    for (EdgeIndex f : tree)
      if (e != f && (!best || q(e, f) > *best)) best = q(e, f);
  return *best;
}

/// Entries not stored in a sparse Q are zeros and take part in the max.
template <typename Derived>
typename Derived::Scalar objective_bottleneck(const Eigen::SparseMatrixBase<Derived>& q,
                                              std::span<const EdgeIndex> tree,
                                              bool include_diagonal = true) {
  using Scalar = typename Derived::Scalar;
  if (q.rows() != q.cols()) throw std::invalid_argument("cost matrix must be square");
  detail::check_tree_indices(q.rows(), tree);
  if (tree.empty() || (!include_diagonal && tree.size() < 2))
    throw std::invalid_argument("bottleneck needs a nonempty set of entries");
  const auto in = detail::membership(q.rows(), tree);
  const Derived& mat = q.derived();
  std::optional<Scalar> best;
  std::uint64_t stored = 0;
  for (Eigen::Index o = 0; o < mat.outerSize(); ++o) {
    if (!in[o]) continue;
    for (typename Derived::InnerIterator it(mat, o); it; ++it) {
      if (!in[it.index()] || (!include_diagonal && it.index() == o)) continue;
      ++stored;
      if (!best || it.value() > *best) best = it.value();
    }
  }
  const std::uint64_t t = tree.size();
  const std::uint64_t entries = include_diagonal ? t * t : t * (t - 1);
  if (stored < entries && (!best || Scalar(0) > *best)) best = Scalar(0);
  return *best;
}

/// Pairs of S with both edges in the tree.
std::int64_t conflict_violations(const ConflictSet& conflicts, int num_edges,
                                 std::span<const EdgeIndex> tree);

/// 0/1 symmetric matrix with q(e,f) = q(f,e) = 1 exactly for {e,f} in S.
CostMatrix conflicts_to_quadratic(const Graph& g, const ConflictSet& conflicts);

/// q(e,f) = 0 for every ordered pair of distinct non-adjacent edges.
template <typename Derived>
bool validate_adjacent_only(const Graph& g, const Eigen::MatrixBase<Derived>& q) {
  const int m = g.num_edges();
  if (q.rows() != m || q.cols() != m) return false;
  for (EdgeIndex e = 0; e < m; ++e)
    for (EdgeIndex f = 0; f < m; ++f)
      if (e != f && q(e, f) != 0 && !edges_adjacent(g, e, f)) return false;
  return true;
}

template <typename Derived>
bool validate_adjacent_only(const Graph& g, const Eigen::SparseMatrixBase<Derived>& q) {
  const int m = g.num_edges();
  if (q.rows() != m || q.cols() != m) return false;
  const Derived& mat = q.derived();
  for (Eigen::Index o = 0; o < mat.outerSize(); ++o)
    for (typename Derived::InnerIterator it(mat, o); it; ++it)
      if (it.row() != it.col() && it.value() != 0 &&
          !edges_adjacent(g, static_cast<EdgeIndex>(it.row()), static_cast<EdgeIndex>(it.col())))
        return false;
  return true;
}

bool conflicts_adjacent_only(const Graph& g, const ConflictSet& conflicts);

/// Both checks an adjacent-only kind needs.
template <typename MatrixType>
bool validate_adjacent_only(const BasicInstance<MatrixType>& inst) {
  return validate_adjacent_only(inst.graph, inst.q) && conflicts_adjacent_only(inst.graph, inst.conflicts);
}

/// Objective of the instance's kind: z(T) for sum kinds, the bottleneck for
/// max kinds, 0 for feasibility kinds. Does not look at conflicts.
template <typename MatrixType>
Cost evaluate_objective(const BasicInstance<MatrixType>& inst, std::span<const EdgeIndex> tree,
                        bool include_diagonal = true) {
  if (is_feasibility(inst.kind)) return 0;
  if (aggregation_of(inst.kind) == Aggregation::Max)
    return objective_bottleneck(inst.q, tree, include_diagonal);
  return objective_sum(inst.q, tree);
}

}  // namespace qmst
