#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "qmst/enumerate.hpp"
#include "qmst/instance.hpp"

namespace qmst {

/// rank[i] is the position of index i; order[p] the index at position p.
struct Permutation {
  std::vector<int> rank;
  std::vector<int> order;

  static Permutation identity(int m);
  static Permutation from_order(std::vector<int> order);
  int size() const { return static_cast<int>(rank.size()); }
};

/// pi(Q) with entry (i,j) equal to q(order[i], order[j]).
template <typename Derived>
CostMatrixT<typename Derived::Scalar> apply_permutation(const Eigen::MatrixBase<Derived>& q,
                                                        const Permutation& pi) {
  return q(pi.order, pi.order);
}

template <typename Derived>
bool rows_nondecreasing(const Eigen::MatrixBase<Derived>& q) {
  for (Eigen::Index i = 0; i < q.rows(); ++i)
    for (Eigen::Index j = 1; j < q.cols(); ++j)
      if (q(i, j - 1) > q(i, j)) return false;
  return true;
}

template <typename Derived>
bool is_row_graded(const Eigen::MatrixBase<Derived>& q, const Permutation& pi) {
  return rows_nondecreasing(apply_permutation(q, pi));
}

template <typename Derived>
bool is_doubly_graded(const Eigen::MatrixBase<Derived>& q, const Permutation& pi) {
  const auto p = apply_permutation(q, pi);
  return rows_nondecreasing(p) && rows_nondecreasing(p.transpose());
}

enum class GradedKind { None, RowGraded, DoublyGraded };

struct GradedCertificate {
  GradedKind kind = GradedKind::None;
  std::optional<Permutation> pi;
};

/**
   Looks for a simultaneous permutation making Q doubly graded, falling back
   to row graded. Each row of Q orders the columns it separates; a doubly
   graded order must also respect the order every column imposes on the
   rows. The permutation is a topological order of those precedences (ties
   broken by smallest index), and none exists exactly when they are cyclic.
 */
GradedCertificate recognize_graded(const CostMatrix& q);

struct RowMst {
  Cost value = 0;
  SpanningTree tree;
};

/// MST(i,Q): spanning tree minimising sum_j q(i,j) (or max_j with Max).
RowMst mst_row(const Instance& inst, EdgeIndex i, Aggregation aggregation = Aggregation::Sum);

struct NaturalBound {
  Cost value = 0;
  SpanningTree tree;
  std::vector<Cost> z;
};

/// z^i for every edge, then the spanning tree minimising their sum (or max).
NaturalBound natural_lower_bound(const Instance& inst, Aggregation aggregation = Aggregation::Sum);

/// Greedy over edges by ascending rank: the lexicographically smallest rank set.
SpanningTree pi_critical_tree(const Graph& g, const Permutation& pi);

/// pi-critical tree of a permuted doubly graded instance; throws otherwise.
SolveResult solve_doubly_graded(const Instance& inst, GradedCertificate* certificate = nullptr);
SolveResult solve_doubly_graded_bottleneck(const Instance& inst, GradedCertificate* certificate = nullptr);

struct NnlCheck {
  bool certified = false;
  SpanningTree tree;
  Cost value = 0;
  Cost lower_bound = 0;
};

/**
   For a row-graded certificate: T0 is optimal when it is also an MST under
   the weights z^i. A failed check means "not certified", nothing more.
 */
NnlCheck certify_nnl(const Instance& inst, const Permutation& pi);

}  // namespace qmst
