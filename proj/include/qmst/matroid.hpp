#pragma once

#include <optional>
#include <vector>

#include "qmst/graded.hpp"
#include "qmst/instance.hpp"

namespace qmst {

using WeightMatrix = CostMatrix;

/// Explicit base system over the ground set {0..ground_size-1}.
struct BaseSystem {
  int ground_size = 0;
  std::vector<EdgeSet> bases;  // each sorted; the list sorted and duplicate-free
};

/// Validates and normalises; throws on an empty list, unequal sizes or
/// elements outside the ground set. Ground sets are limited to 64 elements.
BaseSystem make_base_system(int ground_size, std::vector<std::vector<int>> bases);

BaseSystem uniform_matroid(int rank, int ground_size);
/// Bases are the spanning trees of g, found by enumeration.
BaseSystem graphic_matroid(const Graph& g);

bool is_base(const BaseSystem& bs, const EdgeSet& s);

/// K in S1 \ S2 such that S1 - K + j is not a base for any j in S2 \ S1.
struct ExchangeViolation {
  EdgeSet s1;
  EdgeSet s2;
  int k = -1;
};

/// First violation in base-list order, or nothing for a matroid.
std::optional<ExchangeViolation> find_exchange_violation(const BaseSystem& bs);
bool is_matroid(const BaseSystem& bs, ExchangeViolation* witness = nullptr);

/// Pi(S): full double sum of W over S x S, or its maximum.
Cost qmwb_objective(const BaseSystem& bs, const WeightMatrix& w, const EdgeSet& s,
                    Aggregation aggregation = Aggregation::Sum);

/// Base with the lexicographically smallest sorted rank set, by comparison.
EdgeSet pi_critical_base(const BaseSystem& bs, const Permutation& pi);
/// Greedy by rank; equals pi_critical_base on matroids only.
EdgeSet greedy_base(const BaseSystem& bs, const Permutation& pi);

/// MWB(i,W): min over bases of the row-i sum (or max).
Cost mwb_row(const BaseSystem& bs, const WeightMatrix& w, int i, Aggregation aggregation = Aggregation::Sum);

struct BaseBound {
  Cost value = 0;
  EdgeSet base;
  std::vector<Cost> f;
};

BaseBound natural_lower_bound_base(const BaseSystem& bs, const WeightMatrix& w,
                                   Aggregation aggregation = Aggregation::Sum);

struct BaseSolution {
  EdgeSet base;
  Cost value = 0;
};

/// Optimum over the explicit base list; ties to the earliest base.
BaseSolution solve_qmwb_exact(const BaseSystem& bs, const WeightMatrix& w,
                              Aggregation aggregation = Aggregation::Sum);

/// pi-critical base of a matroid with permuted doubly graded W. Throws when
/// either hypothesis fails.
BaseSolution solve_qmwb_doubly_graded(const BaseSystem& bs, const WeightMatrix& w,
                                      Aggregation aggregation = Aggregation::Sum,
                                      Permutation* pi_out = nullptr);

/// For a matroid and row graded pi(W): the pi-critical base is optimal when
/// it is also a minimum weight base for the costs f^i.
bool certify_base_nnl(const BaseSystem& bs, const WeightMatrix& w, const Permutation& pi);

struct Counterexample {
  WeightMatrix w;
  Permutation pi;
};

/**
   Weights for a base system that is not a matroid. pi lists
   S1 \ {K}, then S2 \ S1, then K, then the rest; w(i,j) is 1 when i or j
   lies outside S1 and S2, 1 when j = K and i is in (S2 \ S1) + K, and 0
   otherwise. pi(W) is doubly graded, S1 is pi-critical, Pi(S1) = 1 and
   Pi(S2) = 0.
 */
Counterexample build_counterexample(const BaseSystem& bs, const ExchangeViolation& witness);

}  // namespace qmst
