#pragma once

#include "qmst/instance.hpp"
#include "qmst/rng.hpp"

namespace qmst {

struct CostRange {
  Cost lo = 0;
  Cost hi = 9;
};

/// Every entry drawn independently from the range.
CostMatrix random_costs(int m, CostRange range, Rng& rng);

/// Diagonal and adjacent pairs drawn from the range, everything else 0.
CostMatrix adjacent_random_costs(const Graph& g, CostRange range, Rng& rng);
SparseCostMatrix adjacent_random_costs_sparse(const Graph& g, CostRange range, Rng& rng);

/// Rows and columns nondecreasing, entries within the range.
CostMatrix sorted_graded_costs(int m, CostRange range, Rng& rng);

/// A sorted graded matrix under a random simultaneous row/column permutation.
CostMatrix permuted_graded_costs(int m, CostRange range, Rng& rng);

/// Random simultaneous permutation q(p, p) of a square matrix.
CostMatrix shuffle_symmetric(const CostMatrix& q, Rng& rng);

}  // namespace qmst
