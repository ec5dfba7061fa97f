#include "qmst/costs.hpp"

#include <numeric>
#include <stdexcept>

namespace qmst {

namespace {

void check_range(CostRange range) {
  if (range.hi < range.lo) throw std::invalid_argument("cost range has hi < lo");
}

template <typename Emit>
void for_each_adjacent_entry(const Graph& g, CostRange range, Rng& rng, Emit emit) {
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    emit(e, e, rng.between(range.lo, range.hi));
    const Edge& edge = g.edge(e);
    for (Vertex x : {edge.u, edge.v})
      for (EdgeIndex f : g.incident(x))
        if (f != e) emit(e, f, rng.between(range.lo, range.hi));
  }
}

}  // namespace

CostMatrix random_costs(int m, CostRange range, Rng& rng) {
  check_range(range);
  CostMatrix q(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) q(i, j) = rng.between(range.lo, range.hi);
  return q;
}

CostMatrix adjacent_random_costs(const Graph& g, CostRange range, Rng& rng) {
  check_range(range);
  CostMatrix q = CostMatrix::Zero(g.num_edges(), g.num_edges());
  for_each_adjacent_entry(g, range, rng, [&](EdgeIndex e, EdgeIndex f, Cost v) { q(e, f) = v; });
  return q;
}

SparseCostMatrix adjacent_random_costs_sparse(const Graph& g, CostRange range, Rng& rng) {
  check_range(range);
  std::vector<Eigen::Triplet<Cost>> entries;
  for_each_adjacent_entry(g, range, rng,
                          [&](EdgeIndex e, EdgeIndex f, Cost v) { entries.emplace_back(e, f, v); });
  SparseCostMatrix q(g.num_edges(), g.num_edges());
  q.setFromTriplets(entries.begin(), entries.end());
  return q;
}

CostMatrix sorted_graded_costs(int m, CostRange range, Rng& rng) {
  check_range(range);
  CostMatrix q(m, m);
  const Cost width = range.hi - range.lo;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Cost floor = range.lo;
      if (i > 0) floor = std::max(floor, q(i - 1, j));
      if (j > 0) floor = std::max(floor, q(i, j - 1));
      const Cost step = rng.between(0, std::max<Cost>(1, width / std::max(1, 2 * m)));
      q(i, j) = std::min(range.hi, floor + step);
    }
  return q;
}

CostMatrix shuffle_symmetric(const CostMatrix& q, Rng& rng) {
  std::vector<Eigen::Index> p(q.rows());
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = p.size(); i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
  return q(p, p);
}

CostMatrix permuted_graded_costs(int m, CostRange range, Rng& rng) {
  CostMatrix sorted = sorted_graded_costs(m, range, rng);
  return shuffle_symmetric(sorted, rng);
}

}  // namespace qmst
