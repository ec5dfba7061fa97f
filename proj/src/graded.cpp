#include "qmst/graded.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace qmst {

namespace {

/// Precedence digraph on m indices plus one auxiliary node per group
/// boundary, so each row costs O(m) arcs instead of O(m^2).
class Precedence {
 public:
  explicit Precedence(int m) : m_(m), out_(m) {}

  /// Orders indices by values[idx]; strictly smaller values must come first.
  void add_order(const std::vector<Cost>& values) {
    std::vector<int> idx(m_);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return values[a] < values[b]; });
    int start = 0;
    int prev_aux = -1;
    while (start < m_) {
      int end = start;
      while (end < m_ && values[idx[end]] == values[idx[start]]) ++end;
      if (prev_aux >= 0)
        for (int p = start; p < end; ++p) out_[prev_aux].push_back(idx[p]);
      if (end < m_) {
        const int aux = static_cast<int>(out_.size());
        out_.emplace_back();
        for (int p = start; p < end; ++p) out_[idx[p]].push_back(aux);
        prev_aux = aux;
      }
      start = end;
    }
  }

  /// Kahn's algorithm, smallest ready node first. Empty when cyclic.
  std::optional<Permutation> order() const {
    const int total = static_cast<int>(out_.size());
    std::vector<int> indeg(total, 0);
    for (const auto& arcs : out_)
      for (int b : arcs) ++indeg[b];
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int v = 0; v < total; ++v)
      if (indeg[v] == 0) ready.push(v);
    std::vector<int> real;
    int seen = 0;
    while (!ready.empty()) {
      const int v = ready.top();
      ready.pop();
      ++seen;
      if (v < m_) real.push_back(v);
      for (int b : out_[v])
        if (--indeg[b] == 0) ready.push(b);
    }
    if (seen != total) return std::nullopt;
    return Permutation::from_order(std::move(real));
  }

 private:
  int m_;
  std::vector<std::vector<int>> out_;
};

void require_connected(const Graph& g) {
  if (!is_connected(g)) throw std::invalid_argument("graph is disconnected");
}

/// Kruskal on the given weights; ties go to the lower edge index.
SpanningTree kruskal(const Graph& g, const std::vector<Cost>& weight) {
  std::vector<EdgeIndex> idx(g.num_edges());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](EdgeIndex a, EdgeIndex b) { return weight[a] < weight[b]; });
  UnionFind uf(g.num_vertices());
  SpanningTree t;
  for (EdgeIndex e : idx)
    if (uf.unite(g.edge(e).u, g.edge(e).v)) t.edges.push_back(e);
  std::sort(t.edges.begin(), t.edges.end());
  return t;
}

Cost aggregate(const std::vector<Cost>& w, const EdgeSet& edges, Aggregation aggregation) {
  Cost v = 0;
  bool first = true;
  for (EdgeIndex e : edges) {
    if (aggregation == Aggregation::Sum)
      v += w[e];
    else
      v = first ? w[e] : std::max(v, w[e]);
    first = false;
  }
  return v;
}

SolveResult solve_graded(const Instance& inst, Aggregation aggregation, GradedCertificate* certificate) {
  check_instance(inst);
  require_connected(inst.graph);
  GradedCertificate cert = recognize_graded(inst.q);
  if (cert.kind != GradedKind::DoublyGraded)
    throw std::invalid_argument("cost matrix is not a permuted doubly graded matrix");
  SolveResult out;
  out.status = SolveStatus::Optimal;
  out.method = "graded";
  out.tree = pi_critical_tree(inst.graph, *cert.pi);
  out.value = aggregation == Aggregation::Sum ? objective_sum(inst.q, out.tree.edges)
                                              : objective_bottleneck(inst.q, out.tree.edges);
  out.violations = conflict_violations(inst.conflicts, inst.graph.num_edges(), out.tree.edges);
  if (certificate) *certificate = std::move(cert);
  return out;
}

}  // namespace

Permutation Permutation::identity(int m) {
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  return from_order(std::move(order));
}

Permutation Permutation::from_order(std::vector<int> order) {
  Permutation p;
  p.rank.assign(order.size(), -1);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const int i = order[pos];
    if (i < 0 || i >= static_cast<int>(order.size()) || p.rank[i] >= 0)
      throw std::invalid_argument("order is not a permutation");
    p.rank[i] = static_cast<int>(pos);
  }
  p.order = std::move(order);
  return p;
}

GradedCertificate recognize_graded(const CostMatrix& q) {
  if (q.rows() != q.cols()) throw std::invalid_argument("cost matrix must be square");
  const int m = static_cast<int>(q.rows());
  Precedence rows(m), both(m);
  std::vector<Cost> values(m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) values[c] = q(r, c);
    rows.add_order(values);
    both.add_order(values);
  }
  for (int c = 0; c < m; ++c) {
    for (int r = 0; r < m; ++r) values[r] = q(r, c);
    both.add_order(values);
  }
  if (auto pi = both.order()) return {GradedKind::DoublyGraded, std::move(pi)};
  if (auto pi = rows.order()) return {GradedKind::RowGraded, std::move(pi)};
  return {};
}

RowMst mst_row(const Instance& inst, EdgeIndex i, Aggregation aggregation) {
  check_instance(inst);
  require_connected(inst.graph);
  if (i < 0 || i >= inst.graph.num_edges()) throw std::out_of_range("row index outside the cost matrix");
  std::vector<Cost> w(inst.graph.num_edges());
  for (EdgeIndex j = 0; j < inst.graph.num_edges(); ++j) w[j] = inst.q(i, j);
  RowMst out;
  out.tree = kruskal(inst.graph, w);
  out.value = aggregate(w, out.tree.edges, aggregation);
  return out;
}

NaturalBound natural_lower_bound(const Instance& inst, Aggregation aggregation) {
  check_instance(inst);
  require_connected(inst.graph);
  const int m = inst.graph.num_edges();
  NaturalBound out;
  out.z.resize(m);
  for (EdgeIndex i = 0; i < m; ++i) out.z[i] = mst_row(inst, i, aggregation).value;
  out.tree = kruskal(inst.graph, out.z);
  out.value = aggregate(out.z, out.tree.edges, aggregation);
  return out;
}

SpanningTree pi_critical_tree(const Graph& g, const Permutation& pi) {
  require_connected(g);
  if (pi.size() != g.num_edges()) throw std::invalid_argument("permutation size differs from the edge count");
  std::vector<Cost> w(pi.rank.begin(), pi.rank.end());
  return kruskal(g, w);
}

SolveResult solve_doubly_graded(const Instance& inst, GradedCertificate* certificate) {
  return solve_graded(inst, Aggregation::Sum, certificate);
}

SolveResult solve_doubly_graded_bottleneck(const Instance& inst, GradedCertificate* certificate) {
  return solve_graded(inst, Aggregation::Max, certificate);
}

NnlCheck certify_nnl(const Instance& inst, const Permutation& pi) {
  check_instance(inst);
  if (!is_row_graded(inst.q, pi)) throw std::invalid_argument("permutation does not make Q row graded");
  NnlCheck out;
  out.tree = pi_critical_tree(inst.graph, pi);
  out.value = objective_sum(inst.q, out.tree.edges);
  const NaturalBound bound = natural_lower_bound(inst);
  out.lower_bound = bound.value;
  out.certified = aggregate(bound.z, out.tree.edges, Aggregation::Sum) == bound.value;
  return out;
}

}  // namespace qmst
