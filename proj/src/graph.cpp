#include "qmst/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace qmst {

Graph::Graph(int num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (num_vertices < 0) throw std::invalid_argument("negative vertex count");
  incident_.resize(num_vertices);
  std::set<std::pair<Vertex, Vertex>> seen;
  for (EdgeIndex i = 0; i < num_edges(); ++i) {
    const auto [u, v] = edges_[i];
    if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices)
      throw std::invalid_argument("edge " + std::to_string(i) + " has an endpoint out of range");
    if (u == v) throw std::invalid_argument("edge " + std::to_string(i) + " is a self-loop");
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second)
      throw std::invalid_argument("edge " + std::to_string(i) + " duplicates an earlier edge");
    incident_[u].push_back(i);
    incident_[v].push_back(i);
  }
}

const Edge& Graph::edge(EdgeIndex e) const {
  if (e < 0 || e >= num_edges()) throw std::out_of_range("edge index " + std::to_string(e));
  return edges_[e];
}

const std::vector<EdgeIndex>& Graph::incident(Vertex v) const {
  if (v < 0 || v >= num_vertices_) throw std::out_of_range("vertex " + std::to_string(v));
  return incident_[v];
}

EdgeSet make_edge_set(std::vector<EdgeIndex> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

bool edges_adjacent(const Graph& g, EdgeIndex e, EdgeIndex f) {
  const Edge& a = g.edge(e);
  const Edge& b = g.edge(f);
  if (e == f) throw std::invalid_argument("edges_adjacent needs two distinct edges");
  return a.touches(b.u) || a.touches(b.v);
}

bool is_spanning_tree(const Graph& g, std::span<const EdgeIndex> edges) {
  const int n = g.num_vertices();
  if (n == 0) return edges.empty();
  if (static_cast<int>(edges.size()) != n - 1) return false;
  UnionFind uf(n);
  for (EdgeIndex e : edges) {
    if (e < 0 || e >= g.num_edges()) return false;
    if (!uf.unite(g.edges()[e].u, g.edges()[e].v)) return false;
  }
  return uf.components() == 1;
}

bool is_two_forest(const Graph& g, const TwoForest& forest) {
  const int n = g.num_vertices();
  if (forest.anchor_a < 0 || forest.anchor_a >= n || forest.anchor_b < 0 || forest.anchor_b >= n)
    return false;
  UnionFind uf(n);
  for (EdgeIndex e : forest.edges) {
    if (e < 0 || e >= g.num_edges()) return false;
    if (!uf.unite(g.edges()[e].u, g.edges()[e].v)) return false;
  }
  return uf.components() == 2 && uf.find(forest.anchor_a) != uf.find(forest.anchor_b);
}

bool is_connected(const Graph& g) {
  if (g.num_vertices() == 0) return true;
  UnionFind uf(g.num_vertices());
  for (const Edge& e : g.edges()) uf.unite(e.u, e.v);
  return uf.components() == 1;
}

Graph delete_edge(const Graph& g, EdgeIndex e) {
  g.edge(e);
  std::vector<Edge> edges = g.edges();
  edges.erase(edges.begin() + e);
  return Graph(g.num_vertices(), std::move(edges));
}

Multigraph Multigraph::from(const Graph& g) { return Multigraph{g.num_vertices(), g.edges()}; }

Multigraph contract_edge(const Multigraph& g, std::size_t e) {
  if (e >= g.edges.size()) throw std::out_of_range("edge index " + std::to_string(e));
  // Merge the larger endpoint into the smaller one, then close the gap so
  // vertices stay dense.
  const Vertex keep = std::min(g.edges[e].u, g.edges[e].v);
  const Vertex gone = std::max(g.edges[e].u, g.edges[e].v);
  auto relabel = [&](Vertex x) {
    if (x == gone) return keep;
    return x > gone ? x - 1 : x;
  };
  Multigraph out{g.num_vertices - 1, {}};
  out.edges.reserve(g.edges.size() - 1);
  for (const Edge& f : g.edges) {
    Edge r{relabel(f.u), relabel(f.v)};
    if (r.u != r.v) out.edges.push_back(r);
  }
  return out;
}

Multigraph contract_edge(const Graph& g, EdgeIndex e) {
  g.edge(e);
  return contract_edge(Multigraph::from(g), static_cast<std::size_t>(e));
}

Multigraph delete_edge(const Multigraph& g, std::size_t e) {
  if (e >= g.edges.size()) throw std::out_of_range("edge index " + std::to_string(e));
  Multigraph out = g;
  out.edges.erase(out.edges.begin() + static_cast<std::ptrdiff_t>(e));
  return out;
}

}  // namespace qmst
