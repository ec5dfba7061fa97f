#pragma once

#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace qmst {

using Vertex = int;
using EdgeIndex = int;

struct Edge {
  Vertex u;
  Vertex v;

  bool touches(Vertex x) const { return u == x || v == x; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/**
   Undirected simple graph. Vertices are 0..n-1, edges keep the index they
   were given at construction for the lifetime of the graph.
 */
class Graph {
 public:
  Graph() = default;
  Graph(int num_vertices, std::vector<Edge> edges);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeIndex e) const;
  const std::vector<Edge>& edges() const { return edges_; }
  /// Edge indices incident to v, ascending.
  const std::vector<EdgeIndex>& incident(Vertex v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.num_vertices_ == b.num_vertices_ && a.edges_ == b.edges_;
  }

 private:
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeIndex>> incident_;
};

/// Sorted, duplicate-free list of edge indices over some host graph.
using EdgeSet = std::vector<EdgeIndex>;

EdgeSet make_edge_set(std::vector<EdgeIndex> edges);

struct SpanningTree {
  EdgeSet edges;
  friend bool operator==(const SpanningTree&, const SpanningTree&) = default;
};

/// Two-component spanning forest with the anchors in different components.
struct TwoForest {
  EdgeSet edges;
  Vertex anchor_a = 0;
  Vertex anchor_b = 0;
};

/// Union-find with union by size. `unite` returns false when already joined.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), size_(n, 1), components_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    return true;
  }

  int components() const { return components_; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  int components_;
};

bool edges_adjacent(const Graph& g, EdgeIndex e, EdgeIndex f);

bool is_spanning_tree(const Graph& g, std::span<const EdgeIndex> edges);
bool is_two_forest(const Graph& g, const TwoForest& forest);
bool is_connected(const Graph& g);

/// Graph with e removed; indices above e shift down by one.
Graph delete_edge(const Graph& g, EdgeIndex e);

/**
   Multigraph view used for deletion-contraction counting. Parallel edges are
   kept, self-loops are dropped on construction and on contraction.
 */
struct Multigraph {
  int num_vertices = 0;
  std::vector<Edge> edges;

  static Multigraph from(const Graph& g);
};

Multigraph contract_edge(const Graph& g, EdgeIndex e);
Multigraph contract_edge(const Multigraph& g, std::size_t e);
Multigraph delete_edge(const Multigraph& g, std::size_t e);

}  // namespace qmst
