#include "qmst/families.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qmst/rng.hpp"

namespace qmst {

namespace {

std::vector<Edge> fan_edges(int n, bool skip_fan_star_edges) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) {
    // Path edge (v_{i+1}, v_{i+2}); fan-stars drop (v_{3j}, v_{3j+1}).
    if (skip_fan_star_edges && (i + 1) % 3 == 0) continue;
    edges.push_back({i, i + 1});
  }
  for (int i = 0; i < n; ++i) edges.push_back({n, i});
  return edges;
}

/// Incremental accordion construction; first_cycle[v] is the cycle that
/// introduced vertex v.
struct Builder {
  int k;
  std::vector<Edge> edges;
  std::vector<std::vector<EdgeIndex>> cycles;
  std::vector<EdgeIndex> choices;
  std::vector<int> first_cycle;

  explicit Builder(int k_) : k(k_) {
    std::vector<EdgeIndex> first;
    for (int j = 0; j < k; ++j) {
      edges.push_back({j, (j + 1) % k});
      first.push_back(j);
      first_cycle.push_back(0);
    }
    cycles.push_back(std::move(first));
  }

  std::vector<EdgeIndex> free_edges() const {
    const auto& last = cycles.back();
    if (cycles.size() == 1) return last;
    return std::vector<EdgeIndex>(last.begin() + 1, last.end());
  }

  bool both_new(EdgeIndex e, int c) const {
    return first_cycle[edges[e].u] == c && first_cycle[edges[e].v] == c;
  }

  std::vector<EdgeIndex> ladder_free() const {
    const int c = static_cast<int>(cycles.size()) - 1;
    if (c == 0) return cycles.back();
    std::vector<EdgeIndex> out;
    for (EdgeIndex e : cycles.back())
      if (both_new(e, c)) out.push_back(e);
    return out;
  }

  void fuse(EdgeIndex fused) {
    const auto free = free_edges();
    if (std::find(free.begin(), free.end(), fused) == free.end())
      throw std::invalid_argument("step " + std::to_string(cycles.size() + 1) + ": edge " +
                                  std::to_string(fused) + " is not free");
    const int c = static_cast<int>(cycles.size());
    const auto [r, s] = edges[fused];
    std::vector<EdgeIndex> cycle{fused};
    Vertex prev = r;
    for (int j = 0; j < k - 2; ++j) {
      const Vertex w = static_cast<Vertex>(first_cycle.size());
      first_cycle.push_back(c);
      cycle.push_back(static_cast<EdgeIndex>(edges.size()));
      edges.push_back({prev, w});
      prev = w;
    }
    cycle.push_back(static_cast<EdgeIndex>(edges.size()));
    edges.push_back({prev, s});
    cycles.push_back(std::move(cycle));
    choices.push_back(fused);
  }

  AccordionStructure finish() const {
    AccordionStructure acc;
    acc.graph = Graph(static_cast<int>(first_cycle.size()), edges);
    acc.k = k;
    acc.n = static_cast<int>(cycles.size());
    acc.cycle_edges = cycles;
    acc.free_edge_choices = choices;
    return acc;
  }
};

void check_accordion_params(int k, int n) {
  if (k < 3) throw std::invalid_argument("accordion cycles need k >= 3");
  if (n < 1) throw std::invalid_argument("accordion needs n >= 1");
}

/// first_cycle map recovered from a finished trace.
std::vector<int> first_cycles(const Graph& g, const std::vector<std::vector<EdgeIndex>>& cycles) {
  std::vector<int> first(g.num_vertices(), -1);
  for (std::size_t c = 0; c < cycles.size(); ++c)
    for (EdgeIndex e : cycles[c])
      for (Vertex x : {g.edge(e).u, g.edge(e).v})
        if (first[x] < 0) first[x] = static_cast<int>(c);
  return first;
}

}  // namespace

Graph make_fan(int n) {
  if (n < 1) throw std::invalid_argument("fan needs n >= 1");
  return Graph(n + 1, fan_edges(n, false));
}

Graph make_wheel(int n) {
  if (n < 3) throw std::invalid_argument("wheel needs n >= 3");
  std::vector<Edge> edges = fan_edges(n, false);
  edges.push_back({0, n - 1});
  return Graph(n + 1, std::move(edges));
}

Graph make_fan_star(int n) {
  if (n < 3 || n % 3 != 0) throw std::invalid_argument("fan-star needs n = 3k with k >= 1");
  return Graph(n + 1, fan_edges(n, true));
}

bool is_fan_star(const Graph& g) {
  const int n = g.num_vertices() - 1;
  if (n < 3 || n % 3 != 0) return false;
  if (g.num_edges() != n + 2 * (n / 3)) return false;
  Vertex hub = -1;
  for (Vertex v = 0; v <= n; ++v)
    if (static_cast<int>(g.incident(v).size()) == n) hub = v;
  if (hub < 0) return false;
  // Removing the hub must leave n/3 components, each a path on 3 vertices.
  UnionFind uf(n + 1);
  std::vector<int> degree(n + 1, 0);
  for (const Edge& e : g.edges()) {
    if (e.touches(hub)) continue;
    if (!uf.unite(e.u, e.v)) return false;
    ++degree[e.u];
    ++degree[e.v];
  }
  if (uf.components() != n / 3 + 1) return false;
  std::vector<int> component_size(n + 1, 0);
  for (Vertex v = 0; v <= n; ++v) {
    if (v == hub) continue;
    if (degree[v] > 2) return false;
    ++component_size[uf.find(v)];
  }
  for (Vertex v = 0; v <= n; ++v)
    if (v != hub && component_size[uf.find(v)] != 3) return false;
  return true;
}

Graph make_ladder_graph(int n) {
  if (n < 1) throw std::invalid_argument("ladder needs n >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  for (int i = 0; i + 1 < n; ++i) edges.push_back({n + i, n + i + 1});
  for (int i = 0; i < n; ++i) edges.push_back({i, n + i});
  return Graph(2 * n, std::move(edges));
}

namespace {

/// Labels a ladder trace. out_last overrides the last cycle's outgoing edge.
LadderStructure label_cycles(const AccordionStructure& acc, std::optional<EdgeIndex> out_last) {
  const Graph& g = acc.graph;
  const int k = acc.k;
  const int n = acc.n;
  if (k < 4) throw std::invalid_argument("(k,n)-ladders need k >= 4");
  if (static_cast<int>(acc.cycle_edges.size()) != n)
    throw std::invalid_argument("trace needs one edge list per cycle");
  const std::vector<int> first = first_cycles(g, acc.cycle_edges);
  auto both_new = [&](EdgeIndex e, int c) {
    return first[g.edge(e).u] == c && first[g.edge(e).v] == c;
  };

  LadderStructure ladder;
  ladder.graph = g;
  ladder.k = k;
  ladder.n = n;
  ladder.cycle_edges.reserve(n);
  ladder.anchors.reserve(n);

  for (int c = 0; c < n; ++c) {
    const auto& cycle = acc.cycle_edges[c];
    const std::string where = "cycle " + std::to_string(c + 1) + ": ";
    EdgeIndex out_edge = -1;
    if (c + 1 < n) {
      out_edge = acc.cycle_edges[c + 1].front();
    } else if (out_last) {
      out_edge = *out_last;
    } else {
      for (EdgeIndex e : cycle)
        if ((c == 0 || both_new(e, c)) && (out_edge < 0 || e < out_edge)) out_edge = e;
    }
    if (std::find(cycle.begin(), cycle.end(), out_edge) == cycle.end())
      throw std::invalid_argument(where + "does not contain its outgoing edge");
    if (c > 0 && !both_new(out_edge, c))
      throw std::invalid_argument(where + "leaves through an edge with an old endpoint; not a ladder");

    const Vertex v1 = g.edge(out_edge).u;
    const Vertex v2 = g.edge(out_edge).v;
    EdgeIndex touch1 = -1, touch2 = -1;
    for (EdgeIndex e : cycle) {
      if (e == out_edge) continue;
      if (g.edge(e).touches(v1)) touch1 = e;
      if (g.edge(e).touches(v2)) touch2 = e;
    }

    EdgeIndex in_edge = -1;
    if (c > 0) {
      in_edge = cycle.front();
    } else {
      for (EdgeIndex e : cycle)
        if (e != out_edge && e != touch1 && e != touch2 && (in_edge < 0 || e < in_edge)) in_edge = e;
    }
    if (in_edge < 0 || in_edge == touch1 || in_edge == touch2 || in_edge == out_edge)
      throw std::invalid_argument(where + "has no valid entry edge");

    std::vector<EdgeIndex> labels{in_edge};
    for (EdgeIndex e : cycle)
      if (e != in_edge && e != out_edge && e != touch1 && e != touch2) labels.push_back(e);
    labels.push_back(touch2);
    labels.push_back(touch1);
    labels.push_back(out_edge);
    ladder.cycle_edges.push_back(std::move(labels));
    ladder.anchors.emplace_back(v1, v2);
  }
  return ladder;
}

}  // namespace

LadderStructure make_ladder(int n) {
  if (n < 1) throw std::invalid_argument("ladder needs n >= 1");
  if (n == 1)
    throw std::invalid_argument(
        "L_1 is a single rung and carries no (4,n)-ladder structure; use make_ladder_graph");
  // L_n as a trace: square i is rung i, top i, rung i+1, bottom i; square
  // i+1 is fused on rung i+1.
  AccordionStructure acc;
  acc.graph = make_ladder_graph(n);
  acc.k = 4;
  acc.n = n - 1;
  const int rung0 = 2 * (n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    acc.cycle_edges.push_back({rung0 + i, i, rung0 + i + 1, (n - 1) + i});
    if (i > 0) acc.free_edge_choices.push_back(rung0 + i);
  }
  return label_cycles(acc, rung0 + n - 1);
}

std::vector<EdgeIndex> accordion_free_edges(const AccordionStructure& acc) {
  if (acc.cycle_edges.empty()) return {};
  const auto& last = acc.cycle_edges.back();
  if (acc.cycle_edges.size() == 1) return last;
  return std::vector<EdgeIndex>(last.begin() + 1, last.end());
}

std::vector<EdgeIndex> ladder_free_edges(const AccordionStructure& acc) {
  if (acc.cycle_edges.size() <= 1) return accordion_free_edges(acc);
  const int c = static_cast<int>(acc.cycle_edges.size()) - 1;
  const std::vector<int> first = first_cycles(acc.graph, acc.cycle_edges);
  std::vector<EdgeIndex> out;
  for (EdgeIndex e : acc.cycle_edges[c]) {
    const Edge& ed = acc.graph.edge(e);
    if (first[ed.u] == c && first[ed.v] == c) out.push_back(e);
  }
  return out;
}

AccordionStructure make_kn_accordion(int k, int n, const std::vector<EdgeIndex>& choices) {
  check_accordion_params(k, n);
  if (static_cast<int>(choices.size()) != n - 1)
    throw std::invalid_argument("accordion replay needs exactly n-1 choices");
  Builder b(k);
  for (EdgeIndex e : choices) b.fuse(e);
  return b.finish();
}

AccordionStructure make_kn_accordion(int k, int n, std::uint64_t seed) {
  check_accordion_params(k, n);
  Rng rng(seed);
  Builder b(k);
  for (int i = 1; i < n; ++i) {
    const auto free = b.free_edges();
    b.fuse(free[rng.below(free.size())]);
  }
  return b.finish();
}

LadderStructure label_ladder(const AccordionStructure& acc) { return label_cycles(acc, std::nullopt); }

LadderStructure make_kn_ladder(int k, int n) {
  if (k < 4)
    throw std::invalid_argument("(k,n)-ladders need k >= 4; for k = 3 no ladder-free edge survives step 2");
  if (n < 1) throw std::invalid_argument("(k,n)-ladder needs n >= 1");
  Builder b(k);
  for (int i = 1; i < n; ++i) {
    const auto free = b.ladder_free();
    b.fuse(*std::min_element(free.begin(), free.end()));
  }
  return label_ladder(b.finish());
}

std::optional<std::string> ladder_defect(const LadderStructure& L) {
  const Graph& g = L.graph;
  const int k = L.k;
  const int n = L.n;
  auto fail = [](std::string s) { return std::optional<std::string>(std::move(s)); };
  if (k < 4 || n < 1) return fail("k must be >= 4 and n >= 1");
  if (static_cast<int>(L.cycle_edges.size()) != n || static_cast<int>(L.anchors.size()) != n)
    return fail("expected one label list and anchor pair per cycle");
  if (g.num_edges() != n * (k - 1) + 1) return fail("edge count differs from n(k-1)+1");
  if (g.num_vertices() != n * (k - 2) + 2) return fail("vertex count differs from n(k-2)+2");

  std::vector<int> owners(g.num_edges(), 0);
  std::vector<bool> shared(g.num_edges(), false);
  std::vector<bool> seen(g.num_vertices(), false);
  for (int c = 0; c < n; ++c) {
    const auto& labels = L.cycle_edges[c];
    const std::string where = "cycle " + std::to_string(c + 1) + ": ";
    if (static_cast<int>(labels.size()) != k) return fail(where + "needs k labels");
    for (EdgeIndex e : labels)
      if (e < 0 || e >= g.num_edges()) return fail(where + "edge index out of range");
    std::vector<EdgeIndex> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      return fail(where + "repeated edge label");

    // k edges on k vertices, each of degree two, connected: a k-cycle.
    std::vector<Vertex> verts;
    for (EdgeIndex e : labels) verts.insert(verts.end(), {g.edge(e).u, g.edge(e).v});
    std::sort(verts.begin(), verts.end());
    for (std::size_t j = 0; j < verts.size(); j += 2)
      if (verts[j] != verts[j + 1] || (j + 2 < verts.size() && verts[j + 2] == verts[j]))
        return fail(where + "edges do not form a cycle");
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    auto local = [&](Vertex v) {
      return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
    };
    UnionFind uf(k);
    for (EdgeIndex e : labels) uf.unite(local(g.edge(e).u), local(g.edge(e).v));
    if (uf.components() != 1) return fail(where + "edges do not form a single cycle");

    const EdgeIndex out = labels[k - 1];
    const auto [v1, v2] = L.anchors[c];
    const Edge& oe = g.edge(out);
    if (!(oe.u == v1 && oe.v == v2) && !(oe.u == v2 && oe.v == v1))
      return fail(where + "anchors are not the endpoints of e_k");
    if (!g.edge(labels[k - 2]).touches(v1) || !g.edge(labels[k - 3]).touches(v2))
      return fail(where + "e_{k-1} must touch v1 and e_{k-2} must touch v2");

    if (c > 0) {
      if (labels[0] != L.cycle_edges[c - 1][k - 1]) return fail(where + "e_1 is not the previous e_k");
      int fresh = 0;
      for (Vertex v : verts) fresh += seen[v] ? 0 : 1;
      if (fresh != k - 2) return fail(where + "must introduce exactly k-2 new vertices");
      if (seen[oe.u] || seen[oe.v]) return fail(where + "outgoing edge must have both endpoints new");
    }
    if (c + 1 < n) shared[out] = true;
    for (EdgeIndex e : labels) ++owners[e];
    for (Vertex v : verts) seen[v] = true;
  }
  // Shared edges belong to exactly two cycles, everything else to one.
  for (EdgeIndex e = 0; e < g.num_edges(); ++e)
    if (owners[e] != (shared[e] ? 2 : 1))
      return fail("edge " + std::to_string(e) + " is not covered as a ladder edge");
  return std::nullopt;
}

}  // namespace qmst
