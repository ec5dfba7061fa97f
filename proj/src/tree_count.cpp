#include "qmst/tree_count.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "qmst/families.hpp"

namespace qmst {

namespace {

/// Bareiss elimination on a dense row-major n x n matrix, in place.
template <typename Int, typename Wide>
TreeCount bareiss(std::vector<Int>& a, int n) {
  if (n == 0) return 1;
  auto at = [&](int r, int c) -> Int& { return a[static_cast<std::size_t>(r) * n + c]; };
  int sign = 1;
  Int prev = 1;
  for (int p = 0; p < n; ++p) {
    if (at(p, p) == 0) {
      int swap = -1;
      for (int r = p + 1; r < n && swap < 0; ++r)
        if (at(r, p) != 0) swap = r;
      if (swap < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(at(p, c), at(swap, c));
      sign = -sign;
    }
    for (int r = p + 1; r < n; ++r) {
      for (int c = p + 1; c < n; ++c) {
        Wide num = Wide(at(r, c)) * Wide(at(p, p)) - Wide(at(r, p)) * Wide(at(p, c));
        at(r, c) = static_cast<Int>(num / Wide(prev));
      }
      at(r, p) = 0;
    }
    prev = at(p, p);
  }
  TreeCount det(at(n - 1, n - 1));
  return sign < 0 ? TreeCount(-det) : det;
}

TreeCount laplacian_cofactor(int num_vertices, const std::vector<Edge>& edges) {
  if (num_vertices <= 1) return 1;
  const int n = num_vertices - 1;  // drop the last vertex
  std::vector<std::int64_t> degree(num_vertices, 0);
  for (const Edge& e : edges) {
    ++degree[e.u];
    ++degree[e.v];
  }
  // Hadamard bound on every minor decides whether 64-bit storage is exact;
  // products of two minors go through 128 bits.
  double log2_bound = 0;
  for (int v = 0; v < n; ++v)
    log2_bound += 0.5 * std::log2(std::max<double>(1.0, 2.0 * double(degree[v]) * double(degree[v])));

  auto fill = [&](auto& a) {
    auto at = [&](int r, int c) -> auto& { return a[static_cast<std::size_t>(r) * n + c]; };
    for (const Edge& e : edges) {
      if (e.u < n) at(e.u, e.u) += 1;
      if (e.v < n) at(e.v, e.v) += 1;
      if (e.u < n && e.v < n) {
        at(e.u, e.v) -= 1;
        at(e.v, e.u) -= 1;
      }
    }
  };
  if (log2_bound < 61) {
    std::vector<std::int64_t> a(static_cast<std::size_t>(n) * n, 0);
    fill(a);
    return bareiss<std::int64_t, __int128>(a, n);
  }
  std::vector<TreeCount> a(static_cast<std::size_t>(n) * n, 0);
  fill(a);
  return bareiss<TreeCount, TreeCount>(a, n);
}

bool connected(int num_vertices, const std::vector<Edge>& edges) {
  if (num_vertices <= 1) return true;
  UnionFind uf(num_vertices);
  for (const Edge& e : edges) uf.unite(e.u, e.v);
  return uf.components() == 1;
}

std::string memo_key(const Multigraph& g) {
  std::vector<std::pair<int, int>> es;
  es.reserve(g.edges.size());
  for (const Edge& e : g.edges) es.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(es.begin(), es.end());
  std::string key = std::to_string(g.num_vertices) + ":";
  for (auto [u, v] : es) key += std::to_string(u) + "-" + std::to_string(v) + ",";
  return key;
}

TreeCount del_con(const Multigraph& g, std::unordered_map<std::string, TreeCount>& memo) {
  if (g.num_vertices <= 1) return 1;
  if (static_cast<int>(g.edges.size()) < g.num_vertices - 1) return 0;
  if (!connected(g.num_vertices, g.edges)) return 0;
  const std::string key = memo_key(g);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const std::size_t e = g.edges.size() - 1;
  TreeCount value = del_con(delete_edge(g, e), memo) + del_con(contract_edge(g, e), memo);
  memo.emplace(key, value);
  return value;
}

struct Mat2 {
  std::array<TreeCount, 4> a;  // row-major
};

Mat2 mul(const Mat2& x, const Mat2& y) {
  return {{x.a[0] * y.a[0] + x.a[1] * y.a[2], x.a[0] * y.a[1] + x.a[1] * y.a[3],
           x.a[2] * y.a[0] + x.a[3] * y.a[2], x.a[2] * y.a[1] + x.a[3] * y.a[3]}};
}

}  // namespace

TreeCount count_matrix_tree(const Graph& g) {
  if (!is_connected(g)) return 0;
  return laplacian_cofactor(g.num_vertices(), g.edges());
}

TreeCount count_matrix_tree(const Multigraph& g) {
  if (!connected(g.num_vertices, g.edges)) return 0;
  return laplacian_cofactor(g.num_vertices, g.edges);
}

TreeCount count_deletion_contraction(const Multigraph& g, std::size_t max_edges) {
  if (g.edges.size() > max_edges)
    throw std::length_error("deletion-contraction is limited to " + std::to_string(max_edges) +
                            " edges, got " + std::to_string(g.edges.size()));
  std::unordered_map<std::string, TreeCount> memo;
  return del_con(g, memo);
}

TreeCount count_deletion_contraction(const Graph& g, std::size_t max_edges) {
  return count_deletion_contraction(Multigraph::from(g), max_edges);
}

TreeCount count_accordion_recursive(int k, int n) {
  if (k < 3) throw std::invalid_argument("accordion counting needs k >= 3");
  if (n < 1) throw std::invalid_argument("accordion counting needs n >= 1");
  TreeCount older = count_matrix_tree(make_kn_accordion(k, 1, std::vector<EdgeIndex>{}).graph);
  if (n == 1) return older;
  TreeCount newer = count_matrix_tree(make_kn_accordion(k, 2, std::vector<EdgeIndex>{0}).graph);
  for (int i = 3; i <= n; ++i) {
    TreeCount next = k * newer - older;
    older = std::move(newer);
    newer = std::move(next);
  }
  return newer;
}

TreeCount count_accordion_closed_form(int k, int n) {
  if (k != 3 && k != 4) throw std::invalid_argument("closed forms exist for k = 3 and k = 4 only");
  if (n < 1) throw std::invalid_argument("accordion counting needs n >= 1");
  // [[k, -1], [1, 0]]^j applied to (U_1, U_0) = (1, 0) gives (U_{j+1}, U_j).
  Mat2 result{{1, 0, 0, 1}};
  Mat2 base{{k, -1, 1, 0}};
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
  }
  return result.a[0];  // U_{n+1}
}

}  // namespace qmst
