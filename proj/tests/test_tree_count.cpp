#include <doctest.h>

#include "qmst/families.hpp"
#include "qmst/tree_count.hpp"

using namespace qmst;

namespace {

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, edges);
}

}  // namespace

TEST_SUITE("tree_count") {
  TEST_CASE("matrix-tree on small graphs") {
    CHECK(count_matrix_tree(complete_graph(3)) == 3);
    CHECK(count_matrix_tree(complete_graph(4)) == 16);
    CHECK(count_matrix_tree(complete_graph(6)) == 1296);
    CHECK(count_matrix_tree(make_ladder_graph(2)) == 4);
    CHECK(count_matrix_tree(Graph(4, {{0, 1}, {2, 3}})) == 0);
    CHECK(count_matrix_tree(Graph(1, {})) == 1);
    Multigraph doubled{2, {{0, 1}, {0, 1}, {1, 0}}};
    CHECK(count_matrix_tree(doubled) == 3);
  }

  TEST_CASE("deletion-contraction agrees with matrix-tree") {
    CHECK(count_deletion_contraction(complete_graph(3)) == 3);
    CHECK(count_deletion_contraction(make_kn_accordion(3, 2, std::vector<EdgeIndex>{0}).graph) == 8);
    CHECK(count_deletion_contraction(Graph(2, {{0, 1}})) == 1);
    for (int n = 2; n <= 6; ++n) {
      const Graph w = make_wheel(n + 1);
      CHECK(count_deletion_contraction(w) == count_matrix_tree(w));
    }
  }

  TEST_CASE("deletion-contraction is guarded") {
    CHECK_THROWS_AS(count_deletion_contraction(complete_graph(8)), std::length_error);
    CHECK(count_deletion_contraction(complete_graph(7)) == 16807);
  }

  TEST_CASE("accordion recursion seeds and values") {
    CHECK(count_accordion_recursive(3, 1) == 3);
    CHECK(count_accordion_recursive(3, 2) == 8);
    CHECK(count_accordion_recursive(3, 3) == 21);
    CHECK(count_accordion_recursive(4, 1) == 4);
    CHECK(count_accordion_recursive(4, 2) == 15);
    CHECK_THROWS(count_accordion_recursive(2, 3));
    CHECK_THROWS(count_accordion_recursive(4, 0));
  }

  TEST_CASE("closed forms match the recursion") {
    for (int k = 3; k <= 4; ++k)
      for (int n = 1; n <= 20; ++n) CHECK(count_accordion_closed_form(k, n) == count_accordion_recursive(k, n));
    CHECK(count_accordion_closed_form(3, 2) == 8);
    CHECK(count_accordion_closed_form(4, 1) == 4);
    CHECK(count_accordion_closed_form(4, 2) == 15);
  }

  TEST_CASE("accordion counts do not depend on the shape") {
    for (int k = 3; k <= 6; ++k)
      for (int n = 1; n <= 6; ++n) {
        const TreeCount expected = count_accordion_recursive(k, n);
        for (std::uint64_t seed = 11; seed <= 14; ++seed)
          CHECK(count_matrix_tree(make_kn_accordion(k, n, seed).graph) == expected);
      }
  }

  TEST_CASE("large counts stay exact") {
    const TreeCount big = count_accordion_recursive(6, 60);
    CHECK(big == 6 * count_accordion_recursive(6, 59) - count_accordion_recursive(6, 58));
    CHECK(big > TreeCount(1) << 100);
    CHECK(count_matrix_tree(make_kn_ladder(4, 40).graph) == count_accordion_recursive(4, 40));
  }
}
