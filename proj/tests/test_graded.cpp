#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "qmst/costs.hpp"
#include "qmst/enumerate.hpp"
#include "qmst/graded.hpp"

using namespace qmst;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

CostMatrix sorted_q() {
  CostMatrix q(3, 3);
  q << 1, 2, 3, 2, 3, 4, 3, 4, 5;
  return q;
}

/// Random spanning tree plus extra edges, up to max_edges in total.
Graph random_connected_graph(int n, int max_edges, Rng& rng) {
  std::vector<Edge> edges;
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  for (int v = 1; v < n; ++v) {
    const int u = static_cast<int>(rng.below(v));
    edges.push_back({u, v});
    used[u][v] = used[v][u] = true;
  }
  for (int tries = 0; tries < 100 && static_cast<int>(edges.size()) < max_edges; ++tries) {
    const int u = static_cast<int>(rng.below(n));
    const int v = static_cast<int>(rng.below(n));
    if (u == v || used[u][v]) continue;
    edges.push_back({u, v});
    used[u][v] = used[v][u] = true;
  }
  return Graph(n, edges);
}

bool some_permutation_doubly_graded(const CostMatrix& q) {
  std::vector<int> order(q.rows());
  std::iota(order.begin(), order.end(), 0);
  do {
    if (is_doubly_graded(q, Permutation::from_order(order))) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

}  // namespace

TEST_SUITE("graded_solver") {
  TEST_CASE("row minima on the triangle") {
    const Instance inst{triangle(), sorted_q(), {}, ProblemKind::QMST};
    const RowMst r0 = mst_row(inst, 0);
    CHECK(r0.value == 3);
    CHECK(r0.tree.edges == EdgeSet{0, 1});
    CHECK(mst_row(inst, 2).value == 7);
    const Instance zero{triangle(), CostMatrix::Zero(3, 3), {}, ProblemKind::QMST};
    for (int i = 0; i < 3; ++i) CHECK(mst_row(zero, i).value == 0);
  }

  TEST_CASE("natural lower bound on the triangle") {
    const Instance inst{triangle(), sorted_q(), {}, ProblemKind::QMST};
    const NaturalBound b = natural_lower_bound(inst);
    CHECK(b.value == 8);
    CHECK(b.tree.edges == EdgeSet{0, 1});
    CHECK(b.z == std::vector<Cost>{3, 5, 7});
    const Instance zero{triangle(), CostMatrix::Zero(3, 3), {}, ProblemKind::QMST};
    CHECK(natural_lower_bound(zero).value == 0);
  }

  TEST_CASE("bound never exceeds the optimum") {
    Rng rng(2024);
    for (int rep = 0; rep < 100; ++rep) {
      const Graph g = random_connected_graph(4 + static_cast<int>(rng.below(2)), 7, rng);
      const Instance inst{g, random_costs(g.num_edges(), {-5, 20}, rng), {}, ProblemKind::QMST};
      CHECK(natural_lower_bound(inst).value <= solve_exact(inst).value);
      const Instance bot{g, inst.q, {}, ProblemKind::QBST};
      CHECK(natural_lower_bound(bot, Aggregation::Max).value <= solve_exact(bot).value);
    }
  }

  TEST_CASE("recognition examples") {
    const GradedCertificate a = recognize_graded(sorted_q());
    CHECK(a.kind == GradedKind::DoublyGraded);
    CHECK(a.pi->order == std::vector<int>{0, 1, 2});

    Rng rng(4);
    for (int rep = 0; rep < 20; ++rep) {
      const CostMatrix shuffled = shuffle_symmetric(sorted_q(), rng);
      const GradedCertificate c = recognize_graded(shuffled);
      REQUIRE(c.kind == GradedKind::DoublyGraded);
      CHECK(is_doubly_graded(shuffled, *c.pi));
    }

    CostMatrix contradictory(2, 2);
    contradictory << 0, 1, 1, 0;
    CHECK(recognize_graded(contradictory).kind == GradedKind::None);

    CostMatrix row_only(2, 2);
    row_only << 5, 6, 0, 1;
    const GradedCertificate r = recognize_graded(row_only);
    CHECK(r.kind == GradedKind::RowGraded);
    CHECK(is_row_graded(row_only, *r.pi));
    CHECK_FALSE(is_doubly_graded(row_only, *r.pi));
  }

  TEST_CASE("recognition finds every doubly graded order") {
    Rng rng(31);
    int positives = 0;
    for (int rep = 0; rep < 400; ++rep) {
      const int m = 2 + static_cast<int>(rng.below(4));
      const CostMatrix q = rep % 2 ? permuted_graded_costs(m, {0, 3}, rng) : random_costs(m, {0, 2}, rng);
      const bool truth = some_permutation_doubly_graded(q);
      const GradedCertificate c = recognize_graded(q);
      CHECK((c.kind == GradedKind::DoublyGraded) == truth);
      if (c.kind != GradedKind::None) CHECK(is_row_graded(q, *c.pi));
      if (c.kind == GradedKind::DoublyGraded) CHECK(is_doubly_graded(q, *c.pi));
      positives += truth;
    }
    CHECK(positives > 200);
  }

  TEST_CASE("critical trees") {
    CHECK(pi_critical_tree(triangle(), Permutation::identity(3)).edges == EdgeSet{0, 1});
    CHECK(pi_critical_tree(triangle(), Permutation::from_order({2, 1, 0})).edges == EdgeSet{1, 2});
  }

  TEST_CASE("doubly graded solve on the triangle") {
    const Instance inst{triangle(), sorted_q(), {}, ProblemKind::QMST};
    GradedCertificate cert;
    const SolveResult r = solve_doubly_graded(inst, &cert);
    CHECK(r.value == 8);
    CHECK(r.tree.edges == EdgeSet{0, 1});
    CHECK(r.method == "graded");
    CHECK(cert.kind == GradedKind::DoublyGraded);
    const Instance zero{triangle(), CostMatrix::Zero(3, 3), {}, ProblemKind::QMST};
    CHECK(solve_doubly_graded(zero).value == 0);
    const Instance bot{triangle(), sorted_q(), {}, ProblemKind::QBST};
    CHECK(solve_doubly_graded_bottleneck(bot).value == 3);
    CostMatrix contradictory = sorted_q();
    contradictory(0, 1) = 9;
    const Instance bad{triangle(), contradictory, {}, ProblemKind::QMST};
    CHECK_THROWS_AS(solve_doubly_graded(bad), std::invalid_argument);
  }

  TEST_CASE("critical tree is optimal on permuted graded instances") {
    Rng rng(99);
    for (int rep = 0; rep < 50; ++rep) {
      CAPTURE(rep);
      const int n = 4 + static_cast<int>(rng.below(3));
      const Graph g = random_connected_graph(n, 9 + static_cast<int>(rng.below(4)), rng);
      const CostMatrix q = permuted_graded_costs(g.num_edges(), {0, 15}, rng);
      const Instance sum{g, q, {}, ProblemKind::QMST};
      const SolveResult a = solve_doubly_graded(sum);
      CHECK(a.value == solve_exact(sum).value);
      CHECK(a.value == natural_lower_bound(sum).value);
      const Instance max{g, q, {}, ProblemKind::QBST};
      const SolveResult b = solve_doubly_graded_bottleneck(max);
      CHECK(b.value == solve_exact(max).value);
      CHECK(b.value == natural_lower_bound(max, Aggregation::Max).value);
    }
  }

  TEST_CASE("nnl certification") {
    const Instance inst{triangle(), sorted_q(), {}, ProblemKind::QMST};
    const NnlCheck ok = certify_nnl(inst, Permutation::identity(3));
    CHECK(ok.certified);
    CHECK(ok.value == 8);
    CHECK(ok.lower_bound == 8);

    Rng rng(6);
    for (int rep = 0; rep < 40; ++rep) {
      const Graph g = random_connected_graph(5, 8, rng);
      const int m = g.num_edges();
      CostMatrix q = random_costs(m, {0, 9}, rng);
      for (int i = 0; i < m; ++i) std::sort(q.row(i).begin(), q.row(i).end());
      const Instance row_graded{g, q, {}, ProblemKind::QMST};
      const NnlCheck c = certify_nnl(row_graded, Permutation::identity(m));
      if (c.certified) CHECK(c.value == solve_exact(row_graded).value);
      CHECK(c.lower_bound <= solve_exact(row_graded).value);
    }
    CostMatrix unsorted = sorted_q();
    unsorted(0, 0) = 9;
    CHECK_THROWS_AS(certify_nnl(Instance{triangle(), unsorted, {}, ProblemKind::QMST}, Permutation::identity(3)),
                    std::invalid_argument);
  }
}
