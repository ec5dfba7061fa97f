#include <doctest.h>

#include <sstream>

#include "qmst/costs.hpp"
#include "qmst/io.hpp"

using namespace qmst;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

template <typename T>
T as(AnyInstance any) {
  REQUIRE(std::holds_alternative<T>(any));
  return std::get<T>(std::move(any));
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("graph text round trip") {
    const Graph g = make_wheel(5);
    std::ostringstream out;
    write_graph_text(out, g);
    std::istringstream in("c a comment\n" + out.str());
    CHECK(read_graph_text(in) == g);
    CHECK(out.str().substr(0, 6) == "p 6 10");
  }

  TEST_CASE("graph text errors") {
    std::istringstream no_header("e 0 1\n");
    CHECK_THROWS_AS(read_graph_text(no_header), FormatError);
    std::istringstream short_count("p 3 2\ne 0 1\n");
    CHECK_THROWS_AS(read_graph_text(short_count), FormatError);
    std::istringstream loop("p 2 1\ne 1 1\n");
    CHECK_THROWS_AS(read_graph_text(loop), FormatError);
    std::istringstream junk("p 2 1\nx 0 1\n");
    CHECK_THROWS_AS(read_graph_text(junk), FormatError);
  }

  TEST_CASE("dense instance round trip") {
    Rng rng(1);
    const Graph g = make_kn_ladder(5, 3).graph;
    const Instance inst{g, random_costs(g.num_edges(), {-100, 100}, rng), {{0, 4}, {2, 3}}, ProblemKind::MSTC};
    const Json j = instance_to_json(inst);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"kind", "graph", "q", "conflicts"});
    const Instance back = as<Instance>(instance_from_json(Json::parse(j.dump())));
    CHECK(back.graph == inst.graph);
    CHECK(back.q == inst.q);
    CHECK(back.conflicts == inst.conflicts);
    CHECK(back.kind == inst.kind);
    CHECK(instance_to_json(back).dump() == j.dump());
  }

  TEST_CASE("sparse instance round trip") {
    Rng rng(2);
    const LadderStructure l = make_kn_ladder(4, 200);
    REQUIRE(l.graph.num_edges() > kDenseCostLimit);
    const SparseInstance inst{l.graph, adjacent_random_costs_sparse(l.graph, {1, 50}, rng), {}, ProblemKind::AQMST};
    const Json j = instance_to_json(inst);
    CHECK(j.contains("q_triplets"));
    CHECK_FALSE(j.contains("q"));
    const SparseInstance back = as<SparseInstance>(instance_from_json(Json::parse(j.dump())));
    CHECK(CostMatrix(back.q) == CostMatrix(inst.q));
    CHECK(instance_to_json(back).dump() == j.dump());
  }

  TEST_CASE("small triplet files load dense") {
    Json j;
    j["kind"] = "QMST";
    j["graph"] = graph_to_json(triangle());
    j["q_triplets"] = Json::array({Json::array({0, 0, 4}), Json::array({1, 2, -1})});
    j["conflicts"] = Json::array();
    const Instance inst = as<Instance>(instance_from_json(j));
    CHECK(inst.q(0, 0) == 4);
    CHECK(inst.q(1, 2) == -1);
    CHECK(inst.q.sum() == 3);
    j["q_triplets"].push_back(Json::array({0, 0, 1}));
    CHECK_THROWS_AS(instance_from_json(j), FormatError);
  }

  TEST_CASE("instance errors") {
    Json j;
    j["kind"] = "QMST";
    j["graph"] = graph_to_json(triangle());
    j["conflicts"] = Json::array();
    CHECK_THROWS_AS(instance_from_json(j), FormatError);
    j["q"] = Json::array({Json::array({1, 2}), Json::array({3, 4})});
    CHECK_THROWS_AS(instance_from_json(j), FormatError);
    j["q"] = Json::array({Json::array({0, 0, 0}), Json::array({0, 0, 0}), Json::array({0, 0, 0})});
    CHECK_NOTHROW(instance_from_json(j));
    j["kind"] = "QMSTX";
    CHECK_THROWS_AS(instance_from_json(j), FormatError);
    j["kind"] = "MSTC";
    j["conflicts"] = Json::array({Json::array({0, 9})});
    CHECK_THROWS(instance_from_json(j));
  }

  TEST_CASE("ladder sidecar round trip") {
    const LadderStructure l = make_kn_ladder(6, 4);
    const Json j = ladder_to_json(l);
    CHECK(j.at("structure") == "ladder");
    const LadderStructure back = ladder_from_json(Json::parse(j.dump()), l.graph);
    CHECK(back.k == l.k);
    CHECK(back.n == l.n);
    CHECK(back.cycle_edges == l.cycle_edges);
    CHECK(back.anchors == l.anchors);
    Json wrong = j;
    wrong["structure"] = "accordion";
    CHECK_THROWS_AS(ladder_from_json(wrong, l.graph), FormatError);
  }

  TEST_CASE("base system round trip") {
    const BaseSystem bs = uniform_matroid(2, 4);
    CostMatrix w = CostMatrix::Identity(4, 4);
    w(1, 3) = 7;
    const Json j = base_system_to_json(bs, &w);
    const BaseSystemFile back = base_system_from_json(Json::parse(j.dump()));
    CHECK(back.bases.ground_size == 4);
    CHECK(back.bases.bases == bs.bases);
    REQUIRE(back.w);
    CHECK(*back.w == w);
    CHECK_FALSE(base_system_from_json(base_system_to_json(bs)).w);
  }

  TEST_CASE("result round trip") {
    SolveResult r;
    r.status = SolveStatus::Optimal;
    r.tree.edges = {0, 2};
    r.value = -4;
    r.method = "enum";
    r.trees_enumerated = 3;
    const Json j = result_to_json(r, ProblemKind::QMST);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"status", "kind", "method", "value", "violations", "tree", "trees_enumerated"});
    const ResultClaim c = result_from_json(j);
    CHECK(c.status == SolveStatus::Optimal);
    CHECK(c.value == -4);
    CHECK(c.tree == r.tree);
    CHECK(c.kind == ProblemKind::QMST);

    SolveResult none;
    none.method = "enum";
    const Json k = result_to_json(none, ProblemKind::FSTAC);
    CHECK(k.at("status") == "infeasible");
    CHECK(k.at("tree").is_null());
    CHECK(result_from_json(k).status == SolveStatus::Infeasible);
    Json bad = k;
    bad["status"] = "maybe";
    CHECK_THROWS_AS(result_from_json(bad), FormatError);
  }

  TEST_CASE("hash is stable") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  }
}
