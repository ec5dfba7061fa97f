#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qmst/costs.hpp"
#include "qmst/enumerate.hpp"
#include "qmst/families.hpp"
#include "qmst/graded.hpp"
#include "qmst/ladder_dp.hpp"
#include "qmst/matroid.hpp"
#include "qmst/reductions.hpp"
#include "qmst/tree_count.hpp"

using namespace qmst;

namespace {

/// Collects the first few mismatches of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_.size() < 5) failures_.push_back(what);
    ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string detail() const {
    std::ostringstream ss;
    ss << checks_ << " checks";
    if (failed_) {
      ss << ", " << failed_ << " failed";
      for (const auto& f : failures_) ss << "; " << f;
    }
    return ss.str();
  }

 private:
  std::uint64_t checks_ = 0;
  std::uint64_t failed_ = 0;
  std::vector<std::string> failures_;
};

Graph random_connected_graph(int n, int max_edges, Rng& rng) {
  std::vector<Edge> edges;
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  for (int v = 1; v < n; ++v) {
    const int u = static_cast<int>(rng.below(v));
    edges.push_back({u, v});
    used[u][v] = used[v][u] = true;
  }
  for (int tries = 0; tries < 200 && static_cast<int>(edges.size()) < max_edges; ++tries) {
    const int u = static_cast<int>(rng.below(n));
    const int v = static_cast<int>(rng.below(n));
    if (u == v || used[u][v]) continue;
    edges.push_back({u, v});
    used[u][v] = used[v][u] = true;
  }
  return Graph(n, edges);
}

std::string str(const TreeCount& t) { return t.str(); }

// ---------------------------------------------------------------- 1

void counting_recursion(Check& c) {
  for (int k = 3; k <= 6; ++k)
    for (int n = 1; n <= 8; ++n) {
      const TreeCount expected = count_accordion_recursive(k, n);
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const TreeCount got = count_matrix_tree(make_kn_accordion(k, n, 1000 * k + 10 * n + seed).graph);
        c.expect(got == expected, "A(" + std::to_string(k) + "," + std::to_string(n) + ") seed " +
                                      std::to_string(seed) + ": " + str(got) + " vs " + str(expected));
      }
    }
}

// ---------------------------------------------------------------- 2

void closed_forms(Check& c) {
  for (int k = 3; k <= 4; ++k)
    for (int n = 1; n <= 20; ++n)
      c.expect(count_accordion_closed_form(k, n) == count_accordion_recursive(k, n),
               "closed form k=" + std::to_string(k) + " n=" + std::to_string(n));
  const std::vector<std::pair<std::pair<int, int>, int>> spots{{{3, 1}, 3}, {{3, 2}, 8}, {{3, 3}, 21}, {{4, 1}, 4}, {{4, 2}, 15}};
  for (const auto& [kn, value] : spots) {
    const auto [k, n] = kn;
    const TreeCount oracle = count_matrix_tree(make_kn_accordion(k, n, 7).graph);
    c.expect(oracle == value, "matrix-tree spot value");
    c.expect(count_accordion_closed_form(k, n) == oracle, "closed-form spot value");
  }
}

// ---------------------------------------------------------------- 3

/// Smallest edge mask over all vertex relabellings.
std::uint32_t canonical_mask(std::uint32_t mask, const std::vector<std::pair<int, int>>& pairs,
                             const std::vector<std::vector<int>>& index, const std::vector<std::vector<int>>& perms) {
  std::uint32_t best = mask;
  for (const auto& p : perms) {
    std::uint32_t image = 0;
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (mask >> b & 1) image |= 1u << index[p[pairs[b].first]][p[pairs[b].second]];
    best = std::min(best, image);
  }
  return best;
}

void deletion_contraction_identity(Check& c, int& classes) {
  classes = 0;
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::vector<int>> index(n, std::vector<int>(n, -1));
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        index[u][v] = index[v][u] = static_cast<int>(pairs.size());
        pairs.push_back({u, v});
      }
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    std::vector<bool> seen(std::size_t{1} << pairs.size(), false);
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
      std::vector<Edge> edges;
      for (std::size_t b = 0; b < pairs.size(); ++b)
        if (mask >> b & 1) edges.push_back({pairs[b].first, pairs[b].second});
      const Graph g(n, edges);
      if (!is_connected(g)) continue;
      const std::uint32_t canon = canonical_mask(mask, pairs, index, perms);
      if (seen[canon]) continue;
      seen[canon] = true;
      ++classes;
      const TreeCount tau = count_matrix_tree(g);
      c.expect(count_deletion_contraction(g) == tau, "deletion-contraction backend differs");
      for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
        const TreeCount minus = count_matrix_tree(delete_edge(g, e));
        const TreeCount contracted = count_matrix_tree(contract_edge(g, e));
        c.expect(tau == minus + contracted, "matrix-tree identity fails on n=" + std::to_string(n));
        const TreeCount dc_minus = count_deletion_contraction(delete_edge(g, e));
        const TreeCount dc_contracted = count_deletion_contraction(contract_edge(g, e));
        c.expect(tau == dc_minus + dc_contracted, "deletion-contraction identity fails on n=" + std::to_string(n));
      }
    }
  }
}

// ---------------------------------------------------------------- 4

ConflictSet random_adjacent_conflicts(const Graph& g, int count, Rng& rng) {
  std::vector<ConflictPair> pairs;
  const int m = g.num_edges();
  for (int tries = 0; tries < 50 * count && static_cast<int>(pairs.size()) < count; ++tries) {
    const auto e = static_cast<EdgeIndex>(rng.below(m));
    const auto f = static_cast<EdgeIndex>(rng.below(m));
    if (e != f && edges_adjacent(g, e, f)) pairs.push_back({e, f});
  }
  return make_conflict_set(std::move(pairs));
}

void ladder_dp_oracle(Check& c, int& infeasible) {
  infeasible = 0;
  const ProblemKind kinds[] = {ProblemKind::AQMST, ProblemKind::AQBST, ProblemKind::MSTAC, ProblemKind::BSTAC};
  for (ProblemKind kind : kinds)
    for (int k = 4; k <= 6; ++k)
      for (int n = 1; n <= 4; ++n) {
        const LadderStructure l = make_kn_ladder(k, n);
        for (std::uint64_t seed = 1; seed <= 25; ++seed) {
          Rng rng(seed * 7919 + 100 * k + n);
          Instance inst{l.graph, adjacent_random_costs(l.graph, {-5, 12}, rng), {}, kind};
          if (uses_conflicts(kind)) inst.conflicts = random_adjacent_conflicts(l.graph, 1 + static_cast<int>(rng.below(2 * n + 2)), rng);
          const SolveResult oracle = solve_exact(inst);
          const SolveResult dp = dp_solve(inst, l);
          const std::string tag = std::string(to_string(kind)) + " k=" + std::to_string(k) + " n=" + std::to_string(n) +
                                  " seed=" + std::to_string(seed);
          c.expect(dp.status == oracle.status, tag + ": feasibility verdicts differ");
          if (dp.status != oracle.status) continue;
          if (oracle.status == SolveStatus::Infeasible) {
            ++infeasible;
            continue;
          }
          c.expect(dp.value == oracle.value, tag + ": " + std::to_string(dp.value) + " vs " + std::to_string(oracle.value));
          c.expect(is_spanning_tree(l.graph, dp.tree.edges) && evaluate_objective(inst, dp.tree.edges) == dp.value &&
                       conflict_violations(inst.conflicts, l.graph.num_edges(), dp.tree.edges) == 0,
                   tag + ": reconstructed tree does not reproduce the value");
        }
      }
}

// ---------------------------------------------------------------- 5

struct ScalingRun {
  double seconds = 0;
  std::uint64_t evaluations = 0;
};

ScalingRun run_scaling(int k, int n) {
  const LadderStructure l = make_kn_ladder(k, n);
  Rng rng(1);
  const SparseInstance inst{l.graph, adjacent_random_costs_sparse(l.graph, {0, 9}, rng), {}, ProblemKind::AQMST};
  DpStats stats;
  const auto start = std::chrono::steady_clock::now();
  const SolveResult r = dp_solve(inst, l, &stats);
  ScalingRun out;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.evaluations = is_spanning_tree(l.graph, r.tree.edges) ? stats.candidate_evaluations : 0;
  return out;
}

void ladder_scaling(Check& c, std::string& note) {
  const ScalingRun full = run_scaling(4, 100000);
  const ScalingRun half = run_scaling(4, 50000);
  const double ratio = static_cast<double>(full.evaluations) / static_cast<double>(half.evaluations);
  c.expect(full.evaluations > 0, "solution is not a spanning tree");
  c.expect(full.seconds < 10.0, "(4,100000) took " + std::to_string(full.seconds) + " s");
  c.expect(ratio >= 1.9 && ratio <= 2.1, "work ratio " + std::to_string(ratio));
  char buf[128];
  std::snprintf(buf, sizeof buf, "n=100000 in %.3f s, evaluation ratio %.5f", full.seconds, ratio);
  note = buf;
}

// ---------------------------------------------------------------- 6

void graded_theory(Check& c) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed);
    const int n = 4 + static_cast<int>(rng.below(3));
    const Graph g = random_connected_graph(n, 8 + static_cast<int>(rng.below(5)), rng);
    const CostMatrix q = permuted_graded_costs(g.num_edges(), {0, 20}, rng);
    const std::string tag = "seed " + std::to_string(seed);
    const Instance sum{g, q, {}, ProblemKind::QMST};
    const SolveResult a = solve_doubly_graded(sum);
    c.expect(a.value == natural_lower_bound(sum).value, tag + ": sum value differs from the bound");
    c.expect(a.value == solve_exact(sum).value, tag + ": sum value differs from enumeration");
    const Instance max{g, q, {}, ProblemKind::QBST};
    const SolveResult b = solve_doubly_graded_bottleneck(max);
    c.expect(b.value == natural_lower_bound(max, Aggregation::Max).value, tag + ": max value differs from the bound");
    c.expect(b.value == solve_exact(max).value, tag + ": max value differs from enumeration");
  }
}

// ---------------------------------------------------------------- 7

void natural_bound(Check& c, int& strict) {
  strict = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(10000 + seed);
    const Graph g = random_connected_graph(4 + static_cast<int>(rng.below(3)), 7 + static_cast<int>(rng.below(5)), rng);
    const Instance inst{g, random_costs(g.num_edges(), {-10, 30}, rng), {}, ProblemKind::QMST};
    const Cost bound = natural_lower_bound(inst).value;
    const Cost opt = solve_exact(inst).value;
    c.expect(bound <= opt, "seed " + std::to_string(seed) + ": bound " + std::to_string(bound) + " > " + std::to_string(opt));
    strict += bound < opt;
  }
}

// ---------------------------------------------------------------- 8

bool feasible_and_sound(Check& c, const ReductionOutput& out, const std::string& tag) {
  const SolveResult r = solve_exact(out.instance);
  if (r.status != SolveStatus::Optimal) return false;
  c.expect(satisfies(out.formula, decode_assignment(out, r.tree)), tag + ": decoded assignment fails");
  return true;
}

/**
   All eight sign patterns over three distinct variables, shuffled. With
   `perturb` one literal is flipped, which repeats a pattern and leaves
   another one uncovered.
 */
ThreeSatInstance sign_pattern_formula(int vars, bool perturb, Rng& rng) {
  std::vector<int> pool(vars);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = vars - 1; i > 0; --i) std::swap(pool[i], pool[rng.below(i + 1)]);
  ThreeSatInstance sat{vars, {}};
  for (int mask = 0; mask < 8; ++mask)
    sat.clauses.push_back({Literal{pool[0], (mask & 1) != 0}, Literal{pool[1], (mask & 2) != 0},
                           Literal{pool[2], (mask & 4) != 0}});
  for (int i = 7; i > 0; --i) std::swap(sat.clauses[i], sat.clauses[rng.below(i + 1)]);
  if (perturb) {
    Literal& lit = sat.clauses[rng.below(8)][rng.below(3)];
    lit.negated = !lit.negated;
  }
  return sat;
}

void reduction_iff(Check& c, int& satisfiable) {
  satisfiable = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    const int vars = 3 + static_cast<int>(rng.below(8));
    ThreeSatInstance sat = seed % 3 == 0 ? sign_pattern_formula(vars, seed % 2 == 0, rng)
                                         : random_three_sat(vars, 1 + static_cast<int>(rng.below(8)), rng);
    const bool truth = sat_brute_force(sat).satisfiable;
    const std::string tag = "formula " + std::to_string(seed);
    const ReductionOutput fan = reduce_to_fanstar(sat);
    c.expect(is_fan_star(fan.instance.graph) && conflicts_adjacent_only(fan.instance.graph, fan.instance.conflicts),
             tag + ": fan-star output malformed");
    c.expect(feasible_and_sound(c, fan, tag + " fan-star") == truth, tag + ": fan-star verdict differs");
    c.expect(feasible_and_sound(c, reduce_to_ladder(sat), tag + " ladder") == truth, tag + ": ladder verdict differs");
    satisfiable += truth;
  }
}

// ---------------------------------------------------------------- 9

std::vector<std::pair<std::string, BaseSystem>> matroid_fixtures() {
  std::vector<std::pair<std::string, BaseSystem>> out;
  out.push_back({"triangle", graphic_matroid(Graph(3, {{0, 1}, {1, 2}, {0, 2}}))});
  out.push_back({"K4", graphic_matroid(Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}))});
  out.push_back({"diamond", graphic_matroid(Graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}))});
  out.push_back({"F4", graphic_matroid(make_fan(4))});
  out.push_back({"L3", graphic_matroid(make_ladder_graph(3))});
  out.push_back({"U(1,3)", uniform_matroid(1, 3)});
  out.push_back({"U(2,4)", uniform_matroid(2, 4)});
  out.push_back({"U(3,6)", uniform_matroid(3, 6)});
  out.push_back({"U(4,7)", uniform_matroid(4, 7)});
  return out;
}

std::vector<std::pair<std::string, BaseSystem>> non_matroid_fixtures() {
  std::vector<std::pair<std::string, BaseSystem>> out;
  out.push_back({"two blocks", make_base_system(4, {{0, 1}, {2, 3}})});
  out.push_back({"path triple", make_base_system(5, {{0, 1}, {0, 2}, {3, 4}})});
  out.push_back({"rank three", make_base_system(6, {{0, 1, 2}, {3, 4, 5}, {0, 1, 3}})});
  out.push_back({"U(2,4) minus two", make_base_system(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}})});
  Rng rng(55);
  int added = 0;
  while (added < 6) {
    const int m = 5 + static_cast<int>(rng.below(2));
    const int r = 2 + static_cast<int>(rng.below(2));
    std::vector<std::vector<int>> bases;
    for (int t = 0; t < 5; ++t) {
      std::vector<int> all(m);
      std::iota(all.begin(), all.end(), 0);
      for (int i = m - 1; i > 0; --i) std::swap(all[i], all[rng.below(i + 1)]);
      bases.emplace_back(all.begin(), all.begin() + r);
    }
    BaseSystem bs = make_base_system(m, bases);
    if (is_matroid(bs)) continue;
    out.push_back({"random " + std::to_string(++added), std::move(bs)});
  }
  return out;
}

void matroid_characterisation(Check& c) {
  for (const auto& [name, bs] : matroid_fixtures()) {
    c.expect(is_matroid(bs), name + " is not recognised as a matroid");
    Rng rng(std::hash<std::string>{}(name) & 0xffff);
    for (int rep = 0; rep < 20; ++rep) {
      const CostMatrix w = permuted_graded_costs(bs.ground_size, {0, 15}, rng);
      for (Aggregation agg : {Aggregation::Sum, Aggregation::Max}) {
        Permutation pi;
        const BaseSolution g = solve_qmwb_doubly_graded(bs, w, agg, &pi);
        const std::string tag = name + (agg == Aggregation::Sum ? " sum" : " max");
        c.expect(g.base == pi_critical_base(bs, pi), tag + ": returned base is not pi-critical");
        c.expect(g.base == greedy_base(bs, pi), tag + ": greedy differs on a matroid");
        c.expect(g.value == solve_qmwb_exact(bs, w, agg).value, tag + ": critical base is not optimal");
        c.expect(g.value == natural_lower_bound_base(bs, w, agg).value, tag + ": value differs from the bound");
      }
    }
  }
  for (const auto& [name, bs] : non_matroid_fixtures()) {
    ExchangeViolation witness;
    c.expect(!is_matroid(bs, &witness), name + " passes the exchange test");
    const Counterexample ce = build_counterexample(bs, witness);
    c.expect(is_doubly_graded(ce.w, ce.pi), name + ": pi(W) is not doubly graded");
    c.expect(recognize_graded(ce.w).kind == GradedKind::DoublyGraded, name + ": recogniser disagrees");
    c.expect(pi_critical_base(bs, ce.pi) == witness.s1, name + ": S1 is not pi-critical");
    c.expect(qmwb_objective(bs, ce.w, witness.s1) == 1, name + ": objective of S1 is not 1");
    c.expect(qmwb_objective(bs, ce.w, witness.s2) == 0, name + ": objective of S2 is not 0");
  }
}

// ---------------------------------------------------------------- driver

struct Criterion {
  int id;
  std::string title;
  double budget;
  std::function<std::string(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "accordion counts follow the three-term recursion", 10,
       [](Check& c) {
         counting_recursion(c);
         return std::string("k 3..6, n 1..8, 5 accordions each");
       }},
      {2, "closed forms match the recursion", 1,
       [](Check& c) {
         closed_forms(c);
         return std::string("k 3..4, n 1..20 plus spot values");
       }},
      {3, "deletion-contraction identity on small graphs", 60,
       [](Check& c) {
         int classes = 0;
         deletion_contraction_identity(c, classes);
         return std::to_string(classes) + " connected graphs up to isomorphism, every edge";
       }},
      {4, "ladder DP agrees with enumeration", 300,
       [](Check& c) {
         int infeasible = 0;
         ladder_dp_oracle(c, infeasible);
         return std::to_string(infeasible) + " of 1200 instances infeasible";
       }},
      {5, "ladder DP scales linearly", 30,
       [](Check& c) {
         std::string note;
         ladder_scaling(c, note);
         return note;
       }},
      {6, "critical tree is optimal on permuted doubly graded costs", 120,
       [](Check& c) {
         graded_theory(c);
         return std::string("50 seeds, sum and bottleneck");
       }},
      {7, "natural lower bound never exceeds the optimum", 120,
       [](Check& c) {
         int strict = 0;
         natural_bound(c, strict);
         return std::to_string(strict) + " of 100 strictly below";
       }},
      {8, "3-SAT reductions preserve satisfiability", 300,
       [](Check& c) {
         int sat = 0;
         reduction_iff(c, sat);
         return std::to_string(sat) + " of 100 formulas satisfiable";
       }},
      {9, "graded base problems characterise matroids", 60,
       [](Check& c) {
         matroid_characterisation(c);
         return std::string("9 matroids, 10 non-matroids");
       }},
  };

  int failures = 0;
  for (const Criterion& cr : criteria) {
    Check c;
    std::string note;
    const auto start = std::chrono::steady_clock::now();
    try {
      note = cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > cr.budget) c.expect(false, "over the " + std::to_string(cr.budget) + " s budget");
    const bool ok = c.ok();
    failures += !ok;
    std::printf("%s criterion %d: %s [%s; %s] (%.2f s)\n", ok ? "PASS" : "FAIL", cr.id, cr.title.c_str(),
                note.c_str(), c.detail().c_str(), seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
