#include "qmst/reductions.hpp"

#include <sstream>
#include <stdexcept>
#include <string>

#include "qmst/families.hpp"

namespace qmst {

namespace {

EdgeIndex find_edge(const Graph& g, Vertex a, Vertex b) {
  for (EdgeIndex e : g.incident(a))
    if (g.edge(e).touches(b)) return e;
  throw std::logic_error("expected edge missing from the construction");
}

ConflictSet complementary_pairs(const ThreeSatInstance& sat, const std::vector<std::array<EdgeIndex, 3>>& edges) {
  std::vector<ConflictPair> pairs;
  const int n = static_cast<int>(sat.clauses.size());
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < 3; ++i)
      for (int b = a; b < n; ++b)
        for (int j = 0; j < 3; ++j) {
          const Literal& x = sat.clauses[a][i];
          const Literal& y = sat.clauses[b][j];
          if (x.var == y.var && x.negated != y.negated && edges[a][i] != edges[b][j])
            pairs.emplace_back(edges[a][i], edges[b][j]);
        }
  return make_conflict_set(std::move(pairs));
}

void require_clauses(const ThreeSatInstance& sat) {
  check_formula(sat);
  if (sat.clauses.empty()) throw std::invalid_argument("formula needs at least one clause");
}

}  // namespace

void check_formula(const ThreeSatInstance& sat) {
  if (sat.num_vars < 0) throw std::invalid_argument("negative variable count");
  for (const auto& clause : sat.clauses)
    for (const Literal& lit : clause)
      if (lit.var < 0 || lit.var >= sat.num_vars) throw std::invalid_argument("literal refers to an unknown variable");
}

ThreeSatInstance read_dimacs(std::istream& in) {
  ThreeSatInstance sat;
  bool header = false;
  int declared_clauses = 0;
  std::vector<Literal> pending;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == 'c' || first[0] == '%') continue;
    if (first == "p") {
      std::string fmt;
      if (!(ls >> fmt >> sat.num_vars >> declared_clauses) || fmt != "cnf")
        throw std::invalid_argument("malformed DIMACS header: " + line);
      header = true;
      continue;
    }
    if (!header) throw std::invalid_argument("DIMACS clause before the header");
    std::istringstream all(line);
    long long v;
    while (all >> v) {
      if (v == 0) {
        if (pending.size() != 3)
          throw std::invalid_argument("clause " + std::to_string(sat.clauses.size() + 1) + " has " +
                                      std::to_string(pending.size()) + " literals; exactly 3 are required");
        sat.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      const long long var = v < 0 ? -v : v;
      if (var > sat.num_vars) throw std::invalid_argument("literal " + std::to_string(v) + " exceeds the variable count");
      pending.push_back({static_cast<int>(var - 1), v < 0});
    }
    if (!all.eof()) throw std::invalid_argument("malformed DIMACS line: " + line);
  }
  if (!header) throw std::invalid_argument("missing DIMACS header");
  if (!pending.empty()) throw std::invalid_argument("last clause is not terminated by 0");
  if (static_cast<int>(sat.clauses.size()) != declared_clauses)
    throw std::invalid_argument("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                std::to_string(sat.clauses.size()));
  return sat;
}

void write_dimacs(std::ostream& out, const ThreeSatInstance& sat) {
  out << "p cnf " << sat.num_vars << ' ' << sat.clauses.size() << '\n';
  for (const auto& clause : sat.clauses) {
    for (const Literal& lit : clause) out << (lit.negated ? -(lit.var + 1) : lit.var + 1) << ' ';
    out << "0\n";
  }
}

ThreeSatInstance random_three_sat(int num_vars, int num_clauses, Rng& rng) {
  if (num_vars < 1 || num_clauses < 0) throw std::invalid_argument("random formula needs a variable");
  ThreeSatInstance sat;
  sat.num_vars = num_vars;
  for (int c = 0; c < num_clauses; ++c) {
    std::array<Literal, 3> clause;
    for (Literal& lit : clause) {
      lit.var = static_cast<int>(rng.below(num_vars));
      lit.negated = rng.coin();
    }
    sat.clauses.push_back(clause);
  }
  return sat;
}

bool satisfies(const ThreeSatInstance& sat, const Assignment& assignment) {
  if (static_cast<int>(assignment.size()) != sat.num_vars) throw std::invalid_argument("assignment size mismatch");
  for (const auto& clause : sat.clauses) {
    bool ok = false;
    for (const Literal& lit : clause) ok = ok || (assignment[lit.var] != lit.negated);
    if (!ok) return false;
  }
  return true;
}

SatVerdict sat_brute_force(const ThreeSatInstance& sat) {
  check_formula(sat);
  if (sat.num_vars > kSatBruteForceMaxVars)
    throw std::length_error("brute-force SAT is limited to " + std::to_string(kSatBruteForceMaxVars) + " variables");
  Assignment a(sat.num_vars);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << sat.num_vars); ++mask) {
    for (int v = 0; v < sat.num_vars; ++v) a[v] = (mask >> v) & 1;
    if (satisfies(sat, a)) return {true, a};
  }
  return {};
}

ReductionOutput reduce_to_fanstar(const ThreeSatInstance& sat) {
  require_clauses(sat);
  const int n = static_cast<int>(sat.clauses.size());
  ReductionOutput out;
  out.formula = sat;
  Graph g = make_fan_star(3 * n);
  const Vertex hub = 3 * n;
  for (int i = 0; i < n; ++i)
    out.literal_edges.push_back({find_edge(g, hub, 3 * i), find_edge(g, hub, 3 * i + 1), find_edge(g, hub, 3 * i + 2)});
  const int m = g.num_edges();
  out.instance = Instance{std::move(g), CostMatrix::Zero(m, m), complementary_pairs(sat, out.literal_edges),
                          ProblemKind::FSTAC};
  return out;
}

ReductionOutput reduce_to_ladder(const ThreeSatInstance& sat) {
  require_clauses(sat);
  const int n = static_cast<int>(sat.clauses.size());
  const int len = 2 * n + 1;
  ReductionOutput out;
  out.formula = sat;
  Graph g = make_ladder_graph(len);
  auto top = [](int j) { return j - 1; };
  auto bottom = [len](int j) { return len + j - 1; };
  for (int i = 1; i <= n; ++i) {
    const int c = 2 * i;
    out.literal_edges.push_back({find_edge(g, bottom(c - 1), bottom(c)), find_edge(g, bottom(c), top(c)),
                                 find_edge(g, bottom(c), bottom(c + 1))});
  }
  const int m = g.num_edges();
  out.instance = Instance{std::move(g), CostMatrix::Zero(m, m), complementary_pairs(sat, out.literal_edges),
                          ProblemKind::FSTC};
  return out;
}

Assignment decode_assignment(const ReductionOutput& out, const SpanningTree& tree) {
  const Graph& g = out.instance.graph;
  if (!is_spanning_tree(g, tree.edges)) throw std::invalid_argument("not a spanning tree of the reduction graph");
  if (conflict_violations(out.instance.conflicts, g.num_edges(), tree.edges) > 0)
    throw std::invalid_argument("tree violates a conflict pair");
  std::vector<bool> in_tree(g.num_edges(), false);
  for (EdgeIndex e : tree.edges) in_tree[e] = true;
  Assignment a(out.formula.num_vars, false);
  for (std::size_t i = 0; i < out.formula.clauses.size(); ++i)
    for (int j = 0; j < 3; ++j) {
      const Literal& lit = out.formula.clauses[i][j];
      if (!lit.negated && in_tree[out.literal_edges[i][j]]) a[lit.var] = true;
    }
  return a;
}

}  // namespace qmst
