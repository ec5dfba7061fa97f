#include "qmst/instance.hpp"

#include <array>

namespace qmst {

namespace {

constexpr std::array<std::pair<ProblemKind, std::string_view>, 10> kKindNames{{
    {ProblemKind::QMST, "QMST"},
    {ProblemKind::AQMST, "AQMST"},
    {ProblemKind::QBST, "QBST"},
    {ProblemKind::AQBST, "AQBST"},
    {ProblemKind::MSTC, "MSTC"},
    {ProblemKind::MSTAC, "MSTAC"},
    {ProblemKind::BSTC, "BSTC"},
    {ProblemKind::BSTAC, "BSTAC"},
    {ProblemKind::FSTC, "FSTC"},
    {ProblemKind::FSTAC, "FSTAC"},
}};

}  // namespace

ConflictSet make_conflict_set(std::vector<ConflictPair> pairs) {
  for (auto& [a, b] : pairs) {
    if (a == b) throw std::invalid_argument("conflict pair needs two distinct edges");
    if (a > b) std::swap(a, b);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

std::string_view to_string(ProblemKind kind) {
  for (auto [k, name] : kKindNames)
    if (k == kind) return name;
  return "?";
}

std::optional<ProblemKind> parse_problem_kind(std::string_view name) {
  for (auto [k, n] : kKindNames)
    if (n == name) return k;
  return std::nullopt;
}

Aggregation aggregation_of(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::QBST:
    case ProblemKind::AQBST:
    case ProblemKind::BSTC:
    case ProblemKind::BSTAC:
      return Aggregation::Max;
    default:
      return Aggregation::Sum;
  }
}

bool uses_conflicts(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::MSTC:
    case ProblemKind::MSTAC:
    case ProblemKind::BSTC:
    case ProblemKind::BSTAC:
    case ProblemKind::FSTC:
    case ProblemKind::FSTAC:
      return true;
    default:
      return false;
  }
}

bool is_feasibility(ProblemKind kind) { return kind == ProblemKind::FSTC || kind == ProblemKind::FSTAC; }

bool is_adjacent_only(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::AQMST:
    case ProblemKind::AQBST:
    case ProblemKind::MSTAC:
    case ProblemKind::BSTAC:
    case ProblemKind::FSTAC:
      return true;
    default:
      return false;
  }
}

std::int64_t conflict_violations(const ConflictSet& conflicts, int num_edges,
                                 std::span<const EdgeIndex> tree) {
  if (conflicts.empty()) return 0;
  std::vector<bool> in_tree(num_edges, false);
  for (EdgeIndex e : tree) in_tree.at(e) = true;
  std::int64_t count = 0;
  for (auto [a, b] : conflicts) count += (in_tree.at(a) && in_tree.at(b)) ? 1 : 0;
  return count;
}

CostMatrix conflicts_to_quadratic(const Graph& g, const ConflictSet& conflicts) {
  const int m = g.num_edges();
  CostMatrix q = CostMatrix::Zero(m, m);
  for (auto [a, b] : conflicts) {
    if (a < 0 || b < 0 || a >= m || b >= m || a == b)
      throw std::invalid_argument("conflict pair refers to an invalid edge");
    q(a, b) = 1;
    q(b, a) = 1;
  }
  return q;
}

bool conflicts_adjacent_only(const Graph& g, const ConflictSet& conflicts) {
  return std::all_of(conflicts.begin(), conflicts.end(),
                     [&](const ConflictPair& p) { return edges_adjacent(g, p.first, p.second); });
}

}  // namespace qmst
