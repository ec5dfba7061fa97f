#include "qmst/ladder_dp.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qmst {

namespace {

constexpr int T1 = 0, T2 = 1, T3 = 2, T4 = 3, F1 = 4, F2 = 5, F3 = 6;
constexpr std::array<int, 4> kTreeStates{T1, T2, T3, T4};
constexpr std::array<int, 3> kForestStates{F1, F2, F3};

// Which of (e_k, e_{k-1}, e_{k-2}) each state keeps.
constexpr std::array<std::array<bool, 3>, kNumDpStates> kKeeps{{
    {true, true, false},
    {true, false, true},
    {false, true, true},
    {true, true, true},
    {false, true, false},
    {false, false, true},
    {false, true, true},
}};

template <typename MatrixType>
class Costs {
 public:
  Costs(const BasicInstance<MatrixType>& inst, const DpOptions& options)
      : q_(inst.q), conflicts_(inst.conflicts), options_(options) {}

  Cost node(EdgeIndex e) const {
    if (options_.aggregation == Aggregation::Sum || options_.include_diagonal) return q_.coeff(e, e);
    return 0;
  }

  Cost pair(EdgeIndex e, EdgeIndex f) const {
    if (options_.aggregation == Aggregation::Sum) return q_.coeff(e, f) + q_.coeff(f, e);
    return std::max(q_.coeff(e, f), q_.coeff(f, e));
  }

  std::int64_t conflict(EdgeIndex e, EdgeIndex f) const {
    if (!options_.conflict_layer) return 0;
    const ConflictPair p{std::min(e, f), std::max(e, f)};
    return std::binary_search(conflicts_.begin(), conflicts_.end(), p) ? 1 : 0;
  }

  Cost combine(Cost a, Cost b) const {
    return options_.aggregation == Aggregation::Sum ? a + b : std::max(a, b);
  }

 private:
  const MatrixType& q_;
  const ConflictSet& conflicts_;
  const DpOptions& options_;
};

/// Aggregates over a path p_1..p_P with node terms and link terms between
/// consecutive positions, answering "everything except one or two
/// positions" in constant time. Zero is the identity for both operations.
template <typename Op>
class PathAggregate {
 public:
  PathAggregate(const std::vector<Cost>& node, const std::vector<Cost>& link, int t, Op op)
      : P_(static_cast<int>(node.size()) - 2), t_(t), op_(op) {
    pre_.assign(P_ + 2, 0);
    suf_.assign(P_ + 2, 0);
    left_.assign(P_ + 2, 0);
    right_.assign(P_ + 2, 0);
    for (int j = 1; j <= P_; ++j) pre_[j] = op_(op_(pre_[j - 1], node[j]), j > 1 ? link[j - 1] : 0);
    for (int j = P_; j >= 1; --j) suf_[j] = op_(op_(suf_[j + 1], node[j]), j < P_ ? link[j] : 0);
    for (int a = t_ - 1; a >= 1; --a) left_[a] = op_(op_(left_[a + 1], node[a]), a + 1 <= t_ - 1 ? link[a] : 0);
    for (int b = t_ + 1; b <= P_; ++b) right_[b] = op_(op_(right_[b - 1], node[b]), b - 1 >= t_ + 1 ? link[b - 1] : 0);
  }

  Cost whole() const { return pre_[P_]; }

  Cost without(int x) const { return op_(pre_[x - 1], suf_[x + 1]); }

  /// Without position t and position x != t.
  Cost without_t_and(int x) const {
    if (x < t_) return op_(op_(pre_[x - 1], left_[x + 1]), suf_[t_ + 1]);
    return op_(op_(pre_[t_ - 1], right_[x - 1]), suf_[x + 1]);
  }

 private:
  int P_;
  int t_;
  Op op_;
  std::vector<Cost> pre_, suf_, left_, right_;
};

struct Candidate {
  int target;
  int pred;
  int removed_a;  // labels, -1 when unused
  int removed_b;
};

/// Candidate list of one layer after the first, in tie-breaking order.
std::vector<Candidate> layer_candidates(int k) {
  std::vector<Candidate> out;
  for (int j : kTreeStates) out.push_back({T1, j, k - 2, -1});
  for (int j : kTreeStates) out.push_back({T2, j, k - 1, -1});
  for (int j : kTreeStates) out.push_back({T3, j, k, -1});
  for (int f : kForestStates) out.push_back({T4, f, -1, -1});
  for (int j : kTreeStates)
    for (int l = 2; l <= k - 3; ++l) out.push_back({T4, j, l, -1});
  for (int j : kTreeStates) out.push_back({F1, j, k, k - 2});
  for (int j : kTreeStates) out.push_back({F2, j, k, k - 1});
  for (int f : kForestStates) out.push_back({F3, f, k, -1});
  for (int j : kTreeStates)
    for (int l = 2; l <= k - 3; ++l) out.push_back({F3, j, k, l});
  return out;
}

/// First-layer removal sets: spanning trees and two-forests of C_1.
std::vector<Candidate> first_layer_candidates(int k) {
  std::vector<Candidate> out{{T1, -1, k - 2, -1}, {T2, -1, k - 1, -1}, {T3, -1, k, -1}};
  for (int l = 1; l <= k - 3; ++l) out.push_back({T4, -1, l, -1});
  out.push_back({F1, -1, k, k - 2});
  out.push_back({F2, -1, k, k - 1});
  for (int l = 1; l <= k - 3; ++l) out.push_back({F3, -1, k, l});
  return out;
}

std::vector<EdgeIndex> kept_labels(const std::vector<EdgeIndex>& cycle, int from_label, const Candidate& c) {
  std::vector<EdgeIndex> out;
  for (int l = from_label; l <= static_cast<int>(cycle.size()); ++l)
    if (l != c.removed_a && l != c.removed_b) out.push_back(cycle[l - 1]);
  return out;
}

std::vector<EdgeIndex> boundary_edges(const std::vector<EdgeIndex>& prev_cycle, int state) {
  const int k = static_cast<int>(prev_cycle.size());
  std::vector<EdgeIndex> out;
  for (int b = 0; b < 3; ++b)
    if (kKeeps[state][b]) out.push_back(prev_cycle[k - 1 - b]);
  return out;
}

void relax(std::optional<DpValue>& slot, DpChoice& choice, const DpValue& v, const Candidate& c) {
  if (slot && !(v < *slot)) return;
  slot = v;
  choice.predecessor = static_cast<std::int8_t>(c.pred);
  choice.removed = {c.removed_a, c.removed_b};
}

/// The O(k) step: walks C_i - e_1 as a path and prices every candidate from
/// prefix, suffix and running aggregates.
template <typename MatrixType>
class FastLayer {
 public:
  FastLayer(const Graph& g, const Costs<MatrixType>& costs, int k)
      : g_(g), costs_(costs), k_(k), slot_a_(g.num_vertices(), -1), slot_b_(g.num_vertices(), -1) {}

  void run(const std::vector<EdgeIndex>& cycle, const std::vector<EdgeIndex>& prev_cycle,
           const std::array<std::optional<DpValue>, kNumDpStates>& prev,
           std::array<std::optional<DpValue>, kNumDpStates>& out, std::array<DpChoice, kNumDpStates>& choice,
           const std::vector<Candidate>& candidates) {
    order_path(cycle);
    const int P = k_ - 1;
    std::vector<Cost> node(P + 2, 0), link(P + 2, 0), vlink(P + 2, 0), vnode(P + 2, 0);
    for (int j = 1; j <= P; ++j) node[j] = costs_.node(path_[j]);
    for (int j = 1; j < P; ++j) {
      link[j] = costs_.pair(path_[j], path_[j + 1]);
      vlink[j] = costs_.conflict(path_[j], path_[j + 1]);
    }
    const int t = pos_[k_];
    const PathAggregate cost(node, link, t, [this](Cost a, Cost b) { return costs_.combine(a, b); });
    const PathAggregate viol(vnode, vlink, t, [](Cost a, Cost b) { return a + b; });

    // Interactions of the two path ends with each boundary edge.
    std::array<Cost, 3> c_first{}, c_last{};
    std::array<std::int64_t, 3> v_first{}, v_last{};
    for (int b = 0; b < 3; ++b) {
      const EdgeIndex e = prev_cycle[k_ - 1 - b];
      c_first[b] = costs_.pair(path_[1], e);
      c_last[b] = costs_.pair(path_[P], e);
      v_first[b] = costs_.conflict(path_[1], e);
      v_last[b] = costs_.conflict(path_[P], e);
    }

    for (const Candidate& c : candidates) {
      ++evaluations;
      if (!prev[c.pred]) continue;
      const int xa = c.removed_a < 0 ? -1 : pos_[c.removed_a];
      const int xb = c.removed_b < 0 ? -1 : pos_[c.removed_b];
      Cost path_cost;
      std::int64_t path_viol;
      if (xa < 0) {
        path_cost = cost.whole();
        path_viol = viol.whole();
      } else if (xb < 0) {
        path_cost = cost.without(xa);
        path_viol = viol.without(xa);
      } else {
        const int other = xa == t ? xb : xa;
        path_cost = cost.without_t_and(other);
        path_viol = viol.without_t_and(other);
      }
      DpValue v{prev[c.pred]->violations + path_viol, costs_.combine(prev[c.pred]->cost, path_cost)};
      for (int b = 0; b < 3; ++b) {
        if (!kKeeps[c.pred][b]) continue;
        if (xa != 1 && xb != 1) {
          v.cost = costs_.combine(v.cost, c_first[b]);
          v.violations += v_first[b];
        }
        if (xa != P && xb != P) {
          v.cost = costs_.combine(v.cost, c_last[b]);
          v.violations += v_last[b];
        }
      }
      relax(out[c.target], choice[c.target], v, c);
    }
  }

  std::uint64_t evaluations = 0;

 private:
  void attach(Vertex v, int label) {
    (slot_a_[v] < 0 ? slot_a_[v] : slot_b_[v]) = label;
  }

  void order_path(const std::vector<EdgeIndex>& cycle) {
    path_.assign(k_ + 1, -1);
    pos_.assign(k_ + 1, -1);
    for (int l = 2; l <= k_; ++l) {
      const Edge& e = g_.edge(cycle[l - 1]);
      attach(e.u, l);
      attach(e.v, l);
    }
    Vertex cur = g_.edge(cycle[0]).u;
    int last = -1;
    for (int j = 1; j <= k_ - 1; ++j) {
      const int l = slot_a_[cur] != last && slot_a_[cur] >= 0 ? slot_a_[cur] : slot_b_[cur];
      if (l < 0 || l == last) throw std::logic_error("cycle labels do not form a path");
      path_[j] = cycle[l - 1];
      pos_[l] = j;
      const Edge& e = g_.edge(cycle[l - 1]);
      cur = e.u == cur ? e.v : e.u;
      last = l;
    }
    for (int l = 2; l <= k_; ++l) {
      const Edge& e = g_.edge(cycle[l - 1]);
      slot_a_[e.u] = slot_b_[e.u] = slot_a_[e.v] = slot_b_[e.v] = -1;
    }
  }

  const Graph& g_;
  const Costs<MatrixType>& costs_;
  int k_;
  std::vector<int> slot_a_, slot_b_;
  std::vector<EdgeIndex> path_;
  std::vector<int> pos_;
};

template <typename MatrixType>
void check_ladder_input(const BasicInstance<MatrixType>& inst, const LadderStructure& ladder) {
  check_instance(inst);
  if (auto defect = ladder_defect(ladder)) throw std::invalid_argument("not a valid ladder: " + *defect);
  if (!(ladder.graph == inst.graph)) throw std::invalid_argument("instance graph differs from the ladder graph");
  if (!validate_adjacent_only(inst))
    throw std::invalid_argument("the ladder DP needs costs and conflicts on adjacent edge pairs only");
}

}  // namespace

std::string_view to_string(DpState state) {
  static constexpr std::array<std::string_view, kNumDpStates> names{"T1", "T2", "T3", "T4", "F1", "F2", "F3"};
  return names[static_cast<int>(state)];
}

DpOptions dp_options_for(ProblemKind kind, bool include_diagonal) {
  DpOptions o;
  o.aggregation = aggregation_of(kind);
  o.conflict_layer = uses_conflicts(kind);
  o.include_diagonal = include_diagonal;
  return o;
}

template <typename MatrixType>
DpValue dp_delta_cost(const BasicInstance<MatrixType>& inst, std::span<const EdgeIndex> boundary,
                      std::span<const EdgeIndex> added, const DpOptions& options) {
  const Costs<MatrixType> costs(inst, options);
  DpValue v;
  for (std::size_t a = 0; a < added.size(); ++a) {
    v.cost = costs.combine(v.cost, costs.node(added[a]));
    for (std::size_t b = a + 1; b < added.size(); ++b) {
      v.cost = costs.combine(v.cost, costs.pair(added[a], added[b]));
      v.violations += costs.conflict(added[a], added[b]);
    }
    for (EdgeIndex e : boundary) {
      v.cost = costs.combine(v.cost, costs.pair(added[a], e));
      v.violations += costs.conflict(added[a], e);
    }
  }
  return v;
}

template <typename MatrixType>
DpTable dp_run(const BasicInstance<MatrixType>& inst, const LadderStructure& ladder, const DpOptions& options,
               DpStats* stats) {
  check_ladder_input(inst, ladder);
  const int k = ladder.k;
  const int n = ladder.n;
  const Costs<MatrixType> costs(inst, options);
  DpTable table;
  table.k = k;
  table.n = n;
  table.value.resize(n);
  table.choice.resize(n);

  for (const Candidate& c : first_layer_candidates(k)) {
    const auto kept = kept_labels(ladder.cycle_edges[0], 1, c);
    relax(table.value[0][c.target], table.choice[0][c.target], dp_delta_cost(inst, {}, kept, options), c);
  }

  const std::vector<Candidate> candidates = layer_candidates(k);
  FastLayer<MatrixType> fast(inst.graph, costs, k);
  std::uint64_t evaluations = 0;
  for (int i = 1; i < n; ++i) {
    const auto& prev = table.value[i - 1];
    auto& out = table.value[i];
    if (options.reference_transitions) {
      for (const Candidate& c : candidates) {
        ++evaluations;
        if (!prev[c.pred]) continue;
        const auto boundary = boundary_edges(ladder.cycle_edges[i - 1], c.pred);
        const auto kept = kept_labels(ladder.cycle_edges[i], 2, c);
        const DpValue d = dp_delta_cost(inst, boundary, kept, options);
        relax(out[c.target], table.choice[i][c.target],
              {prev[c.pred]->violations + d.violations, costs.combine(prev[c.pred]->cost, d.cost)}, c);
      }
    } else {
      fast.run(ladder.cycle_edges[i], ladder.cycle_edges[i - 1], prev, out, table.choice[i], candidates);
    }
  }
  if (stats) {
    stats->recurrence_applications += static_cast<std::uint64_t>(kNumDpStates) * (n - 1);
    stats->candidate_evaluations += evaluations + fast.evaluations;
  }
  return table;
}

EdgeSet dp_reconstruct(const DpTable& table, const LadderStructure& ladder, DpState state) {
  if (table.n != ladder.n || table.k != ladder.k) throw std::invalid_argument("table does not match the ladder");
  int s = static_cast<int>(state);
  if (!table.value[table.n - 1][s]) throw std::invalid_argument("no partial solution in that state");
  std::vector<EdgeIndex> edges;
  for (int i = table.n - 1; i >= 0; --i) {
    const DpChoice& ch = table.choice[i][s];
    const Candidate c{s, ch.predecessor, ch.removed[0], ch.removed[1]};
    const auto kept = kept_labels(ladder.cycle_edges[i], i == 0 ? 1 : 2, c);
    edges.insert(edges.end(), kept.begin(), kept.end());
    s = ch.predecessor;
  }
  return make_edge_set(std::move(edges));
}

template <typename MatrixType>
SolveResult dp_solve(const BasicInstance<MatrixType>& inst, const LadderStructure& ladder, const DpOptions& options,
                     DpStats* stats) {
  const DpTable table = dp_run(inst, ladder, options, stats);
  const auto& last = table.value[table.n - 1];
  int best = -1;
  for (int s : kTreeStates)
    if (last[s] && (best < 0 || *last[s] < *last[best])) best = s;
  if (best < 0) throw std::logic_error("ladder DP produced no spanning tree");

  SolveResult out;
  out.method = "ladder-dp";
  out.violations = last[best]->violations;
  if (options.conflict_layer && out.violations > 0) return out;
  out.status = SolveStatus::Optimal;
  out.tree.edges = dp_reconstruct(table, ladder, static_cast<DpState>(best));
  out.value = is_feasibility(inst.kind) ? 0 : last[best]->cost;
  return out;
}

template DpTable dp_run(const Instance&, const LadderStructure&, const DpOptions&, DpStats*);
template DpTable dp_run(const SparseInstance&, const LadderStructure&, const DpOptions&, DpStats*);
template DpValue dp_delta_cost(const Instance&, std::span<const EdgeIndex>, std::span<const EdgeIndex>,
                               const DpOptions&);
template DpValue dp_delta_cost(const SparseInstance&, std::span<const EdgeIndex>, std::span<const EdgeIndex>,
                               const DpOptions&);
template SolveResult dp_solve(const Instance&, const LadderStructure&, const DpOptions&, DpStats*);
template SolveResult dp_solve(const SparseInstance&, const LadderStructure&, const DpOptions&, DpStats*);

}  // namespace qmst
