#include "qmst/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <optional>
#include <set>
#include <thread>

#include "qmst/tree_count.hpp"

namespace qmst {

namespace {

/// Union-find without path compression so unions can be undone.
class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(int n) : parent_(n), size_(n, 1), components_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }

  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    history_.push_back(b);
    --components_;
    return true;
  }

  void undo() {
    const int b = history_.back();
    history_.pop_back();
    const int a = parent_[b];
    size_[a] -= size_[b];
    parent_[b] = b;
    ++components_;
  }

  int components() const { return components_; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<int> history_;
  int components_;
};

struct SearchConfig {
  const Graph* graph = nullptr;
  const CostMatrix* q = nullptr;  // null when only visiting trees
  Aggregation aggregation = Aggregation::Sum;
  bool include_diagonal = true;
  std::vector<std::vector<EdgeIndex>> partners;  // conflict partners per edge
  std::vector<bool> forbidden;
  bool stop_at_first = false;
  std::uint64_t node_limit = 0;  // 0: unlimited
};

struct ShardResult {
  std::optional<Cost> value;
  EdgeSet tree;
  std::uint64_t trees = 0;
};

class Search {
 public:
  Search(const SearchConfig& cfg, const TreeVisitor* visitor, std::atomic<std::uint64_t>& nodes,
         std::atomic<int>& first_found, int shard)
      : cfg_(cfg),
        g_(*cfg.graph),
        visitor_(visitor),
        nodes_(nodes),
        first_found_(first_found),
        shard_(shard),
        uf_(g_.num_vertices()),
        blocked_(g_.num_edges(), 0) {}

  ShardResult run(const std::vector<int>& forced) {
    forced_ = &forced;
    dfs(0, 0, std::nullopt);
    return std::move(result_);
  }

 private:
  bool aborted() const { return cfg_.stop_at_first && first_found_.load(std::memory_order_relaxed) < shard_; }

  bool can_span(EdgeIndex from) const {
    UnionFind uf(g_.num_vertices());
    for (EdgeIndex e : chosen_) uf.unite(g_.edges()[e].u, g_.edges()[e].v);
    for (EdgeIndex e = from; e < g_.num_edges() && uf.components() > 1; ++e)
      if (!cfg_.forbidden[e] && blocked_[e] == 0) uf.unite(g_.edges()[e].u, g_.edges()[e].v);
    return uf.components() == 1;
  }

  void dfs(EdgeIndex pos, Cost sum, std::optional<Cost> max) {
    if (cfg_.node_limit && nodes_.fetch_add(1, std::memory_order_relaxed) >= cfg_.node_limit)
      throw GuardExceeded("enumeration exceeded the search-node budget of " +
                          std::to_string(cfg_.node_limit));
    if (static_cast<int>(chosen_.size()) == g_.num_vertices() - 1) {
      leaf(sum, max);
      return;
    }
    if (pos == g_.num_edges() || done_ || aborted()) return;

    const int force = pos < static_cast<EdgeIndex>(forced_->size()) ? (*forced_)[pos] : -1;
    const Edge& e = g_.edges()[pos];
    if (force != 0 && !cfg_.forbidden[pos] && blocked_[pos] == 0 && uf_.unite(e.u, e.v)) {
      Cost next_sum = sum;
      std::optional<Cost> next_max = max;
      if (cfg_.q) accrue(pos, next_sum, next_max);
      chosen_.push_back(pos);
      for (EdgeIndex f : cfg_.partners[pos]) ++blocked_[f];
      dfs(pos + 1, next_sum, next_max);
      for (EdgeIndex f : cfg_.partners[pos]) --blocked_[f];
      chosen_.pop_back();
      uf_.undo();
    }
    if (done_) return;
    if (force != 1 && can_span(pos + 1)) dfs(pos + 1, sum, max);
  }

  void accrue(EdgeIndex e, Cost& sum, std::optional<Cost>& max) const {
    const CostMatrix& q = *cfg_.q;
    if (cfg_.aggregation == Aggregation::Sum) {
      sum += q(e, e);
      for (EdgeIndex f : chosen_) sum += q(e, f) + q(f, e);
      return;
    }
    auto bump = [&](Cost v) {
      if (!max || v > *max) max = v;
    };
    if (cfg_.include_diagonal) bump(q(e, e));
    for (EdgeIndex f : chosen_) {
      bump(q(e, f));
      bump(q(f, e));
    }
  }

  void leaf(Cost sum, std::optional<Cost> max) {
    ++result_.trees;
    if (visitor_) (*visitor_)(chosen_);
    if (cfg_.q) {
      const Cost value = cfg_.aggregation == Aggregation::Sum ? sum : max.value_or(0);
      if (!result_.value || value < *result_.value) {
        result_.value = value;
        result_.tree = chosen_;
      }
    } else if (!result_.value) {
      result_.value = 0;
      result_.tree = chosen_;
    }
    if (cfg_.stop_at_first) {
      done_ = true;
      int current = first_found_.load();
      while (shard_ < current && !first_found_.compare_exchange_weak(current, shard_)) {
      }
    }
  }

  const SearchConfig& cfg_;
  const Graph& g_;
  const TreeVisitor* visitor_;
  std::atomic<std::uint64_t>& nodes_;
  std::atomic<int>& first_found_;
  int shard_;
  const std::vector<int>* forced_ = nullptr;
  RollbackUnionFind uf_;
  std::vector<int> blocked_;
  std::vector<EdgeIndex> chosen_;
  ShardResult result_;
  bool done_ = false;
};

/// Runs the search split over 2^d forced prefixes; shards come in the same
/// lexicographic order the sequential search would visit them.
ShardResult run_search(const SearchConfig& cfg, const TreeVisitor* visitor, int threads) {
  const int m = cfg.graph->num_edges();
  int depth = 0;
  if (threads > 1 && !visitor)
    while ((1 << depth) < 4 * threads && depth < m && depth < 12) ++depth;
  const int shards = 1 << depth;
  std::vector<std::vector<int>> prefixes(shards);
  for (int s = 0; s < shards; ++s)
    for (int j = 0; j < depth; ++j) prefixes[s].push_back(((s >> (depth - 1 - j)) & 1) ? 0 : 1);

  std::atomic<std::uint64_t> nodes{0};
  std::atomic<int> first_found{INT_MAX};
  std::vector<ShardResult> results(shards);
  std::vector<std::exception_ptr> errors(shards);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int s = next++; s < shards; s = next++) {
      try {
        Search search(cfg, visitor, nodes, first_found, s);
        results[s] = search.run(prefixes[s]);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    }
  };
  if (shards == 1 || threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);

  ShardResult merged;
  for (auto& r : results) {
    merged.trees += r.trees;
    if (r.value && (!merged.value || *r.value < *merged.value)) {
      merged.value = r.value;
      merged.tree = std::move(r.tree);
      if (cfg.stop_at_first) break;
    }
  }
  return merged;
}

void require_connected(const Graph& g) {
  if (!is_connected(g)) throw std::invalid_argument("graph is disconnected; it has no spanning tree");
}

void check_tau(const Graph& g, std::uint64_t limit) {
  const TreeCount tau = count_matrix_tree(g);
  if (tau > limit)
    throw GuardExceeded("graph has " + tau.str() + " spanning trees, above the limit of " +
                        std::to_string(limit));
}

SearchConfig base_config(const Instance& inst, const EnumOptions& options) {
  SearchConfig cfg;
  cfg.graph = &inst.graph;
  cfg.q = &inst.q;
  cfg.aggregation = aggregation_of(inst.kind);
  cfg.include_diagonal = options.include_diagonal;
  cfg.partners.assign(inst.graph.num_edges(), {});
  cfg.forbidden.assign(inst.graph.num_edges(), false);
  return cfg;
}

SolveResult finish(const Instance& inst, const ShardResult& r, std::string method) {
  SolveResult out;
  out.method = std::move(method);
  out.trees_enumerated = r.trees;
  if (!r.value) return out;
  out.status = SolveStatus::Optimal;
  out.tree.edges = r.tree;
  out.value = *r.value;
  out.violations = conflict_violations(inst.conflicts, inst.graph.num_edges(), r.tree);
  return out;
}

}  // namespace

std::uint64_t enumerate_spanning_trees(const Graph& g, const TreeVisitor& visit, std::uint64_t tree_limit) {
  require_connected(g);
  check_tau(g, tree_limit);
  SearchConfig cfg;
  cfg.graph = &g;
  cfg.partners.assign(g.num_edges(), {});
  cfg.forbidden.assign(g.num_edges(), false);
  return run_search(cfg, &visit, 1).trees;
}

SolveResult solve_exact(const Instance& inst, const EnumOptions& options) {
  check_instance(inst);
  require_connected(inst.graph);
  if (aggregation_of(inst.kind) == Aggregation::Max && !options.include_diagonal &&
      inst.graph.num_vertices() < 3)
    throw std::invalid_argument("off-diagonal bottleneck needs trees with two edges");
  SearchConfig cfg = base_config(inst, options);
  if (uses_conflicts(inst.kind)) {
    for (auto [a, b] : inst.conflicts) {
      cfg.partners[a].push_back(b);
      cfg.partners[b].push_back(a);
    }
    cfg.node_limit = options.node_limit;
    cfg.stop_at_first = is_feasibility(inst.kind);
    if (cfg.stop_at_first) cfg.q = nullptr;
  } else {
    check_tau(inst.graph, options.tree_limit);
  }
  return finish(inst, run_search(cfg, nullptr, options.threads), "enum");
}

SolveResult solve_qbst_threshold(const Instance& inst, Cost mu, const EnumOptions& options) {
  check_instance(inst);
  require_connected(inst.graph);
  const int m = inst.graph.num_edges();
  Instance fstc{inst.graph, CostMatrix::Zero(m, m), {}, ProblemKind::FSTC};
  std::vector<ConflictPair> pairs;
  for (EdgeIndex e = 0; e < m; ++e)
    for (EdgeIndex f = e + 1; f < m; ++f)
      if (std::max(inst.q(e, f), inst.q(f, e)) > mu) pairs.emplace_back(e, f);
  fstc.conflicts = make_conflict_set(std::move(pairs));

  SearchConfig cfg = base_config(fstc, options);
  for (auto [a, b] : fstc.conflicts) {
    cfg.partners[a].push_back(b);
    cfg.partners[b].push_back(a);
  }
  if (options.include_diagonal)
    for (EdgeIndex e = 0; e < m; ++e) cfg.forbidden[e] = inst.q(e, e) > mu;
  cfg.q = nullptr;
  cfg.stop_at_first = true;
  cfg.node_limit = options.node_limit;
  SolveResult out = finish(fstc, run_search(cfg, nullptr, options.threads), "enum-threshold");
  if (out.status == SolveStatus::Optimal)
    out.value = objective_bottleneck(inst.q, out.tree.edges, options.include_diagonal);
  return out;
}

SolveResult solve_qbst_by_thresholds(const Instance& inst, const EnumOptions& options) {
  std::set<Cost> distinct;
  for (Eigen::Index i = 0; i < inst.q.size(); ++i) distinct.insert(inst.q.data()[i]);
  std::vector<Cost> grid(distinct.begin(), distinct.end());
  if (grid.empty()) return solve_exact(inst, options);
  // Feasibility is monotone in mu; the top entry is always feasible.
  std::size_t lo = 0, hi = grid.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (solve_qbst_threshold(inst, grid[mid], options).status == SolveStatus::Optimal)
      hi = mid;
    else
      lo = mid + 1;
  }
  SolveResult out = solve_qbst_threshold(inst, grid[lo], options);
  out.method = "enum-threshold-search";
  return out;
}

}  // namespace qmst
