#include "qmst/matroid.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "qmst/enumerate.hpp"

namespace qmst {

namespace {

std::uint64_t mask_of(const EdgeSet& s) {
  std::uint64_t m = 0;
  for (int x : s) m |= std::uint64_t{1} << x;
  return m;
}

std::unordered_set<std::uint64_t> base_masks(const BaseSystem& bs) {
  std::unordered_set<std::uint64_t> out;
  for (const EdgeSet& b : bs.bases) out.insert(mask_of(b));
  return out;
}

Cost row_value(const WeightMatrix& w, int i, const EdgeSet& s, Aggregation aggregation) {
  Cost v = 0;
  bool first = true;
  for (int j : s) {
    v = aggregation == Aggregation::Sum ? v + w(i, j) : (first ? w(i, j) : std::max(v, w(i, j)));
    first = false;
  }
  return v;
}

Cost weighted(const std::vector<Cost>& f, const EdgeSet& s, Aggregation aggregation) {
  Cost v = 0;
  bool first = true;
  for (int j : s) {
    v = aggregation == Aggregation::Sum ? v + f[j] : (first ? f[j] : std::max(v, f[j]));
    first = false;
  }
  return v;
}

void check_weights(const BaseSystem& bs, const WeightMatrix& w) {
  if (w.rows() != bs.ground_size || w.cols() != bs.ground_size)
    throw std::invalid_argument("weight matrix size differs from the ground set");
}

std::vector<int> ranks_sorted(const EdgeSet& s, const Permutation& pi) {
  std::vector<int> r;
  r.reserve(s.size());
  for (int x : s) r.push_back(pi.rank.at(x));
  std::sort(r.begin(), r.end());
  return r;
}

EdgeSet difference(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

BaseSystem make_base_system(int ground_size, std::vector<std::vector<int>> bases) {
  if (ground_size < 0 || ground_size > 64) throw std::invalid_argument("ground set must have 0..64 elements");
  if (bases.empty()) throw std::invalid_argument("base system needs at least one base");
  BaseSystem bs;
  bs.ground_size = ground_size;
  for (auto& b : bases) {
    for (int x : b)
      if (x < 0 || x >= ground_size) throw std::invalid_argument("base element outside the ground set");
    EdgeSet s = make_edge_set(std::move(b));
    if (!bs.bases.empty() && s.size() != bs.bases.front().size())
      throw std::invalid_argument("bases must all have the same size");
    bs.bases.push_back(std::move(s));
  }
  std::sort(bs.bases.begin(), bs.bases.end());
  bs.bases.erase(std::unique(bs.bases.begin(), bs.bases.end()), bs.bases.end());
  return bs;
}

BaseSystem uniform_matroid(int rank, int ground_size) {
  if (rank < 0 || rank > ground_size) throw std::invalid_argument("uniform matroid needs 0 <= rank <= size");
  std::vector<std::vector<int>> bases;
  std::vector<bool> pick(ground_size, false);
  std::fill(pick.begin(), pick.begin() + rank, true);
  do {
    std::vector<int> b;
    for (int x = 0; x < ground_size; ++x)
      if (pick[x]) b.push_back(x);
    bases.push_back(std::move(b));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return make_base_system(ground_size, std::move(bases));
}

BaseSystem graphic_matroid(const Graph& g) {
  std::vector<std::vector<int>> bases;
  enumerate_spanning_trees(g, [&](std::span<const EdgeIndex> t) { bases.emplace_back(t.begin(), t.end()); });
  return make_base_system(g.num_edges(), std::move(bases));
}

bool is_base(const BaseSystem& bs, const EdgeSet& s) {
  return std::binary_search(bs.bases.begin(), bs.bases.end(), s);
}

std::optional<ExchangeViolation> find_exchange_violation(const BaseSystem& bs) {
  if (bs.bases.empty()) throw std::invalid_argument("base system needs at least one base");
  const auto masks = base_masks(bs);
  for (const EdgeSet& s1 : bs.bases) {
    const std::uint64_t m1 = mask_of(s1);
    for (const EdgeSet& s2 : bs.bases) {
      const std::uint64_t m2 = mask_of(s2);
      for (int k : s1) {
        if (m2 >> k & 1) continue;
        bool exchanged = false;
        for (int j : s2)
          if (!(m1 >> j & 1) && masks.count((m1 & ~(std::uint64_t{1} << k)) | (std::uint64_t{1} << j))) {
            exchanged = true;
            break;
          }
        if (!exchanged) return ExchangeViolation{s1, s2, k};
      }
    }
  }
  return std::nullopt;
}

bool is_matroid(const BaseSystem& bs, ExchangeViolation* witness) {
  auto v = find_exchange_violation(bs);
  if (v && witness) *witness = *v;
  return !v;
}

Cost qmwb_objective(const BaseSystem& bs, const WeightMatrix& w, const EdgeSet& s, Aggregation aggregation) {
  check_weights(bs, w);
  if (!is_base(bs, s)) throw std::invalid_argument("set is not a base");
  return aggregation == Aggregation::Sum ? objective_sum(w, s) : objective_bottleneck(w, s);
}

EdgeSet pi_critical_base(const BaseSystem& bs, const Permutation& pi) {
  if (pi.size() != bs.ground_size) throw std::invalid_argument("permutation size differs from the ground set");
  const EdgeSet* best = nullptr;
  std::vector<int> best_ranks;
  for (const EdgeSet& b : bs.bases) {
    auto r = ranks_sorted(b, pi);
    if (!best || r < best_ranks) {
      best = &b;
      best_ranks = std::move(r);
    }
  }
  return *best;
}

EdgeSet greedy_base(const BaseSystem& bs, const Permutation& pi) {
  if (pi.size() != bs.ground_size) throw std::invalid_argument("permutation size differs from the ground set");
  std::vector<std::uint64_t> masks;
  for (const EdgeSet& b : bs.bases) masks.push_back(mask_of(b));
  std::uint64_t chosen = 0;
  for (int x : pi.order) {
    const std::uint64_t next = chosen | (std::uint64_t{1} << x);
    if (std::any_of(masks.begin(), masks.end(), [&](std::uint64_t m) { return (m & next) == next; }))
      chosen = next;
  }
  EdgeSet out;
  for (int x = 0; x < bs.ground_size; ++x)
    if (chosen >> x & 1) out.push_back(x);
  return out;
}

Cost mwb_row(const BaseSystem& bs, const WeightMatrix& w, int i, Aggregation aggregation) {
  check_weights(bs, w);
  if (i < 0 || i >= bs.ground_size) throw std::out_of_range("row index outside the ground set");
  Cost best = row_value(w, i, bs.bases.front(), aggregation);
  for (const EdgeSet& b : bs.bases) best = std::min(best, row_value(w, i, b, aggregation));
  return best;
}

BaseBound natural_lower_bound_base(const BaseSystem& bs, const WeightMatrix& w, Aggregation aggregation) {
  check_weights(bs, w);
  BaseBound out;
  out.f.resize(bs.ground_size);
  for (int i = 0; i < bs.ground_size; ++i) out.f[i] = mwb_row(bs, w, i, aggregation);
  out.base = bs.bases.front();
  out.value = weighted(out.f, out.base, aggregation);
  for (const EdgeSet& b : bs.bases)
    if (const Cost v = weighted(out.f, b, aggregation); v < out.value) {
      out.value = v;
      out.base = b;
    }
  return out;
}

BaseSolution solve_qmwb_exact(const BaseSystem& bs, const WeightMatrix& w, Aggregation aggregation) {
  check_weights(bs, w);
  BaseSolution out{bs.bases.front(), qmwb_objective(bs, w, bs.bases.front(), aggregation)};
  for (const EdgeSet& b : bs.bases)
    if (const Cost v = qmwb_objective(bs, w, b, aggregation); v < out.value) out = {b, v};
  return out;
}

BaseSolution solve_qmwb_doubly_graded(const BaseSystem& bs, const WeightMatrix& w, Aggregation aggregation,
                                      Permutation* pi_out) {
  check_weights(bs, w);
  if (!is_matroid(bs)) throw std::invalid_argument("base system is not a matroid");
  GradedCertificate cert = recognize_graded(w);
  if (cert.kind != GradedKind::DoublyGraded)
    throw std::invalid_argument("weight matrix is not a permuted doubly graded matrix");
  BaseSolution out;
  out.base = greedy_base(bs, *cert.pi);
  out.value = qmwb_objective(bs, w, out.base, aggregation);
  if (pi_out) *pi_out = std::move(*cert.pi);
  return out;
}

bool certify_base_nnl(const BaseSystem& bs, const WeightMatrix& w, const Permutation& pi) {
  check_weights(bs, w);
  if (!is_matroid(bs)) throw std::invalid_argument("base system is not a matroid");
  if (!is_row_graded(w, pi)) throw std::invalid_argument("permutation does not make W row graded");
  const BaseBound bound = natural_lower_bound_base(bs, w);
  return weighted(bound.f, pi_critical_base(bs, pi), Aggregation::Sum) == bound.value;
}

Counterexample build_counterexample(const BaseSystem& bs, const ExchangeViolation& witness) {
  const EdgeSet& s1 = witness.s1;
  const EdgeSet& s2 = witness.s2;
  const int k = witness.k;
  if (!is_base(bs, s1) || !is_base(bs, s2)) throw std::invalid_argument("witness sets must be bases");
  if (!std::binary_search(s1.begin(), s1.end(), k) || std::binary_search(s2.begin(), s2.end(), k))
    throw std::invalid_argument("witness element must lie in S1 but not in S2");
  const EdgeSet only_s2 = difference(s2, s1);
  for (int j : only_s2) {
    EdgeSet swapped = s1;
    swapped.erase(std::find(swapped.begin(), swapped.end(), k));
    swapped.insert(std::lower_bound(swapped.begin(), swapped.end(), j), j);
    if (is_base(bs, swapped)) throw std::invalid_argument("witness admits an exchange; not a violation");
  }

  const int m = bs.ground_size;
  std::vector<int> block(m, 3);
  for (int x : s1) block[x] = 0;
  for (int x : only_s2) block[x] = 1;
  block[k] = 2;
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return block[a] < block[b]; });

  WeightMatrix w = WeightMatrix::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (block[i] == 3 || block[j] == 3 || (j == k && (block[i] == 1 || block[i] == 2))) w(i, j) = 1;
  return {std::move(w), Permutation::from_order(std::move(order))};
}

}  // namespace qmst
