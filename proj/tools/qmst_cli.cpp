#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qmst/costs.hpp"
#include "qmst/enumerate.hpp"
#include "qmst/families.hpp"
#include "qmst/graded.hpp"
#include "qmst/io.hpp"
#include "qmst/ladder_dp.hpp"
#include "qmst/matroid.hpp"
#include "qmst/reductions.hpp"
#include "qmst/tree_count.hpp"

using namespace qmst;

namespace {

enum Exit : int { kOptimal = 0, kUsage = 1, kInfeasible = 2, kGuard = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  bool pretty = false;
  std::string manifest;
  std::string out;
};

struct RunLog {
  std::string command;
  std::vector<std::string> argv;
  std::optional<std::uint64_t> seed;
  Json inputs = Json::object();

  void input(const std::string& path) { inputs[path] = fnv1a_hex(read_text_file(path)); }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_flag("--pretty", c.pretty, "Print a human-readable table instead of JSON");
  cmd->add_option("--manifest", c.manifest, "Write a run manifest to this file");
}

void emit(const Json& j, const Common& c) {
  if (!c.pretty) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::size_t width = 0;
  for (auto it = j.begin(); it != j.end(); ++it) width = std::max(width, it.key().size());
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::cout << it.key() << std::string(width - it.key().size() + 2, ' ');
    std::cout << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
  }
}

void write_manifest(const Common& c, const RunLog& log, double seconds) {
  if (c.manifest.empty()) return;
  Json m;
  m["command"] = log.command;
  m["flags"] = log.argv;
  m["seed"] = log.seed ? Json(*log.seed) : Json(nullptr);
  m["input_hashes"] = log.inputs;
  m["tool_version"] = QMST_VERSION;
  m["rng"] = kRngAlgorithm;
  m["wall_time_seconds"] = seconds;
  write_text_file(c.manifest, m.dump(2) + "\n");
}

ProblemKind parse_kind(const std::string& name) {
  auto k = parse_problem_kind(name);
  if (!k) throw UsageError("unknown kind \"" + name + "\"");
  return *k;
}

std::string dump_graph(const Graph& g) {
  std::ostringstream ss;
  write_graph_text(ss, g);
  return ss.str();
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string family;
  int n = 0;
  int k = 4;
  std::uint64_t seed = 1;
  std::string costs = "zero";
  Cost lo = 0;
  Cost hi = 9;
  std::string kind;
  int conflicts = 0;
  Common common;
};

ConflictSet random_conflicts(const Graph& g, int count, bool adjacent, Rng& rng) {
  std::vector<ConflictPair> candidates;
  const int m = g.num_edges();
  if (adjacent) {
    for (EdgeIndex e = 0; e < m; ++e)
      for (Vertex x : {g.edge(e).u, g.edge(e).v})
        for (EdgeIndex f : g.incident(x))
          if (e < f) candidates.emplace_back(e, f);
  } else {
    for (EdgeIndex e = 0; e < m; ++e)
      for (EdgeIndex f = e + 1; f < m; ++f) candidates.emplace_back(e, f);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<ConflictPair> chosen;
  for (int i = 0; i < count && !candidates.empty(); ++i) {
    const std::size_t pick = rng.below(candidates.size());
    chosen.push_back(candidates[pick]);
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return make_conflict_set(std::move(chosen));
}

int run_generate(const GenerateArgs& a, RunLog& log) {
  log.seed = a.seed;
  Graph g;
  Json structure;
  structure["structure"] = a.family;
  if (a.family == "fan") {
    g = make_fan(a.n);
    structure["n"] = a.n;
  } else if (a.family == "wheel") {
    g = make_wheel(a.n);
    structure["n"] = a.n;
  } else if (a.family == "fan-star") {
    g = make_fan_star(a.n);
    structure["n"] = a.n;
  } else if (a.family == "ladder") {
    LadderStructure l = make_ladder(a.n);
    g = l.graph;
    structure = ladder_to_json(l);
  } else if (a.family == "kn-ladder") {
    LadderStructure l = make_kn_ladder(a.k, a.n);
    g = l.graph;
    structure = ladder_to_json(l);
  } else if (a.family == "kn-accordion") {
    AccordionStructure acc = make_kn_accordion(a.k, a.n, a.seed);
    g = acc.graph;
    structure = accordion_to_json(acc);
  } else {
    throw UsageError("unknown family \"" + a.family + "\"");
  }

  const int m = g.num_edges();
  Json files;
  files["graph"] = a.common.out + ".graph";
  write_text_file(a.common.out + ".graph", dump_graph(g));
  files["structure"] = a.common.out + ".structure.json";
  write_text_file(a.common.out + ".structure.json", structure.dump(2) + "\n");

  std::optional<ProblemKind> kind;
  if (a.costs != "none") {
    const bool adjacent = a.costs == "adjacent-random";
    kind = a.kind.empty() ? (adjacent ? ProblemKind::AQMST : ProblemKind::QMST) : parse_kind(a.kind);
    Rng rng(a.seed);
    const CostRange range{a.lo, a.hi};
    if (range.hi < range.lo) throw UsageError("--hi must be at least --lo");
    ConflictSet conflicts;
    Json inst_json;
    if ((a.costs == "random" || a.costs == "graded") && m > 4 * kDenseCostLimit)
      throw UsageError("dense cost matrices are limited to " + std::to_string(4 * kDenseCostLimit) + " edges");
    if (m > kDenseCostLimit && (a.costs == "zero" || adjacent)) {
      SparseCostMatrix q(m, m);
      if (adjacent) q = adjacent_random_costs_sparse(g, range, rng);
      conflicts = random_conflicts(g, a.conflicts, is_adjacent_only(*kind), rng);
      inst_json = instance_to_json(SparseInstance{g, std::move(q), std::move(conflicts), *kind});
    } else {
      CostMatrix q;
      if (a.costs == "zero")
        q = CostMatrix::Zero(m, m);
      else if (a.costs == "random")
        q = random_costs(m, range, rng);
      else if (a.costs == "graded")
        q = permuted_graded_costs(m, range, rng);
      else if (adjacent)
        q = adjacent_random_costs(g, range, rng);
      else
        throw UsageError("unknown cost model \"" + a.costs + "\"");
      conflicts = random_conflicts(g, a.conflicts, is_adjacent_only(*kind), rng);
      inst_json = instance_to_json(Instance{g, std::move(q), std::move(conflicts), *kind});
    }
    files["instance"] = a.common.out + ".instance.json";
    write_text_file(a.common.out + ".instance.json", inst_json.dump() + "\n");
  }

  Json out;
  out["family"] = a.family;
  out["n"] = a.n;
  out["k"] = (a.family == "kn-ladder" || a.family == "kn-accordion") ? Json(a.k) : Json(nullptr);
  out["num_vertices"] = g.num_vertices();
  out["num_edges"] = m;
  out["seed"] = a.seed;
  out["costs"] = a.costs;
  out["kind"] = kind ? Json(std::string(to_string(*kind))) : Json(nullptr);
  out["files"] = files;
  emit(out, a.common);
  return kOptimal;
}

// ---------------------------------------------------------------- count

struct CountArgs {
  std::string graph;
  std::string family;
  std::string method = "matrix-tree";
  int n = 0;
  int k = 4;
  std::uint64_t seed = 1;
  Common common;
};

std::string canonical_count_method(const std::string& name) {
  if (name == "recursion") return "recursive";
  if (name == "closed-form") return "closed";
  if (name == "deletion-contraction") return "del-con";
  return name;
}

int run_count(const CountArgs& a, RunLog& log) {
  Json out;
  const std::string method = canonical_count_method(a.method);
  if (method == "recursive" || method == "closed") {
    const TreeCount tau = method == "recursive" ? count_accordion_recursive(a.k, a.n)
                                                : count_accordion_closed_form(a.k, a.n);
    out["family"] = "kn-accordion";
    out["k"] = a.k;
    out["n"] = a.n;
    out["method"] = method;
    out["tau"] = tau.str();
    emit(out, a.common);
    return kOptimal;
  }
  Graph g;
  if (!a.graph.empty()) {
    log.input(a.graph);
    std::ifstream in(a.graph);
    if (!in) throw FormatError("cannot open " + a.graph);
    g = read_graph_text(in);
  } else if (a.family == "fan") {
    g = make_fan(a.n);
  } else if (a.family == "wheel") {
    g = make_wheel(a.n);
  } else if (a.family == "fan-star") {
    g = make_fan_star(a.n);
  } else if (a.family == "ladder") {
    g = make_ladder_graph(a.n);
  } else if (a.family == "kn-ladder") {
    g = make_kn_ladder(a.k, a.n).graph;
  } else if (a.family == "kn-accordion") {
    log.seed = a.seed;
    g = make_kn_accordion(a.k, a.n, a.seed).graph;
  } else {
    throw UsageError("give --graph or a known --family");
  }
  TreeCount tau;
  if (method == "matrix-tree")
    tau = count_matrix_tree(g);
  else if (method == "del-con")
    tau = count_deletion_contraction(g);
  else
    throw UsageError("unknown counting method \"" + a.method + "\"");
  out["num_vertices"] = g.num_vertices();
  out["num_edges"] = g.num_edges();
  out["method"] = method;
  out["tau"] = tau.str();
  emit(out, a.common);
  return kOptimal;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string instance;
  std::string bases;
  std::string structure;
  std::string kind;
  std::string method = "auto";
  int threads = 1;
  std::uint64_t tree_limit = EnumOptions{}.tree_limit;
  std::uint64_t node_limit = EnumOptions{}.node_limit;
  bool exclude_diagonal = false;
  Common common;
};

EnumOptions enum_options(const SolveArgs& a) {
  EnumOptions o;
  o.tree_limit = a.tree_limit;
  o.node_limit = a.node_limit;
  o.include_diagonal = !a.exclude_diagonal;
  o.threads = a.threads;
  return o;
}

int finish_solve(const SolveResult& r, ProblemKind kind, const Common& c, Json extra = Json::object()) {
  Json out = result_to_json(r, kind);
  for (auto it = extra.begin(); it != extra.end(); ++it) out[it.key()] = it.value();
  if (!c.out.empty()) write_text_file(c.out, out.dump(2) + "\n");
  emit(out, c);
  return r.status == SolveStatus::Optimal ? kOptimal : kInfeasible;
}

std::optional<LadderStructure> load_ladder(const SolveArgs& a, const Graph& g, RunLog& log) {
  if (a.structure.empty()) return std::nullopt;
  log.input(a.structure);
  const Json j = read_json_file(a.structure);
  if (!j.contains("structure") || j.at("structure") != "ladder") return std::nullopt;
  return ladder_from_json(j, g);
}

int solve_bases(const SolveArgs& a, RunLog& log) {
  log.input(a.bases);
  const BaseSystemFile file = base_system_from_json(read_json_file(a.bases));
  if (!file.w) throw UsageError("base-system file has no \"w\" matrix");
  std::string kind = a.kind.empty() ? "QMWB" : a.kind;
  std::transform(kind.begin(), kind.end(), kind.begin(), ::toupper);
  if (kind != "QMWB" && kind != "QBWB") throw UsageError("base systems take --kind QMWB or QBWB");
  const Aggregation agg = kind == "QMWB" ? Aggregation::Sum : Aggregation::Max;

  std::string method = a.method;
  if (method == "auto")
    method = is_matroid(file.bases) && recognize_graded(*file.w).kind == GradedKind::DoublyGraded ? "graded" : "enum";
  Json out;
  out["status"] = "optimal";
  out["kind"] = kind;
  out["method"] = method;
  BaseSolution s;
  Json pi = nullptr;
  if (method == "graded") {
    Permutation p;
    s = solve_qmwb_doubly_graded(file.bases, *file.w, agg, &p);
    pi = p.order;
  } else if (method == "enum") {
    s = solve_qmwb_exact(file.bases, *file.w, agg);
  } else {
    throw UsageError("base systems are solved with --method enum, graded or auto");
  }
  out["value"] = s.value;
  out["base"] = s.base;
  out["certificate"] = pi;
  if (!a.common.out.empty()) write_text_file(a.common.out, out.dump(2) + "\n");
  emit(out, a.common);
  return kOptimal;
}

template <typename MatrixType>
int solve_loaded(const SolveArgs& a, BasicInstance<MatrixType> inst, RunLog& log) {
  constexpr bool dense = std::is_same_v<MatrixType, CostMatrix>;
  if (!a.kind.empty()) inst.kind = parse_kind(a.kind);
  const auto ladder = load_ladder(a, inst.graph, log);

  std::string method = a.method;
  if (method == "auto") {
    method = "enum";
    if constexpr (dense) {
      if (!uses_conflicts(inst.kind) && recognize_graded(inst.q).kind == GradedKind::DoublyGraded &&
          (aggregation_of(inst.kind) == Aggregation::Sum || !a.exclude_diagonal))
        method = "graded";
    }
    if (method == "enum" && ladder && validate_adjacent_only(inst) && !ladder_defect(*ladder)) method = "ladder-dp";
  }

  if (method == "ladder-dp") {
    if (!ladder) throw UsageError("--method ladder-dp needs a ladder --structure file");
    DpStats stats;
    const SolveResult r = dp_solve(inst, *ladder, dp_options_for(inst.kind, !a.exclude_diagonal), &stats);
    Json extra;
    extra["recurrence_applications"] = stats.recurrence_applications;
    extra["candidate_evaluations"] = stats.candidate_evaluations;
    return finish_solve(r, inst.kind, a.common, extra);
  }
  if constexpr (dense) {
    if (method == "graded") {
      if (uses_conflicts(inst.kind)) throw UsageError("the graded solver does not handle conflict kinds");
      if (a.exclude_diagonal) throw UsageError("the graded solver uses the full bottleneck");
      GradedCertificate cert;
      const SolveResult r = aggregation_of(inst.kind) == Aggregation::Sum ? solve_doubly_graded(inst, &cert)
                                                                          : solve_doubly_graded_bottleneck(inst, &cert);
      Json extra;
      extra["certificate"] = {{"kind", "doubly_graded"}, {"pi", cert.pi->order}};
      return finish_solve(r, inst.kind, a.common, extra);
    }
    if (method == "enum") return finish_solve(solve_exact(inst, enum_options(a)), inst.kind, a.common);
  } else {
    if (method == "enum")
      throw GuardExceeded("enumeration needs a dense instance with at most " + std::to_string(kDenseCostLimit) +
                          " edges");
    if (method == "graded") throw UsageError("the graded solver needs a dense instance");
  }
  throw UsageError("unknown method \"" + method + "\"");
}

int run_solve(const SolveArgs& a, RunLog& log) {
  if (!a.bases.empty()) return solve_bases(a, log);
  if (a.instance.empty()) throw UsageError("give --instance or --bases");
  log.input(a.instance);
  AnyInstance any = instance_from_json(read_json_file(a.instance));
  return std::visit([&](auto& inst) { return solve_loaded(a, std::move(inst), log); }, any);
}

// ---------------------------------------------------------------- bound

struct BoundArgs {
  std::string instance;
  bool bottleneck = false;
  bool certify_nnl = false;
  Common common;
};

int run_bound(const BoundArgs& a, RunLog& log) {
  log.input(a.instance);
  AnyInstance any = instance_from_json(read_json_file(a.instance));
  if (!std::holds_alternative<Instance>(any)) throw UsageError("bounds need a dense instance");
  const Instance& inst = std::get<Instance>(any);
  const Aggregation agg = a.bottleneck ? Aggregation::Max : Aggregation::Sum;
  const NaturalBound bound = natural_lower_bound(inst, agg);
  const GradedCertificate cert = recognize_graded(inst.q);
  Json out;
  out["aggregation"] = a.bottleneck ? "max" : "sum";
  out["lower_bound"] = bound.value;
  out["tree"] = bound.tree.edges;
  out["z"] = bound.z;
  out["graded"] = cert.kind == GradedKind::DoublyGraded ? "doubly_graded"
                  : cert.kind == GradedKind::RowGraded  ? "row_graded"
                                                        : "none";
  out["pi"] = cert.pi ? Json(cert.pi->order) : Json(nullptr);
  if (a.certify_nnl) {
    if (!cert.pi) {
      out["nnl"] = {{"certified", false}, {"reason", "no row-graded permutation"}};
    } else {
      const NnlCheck nnl = certify_nnl(inst, *cert.pi);
      out["nnl"] = {{"certified", nnl.certified}, {"value", nnl.value}, {"tree", nnl.tree.edges}};
    }
  }
  emit(out, a.common);
  return kOptimal;
}

// ---------------------------------------------------------------- reduce

struct ReduceArgs {
  std::string cnf;
  std::string target = "fanstar";
  int random_vars = 0;
  int random_clauses = 0;
  std::uint64_t seed = 1;
  Common common;
};

int run_reduce(const ReduceArgs& a, RunLog& log) {
  ThreeSatInstance sat;
  Json files;
  if (!a.cnf.empty()) {
    log.input(a.cnf);
    std::ifstream in(a.cnf);
    if (!in) throw FormatError("cannot open " + a.cnf);
    sat = read_dimacs(in);
  } else if (a.random_vars > 0 && a.random_clauses > 0) {
    log.seed = a.seed;
    Rng rng(a.seed);
    sat = random_three_sat(a.random_vars, a.random_clauses, rng);
    std::ostringstream ss;
    write_dimacs(ss, sat);
    files["cnf"] = a.common.out + ".cnf";
    write_text_file(a.common.out + ".cnf", ss.str());
  } else {
    throw UsageError("give --cnf or both --random-vars and --random-clauses");
  }
  ReductionOutput red;
  if (a.target == "fanstar")
    red = reduce_to_fanstar(sat);
  else if (a.target == "ladder")
    red = reduce_to_ladder(sat);
  else
    throw UsageError("unknown target \"" + a.target + "\"");
  files["instance"] = a.common.out + ".instance.json";
  write_text_file(a.common.out + ".instance.json", instance_to_json(red.instance).dump() + "\n");
  files["literals"] = a.common.out + ".literals.json";
  write_text_file(a.common.out + ".literals.json", literal_map_to_json(red).dump(2) + "\n");
  Json out;
  out["target"] = a.target;
  out["kind"] = std::string(to_string(red.instance.kind));
  out["num_vars"] = sat.num_vars;
  out["num_clauses"] = sat.clauses.size();
  out["num_vertices"] = red.instance.graph.num_vertices();
  out["num_edges"] = red.instance.graph.num_edges();
  out["num_conflicts"] = red.instance.conflicts.size();
  out["files"] = files;
  emit(out, a.common);
  return kOptimal;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string instance;
  std::string result;
  bool exclude_diagonal = false;
  std::uint64_t tree_limit = EnumOptions{}.tree_limit;
  std::uint64_t node_limit = EnumOptions{}.node_limit;
  Common common;
};

template <typename MatrixType>
Json verify_claim(const VerifyArgs& a, const BasicInstance<MatrixType>& inst, const ResultClaim& claim) {
  Json out;
  Json checks = Json::object();
  std::string reason;
  bool valid = true;
  auto fail = [&](const std::string& why) {
    if (valid) reason = why;
    valid = false;
  };
  if (claim.kind && *claim.kind != inst.kind) fail("result kind differs from the instance kind");

  if (claim.status == SolveStatus::Optimal) {
    const bool spanning = is_spanning_tree(inst.graph, claim.tree.edges);
    checks["spanning_tree"] = spanning;
    if (!spanning) {
      fail("claimed tree is not a spanning tree");
    } else {
      const std::int64_t violations = conflict_violations(inst.conflicts, inst.graph.num_edges(), claim.tree.edges);
      const Cost value = evaluate_objective(inst, claim.tree.edges, !a.exclude_diagonal);
      checks["violations"] = violations;
      checks["value"] = value;
      if (violations != claim.violations) fail("claimed violation count does not match the tree");
      if (uses_conflicts(inst.kind) && violations > 0) fail("tree violates a conflict pair");
      if (value != claim.value) fail("claimed value does not match the tree");
    }
  } else {
    if constexpr (std::is_same_v<MatrixType, CostMatrix>) {
      EnumOptions o;
      o.tree_limit = a.tree_limit;
      o.node_limit = a.node_limit;
      o.include_diagonal = !a.exclude_diagonal;
      const SolveResult r = solve_exact(inst, o);
      checks["oracle_status"] = std::string(to_string(r.status));
      if (r.status == SolveStatus::Optimal) fail("a feasible tree exists");
    } else {
      throw GuardExceeded("infeasibility claims on sparse instances cannot be re-checked by enumeration");
    }
  }
  out["valid"] = valid;
  out["status"] = std::string(to_string(claim.status));
  out["checks"] = checks;
  out["reason"] = valid ? Json(nullptr) : Json(reason);
  return out;
}

int run_verify(const VerifyArgs& a, RunLog& log) {
  log.input(a.instance);
  log.input(a.result);
  AnyInstance any = instance_from_json(read_json_file(a.instance));
  const ResultClaim claim = result_from_json(read_json_file(a.result));
  const Json out = std::visit([&](const auto& inst) { return verify_claim(a, inst, claim); }, any);
  emit(out, a.common);
  return out["valid"].get<bool>() ? kOptimal : kInfeasible;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  int k = 4;
  int n = 100000;
  std::uint64_t seed = 1;
  Cost lo = 0;
  Cost hi = 9;
  Common common;
};

Json bench_one(int k, int n, std::uint64_t seed, CostRange range) {
  LadderStructure ladder = make_kn_ladder(k, n);
  Rng rng(seed);
  SparseInstance inst{ladder.graph, adjacent_random_costs_sparse(ladder.graph, range, rng), {}, ProblemKind::AQMST};
  DpStats stats;
  const auto start = std::chrono::steady_clock::now();
  const SolveResult r = dp_solve(inst, ladder, &stats);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json out;
  out["k"] = k;
  out["n"] = n;
  out["num_edges"] = ladder.graph.num_edges();
  out["value"] = r.value;
  out["spanning_tree"] = is_spanning_tree(ladder.graph, r.tree.edges);
  out["recurrence_applications"] = stats.recurrence_applications;
  out["candidate_evaluations"] = stats.candidate_evaluations;
  out["seconds"] = seconds;
  return out;
}

int run_bench(const BenchArgs& a, RunLog& log) {
  log.seed = a.seed;
  if (a.n < 2) throw UsageError("bench needs --n of at least 2");
  const CostRange range{a.lo, a.hi};
  Json full = bench_one(a.k, a.n, a.seed, range);
  Json half = bench_one(a.k, a.n / 2, a.seed, range);
  const double ratio = full["candidate_evaluations"].get<double>() / half["candidate_evaluations"].get<double>();
  Json out;
  out["runs"] = {full, half};
  out["transition_ratio"] = ratio;
  out["linear"] = ratio >= 1.9 && ratio <= 2.1;
  emit(out, a.common);
  return kOptimal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic minimum spanning tree toolkit"};
  app.set_version_flag("--version", QMST_VERSION);
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Build a graph family member, optionally with costs");
  generate->add_option("--family", gen.family, "fan, wheel, fan-star, ladder, kn-ladder or kn-accordion")->required();
  generate->add_option("--n", gen.n, "Size parameter")->required();
  generate->add_option("--k", gen.k, "Cycle length for kn-ladder and kn-accordion");
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--costs", gen.costs, "none, zero, random, graded or adjacent-random");
  generate->add_option("--lo", gen.lo, "Smallest cost");
  generate->add_option("--hi", gen.hi, "Largest cost");
  generate->add_option("--kind", gen.kind, "Problem kind stored in the instance");
  generate->add_option("--conflicts", gen.conflicts, "Number of random conflict pairs");
  generate->add_option("--out", gen.common.out, "Output path prefix")->required();
  add_common(generate, gen.common);

  CountArgs cnt;
  auto* count = app.add_subcommand("count", "Count spanning trees");
  count->add_option("--graph", cnt.graph, "Graph text file");
  count->add_option("--family", cnt.family, "Generate the graph from a family instead");
  count->add_option("--n", cnt.n, "Size parameter");
  count->add_option("--k", cnt.k, "Cycle length");
  count->add_option("--seed", cnt.seed, "Seed for kn-accordion");
  count->add_option("--method", cnt.method, "matrix-tree, del-con, recursive or closed");
  add_common(count, cnt.common);

  SolveArgs sol;
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("--instance", sol.instance, "Instance JSON");
  solve->add_option("--bases", sol.bases, "Base-system JSON with a \"w\" matrix");
  solve->add_option("--structure", sol.structure, "Structure file written by generate");
  solve->add_option("--kind", sol.kind, "Override the instance kind (QMWB or QBWB with --bases)");
  solve->add_option("--method", sol.method, "auto, enum, ladder-dp or graded");
  solve->add_option("--threads", sol.threads, "Worker threads for enumeration");
  solve->add_option("--tree-limit", sol.tree_limit, "Largest spanning-tree count enumerated");
  solve->add_option("--node-limit", sol.node_limit, "Search-node budget for conflict kinds");
  solve->add_flag("--exclude-diagonal", sol.exclude_diagonal, "Bottleneck over distinct pairs only");
  solve->add_option("--out", sol.common.out, "Also write the result JSON here");
  add_common(solve, sol.common);

  BoundArgs bnd;
  auto* bound = app.add_subcommand("bound", "Natural lower bound and graded certificate");
  bound->add_option("--instance", bnd.instance, "Instance JSON")->required();
  bound->add_flag("--bottleneck", bnd.bottleneck, "Use the max-composition bound");
  bound->add_flag("--certify-nnl", bnd.certify_nnl, "Check whether the pi-critical tree is certified optimal");
  add_common(bound, bnd.common);

  ReduceArgs red;
  auto* reduce = app.add_subcommand("reduce", "Reduce a 3-SAT formula to a conflict instance");
  reduce->add_option("--cnf", red.cnf, "DIMACS CNF file with 3 literals per clause");
  reduce->add_option("--random-vars", red.random_vars, "Generate a random formula with this many variables");
  reduce->add_option("--random-clauses", red.random_clauses, "Clauses of the random formula");
  reduce->add_option("--seed", red.seed, "Seed for the random formula");
  reduce->add_option("--target", red.target, "fanstar or ladder");
  reduce->add_option("--out", red.common.out, "Output path prefix")->required();
  add_common(reduce, red.common);

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Check a result file against its instance");
  verify->add_option("--instance", ver.instance, "Instance JSON")->required();
  verify->add_option("--result", ver.result, "Result JSON")->required();
  verify->add_flag("--exclude-diagonal", ver.exclude_diagonal, "Bottleneck over distinct pairs only");
  verify->add_option("--tree-limit", ver.tree_limit, "Guard for re-checking infeasibility");
  verify->add_option("--node-limit", ver.node_limit, "Guard for re-checking infeasibility");
  add_common(verify, ver.common);

  BenchArgs bch;
  auto* bench = app.add_subcommand("bench", "Time the ladder DP at n and n/2");
  bench->add_option("--k", bch.k, "Cycle length");
  bench->add_option("--n", bch.n, "Number of cycles");
  bench->add_option("--seed", bch.seed, "Cost seed");
  bench->add_option("--lo", bch.lo, "Smallest cost");
  bench->add_option("--hi", bch.hi, "Largest cost");
  add_common(bench, bch.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }

  RunLog log;
  log.argv.assign(argv + 1, argv + argc);
  const Common* common = nullptr;
  const auto start = std::chrono::steady_clock::now();
  int code = kUsage;
  try {
    if (generate->parsed()) {
      log.command = "generate";
      common = &gen.common;
      code = run_generate(gen, log);
    } else if (count->parsed()) {
      log.command = "count";
      common = &cnt.common;
      code = run_count(cnt, log);
    } else if (solve->parsed()) {
      log.command = "solve";
      common = &sol.common;
      code = run_solve(sol, log);
    } else if (bound->parsed()) {
      log.command = "bound";
      common = &bnd.common;
      code = run_bound(bnd, log);
    } else if (reduce->parsed()) {
      log.command = "reduce";
      common = &red.common;
      code = run_reduce(red, log);
    } else if (verify->parsed()) {
      log.command = "verify";
      common = &ver.common;
      code = run_verify(ver, log);
    } else if (bench->parsed()) {
      log.command = "bench";
      common = &bch.common;
      code = run_bench(bch, log);
    }
  } catch (const GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << '\n';
    code = kGuard;
  } catch (const std::length_error& e) {
    std::cerr << "guard exceeded: " << e.what() << '\n';
    code = kGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    code = kUsage;
  }
  if (common) {
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    try {
      write_manifest(*common, log, seconds);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kUsage;
    }
  }
  return code;
}
