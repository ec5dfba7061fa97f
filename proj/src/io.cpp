#include "qmst/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qmst {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field \"") + key + "\" has the wrong type: " + e.what());
  }
}

ConflictSet conflicts_from_json(const Json& j) {
  if (!j.contains("conflicts")) return {};
  std::vector<ConflictPair> pairs;
  for (const auto& p : j.at("conflicts")) {
    if (!p.is_array() || p.size() != 2) throw FormatError("conflict entries must be [e, f]");
    pairs.emplace_back(p[0].get<EdgeIndex>(), p[1].get<EdgeIndex>());
  }
  try {
    return make_conflict_set(std::move(pairs));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

Json conflicts_to_json(const ConflictSet& conflicts) {
  Json out = Json::array();
  for (auto [a, b] : conflicts) out.push_back({a, b});
  return out;
}

ProblemKind kind_from_json(const Json& j) {
  const auto name = field<std::string>(j, "kind");
  const auto kind = parse_problem_kind(name);
  if (!kind) throw FormatError("unknown problem kind \"" + name + "\"");
  return *kind;
}

template <typename MatrixType>
Json instance_header(const BasicInstance<MatrixType>& inst) {
  Json out;
  out["kind"] = std::string(to_string(inst.kind));
  out["graph"] = graph_to_json(inst.graph);
  return out;
}

template <typename Derived>
Json triplets(const Eigen::SparseMatrixBase<Derived>& q) {
  Json out = Json::array();
  const Derived& mat = q.derived();
  for (Eigen::Index o = 0; o < mat.outerSize(); ++o)
    for (typename Derived::InnerIterator it(mat, o); it; ++it)
      if (it.value() != 0) out.push_back({it.row(), it.col(), it.value()});
  return out;
}

}  // namespace

Graph read_graph_text(std::istream& in) {
  std::string line;
  int n = -1, m = -1;
  std::vector<Edge> edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      if (n >= 0) throw FormatError("line " + std::to_string(lineno) + ": second header");
      if (!(ls >> n >> m) || n < 0 || m < 0) throw FormatError("line " + std::to_string(lineno) + ": bad header");
    } else if (tag == "e") {
      if (n < 0) throw FormatError("line " + std::to_string(lineno) + ": edge before the header");
      Edge e{};
      if (!(ls >> e.u >> e.v)) throw FormatError("line " + std::to_string(lineno) + ": bad edge");
      edges.push_back(e);
    } else {
      throw FormatError("line " + std::to_string(lineno) + ": unknown record \"" + tag + "\"");
    }
  }
  if (n < 0) throw FormatError("missing header line \"p <n> <m>\"");
  if (static_cast<int>(edges.size()) != m)
    throw FormatError("header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  try {
    return Graph(n, std::move(edges));
  } catch (const std::exception& e) {
    throw FormatError(e.what());
  }
}

void write_graph_text(std::ostream& out, const Graph& g) {
  out << "p " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << '\n';
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  Json out;
  out["num_vertices"] = g.num_vertices();
  out["edges"] = std::move(edges);
  return out;
}

Graph graph_from_json(const Json& j) {
  const int n = field<int>(j, "num_vertices");
  std::vector<Edge> edges;
  for (const auto& e : field<Json>(j, "edges")) {
    if (!e.is_array() || e.size() != 2) throw FormatError("edges must be [u, v] pairs");
    edges.push_back({e[0].get<Vertex>(), e[1].get<Vertex>()});
  }
  try {
    return Graph(n, std::move(edges));
  } catch (const std::exception& e) {
    throw FormatError(e.what());
  }
}

Json instance_to_json(const Instance& inst) {
  Json out = instance_header(inst);
  if (inst.graph.num_edges() <= kDenseCostLimit) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < inst.q.rows(); ++i) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < inst.q.cols(); ++c) row.push_back(inst.q(i, c));
      rows.push_back(std::move(row));
    }
    out["q"] = std::move(rows);
  } else {
    out["q_triplets"] = triplets(SparseCostMatrix(inst.q.sparseView()));
  }
  out["conflicts"] = conflicts_to_json(inst.conflicts);
  return out;
}

Json instance_to_json(const SparseInstance& inst) {
  if (inst.graph.num_edges() <= kDenseCostLimit)
    return instance_to_json(Instance{inst.graph, CostMatrix(inst.q), inst.conflicts, inst.kind});
  Json out = instance_header(inst);
  out["q_triplets"] = triplets(inst.q);
  out["conflicts"] = conflicts_to_json(inst.conflicts);
  return out;
}

AnyInstance instance_from_json(const Json& j) {
  const ProblemKind kind = kind_from_json(j);
  Graph g = graph_from_json(field<Json>(j, "graph"));
  const int m = g.num_edges();
  ConflictSet conflicts = conflicts_from_json(j);

  std::vector<Eigen::Triplet<Cost>> entries;
  if (j.contains("q") && j.contains("q_triplets")) throw FormatError("give either \"q\" or \"q_triplets\", not both");
  if (j.contains("q")) {
    const Json& rows = j.at("q");
    if (!rows.is_array() || static_cast<int>(rows.size()) != m)
      throw FormatError("\"q\" must have one row per edge (" + std::to_string(m) + ")");
    CostMatrix q(m, m);
    for (int r = 0; r < m; ++r) {
      if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != m)
        throw FormatError("row " + std::to_string(r) + " of \"q\" must have " + std::to_string(m) + " entries");
      for (int c = 0; c < m; ++c) q(r, c) = rows[r][c].get<Cost>();
    }
    Instance inst{std::move(g), std::move(q), std::move(conflicts), kind};
    check_instance(inst);
    return inst;
  }
  if (j.contains("q_triplets")) {
    for (const auto& t : j.at("q_triplets")) {
      if (!t.is_array() || t.size() != 3) throw FormatError("q_triplets entries must be [i, j, value]");
      const auto r = t[0].get<long long>(), c = t[1].get<long long>();
      if (r < 0 || c < 0 || r >= m || c >= m) throw FormatError("q_triplets index outside the edge range");
      entries.emplace_back(r, c, t[2].get<Cost>());
    }
  } else {
    throw FormatError("missing cost matrix (\"q\" or \"q_triplets\")");
  }
  SparseCostMatrix q(m, m);
  q.setFromTriplets(entries.begin(), entries.end(), [](Cost, Cost) -> Cost {
    throw FormatError("q_triplets lists an entry twice");
  });
  if (m <= kDenseCostLimit) {
    Instance inst{std::move(g), CostMatrix(q), std::move(conflicts), kind};
    check_instance(inst);
    return inst;
  }
  SparseInstance inst{std::move(g), std::move(q), std::move(conflicts), kind};
  check_instance(inst);
  return inst;
}

Json ladder_to_json(const LadderStructure& ladder) {
  Json out;
  out["structure"] = "ladder";
  out["k"] = ladder.k;
  out["n"] = ladder.n;
  out["cycle_edges"] = ladder.cycle_edges;
  Json anchors = Json::array();
  for (auto [a, b] : ladder.anchors) anchors.push_back({a, b});
  out["anchors"] = std::move(anchors);
  return out;
}

LadderStructure ladder_from_json(const Json& j, const Graph& graph) {
  if (field<std::string>(j, "structure") != "ladder") throw FormatError("structure file does not describe a ladder");
  LadderStructure out;
  out.graph = graph;
  out.k = field<int>(j, "k");
  out.n = field<int>(j, "n");
  out.cycle_edges = field<std::vector<std::vector<EdgeIndex>>>(j, "cycle_edges");
  for (const auto& a : field<Json>(j, "anchors")) {
    if (!a.is_array() || a.size() != 2) throw FormatError("anchors must be [v1, v2] pairs");
    out.anchors.emplace_back(a[0].get<Vertex>(), a[1].get<Vertex>());
  }
  return out;
}

Json accordion_to_json(const AccordionStructure& acc) {
  Json out;
  out["structure"] = "accordion";
  out["k"] = acc.k;
  out["n"] = acc.n;
  out["cycle_edges"] = acc.cycle_edges;
  out["free_edge_choices"] = acc.free_edge_choices;
  return out;
}

Json base_system_to_json(const BaseSystem& bs, const WeightMatrix* w) {
  Json out;
  out["ground_size"] = bs.ground_size;
  out["bases"] = bs.bases;
  if (w) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < w->rows(); ++i) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < w->cols(); ++c) row.push_back((*w)(i, c));
      rows.push_back(std::move(row));
    }
    out["w"] = std::move(rows);
  }
  return out;
}

BaseSystemFile base_system_from_json(const Json& j) {
  BaseSystemFile out;
  try {
    out.bases = make_base_system(field<int>(j, "ground_size"), field<std::vector<std::vector<int>>>(j, "bases"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  if (j.contains("w")) {
    const int m = out.bases.ground_size;
    const auto rows = field<std::vector<std::vector<Cost>>>(j, "w");
    if (static_cast<int>(rows.size()) != m) throw FormatError("\"w\" must be ground_size x ground_size");
    WeightMatrix w(m, m);
    for (int r = 0; r < m; ++r) {
      if (static_cast<int>(rows[r].size()) != m) throw FormatError("\"w\" must be ground_size x ground_size");
      for (int c = 0; c < m; ++c) w(r, c) = rows[r][c];
    }
    out.w = std::move(w);
  }
  return out;
}

std::string_view to_string(SolveStatus status) {
  return status == SolveStatus::Optimal ? "optimal" : "infeasible";
}

Json result_to_json(const SolveResult& r, ProblemKind kind) {
  Json out;
  out["status"] = std::string(to_string(r.status));
  out["kind"] = std::string(to_string(kind));
  out["method"] = r.method;
  if (r.status == SolveStatus::Optimal) {
    out["value"] = r.value;
    out["violations"] = r.violations;
    out["tree"] = r.tree.edges;
  } else {
    out["value"] = nullptr;
    out["violations"] = nullptr;
    out["tree"] = nullptr;
  }
  out["trees_enumerated"] = r.trees_enumerated;
  return out;
}

ResultClaim result_from_json(const Json& j) {
  ResultClaim out;
  const auto status = field<std::string>(j, "status");
  if (status == "optimal")
    out.status = SolveStatus::Optimal;
  else if (status == "infeasible")
    out.status = SolveStatus::Infeasible;
  else
    throw FormatError("unknown status \"" + status + "\"");
  if (j.contains("kind")) out.kind = kind_from_json(j);
  if (out.status == SolveStatus::Optimal) {
    out.value = field<Cost>(j, "value");
    out.violations = j.contains("violations") && !j.at("violations").is_null() ? field<std::int64_t>(j, "violations") : 0;
    out.tree.edges = field<std::vector<EdgeIndex>>(j, "tree");
  }
  return out;
}

Json literal_map_to_json(const ReductionOutput& out) {
  Json clauses = Json::array();
  for (std::size_t i = 0; i < out.formula.clauses.size(); ++i) {
    Json lits = Json::array();
    for (int p = 0; p < 3; ++p) {
      const Literal& lit = out.formula.clauses[i][p];
      Json entry;
      entry["literal"] = lit.negated ? -(lit.var + 1) : lit.var + 1;
      entry["edge"] = out.literal_edges[i][p];
      lits.push_back(std::move(entry));
    }
    clauses.push_back(std::move(lits));
  }
  Json result;
  result["num_vars"] = out.formula.num_vars;
  result["clauses"] = std::move(clauses);
  return result;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qmst
