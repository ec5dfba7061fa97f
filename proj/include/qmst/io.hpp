#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "qmst/enumerate.hpp"
#include "qmst/families.hpp"
#include "qmst/instance.hpp"
#include "qmst/matroid.hpp"
#include "qmst/reductions.hpp"

namespace qmst {

using Json = nlohmann::ordered_json;

/// Error in an input file; message names the offending field.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Graph text format:
//   c comment
//   p <num_vertices> <num_edges>
//   e <u> <v>          (0-based, one line per edge, in index order)
Graph read_graph_text(std::istream& in);
void write_graph_text(std::ostream& out, const Graph& g);

/// Largest edge count written with a dense "q"; above it "q_triplets".
inline constexpr int kDenseCostLimit = 512;

/// Dense up to kDenseCostLimit edges, sparse above, whichever key the file
/// used.
using AnyInstance = std::variant<Instance, SparseInstance>;

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json instance_to_json(const Instance& inst);
Json instance_to_json(const SparseInstance& inst);
AnyInstance instance_from_json(const Json& j);

Json ladder_to_json(const LadderStructure& ladder);
/// The sidecar carries labels only; the graph comes from the instance.
LadderStructure ladder_from_json(const Json& j, const Graph& graph);
Json accordion_to_json(const AccordionStructure& acc);

struct BaseSystemFile {
  BaseSystem bases;
  std::optional<WeightMatrix> w;
};

Json base_system_to_json(const BaseSystem& bs, const WeightMatrix* w = nullptr);
BaseSystemFile base_system_from_json(const Json& j);

std::string_view to_string(SolveStatus status);

struct ResultClaim {
  SolveStatus status = SolveStatus::Infeasible;
  SpanningTree tree;
  Cost value = 0;
  std::int64_t violations = 0;
  std::optional<ProblemKind> kind;
};

Json result_to_json(const SolveResult& r, ProblemKind kind);
ResultClaim result_from_json(const Json& j);

Json literal_map_to_json(const ReductionOutput& out);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace qmst
