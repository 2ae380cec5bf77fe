#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tropdeg/chain.hpp"
#include "tropdeg/fixtures.hpp"
#include "tropdeg/metric.hpp"
#include "tropdeg/pct.hpp"
#include "tropdeg/twist_graph.hpp"

namespace tropdeg::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "tropdeg/1";

/// Parses JSON text; syntax errors become ParseError.
Json parse_json(const std::string& text);

/// A graph file: vertices, edges with optional lengths, and optionally the
/// fixture it came from.
struct GraphDocument {
  std::vector<VertexSpec> vertices;
  std::vector<MetricEdgeSpec> edges;
  std::optional<FixtureSpec> fixture;
  std::map<std::string, std::string> marked;
  std::string note;

  /// Loops are rejected here.
  MultiGraph plain() const;
  /// Loops are split at their midpoints here.
  MetricGraph metric() const;
};

GraphDocument parse_graph(const Json& j);
Json graph_to_json(const MetricGraph& graph);
Json graph_to_json(const MultiGraph& graph);

Json fixture_spec_to_json(const FixtureSpec& spec);
FixtureSpec parse_fixture_spec(const Json& j);
/// Graph document for a fixture; parse_graph of it rebuilds the same graph.
Json fixture_to_json(const Fixture& fixture);

/// Accepts {"coeffs": {...}}, a bare {"v": c} map, or the shorthand
/// "2@a+1@b" (vertex points only).
Divisor parse_divisor(const MultiGraph& graph, const std::string& text);
Json divisor_to_json(const MultiGraph& graph, const Divisor& d);
Json twist_vector_to_json(const MultiGraph& graph, const TwistVector& t);

/// Shorthand "c@point+c@point" where a point is a vertex id or edge:offset;
/// a missing "c@" means 1. Also accepts a JSON list of {"point", "coeff"},
/// the object metric_divisor_to_json writes, or a vertex map.
MetricDivisor parse_metric_divisor(const MetricGraph& graph, const std::string& text);
Json metric_divisor_to_json(const MetricGraph& graph, const MetricDivisor& d);

/// {"vertex": id} or {"edge": id, "offset": "p/q"}; also the shorthand.
MetricPoint parse_point(const MetricGraph& graph, const std::string& text);
MetricPoint parse_point(const MetricGraph& graph, const Json& j);
Json point_to_json(const MetricGraph& graph, const MetricPoint& p);

Json pl_function_to_json(const MetricGraph& graph, const PLFunction& f);

/// {"n": {"e1": 3}}; omitted edges get 1.
ChainStructure parse_chain(const MultiGraph& graph, const Json& j);
Json chain_to_json(const MultiGraph& graph, const ChainStructure& chain);

/// {"w": {...}, "mu": {...}, "d": 3}; omitted entries are 0 and d is checked
/// when present.
AdmissibleMultidegree parse_multidegree(const MultiGraph& graph, const ChainStructure& chain, const Json& j);
Json multidegree_to_json(const MultiGraph& graph, const AdmissibleMultidegree& w);

Json node_divisor_to_json(const MultiGraph& graph, const NodeDivisor& d);

/// Keys "(e,v)" with e the id of any edge over the bar edge.
Profiles parse_profiles(const MultiGraph& graph, const MultitreeData& tree, const Json& j);
std::string edge_side_key(const MultiGraph& graph, const MultitreeData& tree, const EdgeSide& side);

/// Reads an argument that is inline JSON (starting with '{' or '[') or the
/// path of a JSON file.
Json load_json_arg(const std::string& text);

}  // namespace tropdeg::io
