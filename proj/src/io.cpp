#include "tropdeg/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "tropdeg/error.hpp"

namespace tropdeg::io {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorKind::ParseError, message); }

void require_object(const Json& j, const std::string& what) {
  if (!j.is_object()) fail(what + " must be a JSON object");
}

void check_fields(const Json& j, const std::string& what, std::initializer_list<const char*> allowed) {
  require_object(j, what);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; }) == allowed.end()) {
      fail(what + ": unknown field \"" + it.key() + "\"");
    }
  }
  if (j.contains("schema")) {
    if (!j["schema"].is_string() || j["schema"].get<std::string>() != kSchema) {
      fail(what + ": unsupported schema (expected \"" + std::string(kSchema) + "\")");
    }
  }
}

std::string get_string(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) fail(what + ": missing \"" + std::string(key) + "\"");
  if (!j[key].is_string()) fail(what + ": \"" + std::string(key) + "\" must be a string");
  return j[key].get<std::string>();
}

std::int64_t as_int(const Json& j, const std::string& what) {
  if (j.is_number_float()) throw Error(ErrorKind::IrrationalInput, what + ": expected an integer");
  if (!j.is_number_integer()) fail(what + ": expected an integer");
  return j.get<std::int64_t>();
}

Rational as_rational(const Json& j, const std::string& what) {
  if (j.is_number_float()) throw Error(ErrorKind::IrrationalInput, what + ": rationals are written as \"p/q\" strings");
  if (!j.is_string()) fail(what + ": rationals are written as \"p/q\" strings");
  return parse_rational(j.get<std::string>());
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& text, const std::string& what) {
  std::string t = trim(text);
  if (t.empty()) fail(what + ": empty coefficient");
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i == t.size()) fail(what + ": bad coefficient \"" + t + "\"");
  for (std::size_t k = i; k < t.size(); ++k) {
    if (t[k] == '.') throw Error(ErrorKind::IrrationalInput, what + ": coefficient \"" + t + "\" is not an integer");
    if (!std::isdigit(static_cast<unsigned char>(t[k]))) fail(what + ": bad coefficient \"" + t + "\"");
  }
  try {
    return std::stoll(t);
  } catch (const std::exception&) {
    fail(what + ": coefficient out of range");
  }
}

struct Term {
  std::int64_t coeff;
  std::string point;
};

// "2@a+1@b:1/3-1@c" -> terms; the coefficient defaults to 1. A '-' separates
// terms only when a coefficient and '@' follow it, so ids may contain '-'.
std::vector<Term> split_shorthand(const std::string& text) {
  std::vector<Term> out;
  std::string t = trim(text);
  if (t.empty() || t == "0") return out;
  auto signed_coeff_follows = [&](std::size_t i) {
    std::size_t k = i + 1;
    while (k < t.size() && std::isdigit(static_cast<unsigned char>(t[k]))) ++k;
    return k > i + 1 && k < t.size() && t[k] == '@';
  };
  std::vector<std::string> pieces;
  std::string cur;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == '+' || (t[i] == '-' && i > 0 && signed_coeff_follows(i))) {
      pieces.push_back(cur);
      cur = t[i] == '-' ? "-" : "";
    } else {
      cur += t[i];
    }
  }
  pieces.push_back(cur);
  for (const auto& raw : pieces) {
    std::string piece = trim(raw);
    if (piece.empty()) fail("divisor: empty term in \"" + t + "\"");
    auto at = piece.find('@');
    if (at == std::string::npos) {
      out.push_back({1, piece});
    } else {
      std::string point = trim(piece.substr(at + 1));
      if (point.empty()) fail("divisor: missing point in \"" + piece + "\"");
      out.push_back({parse_int(piece.substr(0, at), "divisor"), point});
    }
  }
  return out;
}

Json int_map(const MultiGraph& graph, const std::vector<std::int64_t>& values, bool skip_zero) {
  Json out = Json::object();
  for (VertexIndex v : graph.vertices_by_id()) {
    if (skip_zero && values[v] == 0) continue;
    out[graph.vertex_id(v)] = values[v];
  }
  return out;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
}

Json load_json_arg(const std::string& text) {
  std::string t = trim(text);
  if (!t.empty() && (t[0] == '{' || t[0] == '[')) return parse_json(t);
  std::ifstream in(t);
  if (!in) fail("cannot open \"" + t + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

MultiGraph GraphDocument::plain() const {
  std::vector<EdgeSpec> es;
  for (const auto& e : edges) es.push_back({e.id, e.tail, e.head});
  return MultiGraph::build(vertices, es);
}

MetricGraph GraphDocument::metric() const { return MetricGraph::build(vertices, edges); }

GraphDocument parse_graph(const Json& j) {
  check_fields(j, "graph", {"schema", "vertices", "edges", "fixture", "marked", "note"});
  GraphDocument doc;
  if (!j.contains("vertices") || !j["vertices"].is_array()) fail("graph: \"vertices\" must be an array");
  if (!j.contains("edges") || !j["edges"].is_array()) fail("graph: \"edges\" must be an array");
  for (const auto& v : j["vertices"]) {
    check_fields(v, "vertex", {"id", "genus"});
    VertexSpec spec{get_string(v, "id", "vertex"), 0};
    if (v.contains("genus")) {
      std::int64_t g = as_int(v["genus"], "vertex genus");
      if (g < 0) fail("vertex " + spec.id + ": negative genus");
      spec.genus = static_cast<int>(g);
    }
    doc.vertices.push_back(spec);
  }
  for (const auto& e : j["edges"]) {
    check_fields(e, "edge", {"id", "tail", "head", "length"});
    MetricEdgeSpec spec{get_string(e, "id", "edge"), get_string(e, "tail", "edge"), get_string(e, "head", "edge"),
                        Rational(1)};
    if (e.contains("length")) spec.length = as_rational(e["length"], "edge " + spec.id + " length");
    doc.edges.push_back(spec);
  }
  if (j.contains("fixture")) doc.fixture = parse_fixture_spec(j["fixture"]);
  if (j.contains("marked")) {
    require_object(j["marked"], "marked");
    for (auto it = j["marked"].begin(); it != j["marked"].end(); ++it) {
      if (!it.value().is_string()) fail("marked: values must be vertex ids");
      doc.marked[it.key()] = it.value().get<std::string>();
    }
  }
  if (j.contains("note")) {
    if (!j["note"].is_string()) fail("note must be a string");
    doc.note = j["note"].get<std::string>();
  }
  return doc;
}

Json graph_to_json(const MetricGraph& graph) {
  Json out = Json::object();
  out["schema"] = kSchema;
  Json vs = Json::array();
  for (const auto& v : graph.model().vertex_specs()) vs.push_back(Json{{"id", v.id}, {"genus", v.genus}});
  Json es = Json::array();
  for (const auto& e : graph.edge_specs()) {
    es.push_back(Json{{"id", e.id}, {"tail", e.tail}, {"head", e.head}, {"length", format_rational(e.length)}});
  }
  out["vertices"] = vs;
  out["edges"] = es;
  return out;
}

Json graph_to_json(const MultiGraph& graph) {
  Json out = Json::object();
  out["schema"] = kSchema;
  Json vs = Json::array();
  for (const auto& v : graph.vertex_specs()) vs.push_back(Json{{"id", v.id}, {"genus", v.genus}});
  Json es = Json::array();
  for (const auto& e : graph.edge_specs()) es.push_back(Json{{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
  out["vertices"] = vs;
  out["edges"] = es;
  return out;
}

Json fixture_spec_to_json(const FixtureSpec& spec) {
  Json out = Json::object();
  out["kind"] = spec.kind;
  if (spec.g != 0) out["g"] = spec.g;
  if (spec.k != 0) out["k"] = spec.k;
  if (spec.m != 0) out["m"] = spec.m;
  if (!spec.lengths.empty()) {
    Json ls = Json::array();
    for (const auto& l : spec.lengths) ls.push_back(format_rational(l));
    out["lengths"] = ls;
  }
  if (!spec.parts.empty()) {
    Json ps = Json::array();
    for (const auto& p : spec.parts) ps.push_back(fixture_spec_to_json(p));
    out["parts"] = ps;
  }
  return out;
}

FixtureSpec parse_fixture_spec(const Json& j) {
  check_fields(j, "fixture", {"kind", "g", "k", "m", "lengths", "parts"});
  FixtureSpec spec;
  spec.kind = get_string(j, "kind", "fixture");
  if (j.contains("g")) spec.g = static_cast<int>(as_int(j["g"], "fixture g"));
  if (j.contains("k")) spec.k = static_cast<int>(as_int(j["k"], "fixture k"));
  if (j.contains("m")) spec.m = static_cast<int>(as_int(j["m"], "fixture m"));
  if (j.contains("lengths")) {
    if (!j["lengths"].is_array()) fail("fixture: \"lengths\" must be an array");
    for (const auto& l : j["lengths"]) spec.lengths.push_back(as_rational(l, "fixture length"));
  }
  if (j.contains("parts")) {
    if (!j["parts"].is_array()) fail("fixture: \"parts\" must be an array");
    for (const auto& p : j["parts"]) spec.parts.push_back(parse_fixture_spec(p));
  }
  return spec;
}

Json fixture_to_json(const Fixture& fixture) {
  Json out = graph_to_json(fixture.graph);
  out["fixture"] = fixture_spec_to_json(fixture.spec);
  Json marked = Json::object();
  for (const auto& [k, v] : fixture.marked) marked[k] = v;
  out["marked"] = marked;
  out["note"] = fixture.note;
  return out;
}

Divisor parse_divisor(const MultiGraph& graph, const std::string& text) {
  std::string t = trim(text);
  Divisor d(graph.num_vertices());
  if (!t.empty() && t[0] == '{') {
    Json j = parse_json(t);
    const Json* map = &j;
    if (j.contains("coeffs")) {
      check_fields(j, "divisor", {"schema", "coeffs"});
      map = &j["coeffs"];
    }
    require_object(*map, "divisor coefficients");
    for (auto it = map->begin(); it != map->end(); ++it) {
      d[graph.vertex_index(it.key())] += as_int(it.value(), "divisor coefficient of " + it.key());
    }
    return d;
  }
  for (const auto& term : split_shorthand(t)) {
    if (term.point.find(':') != std::string::npos) {
      fail("divisor: edge points need a metric command (\"" + term.point + "\")");
    }
    d[graph.vertex_index(term.point)] += term.coeff;
  }
  return d;
}

Json divisor_to_json(const MultiGraph& graph, const Divisor& d) {
  return Json{{"coeffs", int_map(graph, d.coeffs(), false)}};
}

Json twist_vector_to_json(const MultiGraph& graph, const TwistVector& t) {
  return int_map(graph, t.counts(), false);
}

MetricPoint parse_point(const MetricGraph& graph, const std::string& text) {
  std::string t = trim(text);
  if (!t.empty() && t[0] == '{') return parse_point(graph, parse_json(t));
  auto colon = t.find(':');
  if (colon == std::string::npos) return MetricPoint::at_vertex(graph.model().vertex_index(t));
  auto [e, offset] = graph.resolve(trim(t.substr(0, colon)), parse_rational(trim(t.substr(colon + 1))));
  return MetricPoint::on_edge(graph, e, offset);
}

MetricPoint parse_point(const MetricGraph& graph, const Json& j) {
  check_fields(j, "point", {"vertex", "edge", "offset"});
  if (j.contains("vertex")) {
    if (j.contains("edge") || j.contains("offset")) fail("point: give either a vertex or an edge with offset");
    return MetricPoint::at_vertex(graph.model().vertex_index(get_string(j, "vertex", "point")));
  }
  if (!j.contains("offset")) fail("point: missing \"offset\"");
  auto [e, offset] = graph.resolve(get_string(j, "edge", "point"), as_rational(j["offset"], "point offset"));
  return MetricPoint::on_edge(graph, e, offset);
}

Json point_to_json(const MetricGraph& graph, const MetricPoint& p) {
  if (p.on_vertex) return Json{{"vertex", graph.model().vertex_id(p.vertex)}};
  return Json{{"edge", graph.model().edge(p.edge).id}, {"offset", format_rational(p.offset)}};
}

MetricDivisor parse_metric_divisor(const MetricGraph& graph, const std::string& text) {
  std::string t = trim(text);
  MetricDivisor d;
  if (!t.empty() && (t[0] == '[' || t[0] == '{')) {
    Json j = parse_json(t);
    std::optional<std::int64_t> degree;
    if (j.is_object()) {
      if (!j.contains("terms")) {
        Divisor plain = parse_divisor(graph.model(), t);
        for (VertexIndex v = 0; v < plain.size(); ++v) d.add(MetricPoint::at_vertex(v), plain[v]);
        return d;
      }
      // our own output: {"text", "degree", "terms"}
      check_fields(j, "metric divisor", {"text", "degree", "terms"});
      if (j.contains("degree")) degree = as_int(j["degree"], "metric divisor degree");
      j = Json(j["terms"]);
      if (!j.is_array()) fail("metric divisor: \"terms\" must be a list");
    }
    for (const auto& term : j) {
      check_fields(term, "divisor term", {"point", "coeff"});
      if (!term.contains("point")) fail("divisor term: missing \"point\"");
      MetricPoint p = term["point"].is_string() ? parse_point(graph, term["point"].get<std::string>())
                                                : parse_point(graph, term["point"]);
      d.add(p, term.contains("coeff") ? as_int(term["coeff"], "divisor coefficient") : 1);
    }
    if (degree && *degree != d.degree()) fail("metric divisor: \"degree\" does not match the terms");
    return d;
  }
  for (const auto& term : split_shorthand(t)) d.add(parse_point(graph, term.point), term.coeff);
  return d;
}

Json metric_divisor_to_json(const MetricGraph& graph, const MetricDivisor& d) {
  Json terms = Json::array();
  for (const auto& [p, c] : d.terms()) terms.push_back(Json{{"point", point_to_json(graph, p)}, {"coeff", c}});
  return Json{{"text", format_divisor(graph, d)}, {"degree", d.degree()}, {"terms", terms}};
}

Json pl_function_to_json(const MetricGraph& graph, const PLFunction& f) {
  Json out = Json::object();
  Json vs = Json::object();
  for (VertexIndex v : graph.model().vertices_by_id()) vs[graph.model().vertex_id(v)] = format_rational(f.vertex_values()[v]);
  out["vertex_values"] = vs;
  Json es = Json::object();
  for (EdgeIndex e = 0; e < graph.model().num_edges(); ++e) {
    const auto& bps = f.breakpoints(e);
    if (bps.size() <= 2) continue;
    Json pts = Json::array();
    for (const auto& [x, y] : bps) pts.push_back(Json::array({format_rational(x), format_rational(y)}));
    es[graph.model().edge(e).id] = pts;
  }
  out["edge_breakpoints"] = es;
  return out;
}

ChainStructure parse_chain(const MultiGraph& graph, const Json& j) {
  check_fields(j, "chain", {"schema", "n"});
  std::vector<std::int64_t> n(graph.num_edges(), 1);
  if (j.contains("n")) {
    require_object(j["n"], "chain \"n\"");
    for (auto it = j["n"].begin(); it != j["n"].end(); ++it) {
      n[graph.edge_index(it.key())] = as_int(it.value(), "chain length of " + it.key());
    }
  }
  return ChainStructure(graph, n);
}

Json chain_to_json(const MultiGraph& graph, const ChainStructure& chain) {
  Json n = Json::object();
  for (EdgeIndex e = 0; e < graph.num_edges(); ++e) n[graph.edge(e).id] = chain[e];
  return Json{{"n", n}};
}

AdmissibleMultidegree parse_multidegree(const MultiGraph& graph, const ChainStructure& chain, const Json& j) {
  check_fields(j, "multidegree", {"schema", "w", "mu", "d"});
  AdmissibleMultidegree out{std::vector<std::int64_t>(graph.num_vertices(), 0),
                            std::vector<std::int64_t>(graph.num_edges(), 0)};
  if (j.contains("w")) {
    require_object(j["w"], "multidegree \"w\"");
    for (auto it = j["w"].begin(); it != j["w"].end(); ++it) {
      out.w[graph.vertex_index(it.key())] = as_int(it.value(), "w of " + it.key());
    }
  }
  if (j.contains("mu")) {
    require_object(j["mu"], "multidegree \"mu\"");
    for (auto it = j["mu"].begin(); it != j["mu"].end(); ++it) {
      out.mu[graph.edge_index(it.key())] = as_int(it.value(), "mu of " + it.key());
    }
  }
  validate(graph, chain, out);
  if (j.contains("d") && as_int(j["d"], "multidegree d") != out.degree()) {
    throw Error(ErrorKind::PreconditionFailed,
                "stated degree " + std::to_string(as_int(j["d"], "d")) + " differs from " + std::to_string(out.degree()));
  }
  return out;
}

Json multidegree_to_json(const MultiGraph& graph, const AdmissibleMultidegree& w) {
  Json mu = Json::object();
  for (EdgeIndex e = 0; e < graph.num_edges(); ++e) {
    if (w.mu[e] != 0) mu[graph.edge(e).id] = w.mu[e];
  }
  return Json{{"w", int_map(graph, w.w, false)}, {"mu", mu}, {"d", w.degree()}};
}

Json node_divisor_to_json(const MultiGraph& graph, const NodeDivisor& d) {
  Json out = Json::array();
  for (const auto& [e, c] : d.coeffs) {
    out.push_back(Json{{"vertex", graph.vertex_id(d.vertex)}, {"edge", graph.edge(e).id}, {"coeff", c}});
  }
  return out;
}

std::string edge_side_key(const MultiGraph& graph, const MultitreeData& tree, const EdgeSide& side) {
  return "(" + graph.edge(tree.bar_edges[side.edge].parallel.front()).id + "," + graph.vertex_id(side.vertex) + ")";
}

Profiles parse_profiles(const MultiGraph& graph, const MultitreeData& tree, const Json& j) {
  require_object(j, "profiles");
  Profiles out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key.size() < 5 || key.front() != '(' || key.back() != ')') fail("profile key \"" + key + "\" is not \"(e,v)\"");
    auto comma = key.find(',');
    if (comma == std::string::npos) fail("profile key \"" + key + "\" is not \"(e,v)\"");
    EdgeIndex e = graph.edge_index(trim(key.substr(1, comma - 1)));
    VertexIndex v = graph.vertex_index(trim(key.substr(comma + 1, key.size() - comma - 2)));
    const Edge& edge = graph.edge(e);
    if (edge.tail != v && edge.head != v) fail("profile key \"" + key + "\": vertex is not on the edge");
    EdgeSide side{tree.bar_edge(edge.tail, edge.head), v};
    if (!it.value().is_array()) fail("profile \"" + key + "\" must be an array");
    std::vector<std::int64_t> a;
    for (const auto& x : it.value()) a.push_back(as_int(x, "profile entry"));
    if (!out.emplace(side, std::move(a)).second) fail("profile \"" + key + "\" given twice");
  }
  return out;
}

}  // namespace tropdeg::io
