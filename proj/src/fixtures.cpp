#include "tropdeg/fixtures.hpp"

#include <sstream>

#include "tropdeg/error.hpp"

namespace tropdeg {

namespace {

struct Builder {
  std::vector<VertexSpec> vertices;
  std::vector<MetricEdgeSpec> edges;
  const std::vector<Rational>* lengths = nullptr;
  std::size_t used = 0;

  void vertex(const std::string& id) { vertices.push_back({id, 0}); }
  void edge(const std::string& id, const std::string& tail, const std::string& head, Rational fallback) {
    Rational len = fallback;
    if (lengths && !lengths->empty()) {
      if (used >= lengths->size()) throw Error(ErrorKind::InvalidSpec, "too few lengths for this fixture");
      len = (*lengths)[used];
    }
    ++used;
    edges.push_back({id, tail, head, len});
  }
  void finish() const {
    if (lengths && !lengths->empty() && used != lengths->size()) {
      throw Error(ErrorKind::InvalidSpec, "expected " + std::to_string(used) + " lengths, got " +
                                              std::to_string(lengths->size()));
    }
  }
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidSpec, what);
}

void check_unused(const FixtureSpec& s, bool g, bool k, bool m, bool lengths, bool parts) {
  require(g || s.g == 0, s.kind + " takes no g");
  require(k || s.k == 0, s.kind + " takes no k");
  require(m || s.m == 0, s.kind + " takes no m");
  require(lengths || s.lengths.empty(), s.kind + " takes no lengths");
  require(parts || s.parts.empty(), s.kind + " takes no parts");
}

// Copies a part into the builder with prefixed ids, renaming its attachment
// vertex to `attach` (added once by the caller).
PartEmbedding add_part(Builder& b, const FixtureSpec& spec, const std::string& prefix, const std::string& attach) {
  Fixture part = build_fixture(spec);
  const std::string part_attach = default_attach(spec);
  auto rename = [&](const std::string& id) { return id == part_attach ? attach : prefix + id; };
  for (const auto& v : part.graph.model().vertex_specs()) {
    if (v.id != part_attach) b.vertices.push_back({prefix + v.id, v.genus});
  }
  for (const auto& e : part.graph.edge_specs()) {
    b.edges.push_back({prefix + e.id, rename(e.tail), rename(e.head), e.length});
  }
  return PartEmbedding{spec, part.graph.genus(), attach, prefix, part_attach};
}

}  // namespace

std::string default_attach(const FixtureSpec& spec) {
  if (spec.kind == "flower" || spec.kind == "wedge") return "v0";
  if (spec.kind == "banana" || spec.kind == "path_join") return "v1";
  if (spec.kind == "cycle") return "c0";
  if (spec.kind == "chain_of_loops") return "u0";
  throw Error(ErrorKind::InvalidSpec, "unknown fixture kind \"" + spec.kind + "\"");
}

Fixture build_fixture(const FixtureSpec& spec) {
  Builder b;
  b.lengths = &spec.lengths;
  std::map<std::string, std::string> marked;
  std::vector<PartEmbedding> parts;
  std::ostringstream note;

  if (spec.kind == "flower") {
    check_unused(spec, true, false, false, true, false);
    require(spec.g >= 1, "flower needs g >= 1");
    b.vertex("v0");
    for (int i = 0; i < spec.g; ++i) {
      std::string mid = "m" + std::to_string(i);
      b.vertex(mid);
      b.edge("p" + std::to_string(i) + "a", "v0", mid, Rational(1));
      b.edge("p" + std::to_string(i) + "b", mid, "v0", Rational(1));
    }
    marked["v0"] = "v0";
    note << "flower of " << spec.g << " loops at v0; 2[v0] has degree 2 and rank 1";
  } else if (spec.kind == "banana") {
    check_unused(spec, true, false, false, true, false);
    require(spec.g >= 1, "banana needs g >= 1");
    b.vertex("v1");
    b.vertex("v2");
    for (int i = 1; i <= spec.g + 1; ++i) b.edge("e" + std::to_string(i), "v1", "v2", Rational(1));
    marked["v1"] = "v1";
    marked["v2"] = "v2";
    note << "banana of genus " << spec.g << ": " << spec.g + 1 << " parallel edges; [v1]+[v2] has rank 1";
  } else if (spec.kind == "cycle") {
    check_unused(spec, false, true, false, true, false);
    require(spec.k >= 2, "cycle needs k >= 2");
    for (int i = 0; i < spec.k; ++i) b.vertex("c" + std::to_string(i));
    for (int i = 0; i < spec.k; ++i) {
      b.edge("s" + std::to_string(i), "c" + std::to_string(i), "c" + std::to_string((i + 1) % spec.k), Rational(1));
    }
    marked["c0"] = "c0";
    note << "cycle on " << spec.k << " vertices";
  } else if (spec.kind == "chain_of_loops") {
    check_unused(spec, true, false, false, true, false);
    require(spec.g >= 1, "chain_of_loops needs g >= 1");
    for (int i = 0; i < spec.g; ++i) {
      std::string u = "u" + std::to_string(i), w = "w" + std::to_string(i);
      b.vertex(u);
      b.vertex(w);
      b.edge("t" + std::to_string(i), u, w, Rational(1, 4));
      b.edge("b" + std::to_string(i), u, w, Rational(3, 4));
      if (i > 0) {
        // Bridge from the previous loop, added after this loop's edges so
        // that lengths read loop by loop.
        b.edge("r" + std::to_string(i), "w" + std::to_string(i - 1), u, Rational(1));
      }
    }
    marked["u0"] = "u0";
    note << "chain of " << spec.g << " loops joined by bridges";
  } else if (spec.kind == "wedge") {
    check_unused(spec, false, false, false, false, true);
    require(spec.parts.size() >= 2, "wedge needs at least two parts");
    b.vertex("v0");
    for (std::size_t i = 0; i < spec.parts.size(); ++i) {
      parts.push_back(add_part(b, spec.parts[i], "p" + std::to_string(i) + ".", "v0"));
    }
    marked["v0"] = "v0";
    note << "wedge of " << spec.parts.size() << " parts at v0";
  } else if (spec.kind == "path_join") {
    check_unused(spec, false, false, true, true, true);
    require(spec.parts.size() == 2, "path_join needs exactly two parts");
    require(spec.m >= 1, "path_join needs m >= 1");
    b.vertex("v1");
    b.vertex("v2");
    parts.push_back(add_part(b, spec.parts[0], "a.", "v1"));
    parts.push_back(add_part(b, spec.parts[1], "b.", "v2"));
    for (int i = 1; i <= spec.m; ++i) b.edge("j" + std::to_string(i), "v1", "v2", Rational(1));
    marked["v1"] = "v1";
    marked["v2"] = "v2";
    note << "two parts joined by " << spec.m << " paths from v1 to v2";
  } else {
    throw Error(ErrorKind::InvalidSpec, "unknown fixture kind \"" + spec.kind + "\"");
  }
  b.finish();
  MetricGraph graph = MetricGraph::build(b.vertices, b.edges);
  if (spec.kind == "wedge" || spec.kind == "path_join") {
    int expected = spec.kind == "path_join" ? spec.m - 1 : 0;
    for (const auto& p : parts) expected += p.genus;
    if (graph.genus() != expected) throw Error(ErrorKind::InvalidSpec, "composite genus does not add up");
  }
  return Fixture{spec, std::move(graph), std::move(marked), std::move(parts), note.str()};
}

MetricGraph part_graph(const PartEmbedding& part) { return build_fixture(part.spec).graph; }

MetricDivisor embed_part_divisor(const MetricGraph& composite, const PartEmbedding& part,
                                 const MetricGraph& pg, const MetricDivisor& d) {
  MetricDivisor out;
  for (const auto& [p, c] : d.terms()) {
    if (p.on_vertex) {
      const std::string& id = pg.model().vertex_id(p.vertex);
      std::string mapped = id == part.part_attach ? part.attach : part.prefix + id;
      out.add(MetricPoint::at_vertex(composite.model().vertex_index(mapped)), c);
    } else {
      EdgeIndex e = composite.model().edge_index(part.prefix + pg.model().edge(p.edge).id);
      out.add(MetricPoint::on_edge(composite, e, p.offset), c);
    }
  }
  return out;
}

FixtureSpec parse_part_spec(const std::string& text) {
  FixtureSpec spec;
  auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  if (colon == std::string::npos) return spec;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "part parameter \"" + item + "\" lacks '='");
    std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    auto as_int = [&] {
      try {
        std::size_t pos = 0;
        int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "part parameter " + key + " is not an integer");
      }
    };
    if (key == "g") {
      spec.g = as_int();
    } else if (key == "k") {
      spec.k = as_int();
    } else if (key == "m") {
      spec.m = as_int();
    } else if (key == "lengths") {
      std::stringstream ls(value);
      std::string l;
      while (std::getline(ls, l, ';')) spec.lengths.push_back(parse_rational(l));
    } else {
      throw Error(ErrorKind::ParseError, "unknown part parameter \"" + key + "\"");
    }
  }
  return spec;
}

}  // namespace tropdeg
