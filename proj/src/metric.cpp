#include "tropdeg/metric.hpp"

#include <algorithm>
#include <numeric>

#include "tropdeg/error.hpp"

namespace tropdeg {

namespace {

std::vector<std::int64_t> lattice_lengths(const MetricGraph& graph, std::int64_t scale) {
  std::vector<std::int64_t> out;
  for (const Rational& len : graph.lengths()) {
    Rational steps = len * scale;
    if (!is_integer(steps)) {
      throw Error(ErrorKind::PreconditionFailed, "scale " + std::to_string(scale) + " does not clear length " +
                                                     format_rational(len));
    }
    out.push_back(steps.numerator());
  }
  return out;
}

Rational evaluate(const std::vector<std::pair<Rational, Rational>>& pts, const Rational& x) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (x <= pts[i].first) {
      const auto& [x0, y0] = pts[i - 1];
      const auto& [x1, y1] = pts[i];
      return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }
  }
  return pts.back().second;
}

// Drops breakpoints where the slope does not change.
std::vector<std::pair<Rational, Rational>> simplify(std::vector<std::pair<Rational, Rational>> pts) {
  if (pts.size() <= 2) return pts;
  std::vector<std::pair<Rational, Rational>> out{pts.front()};
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const auto& a = out.back();
    const auto& b = pts[i];
    const auto& c = pts[i + 1];
    Rational s1 = (b.second - a.second) / (b.first - a.first);
    Rational s2 = (c.second - b.second) / (c.first - b.first);
    if (s1 != s2) out.push_back(b);
  }
  out.push_back(pts.back());
  return out;
}

}  // namespace

MetricGraph::MetricGraph(MultiGraph model, std::vector<Rational> lengths)
    : model_(std::move(model)), lengths_(std::move(lengths)) {
  if (lengths_.size() != model_.num_edges()) {
    throw Error(ErrorKind::InvalidSpec, "metric graph needs one length per edge");
  }
  for (EdgeIndex e = 0; e < lengths_.size(); ++e) {
    if (lengths_[e] <= 0) {
      throw Error(ErrorKind::InvalidSpec, "length of " + model_.edge(e).id + " is not positive");
    }
  }
}

MetricGraph MetricGraph::build(const std::vector<VertexSpec>& vertices,
                               const std::vector<MetricEdgeSpec>& edges) {
  std::vector<VertexSpec> vs = vertices;
  std::vector<EdgeSpec> es;
  std::vector<Rational> lengths;
  std::vector<std::string> loops;
  for (const auto& e : edges) {
    if (e.tail == e.head) {
      std::string mid = e.id + ".mid";
      vs.push_back({mid, 0});
      es.push_back({e.id + ".1", e.tail, mid});
      es.push_back({e.id + ".2", mid, e.head});
      lengths.push_back(e.length / 2);
      lengths.push_back(e.length / 2);
      loops.push_back(e.id);
    } else {
      es.push_back({e.id, e.tail, e.head});
      lengths.push_back(e.length);
    }
  }
  MetricGraph g(MultiGraph::build(vs, es), lengths);
  for (const auto& id : loops) {
    if (g.model_.find_edge(id)) throw Error(ErrorKind::DuplicateId, "edge id \"" + id + "\" repeated");
    g.split_loops_[id] = {g.model_.edge_index(id + ".1"), g.model_.edge_index(id + ".2")};
  }
  return g;
}

MetricGraph MetricGraph::from_chain(const MultiGraph& graph, const ChainStructure& chain) {
  std::vector<Rational> lengths;
  for (std::int64_t n : chain.lengths()) lengths.emplace_back(n);
  return MetricGraph(graph, lengths);
}

std::pair<EdgeIndex, Rational> MetricGraph::resolve(const std::string& edge_id, const Rational& offset) const {
  auto it = split_loops_.find(edge_id);
  if (it == split_loops_.end()) return {model_.edge_index(edge_id), offset};
  const Rational half = lengths_[it->second.first];
  if (offset <= half) return {it->second.first, offset};
  return {it->second.second, offset - half};
}

std::vector<MetricEdgeSpec> MetricGraph::edge_specs() const {
  std::vector<MetricEdgeSpec> out;
  for (EdgeIndex e = 0; e < model_.num_edges(); ++e) {
    const Edge& edge = model_.edge(e);
    out.push_back({edge.id, model_.vertex_id(edge.tail), model_.vertex_id(edge.head), lengths_[e]});
  }
  return out;
}

MetricPoint MetricPoint::on_edge(const MetricGraph& graph, EdgeIndex e, const Rational& offset) {
  if (e >= graph.model().num_edges()) throw Error(ErrorKind::UnknownEdge, "edge index out of range");
  if (offset < 0 || offset > graph.length(e)) {
    throw Error(ErrorKind::PreconditionFailed,
                "offset " + format_rational(offset) + " outside edge " + graph.model().edge(e).id);
  }
  if (offset == 0) return at_vertex(graph.model().edge(e).tail);
  if (offset == graph.length(e)) return at_vertex(graph.model().edge(e).head);
  return MetricPoint{false, 0, e, offset};
}

Rational MetricPoint::offset_on(const MetricGraph& graph, EdgeIndex e) const {
  const Edge& edge = graph.model().edge(e);
  if (!on_vertex) {
    if (this->edge == e) return offset;
  } else {
    if (vertex == edge.tail) return Rational(0);
    if (vertex == edge.head) return graph.length(e);
  }
  throw Error(ErrorKind::PreconditionFailed, "point is not on edge " + edge.id);
}

bool operator==(const MetricPoint& a, const MetricPoint& b) {
  if (a.on_vertex != b.on_vertex) return false;
  if (a.on_vertex) return a.vertex == b.vertex;
  return a.edge == b.edge && a.offset == b.offset;
}

bool operator<(const MetricPoint& a, const MetricPoint& b) {
  if (a.on_vertex != b.on_vertex) return a.on_vertex;
  if (a.on_vertex) return a.vertex < b.vertex;
  if (a.edge != b.edge) return a.edge < b.edge;
  return a.offset < b.offset;
}

std::string format_point(const MetricGraph& graph, const MetricPoint& p) {
  if (p.on_vertex) return graph.model().vertex_id(p.vertex);
  return graph.model().edge(p.edge).id + ":" + format_rational(p.offset);
}

void MetricDivisor::add(const MetricPoint& p, std::int64_t coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(p, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

std::int64_t MetricDivisor::operator[](const MetricPoint& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? 0 : it->second;
}

std::int64_t MetricDivisor::degree() const {
  std::int64_t d = 0;
  for (const auto& [p, c] : terms_) d += c;
  return d;
}

bool MetricDivisor::is_effective() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second >= 0; });
}

MetricDivisor& MetricDivisor::operator+=(const MetricDivisor& other) {
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

MetricDivisor& MetricDivisor::operator-=(const MetricDivisor& other) {
  for (const auto& [p, c] : other.terms_) add(p, -c);
  return *this;
}

std::string format_divisor(const MetricGraph& graph, const MetricDivisor& d) {
  if (d.empty()) return "0";
  std::string out;
  for (const auto& [p, c] : d.terms()) {
    if (!out.empty()) out += c < 0 ? "-" : "+";
    else if (c < 0) out += "-";
    out += std::to_string(c < 0 ? -c : c) + "@" + format_point(graph, p);
  }
  return out;
}

PLFunction::PLFunction(std::vector<Rational> vertex_values,
                       std::vector<std::vector<std::pair<Rational, Rational>>> edge_breakpoints)
    : vertex_values_(std::move(vertex_values)), edges_(std::move(edge_breakpoints)) {}

PLFunction PLFunction::constant(const MetricGraph& graph, const Rational& value) {
  return linear(graph, std::vector<Rational>(graph.model().num_vertices(), value));
}

PLFunction PLFunction::linear(const MetricGraph& graph, const std::vector<Rational>& vertex_values) {
  std::vector<std::vector<std::pair<Rational, Rational>>> edges;
  for (EdgeIndex e = 0; e < graph.model().num_edges(); ++e) {
    const Edge& edge = graph.model().edge(e);
    edges.push_back({{Rational(0), vertex_values[edge.tail]}, {graph.length(e), vertex_values[edge.head]}});
  }
  return PLFunction(vertex_values, std::move(edges));
}

void PLFunction::validate(const MetricGraph& graph) const {
  const MultiGraph& g = graph.model();
  if (vertex_values_.size() != g.num_vertices() || edges_.size() != g.num_edges()) {
    throw Error(ErrorKind::PreconditionFailed, "function does not belong to this metric graph");
  }
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const auto& pts = edges_[e];
    const Edge& edge = g.edge(e);
    if (pts.size() < 2 || pts.front().first != 0 || pts.back().first != graph.length(e)) {
      throw Error(ErrorKind::PreconditionFailed, "breakpoints on " + edge.id + " must span the edge");
    }
    if (pts.front().second != vertex_values_[edge.tail] || pts.back().second != vertex_values_[edge.head]) {
      throw Error(ErrorKind::PreconditionFailed, "function is discontinuous at an end of " + edge.id);
    }
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (pts[i].first <= pts[i - 1].first) {
        throw Error(ErrorKind::PreconditionFailed, "breakpoints on " + edge.id + " are not increasing");
      }
      Rational slope = (pts[i].second - pts[i - 1].second) / (pts[i].first - pts[i - 1].first);
      if (!is_integer(slope)) {
        throw Error(ErrorKind::InvalidSlope, "slope " + format_rational(slope) + " on " + edge.id);
      }
    }
  }
}

Rational PLFunction::value_at(const MetricGraph& graph, const MetricPoint& p) const {
  (void)graph;
  if (p.on_vertex) return vertex_values_[p.vertex];
  return evaluate(edges_[p.edge], p.offset);
}

Rational PLFunction::first_slope(EdgeIndex e) const {
  const auto& pts = edges_[e];
  return (pts[1].second - pts[0].second) / (pts[1].first - pts[0].first);
}

bool PLFunction::is_constant() const {
  for (const auto& pts : edges_) {
    for (const auto& [x, y] : pts) {
      if (y != pts.front().second) return false;
    }
  }
  for (const auto& v : vertex_values_) {
    if (v != vertex_values_.front()) return false;
  }
  return true;
}

PLFunction PLFunction::operator+(const PLFunction& other) const {
  std::vector<Rational> vv(vertex_values_.size());
  for (std::size_t i = 0; i < vv.size(); ++i) vv[i] = vertex_values_[i] + other.vertex_values_[i];
  std::vector<std::vector<std::pair<Rational, Rational>>> es;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    std::vector<Rational> xs;
    for (const auto& [x, y] : edges_[e]) xs.push_back(x);
    for (const auto& [x, y] : other.edges_[e]) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<std::pair<Rational, Rational>> pts;
    for (const Rational& x : xs) pts.emplace_back(x, evaluate(edges_[e], x) + evaluate(other.edges_[e], x));
    es.push_back(simplify(std::move(pts)));
  }
  return PLFunction(std::move(vv), std::move(es));
}

PLFunction PLFunction::shifted(const Rational& delta) const {
  PLFunction out = *this;
  for (auto& v : out.vertex_values_) v += delta;
  for (auto& pts : out.edges_) {
    for (auto& [x, y] : pts) y += delta;
  }
  return out;
}

PLFunction PLFunction::operator-(const PLFunction& other) const {
  PLFunction neg = other;
  for (auto& v : neg.vertex_values_) v = -v;
  for (auto& pts : neg.edges_) {
    for (auto& [x, y] : pts) y = -y;
  }
  return *this + neg;
}

MetricDivisor div_pl(const MetricGraph& graph, const PLFunction& f) {
  f.validate(graph);
  const MultiGraph& g = graph.model();
  MetricDivisor out;
  std::vector<Rational> at_vertex(g.num_vertices(), Rational(0));
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const auto& pts = f.breakpoints(e);
    std::vector<Rational> slopes;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      slopes.push_back((pts[i].second - pts[i - 1].second) / (pts[i].first - pts[i - 1].first));
    }
    at_vertex[g.edge(e).tail] += slopes.front();
    at_vertex[g.edge(e).head] -= slopes.back();
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
      Rational c = slopes[i] - slopes[i - 1];
      out.add(MetricPoint::on_edge(graph, e, pts[i].first), c.numerator());
    }
  }
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) out.add(MetricPoint::at_vertex(v), at_vertex[v].numerator());
  return out;
}

Lattice::Lattice(const MetricGraph& graph, std::int64_t scale)
    : metric_(&graph),
      scale_(scale),
      sub_(graph.model(), ChainStructure(graph.model(), lattice_lengths(graph, scale))) {}

std::optional<VertexIndex> Lattice::find(const MetricPoint& p) const {
  if (p.on_vertex) return p.vertex;
  Rational step = p.offset * scale_;
  if (!is_integer(step)) return std::nullopt;
  return sub_.new_vertex(p.edge, step.numerator());
}

VertexIndex Lattice::vertex_of(const MetricPoint& p) const {
  if (auto v = find(p)) return *v;
  throw Error(ErrorKind::PreconditionFailed,
              "point " + format_point(*metric_, p) + " is not on the 1/" + std::to_string(scale_) + " lattice");
}

MetricPoint Lattice::point_of(VertexIndex v) const {
  const VertexOrigin& o = sub_.origin(v);
  if (o.original) return MetricPoint::at_vertex(v);
  return MetricPoint::on_edge(*metric_, o.parent_edge, Rational(o.position, scale_));
}

Divisor Lattice::to_lattice(const MetricDivisor& d) const {
  Divisor out(graph().num_vertices());
  for (const auto& [p, c] : d.terms()) out[vertex_of(p)] += c;
  return out;
}

MetricDivisor Lattice::from_lattice(const Divisor& d) const {
  MetricDivisor out;
  for (VertexIndex v = 0; v < d.size(); ++v) {
    if (d[v] != 0) out.add(point_of(v), d[v]);
  }
  return out;
}

PLFunction Lattice::function_from_firings(const TwistVector& t) const {
  const MultiGraph& g = metric_->model();
  std::vector<Rational> vv;
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) vv.emplace_back(t[v], scale_);
  std::vector<std::vector<std::pair<Rational, Rational>>> es;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    std::vector<std::pair<Rational, Rational>> pts;
    for (std::int64_t i = 0; i <= sub_.chain_length(e); ++i) {
      pts.emplace_back(Rational(i, scale_), Rational(t[sub_.chain_vertex(e, i)], scale_));
    }
    es.push_back(simplify(std::move(pts)));
  }
  return PLFunction(std::move(vv), std::move(es));
}

std::int64_t common_denominator(const MetricGraph& graph, const std::vector<MetricDivisor>& divisors,
                                const std::vector<MetricPoint>& points) {
  std::int64_t n = 1;
  for (const Rational& len : graph.lengths()) n = lcm(n, len.denominator());
  for (const auto& d : divisors) {
    for (const auto& [p, c] : d.terms()) {
      if (!p.on_vertex) n = lcm(n, p.offset.denominator());
    }
  }
  for (const auto& p : points) {
    if (!p.on_vertex) n = lcm(n, p.offset.denominator());
  }
  return n;
}

MetricReduction mg_reduce(const MetricGraph& graph, const MetricDivisor& d, const MetricPoint& q) {
  Lattice lattice(graph, common_denominator(graph, {d}, {q}));
  VertexIndex qv = lattice.vertex_of(q);
  Reduction r = reduce(lattice.graph(), lattice.to_lattice(d), qv);
  PLFunction f = lattice.function_from_firings(r.twists);
  f = f.shifted(-f.value_at(graph, q));
  MetricDivisor reduced = lattice.from_lattice(r.reduced);
  if (d + div_pl(graph, f) != reduced) {
    throw Error(ErrorKind::PreconditionFailed, "reduction witness does not reproduce the reduced divisor");
  }
  return MetricReduction{std::move(reduced), std::move(f)};
}

namespace {

std::int64_t rank_scale(const MetricGraph& graph, const MetricDivisor& d, const MetricRankOptions& options) {
  std::int64_t n = common_denominator(graph, {d});
  std::int64_t k = std::max<std::int64_t>(1, (options.min_scale + n - 1) / n);
  return n * k;
}

}  // namespace

int mg_rank(const MetricGraph& graph, const MetricDivisor& d, const MetricRankOptions& options) {
  std::int64_t n = rank_scale(graph, d, options);
  Lattice lattice(graph, n);
  VertexIndex q = graph.model().least_vertex();
  int r = rank_finite(lattice.graph(), lattice.to_lattice(d), q);
  if (options.refinement_check) {
    Lattice fine(graph, 2 * n);
    int r2 = rank_finite(fine.graph(), fine.to_lattice(d), q);
    if (r2 != r) {
      throw Error(ErrorKind::PreconditionFailed, "rank changed under refinement: " + std::to_string(r) + " at N=" +
                                                     std::to_string(n) + ", " + std::to_string(r2) + " at 2N");
    }
  }
  return r;
}

bool mg_rank_at_least(const MetricGraph& graph, const MetricDivisor& d, int k, const MetricRankOptions& options) {
  std::int64_t n = rank_scale(graph, d, options);
  Lattice lattice(graph, n);
  VertexIndex q = graph.model().least_vertex();
  bool result = rank_at_least(lattice.graph(), lattice.to_lattice(d), k, q);
  if (options.refinement_check) {
    Lattice fine(graph, 2 * n);
    if (rank_at_least(fine.graph(), fine.to_lattice(d), k, q) != result) {
      throw Error(ErrorKind::PreconditionFailed, "rank bound changed under refinement");
    }
  }
  return result;
}

std::optional<PLFunction> mg_linear_equiv(const MetricGraph& graph, const MetricDivisor& d,
                                          const MetricDivisor& d_prime) {
  if (d.degree() != d_prime.degree()) return std::nullopt;
  Lattice lattice(graph, common_denominator(graph, {d, d_prime}));
  VertexIndex q = graph.model().least_vertex();
  Reduction a = reduce(lattice.graph(), lattice.to_lattice(d), q);
  Reduction b = reduce(lattice.graph(), lattice.to_lattice(d_prime), q);
  if (a.reduced != b.reduced) return std::nullopt;
  PLFunction f = lattice.function_from_firings((a.twists - b.twists).normalized());
  return f.shifted(-f.vertex_values()[q]);
}

MetricDivisor metric_canonical(const MetricGraph& graph) {
  MetricDivisor k;
  const MultiGraph& g = graph.model();
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    k.add(MetricPoint::at_vertex(v), g.valence(v) - 2 + 2 * g.vertex_genus(v));
  }
  return k;
}

}  // namespace tropdeg
