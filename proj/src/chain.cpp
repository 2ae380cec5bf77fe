#include "tropdeg/chain.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "tropdeg/chip_firing.hpp"
#include "tropdeg/error.hpp"
#include "tropdeg/rational.hpp"

namespace tropdeg {

namespace {

std::int64_t mod_int(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

// Number of t in [a, b] with t = r (mod n).
std::int64_t count_residue(std::int64_t a, std::int64_t b, std::int64_t r, std::int64_t n) {
  if (a > b) return 0;
  return floor_div(b - r, n) - floor_div(a - 1 - r, n);
}

}  // namespace

ChainStructure::ChainStructure(const MultiGraph& graph, std::vector<std::int64_t> lengths)
    : lengths_(std::move(lengths)) {
  if (lengths_.size() != graph.num_edges()) {
    throw Error(ErrorKind::InvalidChain, "chain structure must give one length per edge");
  }
  for (EdgeIndex e = 0; e < lengths_.size(); ++e) {
    if (lengths_[e] <= 0) {
      throw Error(ErrorKind::InvalidChain,
                  "n(" + graph.edge(e).id + ") = " + std::to_string(lengths_[e]) + " is not positive");
    }
  }
}

ChainStructure ChainStructure::trivial(const MultiGraph& graph) {
  return ChainStructure(graph, std::vector<std::int64_t>(graph.num_edges(), 1));
}

bool ChainStructure::is_trivial() const {
  return std::all_of(lengths_.begin(), lengths_.end(), [](std::int64_t n) { return n == 1; });
}

SubdividedGraph::SubdividedGraph(const MultiGraph& base, const ChainStructure& chain)
    : chain_(chain.lengths()), num_original_(base.num_vertices()) {
  if (chain.size() != base.num_edges()) {
    throw Error(ErrorKind::InvalidChain, "chain structure does not match the graph");
  }
  std::vector<VertexSpec> vertices = base.vertex_specs();
  std::vector<EdgeSpec> edges;
  origins_.assign(vertices.size(), VertexOrigin{});
  for (EdgeIndex e = 0; e < base.num_edges(); ++e) {
    const Edge& edge = base.edge(e);
    tails_.push_back(edge.tail);
    heads_.push_back(edge.head);
    first_new_.push_back(vertices.size());
    const std::int64_t n = chain[e];
    for (std::int64_t i = 1; i < n; ++i) {
      vertices.push_back({edge.id + "~" + std::to_string(i), 0});
      origins_.push_back(VertexOrigin{false, e, i});
    }
    std::string prev = base.vertex_id(edge.tail);
    for (std::int64_t i = 1; i <= n; ++i) {
      std::string next = i == n ? base.vertex_id(edge.head) : edge.id + "~" + std::to_string(i);
      edges.push_back({n == 1 ? edge.id : edge.id + "/" + std::to_string(i), prev, next});
      prev = next;
    }
  }
  graph_ = MultiGraph::build(vertices, edges);
}

VertexIndex SubdividedGraph::new_vertex(EdgeIndex e, std::int64_t position) const {
  if (position < 1 || position >= chain_[e]) {
    throw Error(ErrorKind::PreconditionFailed, "chain position out of range");
  }
  return first_new_[e] + static_cast<VertexIndex>(position - 1);
}

VertexIndex SubdividedGraph::chain_vertex(EdgeIndex e, std::int64_t step) const {
  if (step == 0) return tails_[e];
  if (step == chain_[e]) return heads_[e];
  return new_vertex(e, step);
}

std::int64_t AdmissibleMultidegree::degree() const {
  std::int64_t d = std::accumulate(w.begin(), w.end(), std::int64_t{0});
  for (std::int64_t m : mu) d += m != 0 ? 1 : 0;
  return d;
}

bool AdmissibleMultidegree::is_nonnegative() const {
  return std::all_of(w.begin(), w.end(), [](std::int64_t x) { return x >= 0; });
}

void validate(const MultiGraph& graph, const ChainStructure& chain, const AdmissibleMultidegree& w) {
  if (chain.size() != graph.num_edges()) {
    throw Error(ErrorKind::InvalidChain, "chain structure does not match the graph");
  }
  if (w.w.size() != graph.num_vertices() || w.mu.size() != graph.num_edges()) {
    throw Error(ErrorKind::PreconditionFailed, "multidegree does not belong to this graph");
  }
  for (EdgeIndex e = 0; e < w.mu.size(); ++e) {
    if (w.mu[e] < 0 || w.mu[e] >= chain[e]) {
      throw Error(ErrorKind::PreconditionFailed, "mu(" + graph.edge(e).id + ") outside [0, n(e)-1]");
    }
  }
}

AdmissibleMultidegree plain_multidegree(const MultiGraph& graph, std::vector<std::int64_t> w) {
  if (w.size() != graph.num_vertices()) {
    throw Error(ErrorKind::PreconditionFailed, "multidegree does not belong to this graph");
  }
  return AdmissibleMultidegree{std::move(w), std::vector<std::int64_t>(graph.num_edges(), 0)};
}

SubdividedGraph subdivide(const MultiGraph& graph, const ChainStructure& chain) {
  return SubdividedGraph(graph, chain);
}

Divisor induced_multidegree(const SubdividedGraph& sub, const AdmissibleMultidegree& w) {
  if (w.w.size() != sub.num_original() || w.mu.size() != sub.num_base_edges()) {
    throw Error(ErrorKind::PreconditionFailed, "multidegree does not belong to this graph");
  }
  Divisor d(sub.graph().num_vertices());
  for (VertexIndex v = 0; v < w.w.size(); ++v) d[v] = w.w[v];
  for (EdgeIndex e = 0; e < w.mu.size(); ++e) {
    if (w.mu[e] != 0) d[sub.new_vertex(e, w.mu[e])] = 1;
  }
  return d;
}

AdmissibleMultidegree twist_edges_times(const MultiGraph& graph, const ChainStructure& chain,
                                        const AdmissibleMultidegree& w, VertexIndex v,
                                        const std::vector<EdgeIndex>& edges, std::int64_t times) {
  validate(graph, chain, w);
  if (v >= graph.num_vertices()) throw Error(ErrorKind::UnknownVertex, "vertex index out of range");
  AdmissibleMultidegree out = w;
  if (times == 0) return out;
  for (EdgeIndex e : edges) {
    if (graph.edge(e).tail != v && graph.edge(e).head != v) {
      throw Error(ErrorKind::PreconditionFailed, "edge " + graph.edge(e).id + " is not incident to the vertex");
    }
    const std::int64_t n = chain[e];
    const std::int64_t s = graph.sigma(e, v);
    const std::int64_t mu0 = w.mu[e];
    // After t twists mu = mu0 + s t; it is zero exactly when t = r (mod n).
    const std::int64_t r = mod_int(-s * mu0, n);
    const VertexIndex other = graph.edge(e).other(v);
    if (times > 0) {
      out.w[v] -= count_residue(0, times - 1, r, n);
      out.w[other] += count_residue(1, times, r, n);
    } else {
      out.w[v] += count_residue(times, -1, r, n);
      out.w[other] -= count_residue(times + 1, 0, r, n);
    }
    out.mu[e] = mod_int(mu0 + s * times, n);
  }
  return out;
}

AdmissibleMultidegree twist_times(const MultiGraph& graph, const ChainStructure& chain,
                                  const AdmissibleMultidegree& w, VertexIndex v, std::int64_t times) {
  if (v >= graph.num_vertices()) throw Error(ErrorKind::UnknownVertex, "vertex index out of range");
  return twist_edges_times(graph, chain, w, v, graph.incident_edges(v), times);
}

AdmissibleMultidegree twist(const MultiGraph& graph, const ChainStructure& chain,
                            const AdmissibleMultidegree& w, VertexIndex v, int direction) {
  if (direction != 1 && direction != -1) {
    throw Error(ErrorKind::PreconditionFailed, "twist direction must be +1 or -1");
  }
  return twist_times(graph, chain, w, v, direction);
}

AdmissibleMultidegree apply_twists(const MultiGraph& graph, const ChainStructure& chain,
                                   const AdmissibleMultidegree& w, const TwistVector& twists) {
  if (twists.size() != graph.num_vertices()) {
    throw Error(ErrorKind::PreconditionFailed, "twist vector does not belong to this graph");
  }
  AdmissibleMultidegree out = w;
  for (VertexIndex v = 0; v < graph.num_vertices(); ++v) {
    if (twists[v] != 0) out = twist_times(graph, chain, out, v, twists[v]);
  }
  return out;
}

ConcentrationCheck is_concentrated(const MultiGraph& graph, const ChainStructure& chain,
                                   const AdmissibleMultidegree& w, VertexIndex v0) {
  validate(graph, chain, w);
  if (v0 >= graph.num_vertices()) throw Error(ErrorKind::UnknownVertex, "vertex index out of range");
  ConcentrationCheck check;
  check.ordering.push_back(v0);
  std::vector<bool> placed(graph.num_vertices(), false);
  placed[v0] = true;
  // Negative twists at placed vertices only lower degrees elsewhere, so once
  // a vertex is negative it stays negative and any choice can be extended.
  AdmissibleMultidegree current = twist_times(graph, chain, w, v0, -1);
  while (check.ordering.size() < graph.num_vertices()) {
    std::optional<VertexIndex> next;
    for (VertexIndex v : graph.vertices_by_id()) {
      if (!placed[v] && current.w[v] < 0) {
        next = v;
        break;
      }
    }
    if (!next) return check;
    placed[*next] = true;
    check.ordering.push_back(*next);
    current = twist_times(graph, chain, current, *next, -1);
  }
  check.concentrated = true;
  return check;
}

std::optional<AdmissibleMultidegree> admissible_from_divisor(const SubdividedGraph& sub,
                                                             const Divisor& divisor) {
  if (divisor.size() != sub.graph().num_vertices()) {
    throw Error(ErrorKind::PreconditionFailed, "divisor does not belong to the subdivided graph");
  }
  AdmissibleMultidegree out;
  out.w.assign(divisor.coeffs().begin(), divisor.coeffs().begin() + static_cast<std::ptrdiff_t>(sub.num_original()));
  out.mu.assign(sub.num_base_edges(), 0);
  for (EdgeIndex e = 0; e < sub.num_base_edges(); ++e) {
    for (std::int64_t i = 1; i < sub.chain_length(e); ++i) {
      std::int64_t c = divisor[sub.new_vertex(e, i)];
      if (c == 0) continue;
      if (c != 1 || out.mu[e] != 0) return std::nullopt;
      out.mu[e] = i;
    }
  }
  return out;
}

Concentration concentrate(const MultiGraph& graph, const ChainStructure& chain,
                          const AdmissibleMultidegree& w0, VertexIndex v0) {
  validate(graph, chain, w0);
  SubdividedGraph sub(graph, chain);
  Reduction red = reduce(sub.graph(), induced_multidegree(sub, w0), v0);
  auto w = admissible_from_divisor(sub, red.reduced);
  if (!w) throw Error(ErrorKind::PreconditionFailed, "reduced divisor on the subdivision is not admissible");
  TwistVector t(std::vector<std::int64_t>(red.twists.counts().begin(),
                                          red.twists.counts().begin() + static_cast<std::ptrdiff_t>(graph.num_vertices())));
  t = t.normalized();
  if (apply_twists(graph, chain, w0, t) != *w) {
    throw Error(ErrorKind::PreconditionFailed, "restricted twist vector does not reproduce the reduction");
  }
  return Concentration{std::move(*w), std::move(t)};
}

std::optional<TwistVector> twist_equivalent(const MultiGraph& graph, const ChainStructure& chain,
                                            const AdmissibleMultidegree& w,
                                            const AdmissibleMultidegree& w_prime) {
  validate(graph, chain, w);
  validate(graph, chain, w_prime);
  if (w.degree() != w_prime.degree()) return std::nullopt;
  SubdividedGraph sub(graph, chain);
  auto full = linear_equiv(sub.graph(), induced_multidegree(sub, w), induced_multidegree(sub, w_prime));
  if (!full) return std::nullopt;
  TwistVector t(std::vector<std::int64_t>(full->counts().begin(),
                                          full->counts().begin() + static_cast<std::ptrdiff_t>(graph.num_vertices())));
  t = t.normalized();
  if (apply_twists(graph, chain, w, t) != w_prime) {
    throw Error(ErrorKind::PreconditionFailed, "restricted twist vector does not reproduce the target");
  }
  return t;
}

}  // namespace tropdeg
