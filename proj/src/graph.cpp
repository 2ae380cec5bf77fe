#include "tropdeg/graph.hpp"

#include <algorithm>
#include <numeric>

#include "tropdeg/error.hpp"

namespace tropdeg {

MultiGraph MultiGraph::build(const std::vector<VertexSpec>& vertices,
                             const std::vector<EdgeSpec>& edges) {
  if (vertices.empty()) throw Error(ErrorKind::Disconnected, "graph has no vertices");
  MultiGraph g;
  for (const auto& spec : vertices) {
    if (spec.genus < 0) throw Error(ErrorKind::InvalidSpec, "negative genus at vertex " + spec.id);
    if (!g.vertex_lookup_.emplace(spec.id, g.ids_.size()).second) {
      throw Error(ErrorKind::DuplicateId, "vertex id \"" + spec.id + "\" repeated");
    }
    g.ids_.push_back(spec.id);
    g.genera_.push_back(spec.genus);
  }
  for (const auto& spec : edges) {
    if (g.vertex_lookup_.count(spec.id) != 0 || !g.edge_lookup_.emplace(spec.id, g.edges_.size()).second) {
      throw Error(ErrorKind::DuplicateId, "edge id \"" + spec.id + "\" repeated");
    }
    VertexIndex tail = g.vertex_index(spec.tail);
    VertexIndex head = g.vertex_index(spec.head);
    if (tail == head) throw Error(ErrorKind::LoopRejected, "edge \"" + spec.id + "\" is a loop at " + spec.tail);
    g.edges_.push_back(Edge{spec.id, tail, head});
  }

  const std::size_t n = g.ids_.size();
  g.valence_.assign(n, 0);
  g.incident_.assign(n, {});
  g.neighbors_.assign(n, {});
  for (EdgeIndex e = 0; e < g.edges_.size(); ++e) {
    const Edge& edge = g.edges_[e];
    ++g.valence_[edge.tail];
    ++g.valence_[edge.head];
    g.incident_[edge.tail].push_back(e);
    g.incident_[edge.head].push_back(e);
    for (auto [from, to] : {std::pair{edge.tail, edge.head}, std::pair{edge.head, edge.tail}}) {
      auto& list = g.neighbors_[from];
      auto it = std::find_if(list.begin(), list.end(), [to = to](const Neighbor& nb) { return nb.vertex == to; });
      if (it == list.end()) {
        list.push_back(Neighbor{to, 1});
      } else {
        ++it->multiplicity;
      }
    }
  }
  for (auto& list : g.neighbors_) {
    std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }

  std::vector<bool> seen(n, false);
  std::vector<VertexIndex> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    VertexIndex v = stack.back();
    stack.pop_back();
    for (const Neighbor& nb : g.neighbors_[v]) {
      if (!seen[nb.vertex]) {
        seen[nb.vertex] = true;
        ++reached;
        stack.push_back(nb.vertex);
      }
    }
  }
  if (reached != n) throw Error(ErrorKind::Disconnected, "graph is not connected");

  g.by_id_.resize(n);
  std::iota(g.by_id_.begin(), g.by_id_.end(), VertexIndex{0});
  std::sort(g.by_id_.begin(), g.by_id_.end(), [&](VertexIndex a, VertexIndex b) { return g.ids_[a] < g.ids_[b]; });
  return g;
}

std::optional<VertexIndex> MultiGraph::find_vertex(std::string_view id) const {
  auto it = vertex_lookup_.find(std::string(id));
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeIndex> MultiGraph::find_edge(std::string_view id) const {
  auto it = edge_lookup_.find(std::string(id));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

VertexIndex MultiGraph::vertex_index(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw Error(ErrorKind::UnknownVertex, "no vertex \"" + std::string(id) + "\"");
}

EdgeIndex MultiGraph::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw Error(ErrorKind::UnknownEdge, "no edge \"" + std::string(id) + "\"");
}

int MultiGraph::edges_between(VertexIndex u, VertexIndex v) const {
  for (const Neighbor& nb : neighbors_[u]) {
    if (nb.vertex == v) return nb.multiplicity;
  }
  return 0;
}

int MultiGraph::sigma(EdgeIndex e, VertexIndex v) const {
  const Edge& edge = edges_[e];
  if (edge.tail == v) return 1;
  if (edge.head == v) return -1;
  throw Error(ErrorKind::PreconditionFailed, "vertex " + ids_[v] + " is not on edge " + edge.id);
}

int MultiGraph::first_betti() const {
  return static_cast<int>(edges_.size()) - static_cast<int>(ids_.size()) + 1;
}

int MultiGraph::genus() const {
  return std::accumulate(genera_.begin(), genera_.end(), 0) + first_betti();
}

std::vector<VertexSpec> MultiGraph::vertex_specs() const {
  std::vector<VertexSpec> out;
  for (VertexIndex v = 0; v < ids_.size(); ++v) out.push_back({ids_[v], genera_[v]});
  return out;
}

std::vector<EdgeSpec> MultiGraph::edge_specs() const {
  std::vector<EdgeSpec> out;
  for (const Edge& e : edges_) out.push_back({e.id, ids_[e.tail], ids_[e.head]});
  return out;
}

Divisor Divisor::from_map(const MultiGraph& graph,
                          const std::vector<std::pair<std::string, std::int64_t>>& entries) {
  Divisor d(graph.num_vertices());
  for (const auto& [id, value] : entries) d[graph.vertex_index(id)] += value;
  return d;
}

std::int64_t Divisor::degree() const {
  return std::accumulate(coeffs_.begin(), coeffs_.end(), std::int64_t{0});
}

bool Divisor::is_effective() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c >= 0; });
}

Divisor& Divisor::operator+=(const Divisor& other) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Divisor& Divisor::operator-=(const Divisor& other) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Divisor operator-(Divisor a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

TwistVector TwistVector::normalized() const {
  if (counts_.empty()) return *this;
  std::int64_t low = *std::min_element(counts_.begin(), counts_.end());
  TwistVector out = *this;
  for (auto& c : out.counts_) c -= low;
  return out;
}

bool TwistVector::is_normal() const {
  return counts_.empty() || *std::min_element(counts_.begin(), counts_.end()) == 0;
}

bool TwistVector::is_zero() const {
  return std::all_of(counts_.begin(), counts_.end(), [](std::int64_t c) { return c == 0; });
}

std::int64_t TwistVector::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

TwistVector& TwistVector::operator+=(const TwistVector& other) {
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  return *this;
}

TwistVector& TwistVector::operator-=(const TwistVector& other) {
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] -= other.counts_[i];
  return *this;
}

}  // namespace tropdeg
