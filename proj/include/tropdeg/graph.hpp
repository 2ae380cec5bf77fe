#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tropdeg {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

struct VertexSpec {
  std::string id;
  int genus = 0;
};

struct EdgeSpec {
  std::string id;
  std::string tail;
  std::string head;
};

struct Edge {
  std::string id;
  VertexIndex tail;
  VertexIndex head;

  VertexIndex other(VertexIndex v) const { return v == tail ? head : tail; }
};

/// A neighbour of a vertex together with the number of parallel edges to it.
struct Neighbor {
  VertexIndex vertex;
  int multiplicity;
};

/// Loopless connected multigraph with oriented edges and vertex genus
/// weights. Vertices and edges are addressed by dense indices; string ids are
/// kept for I/O. Immutable after construction.
class MultiGraph {
 public:
  /// Validates and builds. Throws LoopRejected, Disconnected, DuplicateId or
  /// UnknownVertex.
  static MultiGraph build(const std::vector<VertexSpec>& vertices,
                          const std::vector<EdgeSpec>& edges);

  std::size_t num_vertices() const { return ids_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const std::string& vertex_id(VertexIndex v) const { return ids_[v]; }
  int vertex_genus(VertexIndex v) const { return genera_[v]; }
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }

  std::optional<VertexIndex> find_vertex(std::string_view id) const;
  std::optional<EdgeIndex> find_edge(std::string_view id) const;
  /// Throws UnknownVertex.
  VertexIndex vertex_index(std::string_view id) const;
  /// Throws UnknownEdge.
  EdgeIndex edge_index(std::string_view id) const;

  int valence(VertexIndex v) const { return valence_[v]; }
  const std::vector<EdgeIndex>& incident_edges(VertexIndex v) const { return incident_[v]; }
  const std::vector<Neighbor>& neighbors(VertexIndex v) const { return neighbors_[v]; }
  int edges_between(VertexIndex u, VertexIndex v) const;

  /// +1 if e has tail v, -1 if e has head v.
  int sigma(EdgeIndex e, VertexIndex v) const;

  /// |E| - |V| + 1.
  int first_betti() const;
  /// Sum of vertex genera plus the first Betti number.
  int genus() const;

  /// Vertex indices sorted by id; used wherever a deterministic order matters.
  const std::vector<VertexIndex>& vertices_by_id() const { return by_id_; }
  /// Lexicographically least vertex id.
  VertexIndex least_vertex() const { return by_id_.front(); }

  std::vector<VertexSpec> vertex_specs() const;
  std::vector<EdgeSpec> edge_specs() const;

 private:
  std::vector<std::string> ids_;
  std::vector<int> genera_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, VertexIndex> vertex_lookup_;
  std::unordered_map<std::string, EdgeIndex> edge_lookup_;
  std::vector<int> valence_;
  std::vector<std::vector<EdgeIndex>> incident_;
  std::vector<std::vector<Neighbor>> neighbors_;
  std::vector<VertexIndex> by_id_;
};

/// Integer vertex weighting of a fixed graph, indexed by vertex index.
class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(std::size_t num_vertices) : coeffs_(num_vertices, 0) {}
  explicit Divisor(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {}

  static Divisor from_map(const MultiGraph& graph,
                          const std::vector<std::pair<std::string, std::int64_t>>& entries);

  std::size_t size() const { return coeffs_.size(); }
  std::int64_t operator[](VertexIndex v) const { return coeffs_[v]; }
  std::int64_t& operator[](VertexIndex v) { return coeffs_[v]; }
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }

  std::int64_t degree() const;
  bool is_effective() const;

  Divisor& operator+=(const Divisor& other);
  Divisor& operator-=(const Divisor& other);
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator-(Divisor a);

  friend bool operator==(const Divisor&, const Divisor&) = default;
  friend auto operator<=>(const Divisor&, const Divisor&) = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

/// Number of twists (firings) performed at each vertex. Because firing every
/// vertex once is the identity, vectors are compared in normal form, where
/// the minimum entry is zero.
class TwistVector {
 public:
  TwistVector() = default;
  explicit TwistVector(std::size_t num_vertices) : counts_(num_vertices, 0) {}
  explicit TwistVector(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {}

  std::size_t size() const { return counts_.size(); }
  std::int64_t operator[](VertexIndex v) const { return counts_[v]; }
  std::int64_t& operator[](VertexIndex v) { return counts_[v]; }
  const std::vector<std::int64_t>& counts() const { return counts_; }

  /// Shifts by a multiple of the all-ones vector so that the minimum is 0.
  TwistVector normalized() const;
  bool is_normal() const;
  bool is_zero() const;
  std::int64_t total() const;

  TwistVector& operator+=(const TwistVector& other);
  TwistVector& operator-=(const TwistVector& other);
  friend TwistVector operator+(TwistVector a, const TwistVector& b) { return a += b; }
  friend TwistVector operator-(TwistVector a, const TwistVector& b) { return a -= b; }

  friend bool operator==(const TwistVector&, const TwistVector&) = default;

 private:
  std::vector<std::int64_t> counts_;
};

}  // namespace tropdeg
