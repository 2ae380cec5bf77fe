#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tropdeg/graph.hpp"

namespace tropdeg {

/// Positive chain length n(e) per edge of the base graph.
class ChainStructure {
 public:
  /// Throws InvalidChain if sizes disagree or some n(e) <= 0.
  ChainStructure(const MultiGraph& graph, std::vector<std::int64_t> lengths);
  static ChainStructure trivial(const MultiGraph& graph);

  std::int64_t operator[](EdgeIndex e) const { return lengths_[e]; }
  std::size_t size() const { return lengths_.size(); }
  const std::vector<std::int64_t>& lengths() const { return lengths_; }
  bool is_trivial() const;

  friend bool operator==(const ChainStructure&, const ChainStructure&) = default;

 private:
  std::vector<std::int64_t> lengths_;
};

/// Where a vertex of the subdivided graph comes from.
struct VertexOrigin {
  bool original = true;
  EdgeIndex parent_edge = 0;  // only meaningful for new vertices
  std::int64_t position = 0;  // 1..n(e)-1 counted from the tail
};

/// The graph obtained by subdividing every edge e into n(e) edges. Original
/// vertices keep their indices; new vertices follow, edge by edge.
class SubdividedGraph {
 public:
  SubdividedGraph(const MultiGraph& base, const ChainStructure& chain);

  const MultiGraph& graph() const { return graph_; }
  const VertexOrigin& origin(VertexIndex v) const { return origins_[v]; }
  std::size_t num_original() const { return num_original_; }
  /// Index of the `position`-th new vertex over e (1-based, from the tail).
  VertexIndex new_vertex(EdgeIndex e, std::int64_t position) const;
  /// Vertex at distance `step` from the tail along e: 0 is the tail, n(e) the head.
  VertexIndex chain_vertex(EdgeIndex e, std::int64_t step) const;
  std::int64_t chain_length(EdgeIndex e) const { return chain_[e]; }
  std::size_t num_base_edges() const { return chain_.size(); }

 private:
  MultiGraph graph_;
  std::vector<VertexOrigin> origins_;
  std::vector<VertexIndex> first_new_;  // per base edge
  std::vector<std::int64_t> chain_;
  std::vector<VertexIndex> tails_;
  std::vector<VertexIndex> heads_;
  std::size_t num_original_;
};

/// Degree w on original vertices plus the position mu(e) in [0, n(e)-1] of
/// the single degree-one vertex on each chain (0 when the chain is empty).
struct AdmissibleMultidegree {
  std::vector<std::int64_t> w;
  std::vector<std::int64_t> mu;

  /// #{e : mu(e) != 0} + sum of w.
  std::int64_t degree() const;
  bool is_nonnegative() const;

  friend bool operator==(const AdmissibleMultidegree&, const AdmissibleMultidegree&) = default;
  friend auto operator<=>(const AdmissibleMultidegree&, const AdmissibleMultidegree&) = default;
};

/// Checks sizes and mu ranges against (graph, chain); throws PreconditionFailed.
void validate(const MultiGraph& graph, const ChainStructure& chain, const AdmissibleMultidegree& w);

/// Multidegree with the given w and all chains empty.
AdmissibleMultidegree plain_multidegree(const MultiGraph& graph, std::vector<std::int64_t> w);

SubdividedGraph subdivide(const MultiGraph& graph, const ChainStructure& chain);

/// The divisor on the subdivided graph: w on originals and a single 1 on the
/// mu(e)-th new vertex of each chain with mu(e) != 0.
Divisor induced_multidegree(const SubdividedGraph& sub, const AdmissibleMultidegree& w);

/// Twist at v; direction +1 is the twist, -1 its inverse.
AdmissibleMultidegree twist(const MultiGraph& graph, const ChainStructure& chain,
                            const AdmissibleMultidegree& w, VertexIndex v, int direction = 1);

/// Twists at v `times` times (negative means inverse twists), in O(valence).
AdmissibleMultidegree twist_times(const MultiGraph& graph, const ChainStructure& chain,
                                  const AdmissibleMultidegree& w, VertexIndex v, std::int64_t times);

/// The effect of `times` twists at v on the listed incident edges alone,
/// as if the far endpoints were twisted along with v everywhere else.
AdmissibleMultidegree twist_edges_times(const MultiGraph& graph, const ChainStructure& chain,
                                        const AdmissibleMultidegree& w, VertexIndex v,
                                        const std::vector<EdgeIndex>& edges, std::int64_t times);

/// Twists each vertex v `twists[v]` times.
AdmissibleMultidegree apply_twists(const MultiGraph& graph, const ChainStructure& chain,
                                   const AdmissibleMultidegree& w, const TwistVector& twists);

struct ConcentrationCheck {
  bool concentrated = false;
  /// The full ordering when concentrated, otherwise the prefix that could not
  /// be extended.
  std::vector<VertexIndex> ordering;
};

/// Greedy search for an ordering v0, v1, ... in which each vertex is negative
/// after the inverse twists at its predecessors.
ConcentrationCheck is_concentrated(const MultiGraph& graph, const ChainStructure& chain,
                                   const AdmissibleMultidegree& w, VertexIndex v0);

/// Pulls a divisor on the subdivided graph back to an admissible multidegree;
/// nullopt when some chain carries a coefficient outside {0,1} or two ones.
std::optional<AdmissibleMultidegree> admissible_from_divisor(const SubdividedGraph& sub,
                                                             const Divisor& divisor);

struct Concentration {
  AdmissibleMultidegree multidegree;
  /// Twists taking the input to `multidegree`.
  TwistVector twists;
};

/// The unique twist of w0 that is concentrated at v0 and nonnegative away
/// from v0, obtained from the v0-reduced divisor on the subdivided graph.
Concentration concentrate(const MultiGraph& graph, const ChainStructure& chain,
                          const AdmissibleMultidegree& w0, VertexIndex v0);

/// Normal-form twist vector from w to w_prime, if the two are related by twists.
std::optional<TwistVector> twist_equivalent(const MultiGraph& graph, const ChainStructure& chain,
                                            const AdmissibleMultidegree& w,
                                            const AdmissibleMultidegree& w_prime);

}  // namespace tropdeg
