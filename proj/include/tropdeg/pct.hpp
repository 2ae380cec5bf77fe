#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropdeg/chain.hpp"
#include "tropdeg/twist_graph.hpp"

namespace tropdeg {

/// An edge of bar Gamma, the simple graph underlying a multigraph; u < v by
/// index.
struct BarEdge {
  VertexIndex u;
  VertexIndex v;
  std::vector<EdgeIndex> parallel;  // edges of the multigraph over this edge

  VertexIndex other(VertexIndex x) const { return x == u ? v : u; }
};

struct MultitreeData {
  bool multitree = false;
  std::vector<BarEdge> bar_edges;
  /// A cycle of bar Gamma (vertex sequence) when it is not a tree.
  std::vector<VertexIndex> cycle;

  /// Index of the bar edge joining a and b. Throws UnknownEdge.
  std::size_t bar_edge(VertexIndex a, VertexIndex b) const;
};

MultitreeData is_multitree(const MultiGraph& graph);

/// A bar edge together with the endpoint whose side is twisted.
struct EdgeSide {
  std::size_t edge;
  VertexIndex vertex;
  friend auto operator<=>(const EdgeSide&, const EdgeSide&) = default;
};

/// Vertices on the side of `vertex` once the bar edge is removed.
std::vector<bool> side_set(const MultiGraph& graph, const MultitreeData& tree, const EdgeSide& side);

/// Twists every vertex of the side at once, computed from the parallel edges
/// alone: mu += sigma, the side endpoint loses a unit per edge leaving mu = 0,
/// the far endpoint gains one per edge arriving at 0. `times` may be negative.
/// Throws NotMultitree.
AdmissibleMultidegree twist_edge_side(const MultiGraph& graph, const ChainStructure& chain,
                                      const MultitreeData& tree, const AdmissibleMultidegree& w,
                                      const EdgeSide& side, std::int64_t times = 1);

struct PctFamily {
  MultitreeData tree;
  std::vector<AdmissibleMultidegree> family;  // w_v
  /// b[(e, v)] = number of twists at (e, v) taking w_v to w_{v'}.
  std::map<EdgeSide, std::int64_t> b;
  /// Restrictions of w_v to every connected subtree through v stay concentrated.
  bool restriction_certificate = false;
  std::size_t subtrees_checked = 0;
};

/// Throws NotMultitree and, if the twist from w_v to w_v' is not a multiple of
/// an edge-side twist, ConditionIIViolated.
PctFamily pct_family(const MultiGraph& graph, const ChainStructure& chain, const AdmissibleMultidegree& w0);

struct DivisorSequence {
  EdgeSide side;
  std::int64_t b = 0;
  std::vector<NodeDivisor> divisors;  // D_0 .. D_{b+1}
  std::vector<std::int64_t> degrees;
  std::vector<bool> critical;         // D_{i+1} != D_i, for i = 0..b
  bool exceeds_degree = false;        // deg D_{b+1} > d
};

/// D_i = D_{w_i, v} with w_i the i-fold twist of w_v at (e, v).
std::map<EdgeSide, DivisorSequence> divisor_sequences(const MultiGraph& graph, const ChainStructure& chain,
                                                      const AdmissibleMultidegree& w0, const PctFamily& family);

/// Value deg D_i repeated dims[i] - dims[i+1] times over critical i. dims has
/// one entry per divisor D_0..D_{b+1}. Throws InvalidFiltration.
std::vector<std::int64_t> multivanishing_sequence(const std::vector<std::int64_t>& degrees,
                                                  const std::vector<bool>& critical,
                                                  const std::vector<std::int64_t>& dims);

struct InequalityCheck {
  bool holds = true;
  std::optional<std::size_t> failing_l;
  /// 0 when checked from the (e, v) side, 1 from the (e, v') side.
  int direction = 0;
};

/// Condition (I) for one bar edge: for every l with a_l = deg D_j, j
/// critical, a'_{r-l} >= deg D'_{b-j}; and the same with the roles swapped.
/// Throws InconsistentProfile if some a_l is not a critical degree.
InequalityCheck check_inequality_I(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& a_prime,
                                   const DivisorSequence& seq, const DivisorSequence& seq_prime, std::int64_t b);

using Profiles = std::map<EdgeSide, std::vector<std::int64_t>>;

struct PctCertificates {
  bool t_counts = false;     // edge-side counts from each w_v to w equal t
  bool codim_sum = false;    // sum of r over the sides away from v equals r - r_v
  bool in_bar_g = false;
  bool root_independent = false;
};

struct PctWitness {
  std::map<EdgeSide, std::int64_t> t;
  std::map<EdgeSide, std::int64_t> r_side;
  AdmissibleMultidegree w;
  PctCertificates certificates;
};

/// Builds the multidegree whose twists to each w_v realise the prescribed
/// vanishing, and certifies it. Throws ProfileViolatesI, InconsistentProfile
/// and PreconditionFailed.
PctWitness pct_witness(const MultiGraph& graph, const ChainStructure& chain, const AdmissibleMultidegree& w0,
                       const std::vector<std::int64_t>& r_v, const Profiles& profiles);

}  // namespace tropdeg
