#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tropdeg/chain.hpp"
#include "tropdeg/metric.hpp"

namespace tropdeg {

/// Integer combination of node points P_e on the component of one vertex v;
/// each key is an edge of the graph incident to v.
struct NodeDivisor {
  VertexIndex vertex = 0;
  std::map<EdgeIndex, std::int64_t> coeffs;

  void add(EdgeIndex e, std::int64_t c);
  std::int64_t degree() const;
  bool is_effective() const;
  friend bool operator==(const NodeDivisor&, const NodeDivisor&) = default;
};

/// Sorts multidegrees into twist classes by reducing their induced divisors
/// on the subdivided graph at one fixed vertex. Paths between members of a
/// class then come from differences of the recorded firing vectors.
class TwistClassIndex {
 public:
  TwistClassIndex(const MultiGraph& graph, const ChainStructure& chain);

  struct Location {
    Divisor reduced;
    TwistVector twists;  // on V(graph), takes w to the class representative
  };
  Location locate(const AdmissibleMultidegree& w) const;

  /// Normal-form twist vector from w to w_prime, if related by twists.
  std::optional<TwistVector> path(const Location& from, const Location& to) const;
  std::optional<TwistVector> path(const AdmissibleMultidegree& w, const AdmissibleMultidegree& w_prime) const;

  const MultiGraph& graph() const { return *graph_; }
  const ChainStructure& chain() const { return *chain_; }

 private:
  const MultiGraph* graph_;
  const ChainStructure* chain_;
  SubdividedGraph sub_;
  VertexIndex base_;
};

/// The normal-form twist vector from w to w_prime. Throws NotEquivalent.
TwistVector minimal_path(const MultiGraph& graph, const ChainStructure& chain, const AdmissibleMultidegree& w,
                         const AdmissibleMultidegree& w_prime);

/// w_v = the twist of w0 concentrated at v and nonnegative elsewhere.
std::vector<AdmissibleMultidegree> canonical_family(const MultiGraph& graph, const ChainStructure& chain,
                                                    const AdmissibleMultidegree& w0);

/// For every v, the minimal path from w to family[v] does not twist at v.
/// Throws NotEquivalent if w is not a twist of the family.
bool in_bar_g(const MultiGraph& graph, const ChainStructure& chain, const AdmissibleMultidegree& w,
              const std::vector<AdmissibleMultidegree>& family);

struct BarG {
  std::vector<AdmissibleMultidegree> members;  // sorted
  std::vector<AdmissibleMultidegree> family;
  AdmissibleMultidegree base;
  /// Whether the members are connected under single twists inside the set.
  /// Recorded, never assumed.
  bool connected = true;
  std::int64_t twists_enumerated = 0;

  bool contains(const AdmissibleMultidegree& w) const;
};

/// Exact enumeration: members are the twists y of family[0] obeying the
/// difference constraints that membership imposes on y. Throws
/// NoNonnegativeTwist when no family member is everywhere nonnegative, and
/// BudgetExceeded when more than `budget` members would be produced
/// (0 = unlimited).
BarG enumerate_bar_g(const MultiGraph& graph, const ChainStructure& chain, const AdmissibleMultidegree& w0,
                     const std::vector<AdmissibleMultidegree>& family, std::int64_t budget = 0);

/// The combinatorial hypothesis of the twist-section move for S (a mask over
/// vertices): for each v the path from w to family[v] either twists at all
/// of S, or v is in S and the path avoids v.
bool twist_section_certificate(const TwistClassIndex& index, const AdmissibleMultidegree& w,
                               const std::vector<AdmissibleMultidegree>& family, const std::vector<bool>& subset);

/// Normal-form paths from w to each family member; throws NotEquivalent if w
/// is in another twist class.
std::vector<TwistVector> paths_to_family(const TwistClassIndex& index, const AdmissibleMultidegree& w,
                                         const std::vector<AdmissibleMultidegree>& family);
/// The same certificate on precomputed paths, for checking many subsets.
bool twist_section_certificate(const std::vector<TwistVector>& paths, const std::vector<bool>& subset);

/// Twists w once at every vertex of the subset.
AdmissibleMultidegree twist_subset(const MultiGraph& graph, const ChainStructure& chain,
                                   const AdmissibleMultidegree& w, const std::vector<bool>& subset);

/// D_{w,v} evaluated along the given sequence of twists starting at w.
NodeDivisor d_wv_along(const MultiGraph& graph, const ChainStructure& chain, const AdmissibleMultidegree& w,
                       VertexIndex v, const std::vector<VertexIndex>& sequence);

/// D_{w,v} along the sorted minimal path from w to family[v]. Throws
/// NotEquivalent. Checks that its degree equals family[v](v) - w(v).
NodeDivisor d_wv(const MultiGraph& graph, const ChainStructure& chain,
                 const std::vector<AdmissibleMultidegree>& family, const AdmissibleMultidegree& w, VertexIndex v);

/// D_mu on the metric graph with lengths n: one point per edge with
/// mu(e) != 0, at distance mu(e) from the tail.
MetricDivisor d_mu(const MetricGraph& metric, const AdmissibleMultidegree& w);

struct RiemannTwist {
  AdmissibleMultidegree result;
  std::int64_t bound = 0;
  /// Reduced divisor of w_can - w0 on the subdivided graph, before and after
  /// the per-chain fix-up.
  Divisor reduced;
  Divisor fixed;
};

/// The twist of w0 built in the Riemann bound argument: reduce w_can - w0 at
/// v0 on the subdivided graph, move each inserted 1 off its chain, and return
/// w_can minus the result, with the bound max(d+1-g, g).
RiemannTwist riemann_twist(const MultiGraph& graph, const ChainStructure& chain, const AdmissibleMultidegree& w0,
                           VertexIndex v0);

}  // namespace tropdeg
