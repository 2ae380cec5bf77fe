#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropdeg/chain.hpp"
#include "tropdeg/chip_firing.hpp"
#include "tropdeg/graph.hpp"
#include "tropdeg/rational.hpp"

namespace tropdeg {

struct MetricEdgeSpec {
  std::string id;
  std::string tail;
  std::string head;
  Rational length{1};
};

/// A loopless model graph with positive rational edge lengths.
class MetricGraph {
 public:
  MetricGraph(MultiGraph model, std::vector<Rational> lengths);

  /// Builds from specs. A loop is split at its midpoint by a new vertex
  /// "<id>.mid" into edges "<id>.1" and "<id>.2"; points may still be given on
  /// the loop id and are mapped to the halves.
  static MetricGraph build(const std::vector<VertexSpec>& vertices,
                           const std::vector<MetricEdgeSpec>& edges);

  /// The metric graph of (graph, n): edge e gets length n(e).
  static MetricGraph from_chain(const MultiGraph& graph, const ChainStructure& chain);

  const MultiGraph& model() const { return model_; }
  const Rational& length(EdgeIndex e) const { return lengths_[e]; }
  const std::vector<Rational>& lengths() const { return lengths_; }
  int genus() const { return model_.genus(); }

  /// Resolves an edge id, including the id of a loop that was split.
  std::pair<EdgeIndex, Rational> resolve(const std::string& edge_id, const Rational& offset) const;

  std::vector<MetricEdgeSpec> edge_specs() const;

 private:
  MultiGraph model_;
  std::vector<Rational> lengths_;
  std::map<std::string, std::pair<EdgeIndex, EdgeIndex>> split_loops_;
};

/// A point of the metric graph. Vertex points are stored by vertex, so the
/// same vertex reached through different edges compares equal.
struct MetricPoint {
  bool on_vertex = true;
  VertexIndex vertex = 0;
  EdgeIndex edge = 0;
  Rational offset{0};

  static MetricPoint at_vertex(VertexIndex v) { return MetricPoint{true, v, 0, Rational(0)}; }
  /// Canonicalizes endpoints to vertex points; throws PreconditionFailed if
  /// the offset lies outside [0, length].
  static MetricPoint on_edge(const MetricGraph& graph, EdgeIndex e, const Rational& offset);

  /// Offset of this point measured from the tail of e; throws if the point is
  /// not on the closed edge e.
  Rational offset_on(const MetricGraph& graph, EdgeIndex e) const;

  friend bool operator==(const MetricPoint& a, const MetricPoint& b);
  friend bool operator<(const MetricPoint& a, const MetricPoint& b);
};

std::string format_point(const MetricGraph& graph, const MetricPoint& p);

/// Integer combination of metric points; zero coefficients are never stored.
class MetricDivisor {
 public:
  MetricDivisor() = default;

  void add(const MetricPoint& p, std::int64_t coeff);
  std::int64_t operator[](const MetricPoint& p) const;
  const std::map<MetricPoint, std::int64_t>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  std::int64_t degree() const;
  bool is_effective() const;

  MetricDivisor& operator+=(const MetricDivisor& other);
  MetricDivisor& operator-=(const MetricDivisor& other);
  friend MetricDivisor operator+(MetricDivisor a, const MetricDivisor& b) { return a += b; }
  friend MetricDivisor operator-(MetricDivisor a, const MetricDivisor& b) { return a -= b; }
  friend bool operator==(const MetricDivisor&, const MetricDivisor&) = default;
  friend bool operator<(const MetricDivisor& a, const MetricDivisor& b) { return a.terms_ < b.terms_; }

 private:
  std::map<MetricPoint, std::int64_t> terms_;
};

std::string format_divisor(const MetricGraph& graph, const MetricDivisor& d);

/// Continuous piecewise linear function. Each edge carries its breakpoints
/// (offset, value) sorted by offset, from 0 to the edge length.
class PLFunction {
 public:
  PLFunction() = default;
  PLFunction(std::vector<Rational> vertex_values,
             std::vector<std::vector<std::pair<Rational, Rational>>> edge_breakpoints);

  static PLFunction constant(const MetricGraph& graph, const Rational& value);
  /// Linear on every edge between the given vertex values.
  static PLFunction linear(const MetricGraph& graph, const std::vector<Rational>& vertex_values);

  const std::vector<Rational>& vertex_values() const { return vertex_values_; }
  const std::vector<std::pair<Rational, Rational>>& breakpoints(EdgeIndex e) const { return edges_[e]; }

  /// Throws PreconditionFailed on shape or continuity errors and InvalidSlope
  /// on a non-integer slope.
  void validate(const MetricGraph& graph) const;

  Rational value_at(const MetricGraph& graph, const MetricPoint& p) const;
  /// Slope of the piece leaving the tail of e.
  Rational first_slope(EdgeIndex e) const;
  bool is_constant() const;

  PLFunction operator+(const PLFunction& other) const;
  PLFunction operator-(const PLFunction& other) const;
  PLFunction shifted(const Rational& delta) const;

  friend bool operator==(const PLFunction&, const PLFunction&) = default;

 private:
  std::vector<Rational> vertex_values_;
  std::vector<std::vector<std::pair<Rational, Rational>>> edges_;
};

/// Sum of outgoing slopes at every point.
MetricDivisor div_pl(const MetricGraph& graph, const PLFunction& f);

/// Unit subdivision of the metric graph at scale N: every edge of length l is
/// cut into l*N unit pieces. Original vertices keep their indices.
class Lattice {
 public:
  Lattice(const MetricGraph& graph, std::int64_t scale);

  std::int64_t scale() const { return scale_; }
  const MultiGraph& graph() const { return sub_.graph(); }
  const SubdividedGraph& subdivided() const { return sub_; }

  std::optional<VertexIndex> find(const MetricPoint& p) const;
  /// Throws PreconditionFailed when p is not a lattice point.
  VertexIndex vertex_of(const MetricPoint& p) const;
  MetricPoint point_of(VertexIndex v) const;

  Divisor to_lattice(const MetricDivisor& d) const;
  MetricDivisor from_lattice(const Divisor& d) const;
  /// The PL function with value t(x)/N at lattice vertex x, linear in between.
  PLFunction function_from_firings(const TwistVector& t) const;

 private:
  const MetricGraph* metric_;
  std::int64_t scale_;
  SubdividedGraph sub_;
};

/// Least common denominator of all lengths and of the offsets in `divisors`.
std::int64_t common_denominator(const MetricGraph& graph, const std::vector<MetricDivisor>& divisors,
                                const std::vector<MetricPoint>& points = {});

struct MetricReduction {
  MetricDivisor reduced;
  /// D + div f = reduced, with f(q) = 0.
  PLFunction f;
};

MetricReduction mg_reduce(const MetricGraph& graph, const MetricDivisor& d, const MetricPoint& q);

struct MetricRankOptions {
  /// Recompute on the 2N lattice and require the same answer.
  bool refinement_check = false;
  /// Use at least this scale (it is rounded up to a multiple of the common
  /// denominator).
  std::int64_t min_scale = 1;
};

int mg_rank(const MetricGraph& graph, const MetricDivisor& d, const MetricRankOptions& options = {});
/// True iff rank >= k.
bool mg_rank_at_least(const MetricGraph& graph, const MetricDivisor& d, int k,
                      const MetricRankOptions& options = {});

/// f with d_prime - d = div f, if the divisors are linearly equivalent.
std::optional<PLFunction> mg_linear_equiv(const MetricGraph& graph, const MetricDivisor& d,
                                          const MetricDivisor& d_prime);

/// valence(v) - 2 + 2 genus(v) at every model vertex.
MetricDivisor metric_canonical(const MetricGraph& graph);

}  // namespace tropdeg
