#pragma once

#include <string>
#include <vector>

#include "tropdeg/metric.hpp"

namespace tropdeg {

/// Effective on the open edges with at most one chip on each open edge.
/// Vertex coefficients are unconstrained.
bool is_edge_reduced(const MetricGraph& graph, const MetricDivisor& d);

struct ChipTransport {
  MetricDivisor result;
  /// The unique PL function with f(v) = c[v] keeping d + div f edge-reduced.
  PLFunction f;
};

/// On each edge the chip (if any) slides toward the lower end by the drop
/// c[tail] - c[head], wrapping modulo the edge length; every wrap passes one
/// unit of degree from tail to head. Throws NotEdgeReduced.
ChipTransport move_chips_edge_reduced(const MetricGraph& graph, const MetricDivisor& d,
                                      const std::vector<Rational>& c);

struct StageCertificates {
  bool interpolation = false;  // every stage move stays effective and edge-reduced
  bool ties_constant = false;  // tied f values give constant stage functions
  bool one_sided = false;      // (D_i - D) >= 0 beyond i, (D_i - D') >= 0 up to i
  bool reaches_target = false; // D_n = D'
};

struct Decomposition {
  /// Vertices sorted by decreasing f, ties by index.
  std::vector<VertexIndex> order;
  /// c[i] is the vertex vector moving stage i to stage i+1.
  std::vector<std::vector<Rational>> c;
  /// D_1 = D, ..., D_n = D'.
  std::vector<MetricDivisor> stages;
  StageCertificates certificates;
};

/// Splits the equivalence d' = d + div f into vertex-by-vertex chip moves and
/// verifies the four stage certificates; component terms are degree-level
/// and vanish. Throws PreconditionFailed naming the first failed clause.
Decomposition equiv_decompose(const MetricGraph& graph, const MetricDivisor& d, const MetricDivisor& d_prime,
                              const PLFunction& f);

}  // namespace tropdeg
