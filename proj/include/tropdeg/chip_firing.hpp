#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "tropdeg/graph.hpp"

namespace tropdeg {

/// Fires v once: v loses val(v) chips, each neighbour gains one per edge.
Divisor fire(const MultiGraph& graph, const Divisor& divisor, VertexIndex v);

/// Fires every vertex v `twists[v]` times (negative counts borrow).
Divisor apply_firings(const MultiGraph& graph, const Divisor& divisor, const TwistVector& twists);

/// Dhar burning from v0 with ties broken by ascending vertex id.
bool is_v_reduced(const MultiGraph& graph, const Divisor& divisor, VertexIndex v0);

/// Condition (2) of v0-reducedness only: every nonempty S not containing v0
/// has a vertex with fewer chips than edges leaving S. Negative coefficients
/// are allowed.
bool satisfies_burning_condition(const MultiGraph& graph, const Divisor& divisor, VertexIndex v0);

struct Reduction {
  Divisor reduced;
  /// Normal-form firing vector taking the input to `reduced`.
  TwistVector twists;
};

/// The unique v0-reduced divisor linearly equivalent to `divisor`.
Reduction reduce(const MultiGraph& graph, const Divisor& divisor, VertexIndex v0);

/// Baker-Norine rank, evaluated with the lexicographically least vertex as
/// base point.
int rank_finite(const MultiGraph& graph, const Divisor& divisor);
int rank_finite(const MultiGraph& graph, const Divisor& divisor, VertexIndex q);

/// True iff rank >= k. Stops as soon as the answer is known.
bool rank_at_least(const MultiGraph& graph, const Divisor& divisor, int k, VertexIndex q);

/// 2 genus(v) - 2 + val(v) at every vertex.
Divisor canonical_divisor(const MultiGraph& graph);

/// Normal-form firing vector taking `from` to `to`, if they are linearly
/// equivalent. Base point is the lexicographically least vertex.
std::optional<TwistVector> linear_equiv(const MultiGraph& graph, const Divisor& from,
                                        const Divisor& to);

}  // namespace tropdeg
