#include "tropdeg/chip_firing.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "tropdeg/error.hpp"

namespace tropdeg {

namespace {

void check_vertex(const MultiGraph& graph, VertexIndex v) {
  if (v >= graph.num_vertices()) throw Error(ErrorKind::UnknownVertex, "vertex index out of range");
}

void check_size(const MultiGraph& graph, const Divisor& d) {
  if (d.size() != graph.num_vertices()) {
    throw Error(ErrorKind::PreconditionFailed, "divisor does not belong to this graph");
  }
}

// Runs Dhar's burning process from v0 and returns the unburnt set as a mask.
// Vertices are examined in ascending id order; the final set does not depend
// on that order.
std::vector<bool> unburnt_set(const MultiGraph& graph, const Divisor& d, VertexIndex v0) {
  const std::size_t n = graph.num_vertices();
  std::vector<bool> unburnt(n, true);
  std::vector<std::int64_t> burnt_edges(n, 0);
  unburnt[v0] = false;
  std::deque<VertexIndex> fresh{v0};
  // A negative vertex burns with no help from its neighbours.
  for (VertexIndex v : graph.vertices_by_id()) {
    if (v != v0 && d[v] < 0) {
      unburnt[v] = false;
      fresh.push_back(v);
    }
  }
  while (!fresh.empty()) {
    VertexIndex b = fresh.front();
    fresh.pop_front();
    for (const Neighbor& nb : graph.neighbors(b)) {
      if (!unburnt[nb.vertex]) continue;
      burnt_edges[nb.vertex] += nb.multiplicity;
      if (d[nb.vertex] < burnt_edges[nb.vertex]) {
        unburnt[nb.vertex] = false;
        fresh.push_back(nb.vertex);
      }
    }
  }
  return unburnt;
}

}  // namespace

Divisor fire(const MultiGraph& graph, const Divisor& divisor, VertexIndex v) {
  check_vertex(graph, v);
  check_size(graph, divisor);
  Divisor out = divisor;
  out[v] -= graph.valence(v);
  for (const Neighbor& nb : graph.neighbors(v)) out[nb.vertex] += nb.multiplicity;
  return out;
}

Divisor apply_firings(const MultiGraph& graph, const Divisor& divisor, const TwistVector& twists) {
  check_size(graph, divisor);
  if (twists.size() != graph.num_vertices()) {
    throw Error(ErrorKind::PreconditionFailed, "twist vector does not belong to this graph");
  }
  Divisor out = divisor;
  for (VertexIndex v = 0; v < graph.num_vertices(); ++v) {
    for (const Neighbor& nb : graph.neighbors(v)) {
      out[v] -= nb.multiplicity * (twists[v] - twists[nb.vertex]);
    }
  }
  return out;
}

bool satisfies_burning_condition(const MultiGraph& graph, const Divisor& divisor, VertexIndex v0) {
  check_vertex(graph, v0);
  check_size(graph, divisor);
  auto unburnt = unburnt_set(graph, divisor, v0);
  return std::none_of(unburnt.begin(), unburnt.end(), [](bool b) { return b; });
}

bool is_v_reduced(const MultiGraph& graph, const Divisor& divisor, VertexIndex v0) {
  check_vertex(graph, v0);
  check_size(graph, divisor);
  for (VertexIndex v = 0; v < graph.num_vertices(); ++v) {
    if (v != v0 && divisor[v] < 0) return false;
  }
  return satisfies_burning_condition(graph, divisor, v0);
}

Reduction reduce(const MultiGraph& graph, const Divisor& divisor, VertexIndex v0) {
  check_vertex(graph, v0);
  check_size(graph, divisor);
  const std::size_t n = graph.num_vertices();
  Divisor d = divisor;
  TwistVector t(n);

  // Phase 1: make every v != v0 nonnegative, farthest BFS layer first. Firing
  // the ball of radius k-1 only moves chips from layer k-1 to layer k, so
  // layers already repaired stay nonnegative.
  std::vector<int> dist(n, -1);
  std::vector<VertexIndex> order{v0};
  dist[v0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const Neighbor& nb : graph.neighbors(order[i])) {
      if (dist[nb.vertex] < 0) {
        dist[nb.vertex] = dist[order[i]] + 1;
        order.push_back(nb.vertex);
      }
    }
  }
  int max_layer = dist[order.back()];
  for (int layer = max_layer; layer >= 1; --layer) {
    std::int64_t rounds = 0;
    for (VertexIndex v = 0; v < n; ++v) {
      if (dist[v] != layer || d[v] >= 0) continue;
      std::int64_t inward = 0;
      for (const Neighbor& nb : graph.neighbors(v)) {
        if (dist[nb.vertex] == layer - 1) inward += nb.multiplicity;
      }
      rounds = std::max(rounds, (-d[v] + inward - 1) / inward);
    }
    if (rounds == 0) continue;
    for (VertexIndex v = 0; v < n; ++v) {
      if (dist[v] < 0 || dist[v] >= layer) continue;
      t[v] += rounds;
      for (const Neighbor& nb : graph.neighbors(v)) {
        if (dist[nb.vertex] == layer) {
          d[v] -= rounds * nb.multiplicity;
          d[nb.vertex] += rounds * nb.multiplicity;
        }
      }
    }
  }

  // Phase 2: Dhar burning; fire the unburnt set as many times as it stays
  // nonnegative.
  while (true) {
    auto unburnt = unburnt_set(graph, d, v0);
    std::int64_t rounds = -1;
    std::vector<std::int64_t> outward(n, 0);
    for (VertexIndex v = 0; v < n; ++v) {
      if (!unburnt[v]) continue;
      for (const Neighbor& nb : graph.neighbors(v)) {
        if (!unburnt[nb.vertex]) outward[v] += nb.multiplicity;
      }
      if (outward[v] > 0) {
        std::int64_t r = d[v] / outward[v];
        rounds = rounds < 0 ? r : std::min(rounds, r);
      }
    }
    if (rounds < 0) break;  // nothing unburnt
    for (VertexIndex v = 0; v < n; ++v) {
      if (!unburnt[v]) continue;
      t[v] += rounds;
      for (const Neighbor& nb : graph.neighbors(v)) {
        if (!unburnt[nb.vertex]) {
          d[v] -= rounds * nb.multiplicity;
          d[nb.vertex] += rounds * nb.multiplicity;
        }
      }
    }
  }
  return Reduction{std::move(d), t.normalized()};
}

bool rank_at_least(const MultiGraph& graph, const Divisor& divisor, int k, VertexIndex q) {
  if (k < 0) return true;
  Divisor start = reduce(graph, divisor, q).reduced;
  if (start[q] < 0) return false;
  std::set<Divisor> level{start};
  for (int step = 1; step <= k; ++step) {
    std::set<Divisor> next;
    for (const Divisor& r : level) {
      for (VertexIndex v = 0; v < graph.num_vertices(); ++v) {
        Divisor lowered = r;
        --lowered[v];
        Divisor red = reduce(graph, lowered, q).reduced;
        if (red[q] < 0) return false;
        next.insert(std::move(red));
      }
    }
    level = std::move(next);
  }
  return true;
}

int rank_finite(const MultiGraph& graph, const Divisor& divisor, VertexIndex q) {
  check_vertex(graph, q);
  check_size(graph, divisor);
  if (divisor.degree() < 0) return -1;
  Divisor start = reduce(graph, divisor, q).reduced;
  if (start[q] < 0) return -1;
  std::set<Divisor> level{start};
  int rank = 0;
  while (true) {
    std::set<Divisor> next;
    for (const Divisor& r : level) {
      for (VertexIndex v = 0; v < graph.num_vertices(); ++v) {
        Divisor lowered = r;
        --lowered[v];
        Divisor red = reduce(graph, lowered, q).reduced;
        if (red[q] < 0) return rank;
        next.insert(std::move(red));
      }
    }
    level = std::move(next);
    ++rank;
  }
}

int rank_finite(const MultiGraph& graph, const Divisor& divisor) {
  return rank_finite(graph, divisor, graph.least_vertex());
}

Divisor canonical_divisor(const MultiGraph& graph) {
  Divisor k(graph.num_vertices());
  for (VertexIndex v = 0; v < graph.num_vertices(); ++v) {
    k[v] = 2 * graph.vertex_genus(v) - 2 + graph.valence(v);
  }
  return k;
}

std::optional<TwistVector> linear_equiv(const MultiGraph& graph, const Divisor& from, const Divisor& to) {
  check_size(graph, from);
  check_size(graph, to);
  if (from.degree() != to.degree()) return std::nullopt;
  VertexIndex q = graph.least_vertex();
  Reduction a = reduce(graph, from, q);
  Reduction b = reduce(graph, to, q);
  if (a.reduced != b.reduced) return std::nullopt;
  return (a.twists - b.twists).normalized();
}

}  // namespace tropdeg
