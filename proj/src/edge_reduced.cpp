#include "tropdeg/edge_reduced.hpp"

#include <algorithm>
#include <numeric>

#include "tropdeg/error.hpp"

namespace tropdeg {

namespace {

struct EdgeChip {
  bool present = false;
  Rational offset{0};
};

std::vector<EdgeChip> edge_chips(const MetricGraph& graph, const MetricDivisor& d) {
  std::vector<EdgeChip> chips(graph.model().num_edges());
  for (const auto& [p, c] : d.terms()) {
    if (p.on_vertex) continue;
    if (c < 0) {
      throw Error(ErrorKind::NotEdgeReduced, "negative coefficient at " + format_point(graph, p));
    }
    if (c > 1 || chips[p.edge].present) {
      throw Error(ErrorKind::NotEdgeReduced, "more than one chip inside " + graph.model().edge(p.edge).id);
    }
    chips[p.edge] = EdgeChip{true, p.offset};
  }
  return chips;
}

}  // namespace

bool is_edge_reduced(const MetricGraph& graph, const MetricDivisor& d) {
  try {
    edge_chips(graph, d);
    return true;
  } catch (const Error&) {
    return false;
  }
}

ChipTransport move_chips_edge_reduced(const MetricGraph& graph, const MetricDivisor& d,
                                      const std::vector<Rational>& c) {
  const MultiGraph& g = graph.model();
  if (c.size() != g.num_vertices()) {
    throw Error(ErrorKind::PreconditionFailed, "need one value per model vertex");
  }
  auto chips = edge_chips(graph, d);
  std::vector<std::vector<std::pair<Rational, Rational>>> pieces;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    const Rational len = graph.length(e);
    const Rational delta = c[edge.tail] - c[edge.head];
    const int k0 = chips[e].present ? 1 : 0;
    const Rational p = chips[e].offset;
    const Rational x = mod(p + delta, len);
    const int k1 = x != 0 ? 1 : 0;
    // Slope leaving the tail; it drops by one at p and rises by one at x.
    const Rational s = (-delta + k0 * (len - p) - k1 * (len - x)) / len;
    if (!is_integer(s)) throw Error(ErrorKind::PreconditionFailed, "chip transport produced a fractional slope");

    std::vector<std::pair<Rational, int>> events;
    if (k0 == 1) events.emplace_back(p, -1);
    if (k1 == 1) events.emplace_back(x, +1);
    std::sort(events.begin(), events.end());
    std::vector<std::pair<Rational, Rational>> pts{{Rational(0), c[edge.tail]}};
    Rational slope = s;
    for (const auto& [at, change] : events) {
      if (at == pts.back().first) {
        slope += change;
        continue;
      }
      pts.emplace_back(at, pts.back().second + slope * (at - pts.back().first));
      slope += change;
    }
    Rational end = pts.back().second + slope * (len - pts.back().first);
    if (end != c[edge.head]) throw Error(ErrorKind::PreconditionFailed, "chip transport does not close up on an edge");
    pts.emplace_back(len, end);
    // Merge collinear points (p == x cancels).
    std::vector<std::pair<Rational, Rational>> merged{pts.front()};
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
      const auto& a = merged.back();
      const auto& b = pts[i];
      const auto& n = pts[i + 1];
      if ((b.second - a.second) / (b.first - a.first) != (n.second - b.second) / (n.first - b.first)) {
        merged.push_back(b);
      }
    }
    merged.push_back(pts.back());
    pieces.push_back(std::move(merged));
  }
  PLFunction f(c, std::move(pieces));
  MetricDivisor result = d + div_pl(graph, f);
  edge_chips(graph, result);
  return ChipTransport{std::move(result), std::move(f)};
}

namespace {

// Values of alpha in [0,1] where a chip on some edge meets a vertex, plus the
// ends and all midpoints.
std::vector<Rational> alpha_grid(const MetricGraph& graph, const MetricDivisor& d, const std::vector<Rational>& c) {
  const MultiGraph& g = graph.model();
  auto chips = edge_chips(graph, d);
  std::vector<Rational> grid{Rational(0), Rational(1)};
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const Rational delta = c[g.edge(e).tail] - c[g.edge(e).head];
    if (delta == 0) continue;
    const Rational len = graph.length(e);
    const Rational p = chips[e].offset;
    Rational lo = std::min(p, p + delta);
    Rational hi = std::max(p, p + delta);
    for (std::int64_t j = floor(lo / len); Rational(j) * len <= hi; ++j) {
      Rational alpha = (Rational(j) * len - p) / delta;
      if (alpha >= 0 && alpha <= 1) grid.push_back(alpha);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<Rational> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.push_back(grid[i]);
    if (i + 1 < grid.size()) out.push_back((grid[i] + grid[i + 1]) / 2);
  }
  return out;
}

}  // namespace

Decomposition equiv_decompose(const MetricGraph& graph, const MetricDivisor& d, const MetricDivisor& d_prime,
                              const PLFunction& f) {
  const MultiGraph& g = graph.model();
  const std::size_t n = g.num_vertices();
  if (!d.is_effective() || !is_edge_reduced(graph, d)) {
    throw Error(ErrorKind::PreconditionFailed, "D must be effective and edge-reduced");
  }
  if (!d_prime.is_effective() || !is_edge_reduced(graph, d_prime)) {
    throw Error(ErrorKind::PreconditionFailed, "D' must be effective and edge-reduced");
  }
  if (d + div_pl(graph, f) != d_prime) {
    throw Error(ErrorKind::PreconditionFailed, "D' - D is not div f");
  }

  Decomposition out;
  const auto& fv = f.vertex_values();
  out.order.resize(n);
  std::iota(out.order.begin(), out.order.end(), VertexIndex{0});
  std::stable_sort(out.order.begin(), out.order.end(), [&](VertexIndex a, VertexIndex b) { return fv[a] > fv[b]; });

  out.stages.push_back(d);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    std::vector<Rational> c(n);
    for (std::size_t i = 0; i < n; ++i) c[out.order[i]] = i <= j ? fv[out.order[j]] : fv[out.order[j + 1]];
    out.c.push_back(c);
    out.stages.push_back(move_chips_edge_reduced(graph, out.stages.back(), c).result);
  }

  auto vertex_coeff = [](const MetricDivisor& x, VertexIndex v) { return x[MetricPoint::at_vertex(v)]; };

  // (i) every interpolated move stays effective and edge-reduced.
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const MetricDivisor& stage = out.stages[j];
    for (const Rational& alpha : alpha_grid(graph, stage, out.c[j])) {
      std::vector<Rational> scaled = out.c[j];
      for (auto& x : scaled) x *= alpha;
      MetricDivisor moved = move_chips_edge_reduced(graph, stage, scaled).result;
      if (!moved.is_effective()) {
        throw Error(ErrorKind::PreconditionFailed, "certificate (i) fails at stage " + std::to_string(j + 1) +
                                                       ", alpha " + format_rational(alpha));
      }
    }
  }
  out.certificates.interpolation = true;

  // (ii) tied values give constant stage functions.
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (fv[out.order[j]] != fv[out.order[j + 1]]) continue;
    if (!move_chips_edge_reduced(graph, out.stages[j], out.c[j]).f.is_constant()) {
      throw Error(ErrorKind::PreconditionFailed, "certificate (ii) fails at stage " + std::to_string(j + 1));
    }
  }
  out.certificates.ties_constant = true;

  // (iii) one-sided effectivity on the vertices.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      VertexIndex v = out.order[j];
      if (j >= i && vertex_coeff(out.stages[i], v) < vertex_coeff(d, v)) {
        throw Error(ErrorKind::PreconditionFailed, "certificate (iii) fails: D_" + std::to_string(i + 1) +
                                                       " - D negative at " + g.vertex_id(v));
      }
      if (j <= i && vertex_coeff(out.stages[i], v) < vertex_coeff(d_prime, v)) {
        throw Error(ErrorKind::PreconditionFailed, "certificate (iii) fails: D_" + std::to_string(i + 1) +
                                                       " - D' negative at " + g.vertex_id(v));
      }
    }
  }
  out.certificates.one_sided = true;

  // (iv)
  if (out.stages.back() != d_prime) throw Error(ErrorKind::PreconditionFailed, "certificate (iv) fails: D_n != D'");
  out.certificates.reaches_target = true;
  return out;
}

}  // namespace tropdeg
