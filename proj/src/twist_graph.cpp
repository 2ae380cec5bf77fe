#include "tropdeg/twist_graph.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "tropdeg/chip_firing.hpp"
#include "tropdeg/error.hpp"

namespace tropdeg {

void NodeDivisor::add(EdgeIndex e, std::int64_t c) {
  if (c == 0) return;
  auto& slot = coeffs[e];
  slot += c;
  if (slot == 0) coeffs.erase(e);
}

std::int64_t NodeDivisor::degree() const {
  std::int64_t d = 0;
  for (const auto& [e, c] : coeffs) d += c;
  return d;
}

bool NodeDivisor::is_effective() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const auto& t) { return t.second >= 0; });
}

TwistClassIndex::TwistClassIndex(const MultiGraph& graph, const ChainStructure& chain)
    : graph_(&graph), chain_(&chain), sub_(graph, chain), base_(graph.least_vertex()) {}

TwistClassIndex::Location TwistClassIndex::locate(const AdmissibleMultidegree& w) const {
  validate(*graph_, *chain_, w);
  Reduction r = reduce(sub_.graph(), induced_multidegree(sub_, w), base_);
  std::vector<std::int64_t> t(r.twists.counts().begin(),
                              r.twists.counts().begin() + static_cast<std::ptrdiff_t>(graph_->num_vertices()));
  return Location{std::move(r.reduced), TwistVector(std::move(t))};
}

std::optional<TwistVector> TwistClassIndex::path(const Location& from, const Location& to) const {
  if (from.reduced != to.reduced) return std::nullopt;
  return (from.twists - to.twists).normalized();
}

std::optional<TwistVector> TwistClassIndex::path(const AdmissibleMultidegree& w,
                                                 const AdmissibleMultidegree& w_prime) const {
  auto t = path(locate(w), locate(w_prime));
  if (t && apply_twists(*graph_, *chain_, w, *t) != w_prime) {
    throw Error(ErrorKind::PreconditionFailed, "recovered twist vector does not reach the target");
  }
  return t;
}

TwistVector minimal_path(const MultiGraph& graph, const ChainStructure& chain, const AdmissibleMultidegree& w,
                         const AdmissibleMultidegree& w_prime) {
  TwistClassIndex index(graph, chain);
  auto t = index.path(w, w_prime);
  if (!t) throw Error(ErrorKind::NotEquivalent, "multidegrees are not related by twists");
  return *t;
}

std::vector<AdmissibleMultidegree> canonical_family(const MultiGraph& graph, const ChainStructure& chain,
                                                    const AdmissibleMultidegree& w0) {
  std::vector<AdmissibleMultidegree> family;
  for (VertexIndex v = 0; v < graph.num_vertices(); ++v) {
    family.push_back(concentrate(graph, chain, w0, v).multidegree);
  }
  return family;
}

namespace {

struct FamilyPaths {
  std::vector<TwistClassIndex::Location> locations;
};

FamilyPaths locate_family(const TwistClassIndex& index, const std::vector<AdmissibleMultidegree>& family) {
  if (family.size() != index.graph().num_vertices()) {
    throw Error(ErrorKind::PreconditionFailed, "family must give one multidegree per vertex");
  }
  FamilyPaths out;
  for (const auto& wv : family) out.locations.push_back(index.locate(wv));
  for (const auto& loc : out.locations) {
    if (loc.reduced != out.locations.front().reduced) {
      throw Error(ErrorKind::NotEquivalent, "family members are not related by twists");
    }
  }
  return out;
}

// Membership given precomputed locations; nullopt if w is in another class.
std::optional<bool> member(const TwistClassIndex& index, const TwistClassIndex::Location& loc,
                           const FamilyPaths& family) {
  for (VertexIndex v = 0; v < family.locations.size(); ++v) {
    auto t = index.path(loc, family.locations[v]);
    if (!t) return std::nullopt;
    if ((*t)[v] != 0) return false;
  }
  return true;
}

}  // namespace

bool in_bar_g(const MultiGraph& graph, const ChainStructure& chain, const AdmissibleMultidegree& w,
              const std::vector<AdmissibleMultidegree>& family) {
  TwistClassIndex index(graph, chain);
  FamilyPaths fp = locate_family(index, family);
  auto m = member(index, index.locate(w), fp);
  if (!m) throw Error(ErrorKind::NotEquivalent, "multidegree is not a twist of the family");
  return *m;
}

bool BarG::contains(const AdmissibleMultidegree& w) const {
  return std::binary_search(members.begin(), members.end(), w);
}

BarG enumerate_bar_g(const MultiGraph& graph, const ChainStructure& chain, const AdmissibleMultidegree& w0,
                     const std::vector<AdmissibleMultidegree>& family, std::int64_t budget) {
  validate(graph, chain, w0);
  TwistClassIndex index(graph, chain);
  FamilyPaths fp = locate_family(index, family);
  TwistClassIndex::Location base = index.locate(w0);
  if (base.reduced != fp.locations.front().reduced) {
    throw Error(ErrorKind::NotEquivalent, "family is not a set of twists of w0");
  }
  if (std::none_of(family.begin(), family.end(), [](const auto& w) { return w.is_nonnegative(); })) {
    throw Error(ErrorKind::NoNonnegativeTwist, "no family member is everywhere nonnegative");
  }

  // Write a twist of family[0] as apply_twists(family[0], y) and let P_v be
  // the path from family[0] to family[v]. The path from the twist to
  // family[v] is P_v - y up to constants, so membership says
  //   y(u) - y(v) <= P_v(u) - P_v(v)   for all u, v.
  // These are difference constraints; after closing them under shortest
  // paths every partial solution extends, so the search never backtracks.
  const std::size_t nv = graph.num_vertices();
  std::vector<std::vector<std::int64_t>> bound(nv, std::vector<std::int64_t>(nv, 0));
  for (VertexIndex v = 0; v < nv; ++v) {
    auto p = index.path(fp.locations.front(), fp.locations[v]);
    for (VertexIndex u = 0; u < nv; ++u) bound[v][u] = (*p)[u] - (*p)[v];  // y(u) <= y(v) + bound[v][u]
  }
  for (VertexIndex k = 0; k < nv; ++k) {
    for (VertexIndex i = 0; i < nv; ++i) {
      for (VertexIndex j = 0; j < nv; ++j) bound[i][j] = std::min(bound[i][j], bound[i][k] + bound[k][j]);
    }
  }

  BarG out;
  out.family = family;
  out.base = w0;
  for (VertexIndex v = 0; v < nv; ++v) {
    if (bound[v][v] < 0) return out;  // inconsistent: empty
  }
  TwistVector y(nv);
  auto recurse = [&](auto&& self, VertexIndex k) -> void {
    if (k == nv) {
      if (budget > 0 && out.twists_enumerated >= budget) {
        throw Error(ErrorKind::BudgetExceeded, "bar G enumeration exceeded " + std::to_string(budget) + " twists");
      }
      ++out.twists_enumerated;
      out.members.push_back(apply_twists(graph, chain, family.front(), y.normalized()));
      return;
    }
    std::int64_t lo = std::numeric_limits<std::int64_t>::min(), hi = std::numeric_limits<std::int64_t>::max();
    for (VertexIndex j = 0; j < k; ++j) {
      lo = std::max(lo, y[j] - bound[k][j]);
      hi = std::min(hi, y[j] + bound[j][k]);
    }
    for (std::int64_t x = lo; x <= hi; ++x) {
      y[k] = x;
      self(self, k + 1);
    }
  };
  y[0] = 0;
  recurse(recurse, 1);
  std::sort(out.members.begin(), out.members.end());
  out.members.erase(std::unique(out.members.begin(), out.members.end()), out.members.end());

  // Connectivity under single twists (either direction) within the set.
  if (!out.members.empty()) {
    std::vector<bool> seen(out.members.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const auto& cur = out.members[stack.back()];
      stack.pop_back();
      for (VertexIndex v = 0; v < nv; ++v) {
        for (int dir : {1, -1}) {
          auto next = twist(graph, chain, cur, v, dir);
          auto it = std::lower_bound(out.members.begin(), out.members.end(), next);
          if (it == out.members.end() || *it != next) continue;
          std::size_t idx = static_cast<std::size_t>(it - out.members.begin());
          if (!seen[idx]) {
            seen[idx] = true;
            ++reached;
            stack.push_back(idx);
          }
        }
      }
    }
    out.connected = reached == out.members.size();
  }
  return out;
}

std::vector<TwistVector> paths_to_family(const TwistClassIndex& index, const AdmissibleMultidegree& w,
                                         const std::vector<AdmissibleMultidegree>& family) {
  FamilyPaths fp = locate_family(index, family);
  auto loc = index.locate(w);
  std::vector<TwistVector> out;
  for (const auto& target : fp.locations) {
    auto t = index.path(loc, target);
    if (!t) throw Error(ErrorKind::NotEquivalent, "multidegree is not a twist of the family");
    out.push_back(std::move(*t));
  }
  return out;
}

bool twist_section_certificate(const std::vector<TwistVector>& paths, const std::vector<bool>& subset) {
  const std::size_t nv = paths.size();
  if (subset.size() != nv || std::none_of(subset.begin(), subset.end(), [](bool b) { return b; })) {
    throw Error(ErrorKind::PreconditionFailed, "subset must be a nonempty vertex mask");
  }
  for (VertexIndex v = 0; v < nv; ++v) {
    bool contains_subset = true;
    for (VertexIndex u = 0; u < nv; ++u) {
      if (subset[u] && paths[v][u] == 0) contains_subset = false;
    }
    if (contains_subset) continue;
    if (subset[v] && paths[v][v] == 0) continue;
    return false;
  }
  return true;
}

bool twist_section_certificate(const TwistClassIndex& index, const AdmissibleMultidegree& w,
                               const std::vector<AdmissibleMultidegree>& family, const std::vector<bool>& subset) {
  return twist_section_certificate(paths_to_family(index, w, family), subset);
}

AdmissibleMultidegree twist_subset(const MultiGraph& graph, const ChainStructure& chain,
                                   const AdmissibleMultidegree& w, const std::vector<bool>& subset) {
  AdmissibleMultidegree out = w;
  for (VertexIndex v = 0; v < graph.num_vertices(); ++v) {
    if (subset[v]) out = twist(graph, chain, out, v, 1);
  }
  return out;
}

NodeDivisor d_wv_along(const MultiGraph& graph, const ChainStructure& chain, const AdmissibleMultidegree& w,
                       VertexIndex v, const std::vector<VertexIndex>& sequence) {
  NodeDivisor out;
  out.vertex = v;
  AdmissibleMultidegree cur = w;
  for (VertexIndex u : sequence) {
    AdmissibleMultidegree next = twist(graph, chain, cur, u, 1);
    if (u == v) {
      for (EdgeIndex e : graph.incident_edges(v)) {
        if (cur.mu[e] == 0) out.add(e, -1);
      }
    } else {
      for (EdgeIndex e : graph.incident_edges(u)) {
        if (graph.edge(e).other(u) == v && next.mu[e] == 0) out.add(e, 1);
      }
    }
    cur = std::move(next);
  }
  return out;
}

NodeDivisor d_wv(const MultiGraph& graph, const ChainStructure& chain,
                 const std::vector<AdmissibleMultidegree>& family, const AdmissibleMultidegree& w, VertexIndex v) {
  if (v >= graph.num_vertices() || family.size() != graph.num_vertices()) {
    throw Error(ErrorKind::PreconditionFailed, "vertex or family does not match the graph");
  }
  TwistVector t = minimal_path(graph, chain, w, family[v]);
  std::vector<VertexIndex> sequence;
  for (VertexIndex u = 0; u < graph.num_vertices(); ++u) {
    for (std::int64_t i = 0; i < t[u]; ++i) sequence.push_back(u);
  }
  NodeDivisor out = d_wv_along(graph, chain, w, v, sequence);
  if (out.degree() != family[v].w[v] - w.w[v]) {
    throw Error(ErrorKind::PreconditionFailed, "degree of D_{w,v} does not match the degree change at v");
  }
  return out;
}

MetricDivisor d_mu(const MetricGraph& metric, const AdmissibleMultidegree& w) {
  if (w.mu.size() != metric.model().num_edges()) {
    throw Error(ErrorKind::PreconditionFailed, "multidegree does not belong to this graph");
  }
  MetricDivisor out;
  for (EdgeIndex e = 0; e < w.mu.size(); ++e) {
    if (w.mu[e] != 0) out.add(MetricPoint::on_edge(metric, e, Rational(w.mu[e])), 1);
  }
  return out;
}

RiemannTwist riemann_twist(const MultiGraph& graph, const ChainStructure& chain, const AdmissibleMultidegree& w0,
                           VertexIndex v0) {
  validate(graph, chain, w0);
  if (v0 >= graph.num_vertices()) throw Error(ErrorKind::UnknownVertex, "vertex index out of range");
  SubdividedGraph sub(graph, chain);
  const MultiGraph& tg = sub.graph();
  Divisor can = canonical_divisor(tg);
  Divisor reduced = reduce(tg, can - induced_multidegree(sub, w0), v0).reduced;

  // On a chain carrying a 1 at position k, firing i -> min(i, n-i, k, n-k)
  // adds one chip at both ends and takes one chip from positions k and n-k.
  Divisor fixed = reduced;
  for (EdgeIndex e = 0; e < graph.num_edges(); ++e) {
    const std::int64_t n = chain[e];
    std::int64_t k = 0;
    for (std::int64_t i = 1; i < n; ++i) {
      if (reduced[sub.new_vertex(e, i)] == 1) k = i;
    }
    if (k == 0) continue;
    TwistVector fire_fn(tg.num_vertices());
    const std::int64_t cap = std::min(k, n - k);
    for (std::int64_t i = 1; i < n; ++i) fire_fn[sub.new_vertex(e, i)] = std::min({i, n - i, cap});
    fixed = apply_firings(tg, fixed, fire_fn);
  }

  auto result = admissible_from_divisor(sub, can - fixed);
  if (!result) throw Error(ErrorKind::PreconditionFailed, "w_can - w'' is not admissible");
  if (!twist_equivalent(graph, chain, *result, w0)) {
    throw Error(ErrorKind::PreconditionFailed, "Riemann twist is not a twist of w0");
  }
  if (!satisfies_burning_condition(tg, fixed, v0)) {
    throw Error(ErrorKind::PreconditionFailed, "w'' is not concentrated at v0");
  }
  const std::int64_t d = w0.degree();
  const std::int64_t g = graph.genus();
  return RiemannTwist{std::move(*result), std::max(d + 1 - g, g), std::move(reduced), std::move(fixed)};
}

}  // namespace tropdeg
