#include "tropdeg/pct.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "tropdeg/error.hpp"

namespace tropdeg {

std::size_t MultitreeData::bar_edge(VertexIndex a, VertexIndex b) const {
  auto [u, v] = std::minmax(a, b);
  for (std::size_t i = 0; i < bar_edges.size(); ++i) {
    if (bar_edges[i].u == u && bar_edges[i].v == v) return i;
  }
  throw Error(ErrorKind::UnknownEdge, "vertices are not adjacent");
}

MultitreeData is_multitree(const MultiGraph& graph) {
  MultitreeData out;
  std::map<std::pair<VertexIndex, VertexIndex>, std::vector<EdgeIndex>> groups;
  for (EdgeIndex e = 0; e < graph.num_edges(); ++e) {
    groups[std::minmax(graph.edge(e).tail, graph.edge(e).head)].push_back(e);
  }
  for (auto& [key, edges] : groups) out.bar_edges.push_back(BarEdge{key.first, key.second, edges});
  out.multitree = out.bar_edges.size() + 1 == graph.num_vertices();
  if (out.multitree) return out;

  // Connected with too many edges: a depth-first search meets a back edge.
  const std::size_t n = graph.num_vertices();
  std::vector<std::vector<VertexIndex>> adj(n);
  for (const auto& be : out.bar_edges) {
    adj[be.u].push_back(be.v);
    adj[be.v].push_back(be.u);
  }
  std::vector<std::ptrdiff_t> parent(n, -1);
  std::vector<int> state(n, 0);
  auto dfs = [&](auto&& self, VertexIndex x) -> bool {
    state[x] = 1;
    for (VertexIndex y : adj[x]) {
      if (static_cast<std::ptrdiff_t>(y) == parent[x]) continue;
      if (state[y] == 1) {
        for (VertexIndex z = x; z != y; z = static_cast<VertexIndex>(parent[z])) out.cycle.push_back(z);
        out.cycle.push_back(y);
        std::reverse(out.cycle.begin(), out.cycle.end());
        return true;
      }
      if (state[y] == 0) {
        parent[y] = static_cast<std::ptrdiff_t>(x);
        if (self(self, y)) return true;
      }
    }
    state[x] = 2;
    return false;
  };
  dfs(dfs, graph.least_vertex());
  return out;
}

namespace {

void require_tree(const MultitreeData& tree) {
  if (!tree.multitree) throw Error(ErrorKind::NotMultitree, "the graph is not a multitree");
}

void check_side(const MultitreeData& tree, const EdgeSide& side) {
  if (side.edge >= tree.bar_edges.size()) throw Error(ErrorKind::UnknownEdge, "bar edge index out of range");
  const BarEdge& be = tree.bar_edges[side.edge];
  if (side.vertex != be.u && side.vertex != be.v) {
    throw Error(ErrorKind::PreconditionFailed, "vertex is not an endpoint of the bar edge");
  }
}

std::vector<std::vector<std::pair<VertexIndex, std::size_t>>> bar_adjacency(std::size_t n, const MultitreeData& tree) {
  std::vector<std::vector<std::pair<VertexIndex, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < tree.bar_edges.size(); ++i) {
    adj[tree.bar_edges[i].u].emplace_back(tree.bar_edges[i].v, i);
    adj[tree.bar_edges[i].v].emplace_back(tree.bar_edges[i].u, i);
  }
  return adj;
}

}  // namespace

std::vector<bool> side_set(const MultiGraph& graph, const MultitreeData& tree, const EdgeSide& side) {
  require_tree(tree);
  check_side(tree, side);
  auto adj = bar_adjacency(graph.num_vertices(), tree);
  std::vector<bool> in(graph.num_vertices(), false);
  std::vector<VertexIndex> stack{side.vertex};
  in[side.vertex] = true;
  while (!stack.empty()) {
    VertexIndex x = stack.back();
    stack.pop_back();
    for (auto [y, e] : adj[x]) {
      if (e == side.edge || in[y]) continue;
      in[y] = true;
      stack.push_back(y);
    }
  }
  return in;
}

AdmissibleMultidegree twist_edge_side(const MultiGraph& graph, const ChainStructure& chain,
                                      const MultitreeData& tree, const AdmissibleMultidegree& w,
                                      const EdgeSide& side, std::int64_t times) {
  require_tree(tree);
  check_side(tree, side);
  return twist_edges_times(graph, chain, w, side.vertex, tree.bar_edges[side.edge].parallel, times);
}

namespace {

// The induced multigraph, chain and multidegree on a vertex subset.
struct Restriction {
  MultiGraph graph;
  ChainStructure chain;
  AdmissibleMultidegree w;
  VertexIndex vertex;
};

Restriction restrict_to(const MultiGraph& graph, const ChainStructure& chain, const AdmissibleMultidegree& w,
                        const std::vector<bool>& keep, VertexIndex v) {
  std::vector<VertexSpec> vs;
  std::vector<EdgeSpec> es;
  std::vector<std::int64_t> lengths, mu, ww;
  for (VertexIndex x = 0; x < graph.num_vertices(); ++x) {
    if (!keep[x]) continue;
    vs.push_back({graph.vertex_id(x), graph.vertex_genus(x)});
    ww.push_back(w.w[x]);
  }
  for (EdgeIndex e = 0; e < graph.num_edges(); ++e) {
    const Edge& edge = graph.edge(e);
    if (!keep[edge.tail] || !keep[edge.head]) continue;
    es.push_back({edge.id, graph.vertex_id(edge.tail), graph.vertex_id(edge.head)});
    lengths.push_back(chain[e]);
    mu.push_back(w.mu[e]);
  }
  MultiGraph sub = MultiGraph::build(vs, es);
  ChainStructure sub_chain(sub, lengths);
  VertexIndex sv = sub.vertex_index(graph.vertex_id(v));
  return Restriction{std::move(sub), std::move(sub_chain), AdmissibleMultidegree{std::move(ww), std::move(mu)}, sv};
}

bool connected_subset(const std::vector<std::vector<std::pair<VertexIndex, std::size_t>>>& adj,
                      const std::vector<bool>& keep, VertexIndex start) {
  std::vector<bool> seen(keep.size(), false);
  std::vector<VertexIndex> stack{start};
  seen[start] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    VertexIndex x = stack.back();
    stack.pop_back();
    for (auto [y, e] : adj[x]) {
      if (keep[y] && !seen[y]) {
        seen[y] = true;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == static_cast<std::size_t>(std::count(keep.begin(), keep.end(), true));
}

}  // namespace

PctFamily pct_family(const MultiGraph& graph, const ChainStructure& chain, const AdmissibleMultidegree& w0) {
  PctFamily out;
  out.tree = is_multitree(graph);
  require_tree(out.tree);
  out.family = canonical_family(graph, chain, w0);
  const std::size_t n = graph.num_vertices();
  TwistClassIndex index(graph, chain);

  for (std::size_t i = 0; i < out.tree.bar_edges.size(); ++i) {
    const BarEdge& be = out.tree.bar_edges[i];
    for (VertexIndex v : {be.u, be.v}) {
      EdgeSide side{i, v};
      VertexIndex far = be.other(v);
      auto path = index.path(out.family[v], out.family[far]);
      if (!path) throw Error(ErrorKind::NotEquivalent, "family members are not related by twists");
      auto in = side_set(graph, out.tree, side);
      const std::int64_t b = (*path)[v];
      for (VertexIndex x = 0; x < n; ++x) {
        if ((*path)[x] != (in[x] ? b : 0)) {
          std::string why;
          for (VertexIndex y = 0; y < n && why.empty(); ++y) {
            if (out.family[y].w[y] < 0) why = " (w_" + graph.vertex_id(y) + " is negative at " + graph.vertex_id(y) + ")";
          }
          throw Error(ErrorKind::ConditionIIViolated,
                      "the twist from w_" + graph.vertex_id(v) + " to w_" + graph.vertex_id(far) +
                          " is not a nonnegative multiple of the edge-side twist" + why);
        }
      }
      if (twist_edge_side(graph, chain, out.tree, out.family[v], side, b) != out.family[far]) {
        throw Error(ErrorKind::ConditionIIViolated, "edge-side twists do not reach w_" + graph.vertex_id(far));
      }
      out.b[side] = b;
    }
  }

  // Restrictions to connected subtrees through v. All subsets are tried up to
  // twelve vertices; beyond that, the breadth-first balls around v.
  auto adj = bar_adjacency(n, out.tree);
  for (VertexIndex v = 0; v < n; ++v) {
    std::vector<std::vector<bool>> subsets;
    if (n <= 12) {
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (!(mask >> v & 1u)) continue;
        std::vector<bool> keep(n);
        for (VertexIndex x = 0; x < n; ++x) keep[x] = mask >> x & 1u;
        if (connected_subset(adj, keep, v)) subsets.push_back(std::move(keep));
      }
    } else {
      std::vector<bool> keep(n, false);
      std::deque<VertexIndex> queue{v};
      keep[v] = true;
      subsets.push_back(keep);
      while (!queue.empty()) {
        VertexIndex x = queue.front();
        queue.pop_front();
        for (auto [y, e] : adj[x]) {
          if (keep[y]) continue;
          keep[y] = true;
          queue.push_back(y);
          subsets.push_back(keep);
        }
      }
    }
    for (const auto& keep : subsets) {
      Restriction r = restrict_to(graph, chain, out.family[v], keep, v);
      if (!is_concentrated(r.graph, r.chain, r.w, r.vertex).concentrated) {
        throw Error(ErrorKind::PreconditionFailed,
                    "restriction of w_" + graph.vertex_id(v) + " to a subtree is not concentrated");
      }
      ++out.subtrees_checked;
    }
  }
  out.restriction_certificate = true;
  return out;
}

std::map<EdgeSide, DivisorSequence> divisor_sequences(const MultiGraph& graph, const ChainStructure& chain,
                                                      const AdmissibleMultidegree& w0, const PctFamily& family) {
  std::map<EdgeSide, DivisorSequence> out;
  const std::int64_t d = w0.degree();
  for (const auto& [side, b] : family.b) {
    DivisorSequence seq;
    seq.side = side;
    seq.b = b;
    AdmissibleMultidegree wi = family.family[side.vertex];
    for (std::int64_t i = 0; i <= b + 1; ++i) {
      NodeDivisor di = d_wv(graph, chain, family.family, wi, side.vertex);
      if (!di.is_effective()) throw Error(ErrorKind::PreconditionFailed, "divisor sequence has a non-effective term");
      if (i == 0 && !di.coeffs.empty()) throw Error(ErrorKind::PreconditionFailed, "D_0 is not zero");
      if (i > 0) {
        for (const auto& [e, c] : seq.divisors.back().coeffs) {
          auto it = di.coeffs.find(e);
          if (it == di.coeffs.end() || it->second < c) {
            throw Error(ErrorKind::PreconditionFailed, "divisor sequence is not nondecreasing");
          }
        }
        seq.critical.push_back(di != seq.divisors.back());
      }
      seq.degrees.push_back(di.degree());
      seq.divisors.push_back(std::move(di));
      wi = twist_edge_side(graph, chain, family.tree, wi, side, 1);
    }
    seq.exceeds_degree = seq.degrees.back() > d;
    out.emplace(side, std::move(seq));
  }
  return out;
}

std::vector<std::int64_t> multivanishing_sequence(const std::vector<std::int64_t>& degrees,
                                                  const std::vector<bool>& critical,
                                                  const std::vector<std::int64_t>& dims) {
  const std::size_t len = degrees.size();
  if (len < 2 || dims.size() != len || critical.size() + 1 != len) {
    throw Error(ErrorKind::InvalidFiltration, "need degrees and dims for D_0..D_{b+1} and criticality for 0..b");
  }
  if (degrees.front() != 0) throw Error(ErrorKind::InvalidFiltration, "D_0 must have degree 0");
  if (dims.back() != 0) throw Error(ErrorKind::InvalidFiltration, "the last space must vanish");
  for (std::size_t i = 0; i + 1 < len; ++i) {
    if (dims[i] < dims[i + 1]) throw Error(ErrorKind::InvalidFiltration, "dims must be nonincreasing");
    if (critical[i] && degrees[i + 1] <= degrees[i]) {
      throw Error(ErrorKind::InvalidFiltration, "a critical step must raise the degree");
    }
    if (!critical[i] && (degrees[i + 1] != degrees[i] || dims[i] != dims[i + 1])) {
      throw Error(ErrorKind::InvalidFiltration, "a non-critical step must repeat the divisor and the space");
    }
  }
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i + 1 < len; ++i) {
    if (!critical[i]) continue;
    for (std::int64_t k = 0; k < dims[i] - dims[i + 1]; ++k) out.push_back(degrees[i]);
  }
  return out;
}

namespace {

std::size_t critical_index(const DivisorSequence& seq, std::int64_t value) {
  for (std::size_t j = 0; j < seq.critical.size(); ++j) {
    if (seq.critical[j] && seq.degrees[j] == value) return j;
  }
  throw Error(ErrorKind::InconsistentProfile,
              "value " + std::to_string(value) + " is not the degree of a critical divisor");
}

void check_profile_shape(const std::vector<std::int64_t>& a) {
  if (a.empty()) throw Error(ErrorKind::InconsistentProfile, "empty profile");
  if (!std::is_sorted(a.begin(), a.end())) throw Error(ErrorKind::InconsistentProfile, "profile is not sorted");
}

std::optional<std::size_t> one_direction(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& a_prime,
                                         const DivisorSequence& seq, const DivisorSequence& seq_prime, std::int64_t b) {
  const std::size_t r = a.size() - 1;
  for (std::size_t l = 0; l <= r; ++l) {
    const std::size_t j = critical_index(seq, a[l]);
    const std::int64_t k = b - static_cast<std::int64_t>(j);
    if (k < 0 || k >= static_cast<std::int64_t>(seq_prime.degrees.size())) {
      throw Error(ErrorKind::InconsistentProfile, "critical index beyond b");
    }
    if (a_prime[r - l] < seq_prime.degrees[static_cast<std::size_t>(k)]) return l;
  }
  return std::nullopt;
}

}  // namespace

InequalityCheck check_inequality_I(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& a_prime,
                                   const DivisorSequence& seq, const DivisorSequence& seq_prime, std::int64_t b) {
  check_profile_shape(a);
  check_profile_shape(a_prime);
  if (a.size() != a_prime.size()) throw Error(ErrorKind::InconsistentProfile, "profiles have different lengths");
  InequalityCheck out;
  if (auto l = one_direction(a, a_prime, seq, seq_prime, b)) {
    out.holds = false;
    out.failing_l = l;
    out.direction = 0;
    return out;
  }
  if (auto l = one_direction(a_prime, a, seq_prime, seq, b)) {
    out.holds = false;
    out.failing_l = l;
    out.direction = 1;
  }
  return out;
}

namespace {

AdmissibleMultidegree build_from_root(const MultiGraph& graph, const ChainStructure& chain, const PctFamily& fam,
                                      const std::map<EdgeSide, std::int64_t>& t, VertexIndex root) {
  auto adj = bar_adjacency(graph.num_vertices(), fam.tree);
  AdmissibleMultidegree w = fam.family[root];
  std::vector<bool> seen(graph.num_vertices(), false);
  std::deque<std::pair<VertexIndex, std::ptrdiff_t>> queue{{root, -1}};
  seen[root] = true;
  while (!queue.empty()) {
    auto [x, via] = queue.front();
    queue.pop_front();
    for (auto [y, e] : adj[x]) {
      if (static_cast<std::ptrdiff_t>(e) == via) continue;
      EdgeSide side{e, x};
      w = twist_edge_side(graph, chain, fam.tree, w, side, t.at(side));
      if (!seen[y]) {
        seen[y] = true;
        queue.emplace_back(y, static_cast<std::ptrdiff_t>(e));
      }
    }
  }
  return w;
}

}  // namespace

PctWitness pct_witness(const MultiGraph& graph, const ChainStructure& chain, const AdmissibleMultidegree& w0,
                       const std::vector<std::int64_t>& r_v, const Profiles& profiles) {
  const std::size_t n = graph.num_vertices();
  if (r_v.size() != n) throw Error(ErrorKind::PreconditionFailed, "need one r_v per vertex");
  if (std::any_of(r_v.begin(), r_v.end(), [](std::int64_t x) { return x < 0; })) {
    throw Error(ErrorKind::PreconditionFailed, "r_v must be nonnegative");
  }
  const std::int64_t r = std::accumulate(r_v.begin(), r_v.end(), std::int64_t{0});
  PctFamily fam = pct_family(graph, chain, w0);
  auto seqs = divisor_sequences(graph, chain, w0, fam);

  for (const auto& [side, seq] : seqs) {
    auto it = profiles.find(side);
    if (it == profiles.end()) {
      throw Error(ErrorKind::InconsistentProfile, "missing profile for (" + std::to_string(side.edge) + ", " +
                                                      graph.vertex_id(side.vertex) + ")");
    }
    if (static_cast<std::int64_t>(it->second.size()) != r + 1) {
      throw Error(ErrorKind::InconsistentProfile, "profiles must have r + 1 entries");
    }
  }
  for (std::size_t i = 0; i < fam.tree.bar_edges.size(); ++i) {
    const BarEdge& be = fam.tree.bar_edges[i];
    EdgeSide a{i, be.u}, b{i, be.v};
    auto check = check_inequality_I(profiles.at(a), profiles.at(b), seqs.at(a), seqs.at(b), fam.b.at(a));
    if (!check.holds) {
      throw Error(ErrorKind::ProfileViolatesI, "multivanishing inequality fails on the edge " + graph.vertex_id(be.u) +
                                                   "-" + graph.vertex_id(be.v) + " at l = " +
                                                   std::to_string(*check.failing_l));
    }
  }

  PctWitness out;
  for (std::size_t i = 0; i < fam.tree.bar_edges.size(); ++i) {
    const BarEdge& be = fam.tree.bar_edges[i];
    for (VertexIndex v : {be.u, be.v}) {
      EdgeSide side{i, v};
      auto in = side_set(graph, fam.tree, side);
      std::int64_t sum = 0;
      for (VertexIndex x = 0; x < n; ++x) {
        if (in[x]) sum += r_v[x];
      }
      out.r_side[side] = sum;
    }
    // t is read off at the endpoint with the smaller id and completed to b.
    VertexIndex first = graph.vertex_id(be.u) < graph.vertex_id(be.v) ? be.u : be.v;
    EdgeSide s1{i, first}, s2{i, be.other(first)};
    const auto& a = profiles.at(s1);
    std::size_t ti = critical_index(seqs.at(s1), a[static_cast<std::size_t>(r - out.r_side[s1])]);
    out.t[s1] = static_cast<std::int64_t>(ti);
    out.t[s2] = fam.b.at(s1) - out.t[s1];
  }

  out.w = build_from_root(graph, chain, fam, out.t, graph.least_vertex());

  // (a) twists from each w_v to w, read per edge side.
  TwistClassIndex index(graph, chain);
  for (VertexIndex v = 0; v < n; ++v) {
    auto path = index.path(fam.family[v], out.w);
    if (!path) throw Error(ErrorKind::PreconditionFailed, "witness is not a twist of the family");
    for (std::size_t i = 0; i < fam.tree.bar_edges.size(); ++i) {
      const BarEdge& be = fam.tree.bar_edges[i];
      if (be.u != v && be.v != v) continue;
      VertexIndex far = be.other(v);
      if ((*path)[v] - (*path)[far] != out.t.at(EdgeSide{i, v})) {
        throw Error(ErrorKind::PreconditionFailed, "certificate (a) fails at " + graph.vertex_id(v));
      }
    }
  }
  out.certificates.t_counts = true;

  // (b) codimension bookkeeping at every vertex.
  for (VertexIndex v = 0; v < n; ++v) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < fam.tree.bar_edges.size(); ++i) {
      const BarEdge& be = fam.tree.bar_edges[i];
      if (be.u == v || be.v == v) sum += out.r_side.at(EdgeSide{i, be.other(v)});
    }
    if (sum != r - r_v[v]) throw Error(ErrorKind::PreconditionFailed, "certificate (b) fails at " + graph.vertex_id(v));
  }
  out.certificates.codim_sum = true;

  // (c)
  if (!in_bar_g(graph, chain, out.w, fam.family)) {
    throw Error(ErrorKind::PreconditionFailed, "certificate (c) fails: witness is outside bar G");
  }
  out.certificates.in_bar_g = true;

  for (VertexIndex root = 0; root < n; ++root) {
    if (build_from_root(graph, chain, fam, out.t, root) != out.w) {
      throw Error(ErrorKind::PreconditionFailed, "witness depends on the traversal root " + graph.vertex_id(root));
    }
  }
  out.certificates.root_independent = true;
  return out;
}

}  // namespace tropdeg
