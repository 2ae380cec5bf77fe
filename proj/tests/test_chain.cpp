#include <doctest.h>

#include <set>

#include "support/oracles.hpp"
#include "tropdeg/chain.hpp"
#include "tropdeg/chip_firing.hpp"
#include "tropdeg/error.hpp"

using namespace tropdeg;

namespace {

MultiGraph triangle() {
  return MultiGraph::build({{"a"}, {"b"}, {"c"}}, {{"ab", "a", "b"}, {"bc", "b", "c"}, {"ca", "c", "a"}});
}

MultiGraph parallel(int edges) {
  std::vector<EdgeSpec> es;
  for (int i = 1; i <= edges; ++i) es.push_back({"e" + std::to_string(i), "v", "w"});
  return MultiGraph::build({{"v"}, {"w"}}, es);
}

AdmissibleMultidegree md(std::vector<std::int64_t> w, std::vector<std::int64_t> mu) {
  return AdmissibleMultidegree{std::move(w), std::move(mu)};
}

// Fires v and, on each incident edge, the new vertices from v up to the
// sigma(e,v) mu(e)-th one counted from v.
Divisor twist_by_firing(const MultiGraph& g, const ChainStructure& chain, const SubdividedGraph& sub,
                        const AdmissibleMultidegree& w, VertexIndex v) {
  TwistVector t(sub.graph().num_vertices());
  t[v] = 1;
  for (EdgeIndex e : g.incident_edges(v)) {
    std::int64_t k = ((g.sigma(e, v) * w.mu[e]) % chain[e] + chain[e]) % chain[e];
    for (std::int64_t i = 1; i <= k; ++i) {
      std::int64_t pos = g.edge(e).tail == v ? i : chain[e] - i;
      t[sub.new_vertex(e, pos)] = 1;
    }
  }
  return oracle::fire_vector(sub.graph(), induced_multidegree(sub, w), t);
}

}  // namespace

TEST_CASE("subdivision sizes and genus") {
  MultiGraph c3 = triangle();
  SubdividedGraph same = subdivide(c3, ChainStructure::trivial(c3));
  CHECK(same.graph().num_vertices() == 3);
  CHECK(same.graph().num_edges() == 3);

  MultiGraph edge = MultiGraph::build({{"a"}, {"b"}}, {{"e", "a", "b"}});
  SubdividedGraph path = subdivide(edge, ChainStructure(edge, {4}));
  CHECK(path.graph().num_vertices() == 5);
  CHECK(path.graph().num_edges() == 4);
  for (std::int64_t i = 1; i <= 3; ++i) {
    VertexIndex x = path.new_vertex(0, i);
    CHECK_FALSE(path.origin(x).original);
    CHECK(path.origin(x).position == i);
    CHECK(path.graph().valence(x) == 2);
  }

  MultiGraph b3 = parallel(3);
  CHECK(subdivide(b3, ChainStructure(b3, {2, 2, 2})).graph().genus() == 2);
  CHECK_THROWS_AS(ChainStructure(edge, {0}), Error);
}

TEST_CASE("induced multidegree puts the 1 on the mu-th new vertex") {
  MultiGraph edge = MultiGraph::build({{"a"}, {"b"}}, {{"e", "a", "b"}});
  ChainStructure n4(edge, {4});
  SubdividedGraph sub = subdivide(edge, n4);
  Divisor d = induced_multidegree(sub, md({1, 0}, {2}));
  CHECK(d[sub.new_vertex(0, 2)] == 1);
  CHECK(d.degree() == 2);
  CHECK(induced_multidegree(sub, md({1, 2}, {0})) == Divisor(std::vector<std::int64_t>{1, 2, 0, 0, 0}));

  // Four chains of length 3 between v and w, two of them carrying a 1.
  MultiGraph g = parallel(4);
  ChainStructure n3(g, {3, 3, 3, 3});
  SubdividedGraph s4 = subdivide(g, n3);
  Divisor fig = induced_multidegree(s4, md({0, 0}, {0, 1, 2, 0}));
  int ones = 0;
  for (VertexIndex x = 2; x < s4.graph().num_vertices(); ++x) ones += fig[x] == 1;
  CHECK(ones == 2);
  CHECK(fig[s4.new_vertex(1, 1)] == 1);
  CHECK(fig[s4.new_vertex(2, 2)] == 1);
}

TEST_CASE("twist on four chains of length three") {
  MultiGraph g = parallel(4);
  ChainStructure n3(g, {3, 3, 3, 3});
  AdmissibleMultidegree w = md({2, 0}, {0, 1, 2, 0});
  AdmissibleMultidegree t = twist(g, n3, w, 0);
  CHECK(t.mu == std::vector<std::int64_t>{1, 2, 0, 1});
  CHECK(t.w == std::vector<std::int64_t>{0, 1});
  CHECK(twist(g, n3, t, 0, -1) == w);
  CHECK(t.degree() == w.degree());
}

TEST_CASE("twists on trivial chains are chip firing") {
  oracle::Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    MultiGraph g = oracle::random_graph(rng, 5, 4);
    ChainStructure trivial = ChainStructure::trivial(g);
    Divisor d = oracle::random_divisor(rng, g, 5);
    VertexIndex v = static_cast<VertexIndex>(oracle::uniform(rng, 0, static_cast<int>(g.num_vertices()) - 1));
    AdmissibleMultidegree t = twist(g, trivial, plain_multidegree(g, d.coeffs()), v);
    CHECK(t.w == fire(g, d, v).coeffs());
  }
}

TEST_CASE("twist then inverse twist is the identity and degree is kept") {
  oracle::Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    MultiGraph g = oracle::random_graph(rng, 5, 4);
    ChainStructure chain = oracle::random_chain(rng, g, 4);
    AdmissibleMultidegree w = oracle::random_multidegree(rng, g, chain);
    VertexIndex v = static_cast<VertexIndex>(oracle::uniform(rng, 0, static_cast<int>(g.num_vertices()) - 1));
    AdmissibleMultidegree t = twist(g, chain, w, v);
    CHECK(t.degree() == w.degree());
    CHECK_NOTHROW(validate(g, chain, t));
    CHECK(twist(g, chain, t, v, -1) == w);
    CHECK(twist(g, chain, twist(g, chain, w, v, -1), v) == w);
    std::int64_t k = oracle::uniform(rng, -4, 4);
    AdmissibleMultidegree step = w;
    for (std::int64_t i = 0; i < std::abs(k); ++i) step = twist(g, chain, step, v, k > 0 ? 1 : -1);
    CHECK(twist_times(g, chain, w, v, k) == step);
  }
}

TEST_CASE("twisting agrees with firing on the subdivided graph") {
  oracle::Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    MultiGraph g = oracle::random_graph(rng, 5, 4);
    ChainStructure chain = oracle::random_chain(rng, g, 4);
    SubdividedGraph sub = subdivide(g, chain);
    AdmissibleMultidegree w = oracle::random_multidegree(rng, g, chain);
    VertexIndex v = static_cast<VertexIndex>(oracle::uniform(rng, 0, static_cast<int>(g.num_vertices()) - 1));
    CHECK(induced_multidegree(sub, twist(g, chain, w, v)) == twist_by_firing(g, chain, sub, w, v));
  }
}

TEST_CASE("concentration examples") {
  MultiGraph c3 = triangle();
  ChainStructure trivial = ChainStructure::trivial(c3);
  ConcentrationCheck yes = is_concentrated(c3, trivial, plain_multidegree(c3, {3, 0, 0}), 0);
  CHECK(yes.concentrated);
  CHECK(yes.ordering == std::vector<VertexIndex>{0, 1, 2});
  CHECK_FALSE(is_concentrated(c3, trivial, plain_multidegree(c3, {1, 1, 1}), 0).concentrated);
  MultiGraph single = MultiGraph::build({{"x"}}, {});
  CHECK(is_concentrated(single, ChainStructure::trivial(single), plain_multidegree(single, {0}), 0).concentrated);
}

TEST_CASE("concentrate examples") {
  MultiGraph c3 = triangle();
  ChainStructure trivial = ChainStructure::trivial(c3);
  Concentration c = concentrate(c3, trivial, plain_multidegree(c3, {0, 0, 3}), 0);
  CHECK(c.multidegree == plain_multidegree(c3, {3, 0, 0}));
  CHECK(apply_twists(c3, trivial, plain_multidegree(c3, {0, 0, 3}), c.twists) == c.multidegree);
  CHECK(concentrate(c3, trivial, plain_multidegree(c3, {3, 0, 0}), 0).multidegree == plain_multidegree(c3, {3, 0, 0}));

  // One edge subdivided into three, degree 2 at the far end.
  MultiGraph edge = MultiGraph::build({{"v1"}, {"v2"}}, {{"e", "v1", "v2"}});
  ChainStructure n3(edge, {3});
  AdmissibleMultidegree w0 = md({0, 2}, {0});
  AdmissibleMultidegree got = concentrate(edge, n3, w0, 0).multidegree;
  CHECK(got == md({2, 0}, {0}));
  // Every twist sequence of length <= 8 that ends concentrated at v1 and
  // nonnegative at v2 ends at the same multidegree. Moving two units across
  // three segments takes six twists.
  std::set<AdmissibleMultidegree> seen{w0}, frontier{w0}, hits;
  for (int step = 0; step <= 8; ++step) {
    for (const auto& w : frontier) {
      if (w.w[1] >= 0 && is_concentrated(edge, n3, w, 0).concentrated) hits.insert(w);
    }
    std::set<AdmissibleMultidegree> next;
    for (const auto& w : frontier) {
      for (VertexIndex v : {0, 1}) {
        for (int dir : {1, -1}) {
          auto t = twist(edge, n3, w, v, dir);
          if (seen.insert(t).second) next.insert(t);
        }
      }
    }
    frontier = next;
  }
  CHECK(hits == std::set<AdmissibleMultidegree>{got});
}

TEST_CASE("admissible pull-back") {
  MultiGraph edge = MultiGraph::build({{"a"}, {"b"}}, {{"e", "a", "b"}});
  SubdividedGraph sub = subdivide(edge, ChainStructure(edge, {4}));
  auto zero = admissible_from_divisor(sub, Divisor(std::vector<std::int64_t>{1, 0, 0, 0, 0}));
  REQUIRE(zero);
  CHECK(zero->mu == std::vector<std::int64_t>{0});
  Divisor two(5);
  two[sub.new_vertex(0, 2)] = 2;
  CHECK_FALSE(admissible_from_divisor(sub, two));
  Divisor pair(5);
  pair[sub.new_vertex(0, 1)] = 1;
  pair[sub.new_vertex(0, 3)] = 1;
  CHECK_FALSE(admissible_from_divisor(sub, pair));
}

TEST_CASE("reduced divisors on the subdivided graph are admissible") {
  oracle::Rng rng(24);
  for (int trial = 0; trial < 150; ++trial) {
    MultiGraph g = oracle::random_graph(rng, 4, 3);
    ChainStructure chain = oracle::random_chain(rng, g, 4);
    SubdividedGraph sub = subdivide(g, chain);
    Divisor d = oracle::random_divisor(rng, sub.graph(), 5);
    Reduction r = reduce(sub.graph(), d, 0);
    CHECK(admissible_from_divisor(sub, r.reduced).has_value());
  }
}

TEST_CASE("twist equivalence recovers applied twists") {
  MultiGraph c3 = triangle();
  ChainStructure chain(c3, {2, 3, 1});
  AdmissibleMultidegree w = md({1, 0, 1}, {1, 0, 0});
  auto one = twist_equivalent(c3, chain, w, twist(c3, chain, w, 1));
  REQUIRE(one);
  CHECK(*one == TwistVector(std::vector<std::int64_t>{0, 1, 0}));
  CHECK_FALSE(twist_equivalent(c3, chain, w, md({2, 0, 1}, {1, 0, 0})));

  oracle::Rng rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    MultiGraph g = oracle::random_graph(rng, 5, 3);
    ChainStructure n = oracle::random_chain(rng, g, 3);
    AdmissibleMultidegree w0 = oracle::random_multidegree(rng, g, n);
    TwistVector applied(g.num_vertices());
    AdmissibleMultidegree cur = w0;
    for (int k = 0; k < 5; ++k) {
      VertexIndex v = static_cast<VertexIndex>(oracle::uniform(rng, 0, static_cast<int>(g.num_vertices()) - 1));
      cur = twist(g, n, cur, v);
      applied[v] += 1;
    }
    auto got = twist_equivalent(g, n, w0, cur);
    REQUIRE(got);
    CHECK(*got == applied.normalized());
  }
}

TEST_CASE("concentrated on the chains iff concentrated on the subdivision") {
  oracle::Rng rng(26);
  for (int trial = 0; trial < 300; ++trial) {
    MultiGraph g = oracle::random_graph(rng, 4, 3);
    ChainStructure chain = oracle::random_chain(rng, g, 4);
    SubdividedGraph sub = subdivide(g, chain);
    AdmissibleMultidegree w = oracle::random_multidegree(rng, g, chain);
    VertexIndex v0 = static_cast<VertexIndex>(oracle::uniform(rng, 0, static_cast<int>(g.num_vertices()) - 1));
    const MultiGraph& tg = sub.graph();
    bool on_chains = is_concentrated(g, chain, w, v0).concentrated;
    bool on_sub = is_concentrated(tg, ChainStructure::trivial(tg),
                                  plain_multidegree(tg, induced_multidegree(sub, w).coeffs()), v0)
                      .concentrated;
    CHECK(on_chains == on_sub);
  }
}

TEST_CASE("on plain graphs concentration is the burning condition") {
  oracle::Rng rng(27);
  for (int trial = 0; trial < 300; ++trial) {
    MultiGraph g = oracle::random_graph(rng, 6, 4);
    Divisor d = oracle::random_divisor(rng, g, 6);
    VertexIndex v0 = static_cast<VertexIndex>(oracle::uniform(rng, 0, static_cast<int>(g.num_vertices()) - 1));
    bool conc = is_concentrated(g, ChainStructure::trivial(g), plain_multidegree(g, d.coeffs()), v0).concentrated;
    CHECK(conc == oracle::burning_by_subsets(g, d, v0));
  }
}

TEST_CASE("greedy ordering search is complete") {
  oracle::Rng rng(28);
  for (int trial = 0; trial < 200; ++trial) {
    MultiGraph g = oracle::random_graph(rng, 6, 3);
    ChainStructure chain = oracle::random_chain(rng, g, 3);
    AdmissibleMultidegree w = oracle::random_multidegree(rng, g, chain);
    VertexIndex v0 = static_cast<VertexIndex>(oracle::uniform(rng, 0, static_cast<int>(g.num_vertices()) - 1));
    CHECK(is_concentrated(g, chain, w, v0).concentrated == oracle::concentrated_by_orderings(g, chain, w, v0));
  }
}
