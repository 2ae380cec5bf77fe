#include "tropdeg/gonality.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "tropdeg/chip_firing.hpp"
#include "tropdeg/error.hpp"

namespace tropdeg {

namespace {

int ceil_half(int g) { return (g + 1) / 2; }

std::int64_t resolve_scale(const MetricGraph& graph, const SearchOptions& options) {
  std::int64_t base = common_denominator(graph, {});
  return options.scale > 0 ? lcm(base, options.scale) : base;
}

class Budget {
 public:
  explicit Budget(std::int64_t cap) : cap_(cap) {}
  void tick() {
    if (cap_ > 0 && ++used_ > cap_) {
      throw Error(ErrorKind::BudgetExceeded, "search exceeded " + std::to_string(cap_) + " nodes");
    }
  }

 private:
  std::int64_t cap_;
  std::int64_t used_ = 0;
};

// Evaluates pred on every item with up to `jobs` threads; the result is in
// item order, so it does not depend on scheduling.
template <class T>
std::vector<char> parallel_test(const std::vector<T>& items, const std::function<bool(const T&)>& pred,
                                unsigned jobs) {
  std::vector<char> out(items.size(), 0);
  if (jobs <= 1 || items.size() < 2) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = pred(items[i]) ? 1 : 0;
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        out[i] = pred(items[i]) ? 1 : 0;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, items.size()); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

// Every effective divisor of degree k on vertices [0, n), in lexicographic
// order of the sorted vertex multiset.
void for_each_multiset(std::size_t n, int k, Budget& budget, const std::function<void(const Divisor&)>& visit) {
  Divisor cur(n);
  auto rec = [&](auto&& self, std::size_t from, int left) -> void {
    budget.tick();
    if (left == 0) {
      visit(cur);
      return;
    }
    for (std::size_t v = from; v < n; ++v) {
      ++cur[v];
      self(self, v, left - 1);
      --cur[v];
    }
  };
  rec(rec, 0, k);
}

// q-reduced effective divisors of degree d with D(q) >= min_at_q, most chips
// at q first. Chips away from q only ever make burning harder, so a partial
// placement that already fails the burning test is abandoned.
std::vector<Divisor> reduced_divisors(const MultiGraph& g, int d, VertexIndex q, int min_at_q, Budget& budget) {
  std::vector<Divisor> out;
  const std::size_t n = g.num_vertices();
  for (int k = 0; k <= d - min_at_q; ++k) {
    Divisor cur(n);
    cur[q] = d - k;
    auto rec = [&](auto&& self, std::size_t from, int left) -> void {
      budget.tick();
      if (left == 0) {
        out.push_back(cur);
        return;
      }
      for (std::size_t v = from; v < n; ++v) {
        if (v == q) continue;
        ++cur[v];
        if (satisfies_burning_condition(g, cur, q)) self(self, v, left - 1);
        --cur[v];
      }
    };
    rec(rec, 0, k);
  }
  return out;
}

std::string describe(const MetricGraph& graph, const MetricDivisor& d) { return format_divisor(graph, d); }

}  // namespace

MetricDivisor pencil_lcm(const std::vector<MetricDivisor>& divisors) {
  std::set<MetricPoint> support;
  for (const auto& d : divisors) {
    for (const auto& [p, c] : d.terms()) support.insert(p);
  }
  MetricDivisor out;
  for (const auto& p : support) {
    std::int64_t best = divisors.front()[p];
    for (const auto& d : divisors) best = std::max(best, d[p]);
    out.add(p, best);
  }
  return out;
}

std::vector<MetricDivisor> rank1_classes_lattice(const MetricGraph& graph, int d, VertexIndex q, int min_at_q,
                                                 const SearchOptions& options) {
  Lattice lattice(graph, resolve_scale(graph, options));
  Budget budget(options.budget);
  auto candidates = reduced_divisors(lattice.graph(), d, q, std::max(min_at_q, 1), budget);
  auto ok = parallel_test<Divisor>(
      candidates, [&](const Divisor& c) { return rank_at_least(lattice.graph(), c, 1, q); }, options.jobs);
  std::vector<MetricDivisor> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (ok[i]) out.push_back(lattice.from_lattice(candidates[i]));
  }
  return out;
}

std::optional<MetricDivisor> find_pencil(const MetricGraph& graph, int degree, VertexIndex q, int mult,
                                         const SearchOptions& options) {
  if (degree < mult || degree < 1) return std::nullopt;
  auto found = rank1_classes_lattice(graph, degree, q, mult, options);
  if (found.empty()) return std::nullopt;
  return found.front();
}

std::optional<MetricDivisor> find_pencil_containing(const MetricGraph& graph, int degree, const MetricDivisor& base,
                                                    const SearchOptions& options) {
  const int extra = degree - static_cast<int>(base.degree());
  if (extra < 0 || !base.is_effective()) return std::nullopt;
  std::int64_t scale = resolve_scale(graph, options);
  scale = lcm(scale, common_denominator(graph, {base}));
  Lattice lattice(graph, scale);
  Divisor b = lattice.to_lattice(base);
  VertexIndex q = graph.model().least_vertex();
  Budget budget(options.budget);
  std::vector<Divisor> candidates;
  for_each_multiset(lattice.graph().num_vertices(), extra, budget, [&](const Divisor& e) { candidates.push_back(b + e); });
  auto ok = parallel_test<Divisor>(
      candidates, [&](const Divisor& c) { return rank_at_least(lattice.graph(), c, 1, q); }, options.jobs);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (ok[i]) return lattice.from_lattice(candidates[i]);
  }
  return std::nullopt;
}

GonalitySearch gonality_search_lattice(const MetricGraph& graph, int d_max, const SearchOptions& options) {
  GonalitySearch out;
  out.scale = resolve_scale(graph, options);
  SearchOptions fixed = options;
  fixed.scale = out.scale;
  VertexIndex q = graph.model().least_vertex();
  for (int d = 1; d <= d_max; ++d) {
    auto found = rank1_classes_lattice(graph, d, q, 1, fixed);
    if (!found.empty()) {
      out.degree = d;
      out.witness = found.front();
      out.evidence = "gonality <= " + std::to_string(d) + " (rank-1 witness verified); no rank-1 divisor of lower degree on the 1/" +
                     std::to_string(out.scale) + " lattice";
      return out;
    }
  }
  out.evidence = "no rank-1 divisor of degree <= " + std::to_string(d_max) + " on the 1/" + std::to_string(out.scale) +
                 " lattice; this is evidence, not a bound";
  return out;
}

namespace {

struct PartInfo {
  PartEmbedding embedding;
  MetricGraph graph;
  VertexIndex attach;
  int genus;
};

std::vector<PartInfo> load_parts(const Fixture& fixture) {
  std::vector<PartInfo> out;
  for (const auto& p : fixture.parts) {
    MetricGraph g = part_graph(p);
    VertexIndex a = g.model().vertex_index(p.part_attach);
    out.push_back(PartInfo{p, std::move(g), a, p.genus});
  }
  return out;
}

// Tries the part's own lattice, then the doubled one.
std::optional<MetricDivisor> part_pencil(const PartInfo& part, int degree, int mult, const SearchOptions& options,
                                         std::vector<std::string>& notes) {
  SearchOptions o = options;
  std::int64_t base = resolve_scale(part.graph, options);
  for (std::int64_t scale : {base, 2 * base}) {
    o.scale = scale;
    if (auto p = find_pencil(part.graph, degree, part.attach, mult, o)) return p;
  }
  notes.push_back("part " + part.embedding.prefix + " has no lattice pencil of degree " + std::to_string(degree) +
                  " with multiplicity " + std::to_string(mult) + " at " + part.embedding.part_attach);
  return std::nullopt;
}

struct PartRequest {
  int degree;
  int mult;
};

std::optional<GonalityWitness> lcm_construction(const Fixture& fixture, const std::vector<PartInfo>& parts,
                                                const std::string& name, const std::vector<PartRequest>& requests,
                                                const SearchOptions& options, std::vector<std::string>& notes) {
  std::vector<MetricDivisor> lifted;
  GonalityWitness w;
  w.construction = name;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto p = part_pencil(parts[i], requests[i].degree, requests[i].mult, options, notes);
    if (!p) {
      notes.push_back(name + " construction skipped");
      return std::nullopt;
    }
    w.trace.push_back(parts[i].embedding.prefix + " genus " + std::to_string(parts[i].genus) + ": " +
                      describe(parts[i].graph, *p) + " (degree " + std::to_string(requests[i].degree) +
                      ", multiplicity >= " + std::to_string(requests[i].mult) + " at the wedge point)");
    lifted.push_back(embed_part_divisor(fixture.graph, parts[i].embedding, parts[i].graph, *p));
  }
  w.divisor = pencil_lcm(lifted);
  w.degree = static_cast<int>(w.divisor.degree());
  w.verified = mg_rank_at_least(fixture.graph, w.divisor, 1);
  w.verified_rank = w.verified ? 1 : 0;
  if (!w.verified) {
    throw Error(ErrorKind::WitnessUnverified, name + " construction " + describe(fixture.graph, w.divisor) +
                                                  " has rank < 1");
  }
  return w;
}

}  // namespace

GonalityReport wedge_gonality_witness(const Fixture& wedge, const SearchOptions& options) {
  if (wedge.spec.kind != "wedge") throw Error(ErrorKind::PreconditionFailed, "expected a wedge fixture");
  auto parts = load_parts(wedge);
  GonalityReport report;
  report.genus = wedge.graph.genus();
  report.maximal = ceil_half(report.genus) + 1;
  const int n = static_cast<int>(parts.size());
  int n1 = 0, n2 = 0;
  for (const auto& p : parts) (p.genus % 2 ? n1 : n2) += 1;
  if (n < 3) report.notes.push_back("fewer than three parts: the wedge constructions need not beat the bound");

  // Even parts below maximal gonality save one degree in the base construction.
  std::vector<bool> even_low(parts.size(), false);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].genus % 2 == 0 && parts[i].genus > 0) {
      std::vector<std::string> ignore;
      even_low[i] = part_pencil(parts[i], ceil_half(parts[i].genus), 1, options, ignore).has_value();
    }
  }
  int low_used = 0;
  std::vector<PartRequest> base, mult3, mult4;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const int g = parts[i].genus;
    const bool odd = g % 2 == 1;
    if (!odd && even_low[i]) {
      base.push_back({ceil_half(g), 1});
      ++low_used;
    } else {
      base.push_back({ceil_half(g) + 1, odd ? 2 : 1});
    }
    mult3.push_back(odd ? PartRequest{ceil_half(g) + 1, 2} : PartRequest{ceil_half(g) + 2, 3});
    mult4.push_back(odd ? PartRequest{ceil_half(g) + 2, 4} : PartRequest{ceil_half(g) + 2, 3});
  }
  const int c1 = ceil_half(n1);
  struct Plan {
    std::string name;
    std::vector<PartRequest> requests;
    int bound;
  };
  std::vector<Plan> plans{{"base", base, report.maximal + 1 - c1 - low_used},
                          {"multiplicity-3", mult3, report.maximal + 2 - c1 - n2}};
  const bool all_above_one =
      std::all_of(parts.begin(), parts.end(), [](const PartInfo& p) { return p.genus > 1; });
  if (all_above_one) plans.push_back({"multiplicity-4", mult4, report.maximal + 3 - c1 - n});

  for (const auto& plan : plans) {
    auto w = lcm_construction(wedge, parts, plan.name, plan.requests, options, report.notes);
    if (!w) continue;
    w->trace.push_back("degree " + std::to_string(w->degree) + ", bound from the construction " +
                       std::to_string(plan.bound));
    if (w->degree > plan.bound) {
      report.notes.push_back(plan.name + " construction exceeded its degree bound");
    }
    report.constructions.push_back(*w);
  }
  for (const auto& w : report.constructions) {
    if (!report.witness || w.degree < report.witness->degree) report.witness = w;
  }

  bool even_maximal = true;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].genus % 2 == 0 && even_low[i]) even_maximal = false;
  }
  const bool some_genus_one = std::any_of(parts.begin(), parts.end(), [](const PartInfo& p) { return p.genus == 1; });
  report.exception = n == 3 && n1 == 2 && n2 == 1 && some_genus_one && even_maximal;
  report.below_maximal = report.witness && report.witness->degree < report.maximal;
  if (report.below_maximal) {
    report.verdict = "not maximal gonality";
    report.evidence_level = "proved";
  } else if (report.exception) {
    report.verdict = "exception; W^1 of degree " + std::to_string(report.maximal) + " positive-dimensional expected";
    report.evidence_level = "lattice-evidence";
  } else {
    report.verdict = "no improvement found";
    report.evidence_level = "lattice-evidence";
  }
  return report;
}

GonalityReport join_gonality_witness(const Fixture& join, const SearchOptions& options) {
  if (join.spec.kind != "path_join") throw Error(ErrorKind::PreconditionFailed, "expected a path_join fixture");
  if (join.spec.m < 4) throw Error(ErrorKind::PreconditionFailed, "the join construction needs m >= 4");
  auto parts = load_parts(join);
  GonalityReport report;
  report.genus = join.graph.genus();
  report.maximal = ceil_half(report.genus) + 1;
  GonalityWitness w;
  w.construction = "sum";
  bool parts_maximal = true;
  for (const auto& part : parts) {
    const int top = ceil_half(part.genus) + 1;
    std::optional<MetricDivisor> pencil;
    int degree = 0;
    for (int d = 1; d <= top && !pencil; ++d) {
      std::vector<std::string> ignore;
      pencil = part_pencil(part, d, 1, options, d == top ? report.notes : ignore);
      degree = d;
    }
    if (!pencil) {
      report.verdict = "no improvement found";
      report.evidence_level = "lattice-evidence";
      return report;
    }
    if (degree < top) parts_maximal = false;
    w.trace.push_back(part.embedding.prefix + " genus " + std::to_string(part.genus) + ": " +
                      describe(part.graph, *pencil) + " (degree " + std::to_string(degree) + " through " +
                      part.embedding.attach + ")");
    w.divisor += embed_part_divisor(join.graph, part.embedding, part.graph, *pencil);
  }
  w.degree = static_cast<int>(w.divisor.degree());
  w.verified = mg_rank_at_least(join.graph, w.divisor, 1);
  w.verified_rank = w.verified ? 1 : 0;
  if (!w.verified) {
    throw Error(ErrorKind::WitnessUnverified, "sum " + describe(join.graph, w.divisor) + " has rank < 1");
  }
  report.constructions.push_back(w);
  report.witness = w;

  const int m = join.spec.m;
  const bool odd1 = parts[0].genus % 2 == 1, odd2 = parts[1].genus % 2 == 1;
  report.exception = parts_maximal && ((m == 4 && (odd1 || odd2)) || (m == 5 && odd1 && odd2));
  report.below_maximal = w.degree < report.maximal;
  if (report.below_maximal) {
    report.verdict = "not maximal gonality";
    report.evidence_level = "proved";
  } else if (report.exception) {
    report.verdict = "exception; W^1 of degree " + std::to_string(report.maximal) +
                     " larger than expected dimension";
    report.evidence_level = "lattice-evidence";
  } else {
    report.verdict = "no improvement found";
    report.evidence_level = "lattice-evidence";
  }
  return report;
}

FamilyProbe count_classes(const MetricGraph& graph, const std::vector<MetricDivisor>& divisors) {
  FamilyProbe out;
  out.members = divisors;
  std::vector<MetricDivisor> reps;
  for (const auto& d : divisors) {
    if (!mg_rank_at_least(graph, d, 1)) {
      throw Error(ErrorKind::WitnessUnverified, "family member " + format_divisor(graph, d) + " has rank < 1");
    }
    std::size_t found = reps.size();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (mg_linear_equiv(graph, reps[i], d)) {
        found = i;
        break;
      }
    }
    if (found == reps.size()) reps.push_back(d);
    out.class_of.push_back(found);
  }
  out.distinct = reps.size();
  return out;
}

namespace {

// The first `count` lattice points of a part other than its attachment point,
// refining the lattice until there are enough.
std::vector<MetricPoint> grid_points(const PartInfo& part, int count, const SearchOptions& options) {
  std::int64_t scale = resolve_scale(part.graph, options);
  for (int attempt = 0; attempt < 6; ++attempt, scale *= 2) {
    Lattice lattice(part.graph, scale);
    std::vector<MetricPoint> pts;
    for (VertexIndex v = 0; v < lattice.graph().num_vertices() && static_cast<int>(pts.size()) < count; ++v) {
      if (v != part.attach) pts.push_back(lattice.point_of(v));
    }
    if (static_cast<int>(pts.size()) == count) return pts;
  }
  throw Error(ErrorKind::PreconditionFailed, "could not place the requested grid on part " + part.embedding.prefix);
}

MetricDivisor point_divisor(const MetricPoint& p, std::int64_t c = 1) {
  MetricDivisor d;
  d.add(p, c);
  return d;
}

}  // namespace

FamilyProbe w1_family_probe(const Fixture& fixture, int grid, const SearchOptions& options) {
  if (grid < 1) throw Error(ErrorKind::PreconditionFailed, "grid must have at least one point");
  auto parts = load_parts(fixture);
  std::vector<MetricDivisor> members;
  if (fixture.spec.kind == "path_join") {
    std::vector<std::vector<MetricDivisor>> axis(2);
    for (int i = 0; i < 2; ++i) {
      const auto& part = parts[i];
      const int degree = ceil_half(part.genus) + 1;
      // Only odd parts move; an even part keeps one pencil through v_i.
      if (part.genus % 2 == 0) {
        std::vector<std::string> notes;
        auto pencil = part_pencil(part, degree, 1, options, notes);
        if (!pencil) throw Error(ErrorKind::WitnessUnverified, notes.back());
        axis[i].push_back(embed_part_divisor(fixture.graph, part.embedding, part.graph, *pencil));
        continue;
      }
      for (const auto& x : grid_points(part, grid, options)) {
        MetricDivisor base = point_divisor(MetricPoint::at_vertex(part.attach)) + point_divisor(x);
        auto pencil = find_pencil_containing(part.graph, degree, base, options);
        if (!pencil) {
          throw Error(ErrorKind::WitnessUnverified, "no lattice pencil through " + format_divisor(part.graph, base));
        }
        axis[i].push_back(embed_part_divisor(fixture.graph, part.embedding, part.graph, *pencil));
      }
    }
    for (const auto& a : axis[0]) {
      for (const auto& b : axis[1]) members.push_back(a + b);
    }
  } else if (fixture.spec.kind == "wedge") {
    auto even = std::find_if(parts.begin(), parts.end(), [](const PartInfo& p) { return p.genus % 2 == 0; });
    if (even == parts.end()) throw Error(ErrorKind::PreconditionFailed, "the wedge family needs an even-genus part");
    std::vector<MetricDivisor> fixed;
    std::vector<std::string> notes;
    for (const auto& part : parts) {
      if (&part == &*even) continue;
      const bool odd = part.genus % 2 == 1;
      auto pencil = part_pencil(part, ceil_half(part.genus) + 1, odd ? 2 : 1, options, notes);
      if (!pencil) throw Error(ErrorKind::WitnessUnverified, notes.back());
      fixed.push_back(embed_part_divisor(fixture.graph, part.embedding, part.graph, *pencil));
    }
    const int degree = ceil_half(even->genus) + 2;
    for (const auto& x : grid_points(*even, grid, options)) {
      MetricDivisor base = point_divisor(MetricPoint::at_vertex(even->attach), 2) + point_divisor(x);
      auto pencil = find_pencil_containing(even->graph, degree, base, options);
      if (!pencil) {
        throw Error(ErrorKind::WitnessUnverified, "no lattice pencil through " + format_divisor(even->graph, base));
      }
      auto all = fixed;
      all.push_back(embed_part_divisor(fixture.graph, even->embedding, even->graph, *pencil));
      members.push_back(pencil_lcm(all));
    }
  } else {
    throw Error(ErrorKind::PreconditionFailed, "family probe needs a wedge or path_join fixture");
  }
  return count_classes(fixture.graph, members);
}

BnRankResult bn_rank_lattice(const MetricGraph& graph, int r, int d, int rho, const SearchOptions& options) {
  if (r < 0 || d < 0 || rho < 0) throw Error(ErrorKind::PreconditionFailed, "r, d and rho must be nonnegative");
  const int e_degree = r + rho;
  const int f_degree = d - e_degree;
  BnRankResult out;
  out.scale = resolve_scale(graph, options);
  if (f_degree < 0) {
    throw Error(ErrorKind::PreconditionFailed, "r + rho exceeds d");
  }
  Lattice lattice(graph, out.scale);
  const MultiGraph& lg = lattice.graph();
  const VertexIndex q = graph.model().least_vertex();
  Budget budget(options.budget);
  std::vector<Divisor> es;
  for_each_multiset(lg.num_vertices(), e_degree, budget, [&](const Divisor& e) { es.push_back(e); });
  std::vector<Divisor> fs;
  for_each_multiset(lg.num_vertices(), f_degree, budget, [&](const Divisor& f) { fs.push_back(f); });
  std::atomic<std::int64_t> examined{0};
  const std::int64_t cap = options.budget;
  auto completes = [&](const Divisor& e) {
    for (const auto& f : fs) {
      if (cap > 0 && ++examined > cap) {
        throw Error(ErrorKind::BudgetExceeded, "search exceeded " + std::to_string(cap) + " rank checks");
      }
      if (rank_at_least(lg, e + f, r, q)) return true;
    }
    return false;
  };
  auto ok = parallel_test<Divisor>(es, completes, options.jobs);
  out.examined = static_cast<std::int64_t>(es.size());
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (!ok[i]) {
      out.holds_on_lattice = false;
      out.counterexample = lattice.from_lattice(es[i]);
      break;
    }
  }
  if (out.holds_on_lattice) {
    out.strength = "every effective E of degree " + std::to_string(e_degree) + " on the 1/" +
                   std::to_string(out.scale) + " lattice lies under a rank-" + std::to_string(r) + " divisor of degree " +
                   std::to_string(d) + "; lattice evidence for w >= " + std::to_string(rho);
  } else {
    out.strength = "E lies under no rank-" + std::to_string(r) + " divisor E+F with F on the 1/" +
                   std::to_string(out.scale) + " lattice; conclusive for w < " + std::to_string(rho) +
                   " only if lattice F exhaust the relevant classes";
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

bool connected_without(const MultiGraph& g, EdgeIndex skip) {
  std::vector<bool> seen(g.num_vertices(), false);
  std::vector<VertexIndex> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    VertexIndex v = stack.back();
    stack.pop_back();
    for (EdgeIndex e : g.incident_edges(v)) {
      if (e == skip) continue;
      VertexIndex u = g.edge(e).other(v);
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == g.num_vertices();
}

// Components of the vertex set minus `removed` under the given edges.
int components_without(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                       std::size_t removed, const std::vector<bool>& alive) {
  UnionFind uf(n);
  for (const auto& [a, b] : edges) {
    if (a != removed && b != removed) uf.unite(a, b);
  }
  std::set<std::size_t> roots;
  for (std::size_t v = 0; v < n; ++v) {
    if (alive[v] && v != removed) roots.insert(uf.find(v));
  }
  return static_cast<int>(roots.size());
}

}  // namespace

MultitreeVerdict multitree_verdict(const MetricGraph& graph) {
  const MultiGraph& g = graph.model();
  const std::size_t n = g.num_vertices();
  UnionFind classes(n);
  std::vector<EdgeIndex> kept;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    if (connected_without(g, e)) {
      kept.push_back(e);
    } else {
      classes.unite(g.edge(e).tail, g.edge(e).head);
    }
  }
  // Name each contracted vertex by the least original id in it.
  std::vector<std::string> name(n);
  std::vector<bool> alive(n, false);
  for (VertexIndex v : g.vertices_by_id()) {
    std::size_t r = classes.find(v);
    if (!alive[r]) {
      alive[r] = true;
      name[r] = g.vertex_id(v);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (EdgeIndex e : kept) edges.emplace_back(classes.find(g.edge(e).tail), classes.find(g.edge(e).head));

  MultitreeVerdict out;
  // (a) points whose removal leaves at least three pieces.
  for (VertexIndex v : g.vertices_by_id()) {
    std::size_t r = classes.find(v);
    if (g.vertex_id(v) != name[r]) continue;
    int pieces = components_without(n, edges, r, alive);
    if (pieces >= 3) out.obstructions.push_back({"cut point", {name[r]}, pieces});
  }

  // (b) suppress valence-two vertices, then look for disconnecting bundles.
  std::vector<std::pair<std::size_t, std::size_t>> sup = edges;
  std::vector<bool> live = alive;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < n && !changed; ++v) {
      if (!live[v]) continue;
      std::vector<std::size_t> at;
      bool loop = false;
      for (std::size_t i = 0; i < sup.size(); ++i) {
        if (sup[i].first == v && sup[i].second == v) loop = true;
        if (sup[i].first == v || sup[i].second == v) at.push_back(i);
      }
      if (loop || at.size() != 2) continue;
      std::size_t a = sup[at[0]].first == v ? sup[at[0]].second : sup[at[0]].first;
      std::size_t b = sup[at[1]].first == v ? sup[at[1]].second : sup[at[1]].first;
      sup.erase(sup.begin() + static_cast<std::ptrdiff_t>(at[1]));
      sup.erase(sup.begin() + static_cast<std::ptrdiff_t>(at[0]));
      sup.emplace_back(a, b);
      live[v] = false;
      changed = true;
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, int> bundles;
  for (const auto& [a, b] : sup) {
    if (a != b) ++bundles[{std::min(a, b), std::max(a, b)}];
  }
  for (const auto& [pair, m] : bundles) {
    if (m < 4) continue;
    UnionFind uf(n);
    for (const auto& [a, b] : sup) {
      if (std::minmax(a, b) != std::minmax(pair.first, pair.second)) uf.unite(a, b);
    }
    if (uf.find(pair.first) != uf.find(pair.second)) {
      auto ids = std::minmax(name[pair.first], name[pair.second]);
      out.obstructions.push_back({"multiedge join", {ids.first, ids.second}, m});
    }
  }
  std::sort(out.obstructions.begin(), out.obstructions.end(), [](const Obstruction& x, const Obstruction& y) {
    return std::tie(x.kind, x.vertices) < std::tie(y.kind, y.vertices);
  });

  if (out.obstructions.empty()) {
    out.message = "no obstruction found";
  } else {
    out.message = "cannot be Brill-Noether general: ";
    for (std::size_t i = 0; i < out.obstructions.size(); ++i) {
      const auto& o = out.obstructions[i];
      if (i) out.message += "; ";
      if (o.kind == "cut point") {
        out.message += "cut point " + o.vertices[0] + " splits into " + std::to_string(o.count) + " pieces";
      } else {
        out.message += "multiedge join m=" + std::to_string(o.count) + " between " + o.vertices[0] + " and " +
                       o.vertices[1];
      }
    }
  }
  return out;
}

}  // namespace tropdeg
