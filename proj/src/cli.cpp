#include "tropdeg/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "tropdeg/chip_firing.hpp"
#include "tropdeg/error.hpp"
#include "tropdeg/fixtures.hpp"
#include "tropdeg/gonality.hpp"
#include "tropdeg/io.hpp"
#include "tropdeg/pct.hpp"
#include "tropdeg/twist_graph.hpp"

namespace tropdeg::cli {

using io::Json;

namespace {

struct Common {
  std::string graph_path;
  bool human = false;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::int64_t budget = 0;
};

struct Context {
  Common common;
  std::istream* in;
  std::ostream* out;

  io::GraphDocument document() const {
    if (!common.graph_path.empty()) return io::parse_graph(io::load_json_arg(common.graph_path));
    std::stringstream ss;
    ss << in->rdbuf();
    if (ss.str().find_first_not_of(" \t\r\n") == std::string::npos) {
      throw Error(ErrorKind::ParseError, "no graph: pass --graph or pipe a graph document on stdin");
    }
    return io::parse_graph(io::parse_json(ss.str()));
  }

  SearchOptions search(std::int64_t scale) const { return SearchOptions{scale, common.budget, common.jobs}; }
};

// Human output: one "key  value" line per leaf, keys joined with '.'.
void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  auto scalar = [](const Json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
  if (j.is_object()) {
    if (j.empty()) rows.emplace_back(prefix, "{}");
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "schema") continue;
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    }
  } else if (j.is_array()) {
    bool simple = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
    if (simple) {
      std::string line;
      for (const auto& x : j) line += (line.empty() ? "" : ", ") + scalar(x);
      rows.emplace_back(prefix, "[" + line + "]");
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    }
  } else {
    rows.emplace_back(prefix, scalar(j));
  }
}

void emit(const Context& ctx, Json result) {
  if (!ctx.common.human) {
    Json doc = Json::object();
    doc["schema"] = io::kSchema;
    for (auto it = result.begin(); it != result.end(); ++it) doc[it.key()] = it.value();
    *ctx.out << doc.dump(2) << "\n";
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(result, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) *ctx.out << k << std::string(width - k.size() + 2, ' ') << v << "\n";
}

VertexIndex vertex_or_least(const MultiGraph& graph, const std::string& id) {
  return id.empty() ? graph.least_vertex() : graph.vertex_index(id);
}

Json ids(const MultiGraph& graph, const std::vector<VertexIndex>& vs) {
  Json out = Json::array();
  for (VertexIndex v : vs) out.push_back(graph.vertex_id(v));
  return out;
}

std::string compact(const MultiGraph& graph, const AdmissibleMultidegree& w) {
  std::string s = "w(";
  bool first = true;
  for (VertexIndex v : graph.vertices_by_id()) {
    s += (first ? "" : ",") + graph.vertex_id(v) + ":" + std::to_string(w.w[v]);
    first = false;
  }
  s += ")";
  std::string mu;
  for (EdgeIndex e = 0; e < graph.num_edges(); ++e) {
    if (w.mu[e] != 0) mu += (mu.empty() ? "" : ",") + graph.edge(e).id + ":" + std::to_string(w.mu[e]);
  }
  if (!mu.empty()) s += " mu(" + mu + ")";
  return s;
}

// Multidegree options shared by the twist-graph commands.
struct ChainArgs {
  std::string chain;
  std::string w;
  std::string at;

  ChainStructure chain_of(const MultiGraph& graph) const {
    return chain.empty() ? ChainStructure::trivial(graph) : io::parse_chain(graph, io::load_json_arg(chain));
  }
};

void add_chain_options(CLI::App* sub, ChainArgs& a, bool needs_vertex) {
  sub->add_option("--chain", a.chain, "chain lengths {\"n\":{edge:n}} inline or as a file");
  sub->add_option("--w", a.w, "admissible multidegree {\"w\":{},\"mu\":{}} inline or as a file")->required();
  auto* at = sub->add_option("--at", a.at, "vertex id");
  if (needs_vertex) at->required();
}

std::vector<Rational> parse_length_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

Json witness_json(const MetricGraph& graph, const GonalityWitness& w) {
  Json trace = Json::array();
  for (const auto& t : w.trace) trace.push_back(t);
  return Json{{"construction", w.construction},
              {"divisor", format_divisor(graph, w.divisor)},
              {"degree", w.degree},
              {"claimed_rank", w.claimed_rank},
              {"verified_rank", w.verified_rank},
              {"verified", w.verified},
              {"trace", trace}};
}

Json report_json(const MetricGraph& graph, const GonalityReport& r) {
  Json out = Json::object();
  out["verdict"] = r.verdict;
  out["genus"] = r.genus;
  out["maximal"] = r.maximal;
  out["below_maximal"] = r.below_maximal;
  out["exception"] = r.exception;
  out["evidence_level"] = r.evidence_level;
  if (r.witness) out["witness"] = witness_json(graph, *r.witness);
  Json cs = Json::array();
  for (const auto& c : r.constructions) cs.push_back(witness_json(graph, c));
  out["constructions"] = cs;
  Json notes = Json::array();
  for (const auto& n : r.notes) notes.push_back(n);
  out["notes"] = notes;
  return out;
}

Fixture fixture_of(const io::GraphDocument& doc) {
  Fixture f = build_fixture(*doc.fixture);
  MetricGraph given = doc.metric();
  auto same = [](const std::vector<MetricEdgeSpec>& a, const std::vector<MetricEdgeSpec>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].id != b[i].id || a[i].tail != b[i].tail || a[i].head != b[i].head || a[i].length != b[i].length) {
        return false;
      }
    }
    return true;
  };
  if (!same(f.graph.edge_specs(), given.edge_specs())) {
    throw Error(ErrorKind::PreconditionFailed, "the graph does not match its fixture description");
  }
  return f;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chip firing, twist graphs and gonality on graphs and metric graphs", "tropdeg"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx{Common{}, &in, &out};
  Common& common = ctx.common;
  app.add_option("--graph", common.graph_path, "graph document (file or inline JSON); stdin if absent");
  app.add_flag("--human", common.human, "aligned text instead of JSON");
  app.add_option("--seed", common.seed, "seed for randomized choices (none of the commands currently sample)");
  app.add_option("--jobs", common.jobs, "worker threads for lattice searches")->check(CLI::Range(1u, 1024u));
  app.add_option("--budget", common.budget, "cap on enumeration nodes (0 = none)")->check(CLI::NonNegativeNumber);

  std::function<void()> action;

  // Graph-level chip firing.
  std::string divisor, at;
  auto* reduce_cmd = app.add_subcommand("reduce", "reduced divisor at a vertex and the firings reaching it");
  reduce_cmd->add_option("--divisor", divisor, "divisor: {\"v\":c}, {\"coeffs\":{}} or 2@a+1@b")->required();
  reduce_cmd->add_option("--at", at, "base vertex (default: least id)");
  reduce_cmd->callback([&] {
    action = [&] {
      MultiGraph g = ctx.document().plain();
      Divisor d = io::parse_divisor(g, divisor);
      VertexIndex q = vertex_or_least(g, at);
      Reduction r = reduce(g, d, q);
      emit(ctx, Json{{"command", "reduce"},
                     {"at", g.vertex_id(q)},
                     {"reduced", io::divisor_to_json(g, r.reduced)},
                     {"firings", io::twist_vector_to_json(g, r.twists)}});
    };
  });

  auto* rank_cmd = app.add_subcommand("rank", "Baker-Norine rank of a divisor on a graph");
  rank_cmd->add_option("--divisor", divisor, "divisor")->required();
  rank_cmd->callback([&] {
    action = [&] {
      MultiGraph g = ctx.document().plain();
      Divisor d = io::parse_divisor(g, divisor);
      emit(ctx, Json{{"command", "rank"}, {"degree", d.degree()}, {"rank", rank_finite(g, d)}});
    };
  });

  // Twist graphs.
  ChainArgs ca;
  auto* conc_cmd = app.add_subcommand("concentrate", "twist of w concentrated at a vertex");
  add_chain_options(conc_cmd, ca, true);
  conc_cmd->callback([&] {
    action = [&] {
      MultiGraph g = ctx.document().plain();
      ChainStructure chain = ca.chain_of(g);
      AdmissibleMultidegree w = io::parse_multidegree(g, chain, io::load_json_arg(ca.w));
      VertexIndex v = g.vertex_index(ca.at);
      Concentration c = concentrate(g, chain, w, v);
      ConcentrationCheck check = is_concentrated(g, chain, c.multidegree, v);
      emit(ctx, Json{{"command", "concentrate"},
                     {"at", ca.at},
                     {"multidegree", io::multidegree_to_json(g, c.multidegree)},
                     {"twists", io::twist_vector_to_json(g, c.twists)},
                     {"ordering", ids(g, check.ordering)}});
    };
  });

  std::int64_t times = 1;
  auto* twist_cmd = app.add_subcommand("twist", "twist a multidegree at a vertex");
  add_chain_options(twist_cmd, ca, true);
  twist_cmd->add_option("--times", times, "number of twists; negative for inverse twists");
  twist_cmd->callback([&] {
    action = [&] {
      MultiGraph g = ctx.document().plain();
      ChainStructure chain = ca.chain_of(g);
      AdmissibleMultidegree w = io::parse_multidegree(g, chain, io::load_json_arg(ca.w));
      AdmissibleMultidegree t = twist_times(g, chain, w, g.vertex_index(ca.at), times);
      emit(ctx, Json{{"command", "twist"}, {"at", ca.at}, {"times", times}, {"multidegree", io::multidegree_to_json(g, t)}});
    };
  });

  bool dot = false;
  auto* barg_cmd = app.add_subcommand("barg", "the set of twists of w that are dominated by the family");
  add_chain_options(barg_cmd, ca, false);
  barg_cmd->add_flag("--dot", dot, "print the single-twist graph on the members in DOT");
  barg_cmd->callback([&] {
    action = [&] {
      MultiGraph g = ctx.document().plain();
      ChainStructure chain = ca.chain_of(g);
      AdmissibleMultidegree w = io::parse_multidegree(g, chain, io::load_json_arg(ca.w));
      auto family = canonical_family(g, chain, w);
      BarG bar = enumerate_bar_g(g, chain, w, family, common.budget);
      if (dot) {
        std::set<AdmissibleMultidegree> members(bar.members.begin(), bar.members.end());
        out << "digraph barG {\n";
        for (std::size_t i = 0; i < bar.members.size(); ++i) {
          out << "  n" << i << " [label=\"" << compact(g, bar.members[i]) << "\"];\n";
        }
        for (std::size_t i = 0; i < bar.members.size(); ++i) {
          for (VertexIndex v : g.vertices_by_id()) {
            AdmissibleMultidegree t = twist(g, chain, bar.members[i], v);
            auto it = std::lower_bound(bar.members.begin(), bar.members.end(), t);
            if (it != bar.members.end() && *it == t) {
              out << "  n" << i << " -> n" << (it - bar.members.begin()) << " [label=\"" << g.vertex_id(v)
                  << "\"];\n";
            }
          }
        }
        out << "}\n";
        return;
      }
      Json fam = Json::object();
      for (VertexIndex v : g.vertices_by_id()) fam[g.vertex_id(v)] = io::multidegree_to_json(g, family[v]);
      Json members = Json::array();
      for (const auto& m : bar.members) members.push_back(io::multidegree_to_json(g, m));
      emit(ctx, Json{{"command", "barg"},
                     {"family", fam},
                     {"count", bar.members.size()},
                     {"connected", bar.connected},
                     {"twists_enumerated", bar.twists_enumerated},
                     {"members", members}});
    };
  });

  std::string base;
  auto* dwv_cmd = app.add_subcommand("dwv", "the node divisor D_{w,v}");
  add_chain_options(dwv_cmd, ca, true);
  dwv_cmd->add_option("--base", base, "multidegree defining the family (default: --w)");
  dwv_cmd->callback([&] {
    action = [&] {
      MultiGraph g = ctx.document().plain();
      ChainStructure chain = ca.chain_of(g);
      AdmissibleMultidegree w = io::parse_multidegree(g, chain, io::load_json_arg(ca.w));
      AdmissibleMultidegree w0 = base.empty() ? w : io::parse_multidegree(g, chain, io::load_json_arg(base));
      auto family = canonical_family(g, chain, w0);
      VertexIndex v = g.vertex_index(ca.at);
      NodeDivisor d = d_wv(g, chain, family, w, v);
      emit(ctx, Json{{"command", "dwv"},
                     {"at", ca.at},
                     {"degree", d.degree()},
                     {"divisor", io::node_divisor_to_json(g, d)}});
    };
  });

  auto* riemann_cmd = app.add_subcommand("riemann", "the twist from the Riemann bound argument");
  add_chain_options(riemann_cmd, ca, true);
  riemann_cmd->callback([&] {
    action = [&] {
      MultiGraph g = ctx.document().plain();
      ChainStructure chain = ca.chain_of(g);
      AdmissibleMultidegree w = io::parse_multidegree(g, chain, io::load_json_arg(ca.w));
      RiemannTwist r = riemann_twist(g, chain, w, g.vertex_index(ca.at));
      emit(ctx, Json{{"command", "riemann"},
                     {"at", ca.at},
                     {"bound", r.bound},
                     {"multidegree", io::multidegree_to_json(g, r.result)}});
    };
  });

  // Metric graphs.
  bool refine = false;
  std::int64_t scale = 0;
  auto* mg_rank_cmd = app.add_subcommand("mg-rank", "rank of a divisor on a metric graph");
  mg_rank_cmd->add_option("--divisor", divisor, "divisor, e.g. 2@v0+1@e1:1/3")->required();
  mg_rank_cmd->add_flag("--refine", refine, "recompute on the doubled lattice and require agreement");
  mg_rank_cmd->add_option("--scale", scale, "minimum lattice scale")->check(CLI::NonNegativeNumber);
  mg_rank_cmd->callback([&] {
    action = [&] {
      MetricGraph g = ctx.document().metric();
      MetricDivisor d = io::parse_metric_divisor(g, divisor);
      MetricRankOptions opts{refine, scale > 0 ? scale : 1};
      emit(ctx, Json{{"command", "mg-rank"},
                     {"divisor", format_divisor(g, d)},
                     {"degree", d.degree()},
                     {"rank", mg_rank(g, d, opts)}});
    };
  });

  auto* mg_reduce_cmd = app.add_subcommand("mg-reduce", "reduced divisor on a metric graph");
  mg_reduce_cmd->add_option("--divisor", divisor, "divisor")->required();
  mg_reduce_cmd->add_option("--at", at, "base point: vertex id or edge:offset (default: least vertex)");
  mg_reduce_cmd->callback([&] {
    action = [&] {
      MetricGraph g = ctx.document().metric();
      MetricDivisor d = io::parse_metric_divisor(g, divisor);
      MetricPoint q = at.empty() ? MetricPoint::at_vertex(g.model().least_vertex()) : io::parse_point(g, at);
      MetricReduction r = mg_reduce(g, d, q);
      emit(ctx, Json{{"command", "mg-reduce"},
                     {"at", format_point(g, q)},
                     {"reduced", io::metric_divisor_to_json(g, r.reduced)},
                     {"f", io::pl_function_to_json(g, r.f)}});
    };
  });

  // Gonality and Brill-Noether.
  int d_max = 0, probe = 0;
  bool force_search = false;
  auto* gon_cmd = app.add_subcommand("gonality", "gonality witness: constructions on wedges and joins, else search");
  gon_cmd->add_option("--d-max", d_max, "largest degree for the lattice search (default: ceil(g/2)+1)");
  gon_cmd->add_flag("--search", force_search, "lattice search even when the graph is a known fixture");
  gon_cmd->add_option("--probe", probe, "also count classes in the exceptional pencil family on this grid");
  gon_cmd->add_option("--scale", scale, "lattice scale")->check(CLI::NonNegativeNumber);
  gon_cmd->callback([&] {
    action = [&] {
      io::GraphDocument doc = ctx.document();
      SearchOptions opts = ctx.search(scale);
      const bool known = doc.fixture && (doc.fixture->kind == "wedge" || doc.fixture->kind == "path_join");
      if (known && !force_search) {
        Fixture f = fixture_of(doc);
        GonalityReport r = f.spec.kind == "wedge" ? wedge_gonality_witness(f, opts) : join_gonality_witness(f, opts);
        Json result = Json{{"command", "gonality"}, {"fixture", f.spec.kind}};
        Json report = report_json(f.graph, r);
        for (auto& [k, v] : report.items()) result[k] = v;
        if (probe > 0) {
          FamilyProbe p = w1_family_probe(f, probe, opts);
          result["family_probe"] = Json{{"members", p.members.size()}, {"distinct_classes", p.distinct}};
        }
        emit(ctx, result);
        return;
      }
      MetricGraph g = doc.metric();
      int limit = d_max > 0 ? d_max : (g.genus() + 1) / 2 + 1;
      GonalitySearch s = gonality_search_lattice(g, limit, opts);
      Json result = Json{{"command", "gonality"}, {"genus", g.genus()}, {"d_max", limit}, {"scale", s.scale}};
      result["degree"] = s.degree ? Json(*s.degree) : Json(nullptr);
      if (s.degree) result["witness"] = format_divisor(g, s.witness);
      result["evidence"] = s.evidence;
      emit(ctx, result);
    };
  });

  int bn_r = 1, bn_d = 0, bn_rho = 0;
  auto* bn_cmd = app.add_subcommand("bn-rank", "lattice check of the Brill-Noether rank condition");
  bn_cmd->add_option("--r", bn_r, "rank r")->required();
  bn_cmd->add_option("--d", bn_d, "degree d")->required();
  bn_cmd->add_option("--rho", bn_rho, "Brill-Noether number rho")->required();
  bn_cmd->add_option("--scale", scale, "lattice scale")->check(CLI::NonNegativeNumber);
  bn_cmd->callback([&] {
    action = [&] {
      MetricGraph g = ctx.document().metric();
      BnRankResult r = bn_rank_lattice(g, bn_r, bn_d, bn_rho, ctx.search(scale));
      Json result = Json{{"command", "bn-rank"},
                         {"r", bn_r},
                         {"d", bn_d},
                         {"rho", bn_rho},
                         {"holds_on_lattice", r.holds_on_lattice},
                         {"scale", r.scale},
                         {"examined", r.examined},
                         {"strength", r.strength}};
      if (r.counterexample) result["counterexample"] = format_divisor(g, *r.counterexample);
      emit(ctx, result);
    };
  });

  auto* verdict_cmd = app.add_subcommand("verdict", "combinatorial obstructions to Brill-Noether generality");
  verdict_cmd->callback([&] {
    action = [&] {
      MetricGraph g = ctx.document().metric();
      MultitreeVerdict v = multitree_verdict(g);
      if (common.human) {
        out << v.message << "\n";
        return;
      }
      Json obs = Json::array();
      for (const auto& o : v.obstructions) {
        Json vs = Json::array();
        for (const auto& x : o.vertices) vs.push_back(x);
        obs.push_back(Json{{"kind", o.kind}, {"vertices", vs}, {"count", o.count}});
      }
      emit(ctx, Json{{"command", "verdict"}, {"message", v.message}, {"obstructions", obs}});
    };
  });

  std::string r_v, profiles;
  auto* pct_cmd = app.add_subcommand("pct", "multitree family data, or a witness for given vanishing profiles");
  add_chain_options(pct_cmd, ca, false);
  pct_cmd->add_option("--r-v", r_v, "ranks per vertex {\"v\":r_v}");
  pct_cmd->add_option("--profiles", profiles, "vanishing profiles {\"(e,v)\":[a_0,...]}");
  pct_cmd->callback([&] {
    action = [&] {
      MultiGraph g = ctx.document().plain();
      ChainStructure chain = ca.chain_of(g);
      AdmissibleMultidegree w0 = io::parse_multidegree(g, chain, io::load_json_arg(ca.w));
      if (r_v.empty() != profiles.empty()) {
        throw Error(ErrorKind::ParseError, "--r-v and --profiles go together");
      }
      if (r_v.empty()) {
        PctFamily fam = pct_family(g, chain, w0);
        auto seqs = divisor_sequences(g, chain, w0, fam);
        Json sides = Json::object();
        for (const auto& [side, seq] : seqs) {
          Json crit = Json::array();
          for (bool c : seq.critical) crit.push_back(c);
          sides[io::edge_side_key(g, fam.tree, side)] = Json{{"b", seq.b},
                                                             {"degrees", seq.degrees},
                                                             {"critical", crit},
                                                             {"exceeds_degree", seq.exceeds_degree}};
        }
        emit(ctx, Json{{"command", "pct"},
                       {"subtrees_checked", fam.subtrees_checked},
                       {"restriction_certificate", fam.restriction_certificate},
                       {"sides", sides}});
        return;
      }
      Json rj = io::load_json_arg(r_v);
      if (!rj.is_object()) throw Error(ErrorKind::ParseError, "--r-v must be an object");
      std::vector<std::int64_t> ranks(g.num_vertices(), 0);
      for (auto& [k, v] : rj.items()) {
        if (!v.is_number_integer()) throw Error(ErrorKind::ParseError, "--r-v values must be integers");
        ranks[g.vertex_index(k)] = v.get<std::int64_t>();
      }
      MultitreeData tree = is_multitree(g);
      if (!tree.multitree) throw Error(ErrorKind::NotMultitree, "the graph is not a multitree");
      Profiles prof = io::parse_profiles(g, tree, io::load_json_arg(profiles));
      PctWitness wit = pct_witness(g, chain, w0, ranks, prof);
      Json t = Json::object();
      for (const auto& [side, n] : wit.t) t[io::edge_side_key(g, tree, side)] = n;
      emit(ctx, Json{{"command", "pct"},
                     {"t", t},
                     {"multidegree", io::multidegree_to_json(g, wit.w)},
                     {"certificates", Json{{"t_counts", wit.certificates.t_counts},
                                           {"codim_sum", wit.certificates.codim_sum},
                                           {"in_bar_g", wit.certificates.in_bar_g},
                                           {"root_independent", wit.certificates.root_independent}}}});
    };
  });

  FixtureSpec spec;
  std::string lengths, out_path;
  std::vector<std::string> part_specs;
  auto* fix_cmd = app.add_subcommand("fixture", "write a named metric graph");
  fix_cmd->add_option("kind", spec.kind, "flower, banana, cycle, chain_of_loops, wedge or path_join")->required();
  fix_cmd->add_option("--g", spec.g, "genus");
  fix_cmd->add_option("--k", spec.k, "cycle length");
  fix_cmd->add_option("--m", spec.m, "number of joining paths");
  fix_cmd->add_option("--lengths", lengths, "edge lengths in construction order, comma separated");
  fix_cmd->add_option("--part", part_specs, "part as kind:g=..,k=..,lengths=a;b (repeatable)");
  fix_cmd->add_option("--out", out_path, "write the JSON here and a README stanza next to it");
  fix_cmd->callback([&] {
    action = [&] {
      if (!lengths.empty()) spec.lengths = parse_length_list(lengths);
      for (const auto& p : part_specs) spec.parts.push_back(parse_part_spec(p));
      Fixture f = build_fixture(spec);
      Json doc = io::fixture_to_json(f);
      if (out_path.empty()) {
        out << doc.dump(2) << "\n";
        return;
      }
      std::ofstream file(out_path);
      if (!file) throw Error(ErrorKind::ParseError, "cannot write \"" + out_path + "\"");
      file << doc.dump(2) << "\n";
      std::string stem = out_path.substr(0, out_path.rfind('.'));
      std::ofstream readme(stem + ".md");
      readme << "## " << out_path << "\n\n" << f.note << ".\n\nGenus " << f.graph.genus() << ", "
             << f.graph.model().num_vertices() << " vertices, " << f.graph.model().num_edges() << " edges.\n";
      out << out_path << "\n";
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  try {
    action();
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_parse_error(e.kind()) ? kInputError : kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
}

}  // namespace tropdeg::cli
