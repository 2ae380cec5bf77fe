#pragma once

#include <map>
#include <string>
#include <vector>

#include "tropdeg/metric.hpp"

namespace tropdeg {

/// Parameters of a named metric graph. Unused fields must stay at their
/// defaults; build_fixture rejects anything else.
///
///   flower          g petals, each two edges hub -> m<i> -> hub; hub "v0"
///   banana          g+1 parallel edges v1 -> v2
///   cycle           k vertices c0..c<k-1> in a ring
///   chain_of_loops  g loops u<i> => w<i> (two edges) joined by bridges
///   wedge           parts glued at their attachment points into "v0"
///   path_join       two parts with attachment points "v1", "v2" and m paths
///
/// `lengths` overrides edge lengths in construction order; defaults are 1,
/// except chain_of_loops which uses 1/4 and 3/4 on each loop.
struct FixtureSpec {
  std::string kind;
  int g = 0;
  int k = 0;
  int m = 0;
  std::vector<Rational> lengths;
  std::vector<FixtureSpec> parts;

  friend bool operator==(const FixtureSpec&, const FixtureSpec&) = default;
};

/// Where a part sits inside a composite fixture.
struct PartEmbedding {
  FixtureSpec spec;
  int genus = 0;
  std::string attach;          // vertex id in the composite graph
  std::string prefix;          // prepended to part vertex and edge ids
  std::string part_attach;     // attachment vertex id inside the part
};

struct Fixture {
  FixtureSpec spec;
  MetricGraph graph;
  /// Named points: "v0" for flower and wedge, "v1"/"v2" for banana and join.
  std::map<std::string, std::string> marked;
  std::vector<PartEmbedding> parts;
  std::string note;
};

/// Throws InvalidSpec.
Fixture build_fixture(const FixtureSpec& spec);

/// Attachment vertex id of a stand-alone fixture of this kind.
std::string default_attach(const FixtureSpec& spec);

/// The stand-alone graph of a part, and the map of its points into the
/// composite graph.
MetricGraph part_graph(const PartEmbedding& part);
MetricDivisor embed_part_divisor(const MetricGraph& composite, const PartEmbedding& part,
                                 const MetricGraph& part_graph, const MetricDivisor& d);

/// Parses "kind:key=value,..." with keys g, k, m, lengths (values separated
/// by ';'). Used for parts given on the command line.
FixtureSpec parse_part_spec(const std::string& text);

}  // namespace tropdeg
