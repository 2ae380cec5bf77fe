#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tropdeg/fixtures.hpp"
#include "tropdeg/metric.hpp"

namespace tropdeg {

struct SearchOptions {
  /// Lattice scale; 0 means the common denominator of the edge lengths.
  std::int64_t scale = 0;
  /// Cap on enumeration nodes; 0 means unlimited. Exceeding it throws
  /// BudgetExceeded.
  std::int64_t budget = 0;
  /// Worker threads for rank checks. Results do not depend on it.
  unsigned jobs = 1;
};

/// Pointwise maximum of coefficients.
MetricDivisor pencil_lcm(const std::vector<MetricDivisor>& divisors);

/// All q-reduced effective lattice divisors of degree d with at least
/// `min_at_q` chips at q and rank >= 1. Each rank-1 class with enough chips
/// at q appears exactly once. q must be a model vertex.
std::vector<MetricDivisor> rank1_classes_lattice(const MetricGraph& graph, int d, VertexIndex q, int min_at_q,
                                                 const SearchOptions& options = {});

/// A rank-1 lattice divisor of the given degree with multiplicity >= mult at
/// the model vertex q, if one exists on the lattice.
std::optional<MetricDivisor> find_pencil(const MetricGraph& graph, int degree, VertexIndex q, int mult,
                                         const SearchOptions& options = {});

/// A rank-1 lattice divisor of the given degree containing `base`.
std::optional<MetricDivisor> find_pencil_containing(const MetricGraph& graph, int degree, const MetricDivisor& base,
                                                    const SearchOptions& options = {});

struct GonalitySearch {
  std::optional<int> degree;
  MetricDivisor witness;
  std::int64_t scale = 1;
  /// Found means gonality <= degree. Not found only rules out witnesses on
  /// this lattice.
  std::string evidence;
};

GonalitySearch gonality_search_lattice(const MetricGraph& graph, int d_max, const SearchOptions& options = {});

struct GonalityWitness {
  MetricDivisor divisor;
  int degree = 0;
  int claimed_rank = 1;
  int verified_rank = -1;
  bool verified = false;
  std::string construction;
  std::vector<std::string> trace;
};

struct GonalityReport {
  std::string verdict;
  bool below_maximal = false;
  bool exception = false;
  int genus = 0;
  int maximal = 0;  // ceil(g/2) + 1
  std::optional<GonalityWitness> witness;
  std::vector<GonalityWitness> constructions;
  std::string evidence_level;  // "proved" or "lattice-evidence"
  std::vector<std::string> notes;
};

/// Wedge of n parts at one point: the three pencil constructions (base,
/// multiplicity 3 on even parts, multiplicity 4 on odd parts when every
/// part has genus > 1), the best one verified by rank, and the verdict.
/// Throws WitnessUnverified if a construction has rank < 1.
GonalityReport wedge_gonality_witness(const Fixture& wedge, const SearchOptions& options = {});

/// Two parts joined by m >= 4 paths: D1 + D2 for part pencils through v1, v2.
GonalityReport join_gonality_witness(const Fixture& join, const SearchOptions& options = {});

struct FamilyProbe {
  std::vector<MetricDivisor> members;
  /// Index of the class of each member.
  std::vector<std::size_t> class_of;
  std::size_t distinct = 0;
};

/// Counts pairwise non-equivalent classes among rank >= 1 divisors.
FamilyProbe count_classes(const MetricGraph& graph, const std::vector<MetricDivisor>& divisors);

/// The pencil families of the exception cases. For a join, members are
/// D_{1,x} + D_{2,y} for x, y over `grid` points of each odd-genus part (an
/// even part contributes one fixed pencil through its v_i); for a wedge
/// with an even part, the lcm with the even-part pencil through 2v + x.
/// Grid points are the first `grid` lattice points of each part other than
/// its attachment point.
FamilyProbe w1_family_probe(const Fixture& fixture, int grid, const SearchOptions& options = {});

struct BnRankResult {
  bool holds_on_lattice = true;
  std::optional<MetricDivisor> counterexample;
  std::int64_t scale = 1;
  std::int64_t examined = 0;
  std::string strength;
};

/// Every effective lattice E of degree r + rho lies under some rank-r
/// divisor E + F with F effective on the lattice.
BnRankResult bn_rank_lattice(const MetricGraph& graph, int r, int d, int rho, const SearchOptions& options = {});

struct Obstruction {
  std::string kind;  // "cut point" or "multiedge join"
  std::vector<std::string> vertices;
  int count = 0;     // components, or parallel paths
};

struct MultitreeVerdict {
  std::vector<Obstruction> obstructions;
  std::string message;
};

/// Looks for a point splitting the graph into >= 3 pieces and for
/// disconnecting bundles of >= 4 paths, after contracting separating edges.
MultitreeVerdict multitree_verdict(const MetricGraph& graph);

}  // namespace tropdeg
