#pragma once

// Bernoulli bond percolation on finite graphs: coupled sampling, clusters,
// root-to-target crossing and threshold estimates.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "freelike/rational.hpp"

namespace freelike {

class CayleyBall;
class Presentation;
struct GeneratingSet;

struct PercGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // undirected
  int root = 0;
  std::vector<int> target;                 // sorted

  // Throws InvalidArgument on loops, out-of-range endpoints or a root inside
  // the target set (allowed only for the one-vertex graph).
  void validate() const;
};

// Labelled directed edge as written by export_graph: (u, g, sign, v).
struct LabelledEdge {
  int source = 0;
  int generator = 0;
  int sign = 1;
  int target = 0;
};

// Undirected simple-bond view: (u, g, -, v) and (v, g, +, u) are one bond;
// loops are dropped.
PercGraph perc_graph_from_edges(int vertex_count, int root, std::vector<int> target,
                                const std::vector<LabelledEdge>& edges);
PercGraph perc_graph_from_ball(const CayleyBall& ball);
// Adjacency text: `vertices: n`, `root: r`, `target: v ...`, then `u g± v` lines;
// `#` starts a comment.
PercGraph parse_perc_graph(std::string_view text);

inline constexpr std::uint64_t kDefaultSeed = 20240601;

// Edge e of trial t is open iff uniform(seed, t, e) < p.
double edge_uniform(std::uint64_t seed, std::uint64_t trial, std::size_t edge);
std::vector<bool> sample_open_edges(const PercGraph& g, double p, std::uint64_t seed,
                                    std::uint64_t trial = 0);
// Component label per vertex: the least vertex of its open cluster.
std::vector<int> clusters(const PercGraph& g, const std::vector<bool>& open);
bool root_reaches_target(const PercGraph& g, const std::vector<bool>& open);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z);

struct PercCurvePoint {
  double p = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t crossings = 0;
  Rational estimate;
  Interval ci95;
};

PercCurvePoint crossing_probability(const PercGraph& g, double p, std::uint64_t trials,
                                    std::uint64_t seed = kDefaultSeed, int workers = 1);

// Crossing counts by number of open edges, over all 2^|E| realizations.
struct CrossingPolynomial {
  std::vector<std::uint64_t> counts;  // counts[j]: crossing realizations with j open edges
  double operator()(double p) const;
};

inline constexpr std::size_t kExactEdgeLimit = 20;

CrossingPolynomial crossing_polynomial(const PercGraph& g);
double exact_crossing_small(const PercGraph& g, double p);

struct ThresholdEstimate {
  double p_hat = 0.0;
  double target_crossing = 0.5;
  Interval bracket;
  std::uint64_t trials_per_probe = 0;
  std::uint64_t seed = kDefaultSeed;
  std::string method;  // "exact" or "monte-carlo"
  double sigma = 0.0;  // half-width of the z = 1 Wilson band in p
  int probes = 0;
};

// Bisection for the p at which the root-to-target crossing probability equals
// `target`. Graphs with at most kExactEdgeLimit edges use the exact polynomial.
ThresholdEstimate threshold_estimate(const PercGraph& g, std::uint64_t trials_per_probe,
                                     double target = 0.5, std::uint64_t seed = kDefaultSeed,
                                     int workers = 1);

// p_c of the 2k-regular tree.
Rational pc_reference(int k);

struct QuotientComparison {
  int radius = 0;
  std::size_t group_vertices = 0, tree_vertices = 0;
  std::size_t group_edges = 0, tree_edges = 0;
  bool graphs_identical = false;
  ThresholdEstimate group;
  ThresholdEstimate tree;
  double difference = 0.0;  // group.p_hat - tree.p_hat
  double sigma = 0.0;       // combined
};

QuotientComparison compare_quotient_vs_tree(const Presentation& p, const GeneratingSet& z, int radius,
                                             std::uint64_t trials, std::uint64_t seed = kDefaultSeed,
                                             int workers = 1);

}  // namespace freelike
