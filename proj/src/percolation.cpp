#include "freelike/percolation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "freelike/cayley.hpp"
#include "freelike/oracle.hpp"
#include "freelike/rng.hpp"
#include "parallel.hpp"

namespace freelike {

namespace {

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("probability must lie in [0, 1]");
}

// Compressed adjacency: incident (edge, neighbour) pairs per vertex.
struct Adjacency {
  std::vector<std::size_t> begin;
  std::vector<std::pair<std::size_t, int>> incident;
  std::vector<char> is_target;

  explicit Adjacency(const PercGraph& g) {
    const auto n = static_cast<std::size_t>(g.vertex_count);
    begin.assign(n + 1, 0);
    for (const auto& [u, v] : g.edges) {
      ++begin[static_cast<std::size_t>(u) + 1];
      ++begin[static_cast<std::size_t>(v) + 1];
    }
    std::partial_sum(begin.begin(), begin.end(), begin.begin());
    incident.resize(2 * g.edges.size());
    std::vector<std::size_t> fill(begin.begin(), begin.end() - 1);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const auto [u, v] = g.edges[e];
      incident[fill[static_cast<std::size_t>(u)]++] = {e, v};
      incident[fill[static_cast<std::size_t>(v)]++] = {e, u};
    }
    is_target.assign(n, 0);
    for (int t : g.target) is_target[static_cast<std::size_t>(t)] = 1;
  }
};

// BFS from the root over edges accepted by `open_edge`, stopping at the first target.
template <class OpenFn>
bool crosses(const PercGraph& g, const Adjacency& adj, OpenFn&& open_edge,
             std::vector<std::uint32_t>& mark, std::uint32_t stamp, std::vector<int>& queue) {
  if (adj.is_target[static_cast<std::size_t>(g.root)]) return true;
  queue.clear();
  queue.push_back(g.root);
  mark[static_cast<std::size_t>(g.root)] = stamp;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto v = static_cast<std::size_t>(queue[head]);
    for (std::size_t i = adj.begin[v]; i < adj.begin[v + 1]; ++i) {
      const auto [e, w] = adj.incident[i];
      if (mark[static_cast<std::size_t>(w)] == stamp || !open_edge(e)) continue;
      if (adj.is_target[static_cast<std::size_t>(w)]) return true;
      mark[static_cast<std::size_t>(w)] = stamp;
      queue.push_back(w);
    }
  }
  return false;
}

void require_target(const PercGraph& g) {
  if (g.target.empty()) throw InvalidArgument("crossing needs a nonempty target set");
}

std::uint64_t count_crossings(const PercGraph& g, const Adjacency& adj, double p,
                              std::uint64_t trials, std::uint64_t seed, int workers) {
  constexpr std::uint64_t kBlock = 256;
  const std::uint64_t blocks = (trials + kBlock - 1) / kBlock;
  std::vector<std::uint64_t> hits(static_cast<std::size_t>(blocks), 0);
  const CounterRng rng(seed);
  detail::parallel_for(static_cast<std::size_t>(blocks), workers, [&](std::size_t b) {
    std::vector<std::uint32_t> mark(static_cast<std::size_t>(g.vertex_count), 0);
    std::vector<int> queue;
    const std::uint64_t first = b * kBlock;
    const std::uint64_t last = std::min(trials, first + kBlock);
    std::uint64_t count = 0;
    for (std::uint64_t t = first; t < last; ++t) {
      const auto stamp = static_cast<std::uint32_t>(t - first + 1);
      if (crosses(g, adj, [&](std::size_t e) { return rng.uniform(t, e) < p; }, mark, stamp, queue)) {
        ++count;
      }
    }
    hits[b] = count;
  });
  return std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
}

}  // namespace

void PercGraph::validate() const {
  if (vertex_count < 1) throw InvalidArgument("graph needs at least one vertex");
  auto in_range = [&](int v) { return v >= 0 && v < vertex_count; };
  for (const auto& [u, v] : edges) {
    if (!in_range(u) || !in_range(v)) throw InvalidArgument("edge endpoint out of range");
    if (u == v) throw InvalidArgument("graph contains a self-loop at " + std::to_string(u));
  }
  if (!in_range(root)) throw InvalidArgument("root out of range");
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (!in_range(target[i])) throw InvalidArgument("target vertex out of range");
    if (i > 0 && target[i - 1] >= target[i]) throw InvalidArgument("target set must be sorted");
  }
  if (vertex_count > 1 && std::binary_search(target.begin(), target.end(), root)) {
    throw InvalidArgument("root lies in the target set");
  }
}

PercGraph perc_graph_from_edges(int vertex_count, int root, std::vector<int> target,
                                const std::vector<LabelledEdge>& edges) {
  PercGraph g;
  g.vertex_count = vertex_count;
  g.root = root;
  std::sort(target.begin(), target.end());
  target.erase(std::unique(target.begin(), target.end()), target.end());
  g.target = std::move(target);
  std::set<std::tuple<int, int, int>> seen;  // (tail, generator, head) of the positive direction
  for (const LabelledEdge& e : edges) {
    if (e.source == e.target) continue;
    const auto key = e.sign > 0 ? std::make_tuple(e.source, e.generator, e.target)
                                : std::make_tuple(e.target, e.generator, e.source);
    if (seen.insert(key).second) g.edges.emplace_back(e.source, e.target);
  }
  g.validate();
  return g;
}

PercGraph perc_graph_from_ball(const CayleyBall& ball) {
  std::vector<LabelledEdge> edges;
  edges.reserve(ball.edges().size());
  for (const BallEdge& e : ball.edges()) edges.push_back({e.source, e.generator, e.sign, e.target});
  std::vector<int> target;
  for (int v = ball.layer_begin(ball.radius()); v < static_cast<int>(ball.vertex_count()); ++v) {
    target.push_back(v);
  }
  return perc_graph_from_edges(static_cast<int>(ball.vertex_count()), 0, std::move(target), edges);
}

PercGraph parse_perc_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int vertices = -1, root = 0, line_no = 0;
  std::vector<int> target;
  std::vector<LabelledEdge> edges;
  auto fail = [&](const std::string& what) {
    throw ParseError("graph line " + std::to_string(line_no) + ": " + what);
  };
  auto read_int = [&](std::istringstream& s) {
    long long v = 0;
    if (!(s >> v) || v < 0 || v > 1'000'000'000) fail("expected a vertex index");
    return static_cast<int>(v);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream s(line);
    std::string head;
    if (!(s >> head)) continue;
    if (head == "vertices:") {
      vertices = read_int(s);
    } else if (head == "root:") {
      root = read_int(s);
    } else if (head == "target:") {
      int v = 0;
      while (s >> v) target.push_back(v);
      if (!s.eof()) fail("bad target list");
      continue;
    } else {
      LabelledEdge e;
      std::istringstream hs(head);
      e.source = read_int(hs);
      std::string label;
      if (!(s >> label) || label.size() < 2 || (label.back() != '+' && label.back() != '-')) {
        fail("expected an edge label such as 1+");
      }
      e.sign = label.back() == '+' ? 1 : -1;
      try {
        std::size_t used = 0;
        e.generator = std::stoi(label.substr(0, label.size() - 1), &used);
        if (used != label.size() - 1 || e.generator < 1) fail("bad generator index");
      } catch (const std::logic_error&) {
        fail("bad generator index");
      }
      e.target = read_int(s);
      edges.push_back(e);
    }
    std::string extra;
    if (s >> extra) fail("trailing text \"" + extra + "\"");
  }
  if (vertices < 0) throw ParseError("graph file lacks a `vertices:` line");
  return perc_graph_from_edges(vertices, root, std::move(target), edges);
}

double edge_uniform(std::uint64_t seed, std::uint64_t trial, std::size_t edge) {
  return CounterRng(seed).uniform(trial, edge);
}

std::vector<bool> sample_open_edges(const PercGraph& g, double p, std::uint64_t seed,
                                    std::uint64_t trial) {
  check_p(p);
  const CounterRng rng(seed);
  std::vector<bool> open(g.edges.size());
  for (std::size_t e = 0; e < open.size(); ++e) open[e] = rng.uniform(trial, e) < p;
  return open;
}

std::vector<int> clusters(const PercGraph& g, const std::vector<bool>& open) {
  if (open.size() != g.edges.size()) {
    throw InvalidArgument("open-edge mask has " + std::to_string(open.size()) + " entries for " +
                          std::to_string(g.edges.size()) + " edges");
  }
  std::vector<int> parent(static_cast<std::size_t>(g.vertex_count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (std::size_t e = 0; e < open.size(); ++e) {
    if (!open[e]) continue;
    const int a = find(g.edges[e].first);
    const int b = find(g.edges[e].second);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<int> label(parent.size());
  for (int v = 0; v < g.vertex_count; ++v) label[static_cast<std::size_t>(v)] = find(v);
  return label;
}

bool root_reaches_target(const PercGraph& g, const std::vector<bool>& open) {
  if (open.size() != g.edges.size()) throw InvalidArgument("open-edge mask has the wrong length");
  const Adjacency adj(g);
  std::vector<std::uint32_t> mark(static_cast<std::size_t>(g.vertex_count), 0);
  std::vector<int> queue;
  return crosses(g, adj, [&](std::size_t e) { return static_cast<bool>(open[e]); }, mark, 1, queue);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw InvalidArgument("Wilson interval needs at least one trial");
  if (successes > trials) throw InvalidArgument("more successes than trials");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  Interval out{std::max(0.0, center - half), std::min(1.0, center + half)};
  // Keep the point estimate inside despite rounding at the ends.
  out.lo = std::min(out.lo, phat);
  out.hi = std::max(out.hi, phat);
  return out;
}

PercCurvePoint crossing_probability(const PercGraph& g, double p, std::uint64_t trials,
                                    std::uint64_t seed, int workers) {
  check_p(p);
  if (trials < 1) throw InvalidArgument("crossing estimate needs at least one trial");
  g.validate();
  require_target(g);
  const Adjacency adj(g);
  PercCurvePoint pt;
  pt.p = p;
  pt.trials = trials;
  pt.crossings = count_crossings(g, adj, p, trials, seed, workers);
  pt.estimate = Rational(static_cast<std::int64_t>(pt.crossings), static_cast<std::int64_t>(trials));
  pt.ci95 = wilson_interval(pt.crossings, trials, 1.959963984540054);
  return pt;
}

double CrossingPolynomial::operator()(double p) const {
  check_p(p);
  const std::size_t m = counts.empty() ? 0 : counts.size() - 1;
  double total = 0.0;
  for (std::size_t j = 0; j <= m; ++j) {
    if (counts[j] == 0) continue;
    total += static_cast<double>(counts[j]) * std::pow(p, static_cast<double>(j)) *
             std::pow(1.0 - p, static_cast<double>(m - j));
  }
  return total;
}

CrossingPolynomial crossing_polynomial(const PercGraph& g) {
  g.validate();
  require_target(g);
  const std::size_t m = g.edges.size();
  if (m > kExactEdgeLimit) {
    throw InvalidArgument("exact crossing enumerates 2^|E| realizations; " + std::to_string(m) +
                          " edges exceed the limit of " + std::to_string(kExactEdgeLimit));
  }
  const Adjacency adj(g);
  CrossingPolynomial poly;
  poly.counts.assign(m + 1, 0);
  std::vector<std::uint32_t> mark(static_cast<std::size_t>(g.vertex_count), 0);
  std::vector<int> queue;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    if (crosses(g, adj, [&](std::size_t e) { return ((mask >> e) & 1U) != 0; }, mark, mask + 1, queue)) {
      ++poly.counts[static_cast<std::size_t>(std::popcount(mask))];
    }
  }
  return poly;
}

double exact_crossing_small(const PercGraph& g, double p) {
  check_p(p);
  return crossing_polynomial(g)(p);
}

ThresholdEstimate threshold_estimate(const PercGraph& g, std::uint64_t trials_per_probe,
                                     double target, std::uint64_t seed, int workers) {
  if (!(target > 0.0 && target < 1.0)) throw InvalidArgument("target crossing must lie in (0, 1)");
  if (trials_per_probe < 1) throw InvalidArgument("threshold estimate needs at least one trial per probe");
  g.validate();
  require_target(g);
  const Adjacency adj(g);
  ThresholdEstimate est;
  est.target_crossing = target;
  est.trials_per_probe = trials_per_probe;
  est.seed = seed;

  // Crossing at p = 0 and p = 1 is deterministic.
  std::vector<std::uint32_t> mark(static_cast<std::size_t>(g.vertex_count), 0);
  std::vector<int> queue;
  const bool at0 = crosses(g, adj, [](std::size_t) { return false; }, mark, 1, queue);
  const bool at1 = crosses(g, adj, [](std::size_t) { return true; }, mark, 2, queue);
  if (at0 || !at1) {
    throw InvalidArgument("crossing probability does not bracket the target between p = 0 and p = 1");
  }

  if (g.edges.size() <= kExactEdgeLimit) {
    const CrossingPolynomial poly = crossing_polynomial(g);
    double lo = 0.0, hi = 1.0;
    for (;;) {
      const double mid = lo + (hi - lo) / 2.0;
      if (mid <= lo || mid >= hi) break;
      ++est.probes;
      const double v = poly(mid);
      if (v == target) {
        lo = hi = mid;
        break;
      }
      (v < target ? lo : hi) = mid;
    }
    est.method = "exact";
    est.bracket = {lo, hi};
    est.p_hat = std::abs(poly(lo) - target) < std::abs(poly(hi) - target) ? lo : hi;
    est.sigma = 0.0;
    return est;
  }

  // Coupled probes: the crossing count is nondecreasing in p for a fixed seed.
  auto probe = [&](double p) {
    ++est.probes;
    return count_crossings(g, adj, p, trials_per_probe, seed, workers);
  };
  constexpr double kWidth = 1.0 / 256.0;
  auto bisect = [&](auto&& reached) {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > kWidth) {
      const double mid = (lo + hi) / 2.0;
      (reached(probe(mid)) ? hi : lo) = mid;
    }
    return Interval{lo, hi};
  };
  const auto n = trials_per_probe;
  est.bracket = bisect([&](std::uint64_t c) { return static_cast<double>(c) >= target * static_cast<double>(n); });
  est.p_hat = (est.bracket.lo + est.bracket.hi) / 2.0;
  const Interval below = bisect([&](std::uint64_t c) { return wilson_interval(c, n, 1.0).hi >= target; });
  const Interval above = bisect([&](std::uint64_t c) { return wilson_interval(c, n, 1.0).lo >= target; });
  est.sigma = ((above.lo + above.hi) - (below.lo + below.hi)) / 4.0;
  est.method = "monte-carlo";
  return est;
}

Rational pc_reference(int k) {
  if (k < 1) throw InvalidArgument("pc_reference needs k >= 1");
  return Rational(1, 2 * static_cast<std::int64_t>(k) - 1);
}

QuotientComparison compare_quotient_vs_tree(const Presentation& p, const GeneratingSet& z, int radius,
                                             std::uint64_t trials, std::uint64_t seed, int workers) {
  if (z.ambient_rank() != p.rank()) throw RankMismatch("generating set and presentation ranks differ");
  const GroupOracle group_oracle =
      p.base_relators().empty() ? free_group_oracle(p.rank()) : small_cancellation_oracle(p);
  if (const auto cert = girth_scan(group_oracle, z, 2); cert.shortest_relation) {
    throw InvalidArgument("generating set has a relation of length " +
                          std::to_string(cert.shortest_relation->size()) + "; girth must exceed 2");
  }
  const int k = z.k();
  std::vector<Word> free_gens;
  for (int i = 0; i < k; ++i) free_gens.push_back(generator(i, k));
  const CayleyBall group_ball = build_ball(group_oracle, z, radius);
  const CayleyBall tree_ball =
      build_ball(free_group_oracle(k), make_generating_set(std::move(free_gens), "free basis"), radius);

  QuotientComparison out;
  out.radius = radius;
  out.group_vertices = group_ball.vertex_count();
  out.tree_vertices = tree_ball.vertex_count();
  const PercGraph gg = perc_graph_from_ball(group_ball);
  const PercGraph tg = perc_graph_from_ball(tree_ball);
  out.group_edges = gg.edges.size();
  out.tree_edges = tg.edges.size();
  out.graphs_identical = gg.vertex_count == tg.vertex_count && gg.edges == tg.edges && gg.target == tg.target;
  out.group = threshold_estimate(gg, trials, 0.5, seed, workers);
  out.tree = out.graphs_identical ? out.group : threshold_estimate(tg, trials, 0.5, seed, workers);
  out.difference = out.group.p_hat - out.tree.p_hat;
  out.sigma = std::hypot(out.group.sigma, out.tree.sigma);
  return out;
}

}  // namespace freelike
