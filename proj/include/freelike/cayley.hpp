#pragma once

// Balls in Cayley graphs over a group oracle, inner boundaries and Cheeger
// upper bounds.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "freelike/groupcert.hpp"
#include "freelike/oracle.hpp"
#include "freelike/rational.hpp"

namespace freelike {

struct BallEdge {
  int source = 0;
  int generator = 0;  // 1-based index into the generating set
  int sign = 1;       // +1 or -1
  int target = 0;

  friend bool operator==(const BallEdge&, const BallEdge&) = default;
};

class CayleyBall {
 public:
  int radius() const { return radius_; }
  const GeneratingSet& generating_set() const { return generating_set_; }
  int k() const { return generating_set_.k(); }

  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<Word>& vertices() const { return vertices_; }
  const Word& representative(int v) const { return vertices_[static_cast<std::size_t>(v)]; }
  int layer(int v) const { return layer_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& layers() const { return layer_; }
  // Vertices of one layer form the contiguous index range [layer_begin(l), layer_begin(l + 1)).
  int layer_begin(int l) const;

  const std::vector<BallEdge>& edges() const { return edges_; }
  // The 2k edges leaving v, for v at layer <= radius - 1.
  std::span<const BallEdge> out_edges(int v) const;

 private:
  friend CayleyBall build_ball(const GroupOracle&, const GeneratingSet&, int, std::size_t);

  int radius_ = 0;
  GeneratingSet generating_set_;
  std::vector<Word> vertices_;
  std::vector<int> layer_;
  std::vector<BallEdge> edges_;
  std::vector<std::size_t> out_begin_;  // per vertex; interior vertices only
};

inline constexpr std::size_t kDefaultBallBudget = 2'000'000;

// BFS from the identity; neighbours are numbered in (parent, generator, sign)
// order. Candidates are matched on the oracle's normal form when it has one,
// otherwise on the reduced word first and by oracle equality against the
// adjacent layers second.
CayleyBall build_ball(const GroupOracle& oracle, const GeneratingSet& z, int radius,
                      std::size_t budget = kDefaultBallBudget);

using VertexSet = std::vector<int>;  // sorted, duplicate free

// Members of `a` with a neighbour outside `a`. Refuses members at the outer layer.
VertexSet inner_boundary(const CayleyBall& ball, const VertexSet& a);
// Vertices at layer <= s.
VertexSet sub_ball(const CayleyBall& ball, int s);

struct CandidateFamily {
  struct SubBalls {};
  struct RandomConnected {
    std::size_t count = 0;
    std::size_t size = 0;
    std::uint64_t seed = 0;
  };
  struct Explicit {
    std::vector<VertexSet> sets;
  };
  std::variant<SubBalls, RandomConnected, Explicit> spec;

  static CandidateFamily sub_balls() { return {SubBalls{}}; }
  static CandidateFamily random_connected(std::size_t count, std::size_t size, std::uint64_t seed) {
    return {RandomConnected{count, size, seed}};
  }
  static CandidateFamily explicit_sets(std::vector<VertexSet> sets) { return {Explicit{std::move(sets)}}; }
};

struct CheegerCandidate {
  std::string label;
  std::size_t size = 0;
  std::size_t boundary = 0;
  Rational ratio;
};

struct CheegerBound {
  Rational best_ratio;
  VertexSet best_set;
  std::string best_label;
  std::vector<CheegerCandidate> candidates;  // in family order
};

// Minimum of #boundary/#A over the candidate sets; the first minimum wins.
CheegerBound cheeger_upper_bound(const CayleyBall& ball, const std::vector<CandidateFamily>& families);

enum class GraphFormat { adjacency, dot };

std::string export_graph(const CayleyBall& ball, GraphFormat format);

}  // namespace freelike
