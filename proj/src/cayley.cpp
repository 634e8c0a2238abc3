#include "freelike/cayley.hpp"

#include <algorithm>
#include <unordered_map>

#include "freelike/rng.hpp"

namespace freelike {

namespace {

std::string letter_key(const Word& w) {
  std::string key;
  key.reserve(w.size());
  for (Letter l : w) key.push_back(static_cast<char>(l.code()));
  return key;
}

std::vector<char> membership(const CayleyBall& ball, const VertexSet& a) {
  std::vector<char> in(ball.vertex_count(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int v = a[i];
    if (v < 0 || static_cast<std::size_t>(v) >= ball.vertex_count()) {
      throw InvalidArgument("vertex " + std::to_string(v) + " is not in the ball");
    }
    if (i > 0 && a[i - 1] >= v) throw InvalidArgument("vertex set must be sorted and duplicate free");
    in[static_cast<std::size_t>(v)] = 1;
  }
  return in;
}

}  // namespace

int CayleyBall::layer_begin(int l) const {
  return static_cast<int>(std::lower_bound(layer_.begin(), layer_.end(), l) - layer_.begin());
}

std::span<const BallEdge> CayleyBall::out_edges(int v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= out_begin_.size()) {
    throw InvalidArgument("vertex " + std::to_string(v) + " has incomplete adjacency");
  }
  const std::size_t begin = out_begin_[static_cast<std::size_t>(v)];
  return {edges_.data() + begin, 2 * static_cast<std::size_t>(k())};
}

CayleyBall build_ball(const GroupOracle& oracle, const GeneratingSet& z, int radius,
                      std::size_t budget) {
  if (radius < 0) throw InvalidArgument("ball radius must be nonnegative");
  if (z.words.empty()) throw InvalidArgument("ball over an empty generating set");
  if (z.ambient_rank() != oracle.rank()) {
    throw RankMismatch("generating set of rank " + std::to_string(z.ambient_rank()) +
                       " used with an oracle of rank " + std::to_string(oracle.rank()));
  }
  const bool keyed = oracle.has_normal_form();
  auto key_of = [&](const Word& w) { return keyed ? oracle.normal_form(w) : letter_key(w); };

  CayleyBall ball;
  ball.radius_ = radius;
  ball.generating_set_ = z;
  ball.vertices_.push_back(Word(oracle.rank()));
  ball.layer_.push_back(0);

  std::vector<Word> steps;
  for (const Word& w : z.words) {
    steps.push_back(w);
    steps.push_back(invert(w));
  }
  std::unordered_map<std::string, int> index;
  index.emplace(key_of(ball.vertices_[0]), 0);
  std::vector<std::size_t> layer_start{0};

  for (std::size_t v = 0; v < ball.vertices_.size(); ++v) {
    const int l = ball.layer_[v];
    if (l >= radius) break;
    ball.out_begin_.push_back(ball.edges_.size());
    for (std::size_t s = 0; s < steps.size(); ++s) {
      const Word cand = ball.vertices_[v] * steps[s];
      std::string key = key_of(cand);
      int target = -1;
      if (auto it = index.find(key); it != index.end()) {
        target = it->second;
      } else if (!keyed) {
        // Neighbours of a layer-l vertex lie in layers l-1, l, l+1.
        const std::size_t from = layer_start[static_cast<std::size_t>(std::max(0, l - 1))];
        for (std::size_t u = from; u < ball.vertices_.size(); ++u) {
          if (oracle.are_equal(cand, ball.vertices_[u])) {
            target = static_cast<int>(u);
            break;
          }
        }
      }
      if (target < 0) {
        if (ball.vertices_.size() >= budget) {
          throw BudgetExceeded("ball of radius " + std::to_string(radius) + " exceeds " +
                               std::to_string(budget) + " vertices");
        }
        target = static_cast<int>(ball.vertices_.size());
        if (static_cast<std::size_t>(l + 1) >= layer_start.size()) layer_start.push_back(ball.vertices_.size());
        ball.vertices_.push_back(cand);
        ball.layer_.push_back(l + 1);
      }
      index.emplace(std::move(key), target);
      ball.edges_.push_back({static_cast<int>(v), static_cast<int>(s / 2) + 1, s % 2 == 0 ? 1 : -1, target});
    }
  }
  return ball;
}

VertexSet inner_boundary(const CayleyBall& ball, const VertexSet& a) {
  if (a.empty()) throw InvalidArgument("inner boundary of the empty set");
  const auto in = membership(ball, a);
  VertexSet out;
  for (int v : a) {
    if (ball.layer(v) >= ball.radius()) {
      throw InvalidArgument("vertex " + std::to_string(v) + " lies on the outer layer " +
                            std::to_string(ball.radius()) + "; its neighbourhood is incomplete");
    }
    for (const BallEdge& e : ball.out_edges(v)) {
      if (!in[static_cast<std::size_t>(e.target)]) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

VertexSet sub_ball(const CayleyBall& ball, int s) {
  if (s < 0 || s > ball.radius()) throw InvalidArgument("sub-ball radius out of range");
  VertexSet out(static_cast<std::size_t>(ball.layer_begin(s + 1)));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
  return out;
}

CheegerBound cheeger_upper_bound(const CayleyBall& ball, const std::vector<CandidateFamily>& families) {
  std::vector<std::pair<std::string, VertexSet>> sets;
  const int interior = ball.layer_begin(ball.radius());
  for (const auto& family : families) {
    if (std::holds_alternative<CandidateFamily::SubBalls>(family.spec)) {
      for (int s = 0; s < ball.radius(); ++s) sets.emplace_back("ball(" + std::to_string(s) + ")", sub_ball(ball, s));
    } else if (const auto* rc = std::get_if<CandidateFamily::RandomConnected>(&family.spec)) {
      if (rc->size < 1 || rc->size > static_cast<std::size_t>(interior)) {
        throw InvalidArgument("random set size must lie in [1, " + std::to_string(interior) + "]");
      }
      const CounterRng root(rc->seed);
      for (std::size_t c = 0; c < rc->count; ++c) {
        const CounterRng rng = root.split(c);
        std::uint64_t draw = 0;
        std::vector<char> state(ball.vertex_count(), 0);  // 1 = member, 2 = frontier
        std::vector<int> frontier;
        VertexSet set;
        auto add = [&](int v) {
          state[static_cast<std::size_t>(v)] = 1;
          set.push_back(v);
          for (const BallEdge& e : ball.out_edges(v)) {
            if (e.target < interior && state[static_cast<std::size_t>(e.target)] == 0) {
              state[static_cast<std::size_t>(e.target)] = 2;
              frontier.push_back(e.target);
            }
          }
        };
        add(static_cast<int>(rng.below(static_cast<std::uint64_t>(interior), draw++)));
        while (set.size() < rc->size && !frontier.empty()) {
          const auto pick = static_cast<std::size_t>(rng.below(frontier.size(), draw++));
          const int v = frontier[pick];
          frontier[pick] = frontier.back();
          frontier.pop_back();
          add(v);
        }
        std::sort(set.begin(), set.end());
        sets.emplace_back("random(" + std::to_string(c) + ")", std::move(set));
      }
    } else {
      const auto& ex = std::get<CandidateFamily::Explicit>(family.spec);
      for (std::size_t i = 0; i < ex.sets.size(); ++i) sets.emplace_back("set(" + std::to_string(i) + ")", ex.sets[i]);
    }
  }
  if (sets.empty()) throw InvalidArgument("empty Cheeger candidate family");

  CheegerBound out;
  std::size_t best = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& [label, set] = sets[i];
    if (set.empty()) throw InvalidArgument("Cheeger candidate " + label + " is empty");
    const std::size_t boundary = inner_boundary(ball, set).size();
    CheegerCandidate c{label, set.size(), boundary,
                       Rational(static_cast<std::int64_t>(boundary), static_cast<std::int64_t>(set.size()))};
    if (i == 0 || c.ratio < out.candidates[best].ratio) best = i;
    out.candidates.push_back(std::move(c));
  }
  out.best_ratio = out.candidates[best].ratio;
  out.best_label = out.candidates[best].label;
  out.best_set = sets[best].second;
  return out;
}

std::string export_graph(const CayleyBall& ball, GraphFormat format) {
  std::string out;
  auto sign = [](int s) { return s > 0 ? '+' : '-'; };
  if (format == GraphFormat::adjacency) {
    out += "# cayley ball, radius " + std::to_string(ball.radius()) + ", generators " +
           format_generating_set(ball.generating_set()) + "\n";
    out += "vertices: " + std::to_string(ball.vertex_count()) + "\n";
    out += "root: 0\n";
    out += "target:";
    for (int v = ball.layer_begin(ball.radius()); v < static_cast<int>(ball.vertex_count()); ++v) {
      out += " " + std::to_string(v);
    }
    out += "\n";
    for (const BallEdge& e : ball.edges()) {
      out += std::to_string(e.source) + " " + std::to_string(e.generator) + sign(e.sign) + " " +
             std::to_string(e.target) + "\n";
    }
    return out;
  }
  out += "digraph cayley_ball {\n";
  for (std::size_t v = 0; v < ball.vertex_count(); ++v) {
    out += "  " + std::to_string(v) + " [label=\"" + format_word(ball.vertices()[v]) + "\"];\n";
  }
  for (const BallEdge& e : ball.edges()) {
    out += "  " + std::to_string(e.source) + " -> " + std::to_string(e.target) + " [label=\"g" +
           std::to_string(e.generator) + sign(e.sign) + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace freelike
