#include "freelike/groupcert.hpp"

#include <atomic>
#include <limits>
#include <numeric>

#include "freelike/cayley.hpp"
#include "freelike/presentation.hpp"
#include "parallel.hpp"

namespace freelike {

GeneratingSet make_generating_set(std::vector<Word> words, std::string label) {
  if (words.empty()) throw InvalidArgument("generating set needs at least one word");
  const int rank = words.front().rank();
  for (const Word& w : words) {
    if (w.empty()) throw InvalidArgument("generating set contains the empty word");
    if (w.rank() != rank) throw RankMismatch("generating set words over different alphabets");
  }
  return {std::move(words), std::move(label)};
}

std::string format_generating_set(const GeneratingSet& z) {
  std::string out;
  for (std::size_t i = 0; i < z.words.size(); ++i) {
    if (i) out += ", ";
    out += format_word(z.words[i]);
  }
  return out;
}

GeneratingSet xn_generating_set(int k, int n) {
  if (k < 2) throw InvalidArgument("X_n(k) needs k >= 2");
  if (n < 2 || n % 4 != 2) {
    throw InvalidArgument("X_n(k) needs n = 2 (mod 4), got n = " + std::to_string(n));
  }
  const Word a = generator(0, 2);
  const Word b = generator(1, 2);
  std::vector<Word> words{a};
  for (int i = 1; i < k; ++i) words.push_back(b * power(a, static_cast<long>(i) * n));
  return make_generating_set(std::move(words),
                             "X" + std::to_string(n) + "(" + std::to_string(k) + ")");
}

GirthCertificate girth_scan(const GroupOracle& oracle, const GeneratingSet& z, int max_len,
                            const ScanOptions& options) {
  if (max_len < 1) throw InvalidArgument("girth scan length must be at least 1");
  if (z.words.empty()) throw InvalidArgument("girth scan over an empty generating set");
  if (z.ambient_rank() != oracle.rank()) {
    throw RankMismatch("generating set of rank " + std::to_string(z.ambient_rank()) +
                       " scanned with an oracle of rank " + std::to_string(oracle.rank()));
  }
  constexpr auto kMode = EnumMode::cyclically_reduced_canonical;
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  const int k = z.k();

  GirthCertificate cert;
  cert.generating_set = z;
  std::uint64_t examined = 0;
  for (int len = 1; len <= max_len; ++len) {
    const auto prefixes = enumeration_prefixes(k, len, kMode, std::min(len, 4));
    struct Slot {
      std::uint64_t count = 0;
      std::optional<Word> hit;
    };
    std::vector<Slot> slots(prefixes.size());
    std::atomic<std::size_t> best{kNone};
    std::atomic<std::uint64_t> in_flight{0};

    detail::parallel_for(prefixes.size(), options.workers, [&](std::size_t t) {
      if (t > best.load()) return;
      Slot& slot = slots[t];
      for_each_word_with_prefix(k, len, kMode, prefixes[t], [&](const Word& u) {
        ++slot.count;
        if (examined + in_flight.fetch_add(1) + 1 > options.budget) {
          throw BudgetExceeded("girth scan exceeded its budget of " +
                               std::to_string(options.budget) + " words");
        }
        if (oracle.is_trivial(substitute(u, z.words))) {
          slot.hit = u;
          std::size_t cur = best.load();
          while (t < cur && !best.compare_exchange_weak(cur, t)) {
          }
          return false;
        }
        return t <= best.load();
      });
    });

    for (std::size_t t = 0; t < slots.size(); ++t) {
      examined += slots[t].count;
      if (slots[t].hit) {
        cert.scanned_up_to = len;
        cert.shortest_relation = slots[t].hit;
        cert.words_examined = examined;
        return cert;
      }
    }
  }
  cert.scanned_up_to = max_len;
  cert.words_examined = examined;
  return cert;
}

GirthCertificate free_subgroup_scan(const GroupOracle& oracle, const Word& first,
                                    const Word& second, int max_len, const ScanOptions& options) {
  return girth_scan(oracle, make_generating_set({first, second}, "pair"), max_len, options);
}

Word build_almost_identity(std::span<const Word> words, const AlmostIdentityCaps& caps) {
  if (words.empty()) throw InvalidArgument("almost identity needs at least one word");
  if (words.size() > caps.max_words) {
    throw BudgetExceeded("almost identity over " + std::to_string(words.size()) +
                         " words exceeds the cap of " + std::to_string(caps.max_words));
  }
  for (const Word& w : words) {
    if (w.empty()) throw InvalidArgument("almost identity input contains a trivial word");
    if (w.rank() != words.front().rank()) throw RankMismatch("almost identity words of mixed rank");
  }
  Word u = words.front();
  for (std::size_t i = 1; i < words.size(); ++i) {
    const Word& w = words[i];
    if (commute_in_free(u, w)) {
      const auto ru = primitive_root(u);
      const auto rw = primitive_root(w);
      long q = rw.exponent;
      if (rw.root != ru.root) {
        if (rw.root != invert(ru.root)) throw Error("commuting words without a common root");
        q = -q;
      }
      const long g = std::gcd(ru.exponent, q < 0 ? -q : q);
      u = power(u, q / g);
    } else {
      u = commutator(u, w);
    }
    if (u.size() > caps.max_length) {
      throw BudgetExceeded("almost identity grew past " + std::to_string(caps.max_length) +
                           " letters at step " + std::to_string(i + 1));
    }
  }
  return u;
}

Word almost_identity_for_girth_bound(int k, int max_word_len, const AlmostIdentityCaps& caps) {
  if (k < 2) throw InvalidArgument("almost identity construction needs k >= 2");
  if (max_word_len < 1) throw InvalidArgument("word length bound must be at least 1");
  const std::uint64_t m = count_reduced_words(k, max_word_len);
  if (m > caps.max_words) {
    throw BudgetExceeded(std::to_string(m) + " words of length <= " + std::to_string(max_word_len) +
                         " exceed the cap of " + std::to_string(caps.max_words));
  }
  const auto words = enumerate_words(k, max_word_len, EnumMode::all_reduced);
  return build_almost_identity(words, caps);
}

ModNWitness girth_witness_mod_n(std::span<const Word> tuple, int n) {
  if (n < 2) throw InvalidArgument("mod-n witness needs n >= 2");
  if (tuple.empty()) throw InvalidArgument("mod-n witness needs a nonempty tuple");
  for (const Word& x : tuple) {
    if (x.rank() != 2) throw RankMismatch("mod-n witness expects words over {a, b}");
  }
  ModNWitness out;
  auto mod = [n](long v) { return ((v % n) + n) % n; };
  const std::int64_t nn = static_cast<std::int64_t>(n);
  // Index of the lattice spanned by the vectors and n Z^2: gcd of all 2x2 minors.
  std::int64_t index = nn * nn;
  for (const Word& x : tuple) {
    out.vectors.push_back({mod(exp_sum(x, 0)), mod(exp_sum(x, 1))});
  }
  for (std::size_t i = 0; i < out.vectors.size(); ++i) {
    const auto& v = out.vectors[i];
    index = std::gcd(index, nn * v[0]);
    index = std::gcd(index, nn * v[1]);
    for (std::size_t j = i + 1; j < out.vectors.size(); ++j) {
      const auto& w = out.vectors[j];
      const std::int64_t det = static_cast<std::int64_t>(v[0]) * w[1] - static_cast<std::int64_t>(v[1]) * w[0];
      index = std::gcd(index, det < 0 ? -det : det);
    }
  }
  out.image_order = nn * nn / index;
  out.generating = index == 1;
  if (!out.generating) return out;
  const int k = static_cast<int>(tuple.size());
  for (std::size_t i = 0; i < out.vectors.size(); ++i) {
    if (out.vectors[i][0] != 0 || out.vectors[i][1] != 0) {
      out.index = i + 1;
      out.witness = power(generator(static_cast<int>(i), k), n);
      break;
    }
  }
  return out;
}

FreeLikeEvidence free_like_evidence(const Presentation& p, int k, int n,
                                    const EvidenceOptions& options) {
  if (p.rank() != 2) throw RankMismatch("free-like evidence expects a presentation over {a, b}");
  const GroupOracle oracle = small_cancellation_oracle(p);
  FreeLikeEvidence ev;
  ev.k = k;
  ev.n = n;
  const GeneratingSet z = xn_generating_set(k, n);
  const int scan_len = options.scan_len > 0 ? options.scan_len : n;
  ev.girth_certificate = girth_scan(oracle, z, scan_len, options.scan);
  ev.free_subgroup_scan_bound = options.free_scan_len;
  ev.free_subgroup_certificate =
      free_subgroup_scan(oracle, power(z.words[0], 4), z.words[1], options.free_scan_len, options.scan);
  if (options.ball_radius < 1) throw InvalidArgument("Cheeger bound needs ball radius >= 1");
  const CayleyBall ball = build_ball(oracle, z, options.ball_radius, options.ball_budget);
  ev.ball_radius = options.ball_radius;
  ev.ball_vertices = ball.vertex_count();
  const CheegerBound bound = cheeger_upper_bound(ball, {CandidateFamily::sub_balls()});
  ev.cheeger_upper_bound = bound.best_ratio;

  std::string notes;
  if (ev.girth_certificate.shortest_relation) {
    notes += "relation of length " + std::to_string(ev.girth_certificate.shortest_relation->size()) +
             " found; ";
  } else {
    notes += "girth >= " + std::to_string(scan_len + 1) + " by exhaustive scan; ";
  }
  if (ev.free_subgroup_certificate.shortest_relation) {
    notes += "<x1^4, x2> has a relation of length " +
             std::to_string(ev.free_subgroup_certificate.shortest_relation->size()) + "; ";
  } else {
    notes += "<x1^4, x2> has no relation of length <= " + std::to_string(options.free_scan_len) + "; ";
  }
  notes += "Cheeger upper bound from sub-balls of radius <= " +
           std::to_string(options.ball_radius - 1) + " (" + bound.best_label + ")";
  ev.notes = notes;
  return ev;
}

}  // namespace freelike
