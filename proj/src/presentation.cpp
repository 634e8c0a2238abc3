#include "freelike/presentation.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <map>

namespace freelike {

namespace detail {

std::size_t common_prefix(std::span<const Letter> a, std::span<const Letter> b) {
  const std::size_t n = std::min(a.size(), b.size());
  auto [ia, ib] = std::mismatch(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n), b.begin());
  return static_cast<std::size_t>(ia - a.begin());
}

namespace {

CyclicRelator make_cyclic(const Word& w, std::size_t orbit, bool inverse_of_base) {
  CyclicRelator c;
  c.length = w.size();
  c.period = cyclic_period(w);
  c.orbit = orbit;
  c.inverse_of_base = inverse_of_base;
  c.doubled.reserve(2 * w.size());
  c.doubled.insert(c.doubled.end(), w.begin(), w.end());
  c.doubled.insert(c.doubled.end(), w.begin(), w.end());
  return c;
}

bool lex_less(std::span<const Letter> a, std::span<const Letter> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

RelatorIndex::RelatorIndex(int rank, std::span<const Word> base) {
  std::map<Word, std::size_t> orbit_of;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const Word& w = base[i];
    if (w.rank() != rank) {
      throw RankMismatch("relator " + format_word(w) + " has rank " + std::to_string(w.rank()) +
                         ", presentation rank " + std::to_string(rank));
    }
    if (w.empty()) throw InvalidArgument("empty relator");
    if (!is_cyclically_reduced(w)) {
      throw InvalidArgument("relator " + format_word(w) + " is not cyclically reduced");
    }
    auto [it, fresh] = orbit_of.emplace(canonical_cyclic(w), orbit_representative_.size());
    if (!fresh) continue;
    const std::size_t orbit = it->second;
    orbit_representative_.push_back(i);
    cyclic_.push_back(make_cyclic(w, orbit, false));
    const Word inv = invert(w);
    if (least_rotation(inv) != least_rotation(w)) cyclic_.push_back(make_cyclic(inv, orbit, true));
  }

  min_length_ = std::numeric_limits<std::size_t>::max();
  for (std::uint32_t r = 0; r < cyclic_.size(); ++r) {
    min_length_ = std::min(min_length_, cyclic_[r].length);
    for (std::uint32_t off = 0; off < cyclic_[r].period; ++off) sorted_.push_back({r, off});
  }
  std::sort(sorted_.begin(), sorted_.end(),
            [&](ShiftRef x, ShiftRef y) { return lex_less(letters(x), letters(y)); });

  std::map<std::size_t, std::size_t> class_of_length;
  for (ShiftRef ref : sorted_) {
    auto [it, fresh] = class_of_length.emplace(length(ref), classes_.size());
    if (fresh) classes_.push_back({length(ref), {}});
    classes_[it->second].sorted.push_back(ref);
  }
  std::sort(classes_.begin(), classes_.end(),
            [](const LengthClass& a, const LengthClass& b) { return a.length < b.length; });
}

std::span<const Letter> RelatorIndex::letters(ShiftRef ref) const {
  const CyclicRelator& c = cyclic_[ref.relator];
  return std::span<const Letter>(c.doubled.data() + ref.offset, c.length);
}

Word RelatorIndex::word(ShiftRef ref, int rank) const {
  auto s = letters(ref);
  return from_reduced_unchecked({s.begin(), s.end()}, rank);
}

RelatorIndex::Bracket RelatorIndex::locate(const std::vector<ShiftRef>& entries,
                                           std::span<const Letter> pattern) const {
  // Binary search that skips the prefix shared by both bracket ends.
  Bracket b;
  b.lo = -1;
  b.hi = static_cast<std::ptrdiff_t>(entries.size());
  while (b.hi - b.lo > 1) {
    const std::ptrdiff_t mid = b.lo + (b.hi - b.lo) / 2;
    const auto entry = letters(entries[static_cast<std::size_t>(mid)]);
    const std::size_t skip = std::min(b.lcp_lo, b.lcp_hi);
    const std::size_t l = skip + common_prefix(pattern.subspan(skip), entry.subspan(skip));
    const bool pattern_not_greater =
        l == pattern.size() || (l < entry.size() && pattern[l] < entry[l]);
    if (pattern_not_greater) {
      b.hi = mid;
      b.lcp_hi = l;
    } else {
      b.lo = mid;
      b.lcp_lo = l;
    }
  }
  if (b.lo < 0) b.lcp_lo = 0;
  if (b.hi >= static_cast<std::ptrdiff_t>(entries.size())) b.lcp_hi = 0;
  return b;
}

std::optional<PrefixMatch> RelatorIndex::longest_half_match(std::span<const Letter> pattern) const {
  std::optional<PrefixMatch> best;
  for (const LengthClass& cls : classes_) {
    if (2 * pattern.size() <= cls.length) break;  // classes ascend in length
    const Bracket b = locate(cls.sorted, pattern);
    const bool lo_valid = b.lo >= 0;
    const bool hi_valid = b.hi < static_cast<std::ptrdiff_t>(cls.sorted.size());
    std::size_t len = 0;
    std::ptrdiff_t idx = -1;
    if (lo_valid && b.lcp_lo >= (hi_valid ? b.lcp_hi : 0)) {
      len = b.lcp_lo;
      idx = b.lo;
      while (idx > 0 &&
             common_prefix(pattern, letters(cls.sorted[static_cast<std::size_t>(idx - 1)])) >= len) {
        --idx;
      }
    } else if (hi_valid) {
      len = b.lcp_hi;
      idx = b.hi;
    }
    if (idx < 0 || 2 * len <= cls.length) continue;
    const ShiftRef ref = cls.sorted[static_cast<std::size_t>(idx)];
    if (!best || len > best->length ||
        (len == best->length && lex_less(letters(ref), letters(best->ref)))) {
      best = PrefixMatch{ref, len};
    }
  }
  return best;
}

std::optional<PrefixMatch> RelatorIndex::foreign_half_match(std::span<const Letter> pattern,
                                                            std::size_t orbit) const {
  std::optional<PrefixMatch> best;
  auto consider = [&](ShiftRef ref, std::size_t len) {
    if (cyclic_[ref.relator].orbit == orbit) return;
    if (!best || len > best->length ||
        (len == best->length && lex_less(letters(ref), letters(best->ref)))) {
      best = PrefixMatch{ref, len};
    }
  };
  for (const LengthClass& cls : classes_) {
    if (2 * pattern.size() <= cls.length) break;
    const Bracket b = locate(cls.sorted, pattern);
    // Common prefix with the pattern is monotone moving away from the bracket.
    for (std::ptrdiff_t i = b.lo; i >= 0; --i) {
      const ShiftRef ref = cls.sorted[static_cast<std::size_t>(i)];
      const std::size_t l = common_prefix(pattern, letters(ref));
      if (2 * l <= cls.length) break;
      consider(ref, l);
    }
    for (auto i = static_cast<std::size_t>(b.hi); i < cls.sorted.size(); ++i) {
      const ShiftRef ref = cls.sorted[i];
      const std::size_t l = common_prefix(pattern, letters(ref));
      if (2 * l <= cls.length) break;
      consider(ref, l);
    }
  }
  return best;
}

std::optional<ShiftRef> RelatorIndex::find(std::span<const Letter> pattern) const {
  const Bracket b = locate(sorted_, pattern);
  if (b.hi < static_cast<std::ptrdiff_t>(sorted_.size())) {
    const ShiftRef ref = sorted_[static_cast<std::size_t>(b.hi)];
    if (b.lcp_hi == pattern.size() && length(ref) == pattern.size()) return ref;
  }
  return std::nullopt;
}

}  // namespace detail

using detail::common_prefix;

Presentation::Presentation(int rank, std::vector<Word> base_relators)
    : rank_(rank), base_(std::move(base_relators)) {
  if (rank < 1 || rank > kMaxRank) throw InvalidArgument("presentation rank out of range");
  index_ = std::make_shared<const detail::RelatorIndex>(rank_, base_);
}

bool Presentation::dehn_ready() const {
  return verified_lambda_.has_value() && *verified_lambda_ <= Rational(1, 6);
}

std::vector<Word> Presentation::symmetrized() const {
  std::vector<Word> out;
  out.reserve(index_->sorted().size());
  for (auto ref : index_->sorted()) out.push_back(index_->word(ref, rank_));
  return out;
}

std::size_t Presentation::min_relator_length() const { return index_->min_length(); }

std::vector<Word> symmetrize(std::span<const Word> base) {
  if (base.empty()) return {};
  return Presentation(base.front().rank(), {base.begin(), base.end()}).symmetrized();
}

std::vector<int> default_family_coefficients() {
  std::vector<int> c;
  for (int i = 2; i <= 100; i += 2) c.push_back(i);
  return c;
}

std::vector<Word> make_family(std::span<const int> j_values, std::span<const int> coefficients) {
  if (coefficients.empty()) throw InvalidArgument("family needs at least one coefficient");
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] <= 0 || coefficients[i] % 2 != 0) {
      throw InvalidArgument("family coefficients must be positive and even, got " +
                            std::to_string(coefficients[i]));
    }
    if (i > 0 && coefficients[i] <= coefficients[i - 1]) {
      throw InvalidArgument("family coefficients must be strictly increasing");
    }
  }
  std::vector<int> js(j_values.begin(), j_values.end());
  std::sort(js.begin(), js.end());
  js.erase(std::unique(js.begin(), js.end()), js.end());
  const Letter a(0, 1), b(1, 1);
  std::vector<Word> out;
  for (int j : js) {
    if (j < 1) throw InvalidArgument("family parameter j must be >= 1");
    std::vector<Letter> letters;
    for (int c : coefficients) {
      letters.push_back(a);
      letters.insert(letters.end(), static_cast<std::size_t>(c) * static_cast<std::size_t>(j), b);
    }
    out.push_back(reduce(letters, 2));
  }
  return out;
}

CPrimeResult check_c_prime(const Presentation& p, Rational lambda) {
  if (lambda <= Rational(0) || lambda > Rational(1)) {
    throw InvalidArgument("lambda must lie in (0, 1], got " + lambda.to_string());
  }
  const auto& index = p.index();
  const auto& sorted = index.sorted();
  // A violating pair exists iff some lexicographically adjacent pair violates,
  // and the most severe ratio lcp/min is attained on an adjacent pair.
  CPrimeResult result;
  std::size_t worst = 0, worst_lcp = 0, worst_min = 1;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const auto x = index.letters(sorted[i]);
    const auto y = index.letters(sorted[i + 1]);
    const std::size_t l = common_prefix(x, y);
    const std::size_t m = std::min(x.size(), y.size());
    const __int128 lhs = static_cast<__int128>(l) * lambda.den();
    const __int128 rhs = static_cast<__int128>(lambda.num()) * static_cast<__int128>(m);
    if (lhs < rhs) continue;
    if (result.ok || l * worst_min > worst_lcp * m) {
      result.ok = false;
      worst = i;
      worst_lcp = l;
      worst_min = m;
    }
  }
  if (!result.ok) {
    result.violation = CPrimeViolation{index.word(sorted[worst], p.rank()),
                                       index.word(sorted[worst + 1], p.rank()), worst_lcp};
  }
  return result;
}

Presentation verify_c_prime(const Presentation& p, Rational lambda) {
  CPrimeResult r = check_c_prime(p, lambda);
  if (!r.ok) {
    const auto& v = *r.violation;
    throw SmallCancellationViolation("C'(" + lambda.to_string() + ") fails: common prefix " +
                                         std::to_string(v.lcp) + " of " + format_word(v.r) +
                                         " and " + format_word(v.r_prime),
                                     v);
  }
  Presentation out = p;
  out.verified_lambda_ = lambda;
  return out;
}

ScReport check_family_conditions(const Presentation& p, Rational lambda) {
  ScReport report;
  report.lambda = lambda;
  const auto& index = p.index();

  // (a) the shift closure of the base relators is closed under rotation by one.
  report.closed_under_shifts = true;
  for (const auto& c : index.cyclic()) {
    if (c.inverse_of_base) continue;
    for (std::size_t off = 0; off < c.period && report.closed_under_shifts; ++off) {
      const std::span<const Letter> next(c.doubled.data() + (off + 1) % c.length, c.length);
      auto hit = index.find(next);
      report.closed_under_shifts = hit && !index.cyclic()[hit->relator].inverse_of_base;
    }
  }

  // (b)
  CPrimeResult cp = check_c_prime(p, lambda);
  report.c_prime_ok = cp.ok;
  report.c_prime_violation = cp.violation;

  // (c) no member of the positive shift closure starts with a^2, (ab)^2 or (ba)^2.
  report.forbidden_prefix_ok = true;
  if (p.rank() >= 1) {
    const Letter a(0, 1);
    std::vector<std::vector<Letter>> forbidden = {{a, a}};
    if (p.rank() >= 2) {
      const Letter b(1, 1);
      forbidden.push_back({a, b, a, b});
      forbidden.push_back({b, a, b, a});
    }
    for (const auto& c : index.cyclic()) {
      if (c.inverse_of_base || !report.forbidden_prefix_ok) continue;
      for (std::size_t off = 0; off < c.period && report.forbidden_prefix_ok; ++off) {
        const std::span<const Letter> shift(c.doubled.data() + off, c.length);
        for (const auto& f : forbidden) {
          if (f.size() <= shift.size() && std::equal(f.begin(), f.end(), shift.begin())) {
            report.forbidden_prefix_ok = false;
            report.forbidden_prefix_word = from_reduced_unchecked({shift.begin(), shift.end()},
                                                                  p.rank());
            break;
          }
        }
      }
    }
  }

  // (d) and positivity
  report.min_length_ok = std::all_of(p.base_relators().begin(), p.base_relators().end(),
                                     [](const Word& w) { return w.size() >= 6; });
  report.positive_ok = std::all_of(
      p.base_relators().begin(), p.base_relators().end(), [](const Word& w) {
        return std::none_of(w.begin(), w.end(), [](Letter l) { return l.is_inverse(); });
      });
  return report;
}

namespace {

void require_dehn_ready(const Presentation& p, const char* op) {
  if (!p.dehn_ready()) {
    throw Unverified(std::string(op) + " needs a presentation verified for C'(1/6)");
  }
}

}  // namespace

std::optional<GreendlingerMatch> greendlinger_find(const Word& u, const Presentation& p,
                                                   Scan scan) {
  require_dehn_ready(p, "greendlinger_find");
  if (u.rank() != p.rank()) throw RankMismatch("greendlinger_find: word and presentation ranks");
  const std::size_t n = u.size();
  // A piece longer than half a relator cannot fit.
  if (n == 0 || 2 * n <= p.min_relator_length()) return std::nullopt;

  std::vector<Letter> buffer(u.begin(), u.end());
  if (scan == Scan::cyclic) buffer.insert(buffer.end(), u.begin(), u.end());
  const auto& index = p.index();
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t avail = scan == Scan::cyclic ? n : n - pos;
    if (2 * avail <= p.min_relator_length()) break;
    const std::span<const Letter> pattern(buffer.data() + pos, avail);
    if (auto m = index.longest_half_match(pattern)) {
      return GreendlingerMatch{
          pos, from_reduced_unchecked({pattern.begin(), pattern.begin() + static_cast<std::ptrdiff_t>(m->length)},
                                      p.rank()),
          index.word(m->ref, p.rank())};
    }
  }
  return std::nullopt;
}

bool dehn_trivial(const Word& w, const Presentation& p, std::vector<DehnStep>* trace) {
  require_dehn_ready(p, "dehn_trivial");
  if (w.rank() != p.rank()) throw RankMismatch("dehn_trivial: word and presentation ranks");
  Word current = cyclic_reduce(w).core;
  while (!current.empty()) {
    auto match = greendlinger_find(current, p, Scan::cyclic);
    if (!match) return false;
    // Rotate so the piece V starts the word: current ~ V T, and r = V S gives V = S^-1.
    const Word rotated = rotate(current, match->position);
    const std::size_t m = match->piece.size();
    const Word tail = rotated.subword(m, rotated.size() - m);
    const Word complement = match->relator.subword(m, match->relator.size() - m);
    Word next = cyclic_reduce(concat(invert(complement), tail)).core;
    assert(next.size() < current.size());
    if (next.size() >= current.size()) throw Error("Dehn step did not shorten the word");
    if (trace) trace->push_back(DehnStep{current, *match, next});
    current = std::move(next);
  }
  return true;
}

bool eq_in_group(const Word& u, const Word& v, const Presentation& p) {
  return dehn_trivial(concat(u, invert(v)), p);
}

std::optional<IndependenceWitness> half_relator_overlap(const Presentation& p) {
  const auto& index = p.index();
  for (std::size_t orbit = 0; orbit < index.orbit_count(); ++orbit) {
    const Word& rep = p.base_relators()[index.orbit_representatives()[orbit]];
    std::vector<Letter> doubled(rep.begin(), rep.end());
    doubled.insert(doubled.end(), rep.begin(), rep.end());
    for (std::size_t pos = 0; pos < rep.size(); ++pos) {
      const std::span<const Letter> pattern(doubled.data() + pos, rep.size());
      if (auto m = index.foreign_half_match(pattern, orbit)) {
        return IndependenceWitness{rep, index.word(m->ref, p.rank()), m->length};
      }
    }
  }
  return std::nullopt;
}

std::optional<IndependenceWitness> independent_relators(const Presentation& p) {
  require_dehn_ready(p, "independent_relators");
  return half_relator_overlap(p);
}

}  // namespace freelike
