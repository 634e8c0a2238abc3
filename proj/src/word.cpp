#include "freelike/word.hpp"

#include <algorithm>
#include <numeric>

namespace freelike {

namespace {

void check_rank(int rank) {
  if (rank < 0 || rank > kMaxRank) {
    throw InvalidArgument("alphabet rank " + std::to_string(rank) + " out of range");
  }
}

void require_same_rank(const Word& u, const Word& v, const char* op) {
  if (u.rank() != v.rank()) {
    throw RankMismatch(std::string(op) + ": rank " + std::to_string(u.rank()) + " vs " +
                       std::to_string(v.rank()));
  }
}

// Index of the lexicographically least rotation.
std::size_t least_rotation(std::span<const Letter> s) {
  const std::size_t n = s.size();
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    Letter a = s[(i + k) % n];
    Letter b = s[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

}  // namespace

Letter::Letter(int generator, int sign) {
  if (generator < 0 || generator >= kMaxRank) {
    throw InvalidArgument("generator index " + std::to_string(generator) + " out of range");
  }
  if (sign != 1 && sign != -1) throw InvalidArgument("letter sign must be +1 or -1");
  code_ = static_cast<std::uint8_t>(2 * generator + (sign < 0 ? 1 : 0));
}

Word::Word(int rank) : rank_(rank) { check_rank(rank); }

Word Word::subword(std::size_t pos, std::size_t len) const {
  if (pos > size() || len > size() - pos) throw InvalidArgument("subword out of range");
  return from_reduced_unchecked({letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                                 letters_.begin() + static_cast<std::ptrdiff_t>(pos + len)},
                                rank_);
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  auto c = std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                  b.letters_.begin(), b.letters_.end());
  if (c != 0) return c;
  return a.rank_ <=> b.rank_;
}

Word reduce(std::span<const Letter> raw, int rank) {
  check_rank(rank);
  Word w(rank);
  w.letters_.reserve(raw.size());
  for (Letter l : raw) {
    if (l.generator() >= rank) {
      throw InvalidArgument("letter index " + std::to_string(l.generator()) +
                            " outside alphabet of rank " + std::to_string(rank));
    }
    if (!w.letters_.empty() && cancels(w.letters_.back(), l)) {
      w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

Word from_reduced_unchecked(std::vector<Letter> letters, int rank) {
  Word w;
  w.rank_ = rank;
  w.letters_ = std::move(letters);
  return w;
}

Word generator(int index, int rank) {
  const Letter l(index, 1);
  return reduce(std::span<const Letter>(&l, 1), rank);
}

Word concat(const Word& u, const Word& v) {
  require_same_rank(u, v, "concat");
  // Cancel at the seam only; both sides are already reduced.
  std::size_t cancel = 0;
  const std::size_t limit = std::min(u.size(), v.size());
  while (cancel < limit && cancels(u[u.size() - 1 - cancel], v[cancel])) ++cancel;
  std::vector<Letter> out;
  out.reserve(u.size() + v.size() - 2 * cancel);
  out.insert(out.end(), u.begin(), u.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), v.begin() + static_cast<std::ptrdiff_t>(cancel), v.end());
  return from_reduced_unchecked(std::move(out), u.rank());
}

Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out.push_back(it->inverse());
  return from_reduced_unchecked(std::move(out), w.rank());
}

Word power(const Word& w, long exponent) {
  if (exponent == 0 || w.empty()) return Word(w.rank());
  const Word base = exponent > 0 ? w : invert(w);
  const long times = exponent > 0 ? exponent : -exponent;
  auto [conj, core] = cyclic_reduce(base);
  std::vector<Letter> letters;
  letters.reserve(2 * conj.size() + core.size() * static_cast<std::size_t>(times));
  letters.insert(letters.end(), conj.begin(), conj.end());
  for (long i = 0; i < times; ++i) letters.insert(letters.end(), core.begin(), core.end());
  const Word tail = invert(conj);
  letters.insert(letters.end(), tail.begin(), tail.end());
  return from_reduced_unchecked(std::move(letters), w.rank());
}

Word commutator(const Word& u, const Word& w) {
  return concat(concat(invert(u), invert(w)), concat(u, w));
}

Word substitute(const Word& u, std::span<const Word> images) {
  if (images.size() != static_cast<std::size_t>(u.rank())) {
    throw RankMismatch("substitute: word of rank " + std::to_string(u.rank()) + " given " +
                       std::to_string(images.size()) + " images");
  }
  if (images.empty()) return Word(0);
  const int target_rank = images.front().rank();
  std::vector<Word> inverses;
  inverses.reserve(images.size());
  for (const Word& img : images) {
    if (img.rank() != target_rank) throw RankMismatch("substitute: images of different ranks");
    inverses.push_back(invert(img));
  }
  std::vector<Letter> raw;
  for (Letter l : u) {
    const Word& piece = l.is_inverse() ? inverses[static_cast<std::size_t>(l.generator())]
                                       : images[static_cast<std::size_t>(l.generator())];
    for (Letter x : piece) {
      if (!raw.empty() && cancels(raw.back(), x)) {
        raw.pop_back();
      } else {
        raw.push_back(x);
      }
    }
  }
  return from_reduced_unchecked(std::move(raw), target_rank);
}

bool is_cyclically_reduced(const Word& w) {
  return w.size() < 2 || !cancels(w.front(), w.back());
}

CyclicDecomposition cyclic_reduce(const Word& w) {
  std::size_t k = 0;
  while (2 * k + 1 < w.size() && cancels(w[k], w[w.size() - 1 - k])) ++k;
  return {w.subword(0, k), w.subword(k, w.size() - 2 * k)};
}

Word rotate(const Word& w, std::size_t k) {
  if (w.empty()) return w;
  k %= w.size();
  std::vector<Letter> out;
  out.reserve(w.size());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  return from_reduced_unchecked(std::move(out), w.rank());
}

std::size_t cyclic_period(const Word& w) {
  const std::size_t n = w.size();
  if (n == 0) return 0;
  std::vector<std::size_t> border(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = border[i - 1];
    while (k > 0 && w[i] != w[k]) k = border[k - 1];
    if (w[i] == w[k]) ++k;
    border[i] = k;
  }
  const std::size_t p = n - border[n - 1];
  return n % p == 0 ? p : n;
}

std::vector<Word> cyclic_shifts(const Word& w) {
  if (!is_cyclically_reduced(w)) {
    throw InvalidArgument("cyclic_shifts: word " + format_word(w) + " is not cyclically reduced");
  }
  if (w.empty()) return {w};
  const std::size_t p = cyclic_period(w);
  std::vector<Word> out;
  out.reserve(p);
  for (std::size_t k = 0; k < p; ++k) out.push_back(rotate(w, k));
  return out;
}

long exp_sum(const Word& w, int generator) {
  if (generator < 0 || generator >= w.rank()) {
    throw InvalidArgument("exp_sum: generator " + std::to_string(generator) +
                          " outside rank " + std::to_string(w.rank()));
  }
  long total = 0;
  for (Letter l : w) {
    if (l.generator() == generator) total += l.sign();
  }
  return total;
}

PowerDecomposition primitive_root(const Word& w) {
  if (w.empty()) throw InvalidArgument("primitive_root of the empty word");
  auto [conj, core] = cyclic_reduce(w);
  const std::size_t n = core.size();
  // Least d | n with core = (core[0..d))^(n/d); the smallest such d is the period.
  std::size_t root_len = n;
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = core[i] == core[i - d];
    if (periodic) {
      root_len = d;
      break;
    }
  }
  const Word root_core = core.subword(0, root_len);
  return {concat(concat(conj, root_core), invert(conj)), static_cast<long>(n / root_len)};
}

bool commute_in_free(const Word& u, const Word& w) { return concat(u, w) == concat(w, u); }

Word least_rotation(const Word& w) {
  if (w.empty()) return w;
  return rotate(w, least_rotation(w.letters()));
}

Word canonical_cyclic(const Word& w) {
  if (!is_cyclically_reduced(w)) {
    throw InvalidArgument("canonical_cyclic: word is not cyclically reduced");
  }
  if (w.empty()) return w;
  const Word inv = invert(w);
  Word a = rotate(w, least_rotation(w.letters()));
  Word b = rotate(inv, least_rotation(inv.letters()));
  return a <= b ? a : b;
}

bool is_canonical_cyclic(const Word& w) {
  return is_cyclically_reduced(w) && canonical_cyclic(w) == w;
}

std::uint64_t count_reduced_words(int rank, int max_len) {
  if (rank < 1 || max_len < 1) return 0;
  std::uint64_t total = 0;
  std::uint64_t layer = 2ULL * static_cast<std::uint64_t>(rank);
  for (int i = 1; i <= max_len; ++i) {
    total += layer;
    layer *= 2ULL * static_cast<std::uint64_t>(rank) - 1;
  }
  return total;
}

}  // namespace freelike
