#pragma once

// Free-group word algebra over a finite ranked alphabet with formal inverses.
//
// Words are immutable, always freely reduced and carry the rank of their
// alphabet; every binary operation checks that ranks agree.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "freelike/errors.hpp"

namespace freelike {

inline constexpr int kMaxRank = 128;

// A generator or its formal inverse. The code is 2*generator + (inverse ? 1 : 0),
// so letters order as a < A < b < B < ... and inversion flips the low bit.
class Letter {
 public:
  constexpr Letter() = default;
  Letter(int generator, int sign);

  static constexpr Letter from_code(std::uint8_t code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  constexpr int generator() const { return code_ >> 1; }
  constexpr int sign() const { return (code_ & 1U) ? -1 : 1; }
  constexpr bool is_inverse() const { return (code_ & 1U) != 0; }
  constexpr Letter inverse() const { return from_code(static_cast<std::uint8_t>(code_ ^ 1U)); }
  constexpr std::uint8_t code() const { return code_; }

  friend constexpr auto operator<=>(Letter, Letter) = default;

 private:
  std::uint8_t code_ = 0;
};

inline constexpr bool cancels(Letter x, Letter y) { return (x.code() ^ y.code()) == 1U; }

class Word {
 public:
  Word() = default;
  // The empty word of the given rank.
  explicit Word(int rank);

  int rank() const { return rank_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::span<const Letter> letters() const { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  // Subword [pos, pos + len) of an already reduced word (still reduced).
  Word subword(std::size_t pos, std::size_t len) const;

  friend bool operator==(const Word&, const Word&) = default;
  // Lexicographic on letters, shorter prefix first; rank breaks ties.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  friend Word reduce(std::span<const Letter>, int);
  friend Word from_reduced_unchecked(std::vector<Letter>, int);

  int rank_ = 0;
  std::vector<Letter> letters_;
};

// Free reduction of an arbitrary letter sequence.
Word reduce(std::span<const Letter> raw, int rank);
// For internal hot paths: the caller guarantees `letters` is reduced and in range.
Word from_reduced_unchecked(std::vector<Letter> letters, int rank);

// Generator `index` (0-based) as a one-letter word.
Word generator(int index, int rank);

Word concat(const Word& u, const Word& v);
Word invert(const Word& w);
Word power(const Word& w, long exponent);
// [u, w] = u^-1 w^-1 u w.
Word commutator(const Word& u, const Word& w);

inline Word operator*(const Word& u, const Word& v) { return concat(u, v); }

// Replaces x_i^{+-1} by images[i]^{+-1}; all images share one rank.
Word substitute(const Word& u, std::span<const Word> images);

bool is_cyclically_reduced(const Word& w);

struct CyclicDecomposition {
  Word conjugator;
  Word core;
};
// w = conjugator * core * conjugator^-1 with core cyclically reduced.
CyclicDecomposition cyclic_reduce(const Word& w);

// Rotation of a cyclically reduced word: letters [k, n) followed by [0, k).
Word rotate(const Word& w, std::size_t k);
// Distinct rotations in rotation order; throws on non-cyclically-reduced input.
std::vector<Word> cyclic_shifts(const Word& w);
// Least period p with w equal to its rotation by p (p divides |w|).
std::size_t cyclic_period(const Word& w);

long exp_sum(const Word& w, int generator);

struct PowerDecomposition {
  Word root;
  long exponent = 1;
};
// w = root^exponent with exponent maximal; throws on the empty word.
PowerDecomposition primitive_root(const Word& w);

bool commute_in_free(const Word& u, const Word& w);

// Lexicographically least rotation of w.
Word least_rotation(const Word& w);
// Least word among all rotations of w and of invert(w); w cyclically reduced.
Word canonical_cyclic(const Word& w);
bool is_canonical_cyclic(const Word& w);

enum class EnumMode {
  all_reduced,                   // every nontrivial reduced word
  cyclically_reduced_canonical,  // one representative per {rotation, inversion} orbit
};

// Number of nontrivial reduced words of length <= max_len: sum 2k(2k-1)^(i-1).
std::uint64_t count_reduced_words(int rank, int max_len);

// Visits words in length-ascending, lexicographic order until `visit` returns
// false. Returns false iff the visitor stopped the enumeration.
bool for_each_word(int rank, int max_len, EnumMode mode,
                   const std::function<bool(const Word&)>& visit);
std::vector<Word> enumerate_words(int rank, int max_len, EnumMode mode);

// Enumeration of exactly one length, restricted to words starting with `prefix`
// (which must itself be a valid prefix under `mode`). Used to partition work.
bool for_each_word_with_prefix(int rank, int length, EnumMode mode,
                               std::span<const Letter> prefix,
                               const std::function<bool(const Word&)>& visit);
// All prefixes of the given depth that can start a word of `length` under `mode`,
// in lexicographic order.
std::vector<std::vector<Letter>> enumeration_prefixes(int rank, int length, EnumMode mode,
                                                      int depth);

// ---------------------------------------------------------------------------
// Text format: generators a, b, c, ... (or x1, x2, ...); uppercase or ^-n for
// inverses; powers b^4, (ab)^3; "1" is the empty word.

enum class WordStyle { letters, variables };

Word parse_word(std::string_view text, int rank);
// Comma-separated list of words.
std::vector<Word> parse_word_list(std::string_view text, int rank);
// Smallest rank that can hold every generator mentioned in the text.
int infer_rank(std::string_view text);
std::string format_word(const Word& w, WordStyle style = WordStyle::letters);
std::string format_letter(Letter l, WordStyle style = WordStyle::letters);

}  // namespace freelike
