#pragma once

// Symmetrized presentations, the C'(lambda) check, Dehn's algorithm and the
// relator-level checks used for the small-cancellation family.
//
// The symmetrized set is never materialized for queries: each relator orbit is
// stored once as a cyclic word (plus its inverse) and every distinct cyclic
// shift is an (relator, offset) reference into a sorted index. Prefix queries
// are binary searches over that index.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freelike/rational.hpp"
#include "freelike/word.hpp"

namespace freelike {

namespace detail {

struct ShiftRef {
  std::uint32_t relator = 0;  // index into RelatorIndex::cyclic()
  std::uint32_t offset = 0;
};

struct CyclicRelator {
  std::vector<Letter> doubled;  // the word written twice, so shifts are contiguous
  std::size_t length = 0;
  std::size_t period = 0;
  std::size_t orbit = 0;        // orbit under rotation and inversion
  bool inverse_of_base = false;
};

struct PrefixMatch {
  ShiftRef ref;
  std::size_t length = 0;  // common prefix length with the query
};

class RelatorIndex {
 public:
  RelatorIndex(int rank, std::span<const Word> base);

  const std::vector<CyclicRelator>& cyclic() const { return cyclic_; }
  // Every distinct shift, in lexicographic order.
  const std::vector<ShiftRef>& sorted() const { return sorted_; }
  std::span<const Letter> letters(ShiftRef ref) const;
  std::size_t length(ShiftRef ref) const { return cyclic_[ref.relator].length; }
  Word word(ShiftRef ref, int rank) const;

  std::size_t orbit_count() const { return orbit_representative_.size(); }
  // Index into the base relator list of the first relator of each orbit.
  const std::vector<std::size_t>& orbit_representatives() const { return orbit_representative_; }
  std::size_t min_length() const { return min_length_; }

  // Longest match of `pattern` against shifts of each length whose common
  // prefix exceeds half the relator length. Ties go to the lexicographically
  // least shift. Returns nothing if no shift qualifies.
  std::optional<PrefixMatch> longest_half_match(std::span<const Letter> pattern) const;

  // Some shift from an orbit other than `orbit` sharing a prefix of more than
  // half its length with `pattern`; the longest such match, least shift on ties.
  std::optional<PrefixMatch> foreign_half_match(std::span<const Letter> pattern,
                                                std::size_t orbit) const;

  // Exact lookup of a shift equal to `pattern`.
  std::optional<ShiftRef> find(std::span<const Letter> pattern) const;

 private:
  struct LengthClass {
    std::size_t length = 0;
    std::vector<ShiftRef> sorted;
  };

  // Insertion point of `pattern` in `cls` and the common prefix lengths with
  // its two neighbours.
  struct Bracket {
    std::ptrdiff_t lo = -1, hi = 0;
    std::size_t lcp_lo = 0, lcp_hi = 0;
  };
  Bracket locate(const std::vector<ShiftRef>& entries, std::span<const Letter> pattern) const;

  std::vector<CyclicRelator> cyclic_;
  std::vector<ShiftRef> sorted_;
  std::vector<LengthClass> classes_;
  std::vector<std::size_t> orbit_representative_;
  std::size_t min_length_ = 0;
};

std::size_t common_prefix(std::span<const Letter> a, std::span<const Letter> b);

}  // namespace detail

class Presentation {
 public:
  // Base relators must be nonempty and cyclically reduced, all of rank `rank`.
  Presentation(int rank, std::vector<Word> base_relators);
  static Presentation free(int rank) { return Presentation(rank, {}); }

  int rank() const { return rank_; }
  const std::vector<Word>& base_relators() const { return base_; }
  std::optional<Rational> verified_lambda() const { return verified_lambda_; }
  // True when a C'(lambda) certificate with lambda <= 1/6 is attached.
  bool dehn_ready() const;

  std::size_t symmetrized_size() const { return index_->sorted().size(); }
  // The symmetrized set, materialized in lexicographic order.
  std::vector<Word> symmetrized() const;
  // Shortest relator length; SIZE_MAX for the empty presentation.
  std::size_t min_relator_length() const;

  const detail::RelatorIndex& index() const { return *index_; }

 private:
  friend Presentation verify_c_prime(const Presentation&, Rational);

  int rank_ = 0;
  std::vector<Word> base_;
  std::shared_ptr<const detail::RelatorIndex> index_;
  std::optional<Rational> verified_lambda_;
};

// Closure of `base` under rotation and inversion, deduplicated, sorted.
std::vector<Word> symmetrize(std::span<const Word> base);

// Base relators a b^{c1 j} a b^{c2 j} ... a b^{cB j}, one per j (ascending).
std::vector<Word> make_family(std::span<const int> j_values, std::span<const int> coefficients);
// The coefficient list 2, 4, ..., 100.
std::vector<int> default_family_coefficients();

struct CPrimeViolation {
  Word r;
  Word r_prime;
  std::size_t lcp = 0;
};

struct CPrimeResult {
  bool ok = true;
  std::optional<CPrimeViolation> violation;  // the most severe pair, present iff !ok
};

// For all distinct r, r' in the symmetrized set: lcp(r, r') < lambda * min(|r|, |r'|).
CPrimeResult check_c_prime(const Presentation& p, Rational lambda);

class SmallCancellationViolation : public Error {
 public:
  SmallCancellationViolation(const std::string& what, CPrimeViolation v)
      : Error(what), violation(std::move(v)) {}
  CPrimeViolation violation;
};

// Returns a copy of `p` carrying the C'(lambda) certificate; throws
// SmallCancellationViolation when the condition fails.
Presentation verify_c_prime(const Presentation& p, Rational lambda);

struct ScReport {
  Rational lambda;
  bool closed_under_shifts = false;
  bool c_prime_ok = false;
  std::optional<CPrimeViolation> c_prime_violation;
  bool forbidden_prefix_ok = false;
  std::optional<Word> forbidden_prefix_word;
  bool min_length_ok = false;
  bool positive_ok = false;

  bool all_ok() const {
    return closed_under_shifts && c_prime_ok && forbidden_prefix_ok && min_length_ok && positive_ok;
  }
};

// Conditions (a)-(d) of the two-generator construction plus positivity.
// `lambda` defaults to 1/6; other values only change the C' test.
ScReport check_family_conditions(const Presentation& p, Rational lambda = Rational(1, 6));

struct GreendlingerMatch {
  std::size_t position = 0;  // start of the piece in U (mod |U| for cyclic scans)
  Word piece;                // V
  Word relator;              // r, with V a prefix of r and 2|V| > |r|
};

enum class Scan { linear, cyclic };

// Leftmost, then longest, then least-relator subword V of U that is a prefix
// of more than half of a symmetrized relator.
std::optional<GreendlingerMatch> greendlinger_find(const Word& u, const Presentation& p,
                                                   Scan scan = Scan::linear);

struct DehnStep {
  Word before;  // cyclic word before the replacement
  GreendlingerMatch match;
  Word after;   // freely and cyclically reduced result
};

// Word problem by Dehn's algorithm on the cyclic word. Requires a C'(1/6) certificate.
bool dehn_trivial(const Word& w, const Presentation& p, std::vector<DehnStep>* trace = nullptr);
bool eq_in_group(const Word& u, const Word& v, const Presentation& p);

struct IndependenceWitness {
  Word relator;  // orbit representative containing the overlap
  Word other;    // symmetrized relator from another orbit
  std::size_t overlap = 0;
};

// Scan behind `independent_relators`, usable without a certificate.
std::optional<IndependenceWitness> half_relator_overlap(const Presentation& p);
// Nothing when the orbit representatives are independent; otherwise a witness.
std::optional<IndependenceWitness> independent_relators(const Presentation& p);

}  // namespace freelike
