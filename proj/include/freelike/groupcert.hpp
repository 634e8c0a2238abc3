#pragma once

// Generating families, bounded girth certificates, almost-identity
// construction and exponent-sum witnesses.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freelike/oracle.hpp"
#include "freelike/rational.hpp"
#include "freelike/word.hpp"

namespace freelike {

struct GeneratingSet {
  std::vector<Word> words;  // images of x1..xk over the ambient alphabet
  std::string label;

  int k() const { return static_cast<int>(words.size()); }
  int ambient_rank() const { return words.empty() ? 0 : words.front().rank(); }
};

// Checks k >= 1, nonempty words, one ambient rank.
GeneratingSet make_generating_set(std::vector<Word> words, std::string label = {});
std::string format_generating_set(const GeneratingSet& z);

// x1 = a, x_i = b a^{(i-1)n} over {a, b}; needs k >= 2 and n = 2 (mod 4).
GeneratingSet xn_generating_set(int k, int n);

struct ScanOptions {
  std::uint64_t budget = 200'000'000;  // words examined
  int workers = 1;
};

struct GirthCertificate {
  GeneratingSet generating_set;
  int scanned_up_to = 0;
  std::optional<Word> shortest_relation;  // over x1..xk, canonical cyclic form
  std::uint64_t words_examined = 0;

  // Lower bound certified when no relation was found, else the exact girth.
  int girth_bound() const {
    return shortest_relation ? static_cast<int>(shortest_relation->size()) : scanned_up_to + 1;
  }
};

// Scans canonical cyclically reduced words u of length 1..max_len over k
// symbols in length-ascending, lexicographic order and returns the first with
// u(Z) trivial in the oracle's group.
GirthCertificate girth_scan(const GroupOracle& oracle, const GeneratingSet& z, int max_len,
                            const ScanOptions& options = {});

// girth_scan over the two-element set {first, second}.
GirthCertificate free_subgroup_scan(const GroupOracle& oracle, const Word& first,
                                    const Word& second, int max_len,
                                    const ScanOptions& options = {});

struct AlmostIdentityCaps {
  std::size_t max_words = 24;
  std::size_t max_length = 1'000'000;
};

// u_1 = w_1; u_i = u_{i-1}^{q/g} when u_{i-1} = z^p and w_i = z^q share a root
// (g = gcd(p, q)), else u_i = [u_{i-1}, w_i]. The result is nontrivial in the
// free group and vanishes on every tuple that kills some w_i.
Word build_almost_identity(std::span<const Word> words, const AlmostIdentityCaps& caps = {});
// build_almost_identity over every nontrivial reduced word of length <= max_word_len.
Word almost_identity_for_girth_bound(int k, int max_word_len, const AlmostIdentityCaps& caps = {});

struct ModNWitness {
  bool generating = false;
  std::vector<std::array<long, 2>> vectors;  // exponent sums of a and b, mod n
  std::int64_t image_order = 0;               // order of the image in (Z/n)^2
  std::size_t index = 0;                      // 1-based position of the witness generator
  std::optional<Word> witness;                // x_index^n over the tuple letters
};

ModNWitness girth_witness_mod_n(std::span<const Word> tuple, int n);

struct FreeLikeEvidence {
  int k = 0;
  int n = 0;
  GirthCertificate girth_certificate;
  int free_subgroup_scan_bound = 0;
  GirthCertificate free_subgroup_certificate;
  int ball_radius = 0;
  std::size_t ball_vertices = 0;
  Rational cheeger_upper_bound;
  std::string notes;
};

struct EvidenceOptions {
  int scan_len = 0;         // girth scan length; defaults to n
  int free_scan_len = 8;
  int ball_radius = 5;
  std::size_t ball_budget = 2'000'000;
  ScanOptions scan;
};

// Girth certificate for X_n(k), bounded freeness of <x1^4, x2>, and a
// sub-ball Cheeger upper bound, all for the group of `p` (which must carry a
// C'(1/6) certificate).
FreeLikeEvidence free_like_evidence(const Presentation& p, int k, int n,
                                    const EvidenceOptions& options);

}  // namespace freelike
