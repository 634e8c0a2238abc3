#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>

#include "freelike/finite_group.hpp"
#include "freelike/oracle.hpp"

using namespace freelike;

namespace {

Word random_word(std::mt19937_64& rng, int rank, std::size_t len) {
  std::vector<Letter> raw;
  std::uniform_int_distribution<int> g(0, rank - 1), s(0, 1);
  for (std::size_t i = 0; i < len; ++i) raw.push_back(Letter(g(rng), s(rng) ? 1 : -1));
  return reduce(raw, rank);
}

Presentation family() {
  return verify_c_prime(
      Presentation(2, make_family(std::vector<int>{1}, default_family_coefficients())),
      Rational(1, 6));
}

// Checks reflexivity, symmetry and transitivity of are_equal on a word sample.
void check_equivalence(const GroupOracle& o, const std::vector<Word>& sample) {
  const std::size_t n = sample.size();
  std::vector<std::vector<char>> eq(n, std::vector<char>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) eq[i][j] = o.are_equal(sample[i], sample[j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(eq[i][i]);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(eq[i][j] == eq[j][i]);
      for (std::size_t k = 0; k < n; ++k) {
        if (eq[i][j] && eq[j][k]) CHECK(eq[i][k]);
      }
    }
  }
}

}  // namespace

TEST_CASE("free backend") {
  const auto o = free_group_oracle(2);
  CHECK(o.rank() == 2);
  CHECK_FALSE(o.is_trivial(parse_word("abAB", 2)));
  CHECK(o.is_trivial(Word(2)));
  CHECK(o.are_equal(parse_word("ab", 2), parse_word("ab", 2)));
  CHECK_FALSE(o.are_equal(parse_word("ab", 2), parse_word("ba", 2)));
  CHECK(o.has_normal_form());
  CHECK(o.normal_form(parse_word("ab", 2)) != o.normal_form(parse_word("ba", 2)));
  CHECK_THROWS_AS(o.is_trivial(parse_word("c", 3)), RankMismatch);
  CHECK(is_trivial(o, Word(2)));
  CHECK(are_equal(o, Word(2), Word(2)));
}

TEST_CASE("finite backend") {
  const auto z2 = finite_group_oracle(cyclic_group(2), {1});
  CHECK(z2.is_trivial(parse_word("a^2", 1)));
  CHECK_FALSE(z2.is_trivial(parse_word("a^3", 1)));

  // S3 with two transpositions: (12) and (13); their product has order 3.
  const FiniteGroup s3 = symmetric_group_3();
  const auto o = finite_group_oracle(s3, {*s3.find("(12)"), *s3.find("(13)")});
  CHECK(o.are_equal(parse_word("ababab", 2), Word(2)));
  CHECK_FALSE(o.are_equal(parse_word("abab", 2), Word(2)));
  CHECK(o.is_trivial(parse_word("a^2", 2)));
  CHECK(o.has_normal_form());
  CHECK(o.normal_form(parse_word("aba", 2)) == o.normal_form(parse_word("bab", 2)));

  CHECK_THROWS_AS(finite_group_oracle(s3, {}), InvalidArgument);
  CHECK_THROWS_AS(finite_group_oracle(s3, {0, 6}), InvalidArgument);
}

TEST_CASE("small-cancellation backend") {
  const Presentation p = family();
  const auto o = small_cancellation_oracle(p);
  CHECK(o.is_trivial(p.base_relators()[0]));
  CHECK_FALSE(o.is_trivial(parse_word("abAB", 2)));
  CHECK_FALSE(o.has_normal_form());
  CHECK_THROWS_AS(o.normal_form(Word(2)), InvalidArgument);

  const Presentation raw(2, make_family(std::vector<int>{1}, default_family_coefficients()));
  CHECK_THROWS_AS(small_cancellation_oracle(raw), Unverified);
}

TEST_CASE("are_equal is an equivalence relation") {
  std::mt19937_64 rng(3);
  const Presentation p = family();
  const Word r = p.base_relators()[0];
  std::vector<Word> sample;
  for (int i = 0; i < 16; ++i) {
    Word w = random_word(rng, 2, rng() % 6);
    sample.push_back(w);
    // Equal-in-group partners so the relation has non-singleton classes.
    if (i % 3 == 0) sample.push_back(concat(w, r));
    if (i % 4 == 0) sample.push_back(concat(concat(w, w), power(w, -1)));
  }
  check_equivalence(free_group_oracle(2), sample);
  check_equivalence(small_cancellation_oracle(p), sample);
  const FiniteGroup q8 = quaternion_group();
  check_equivalence(finite_group_oracle(q8, {0, 2}), sample);
  const FiniteGroup s3 = symmetric_group_3();
  check_equivalence(finite_group_oracle(s3, {1, 4}), sample);
}

TEST_CASE("backends agree below half the shortest relator") {
  const Presentation p = family();
  const auto sc = small_cancellation_oracle(p);
  const auto fr = free_group_oracle(2);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    Word w = random_word(rng, 2, rng() % 1300);
    if (i % 5 == 0) w = concat(w, invert(w.subword(0, w.size() / 2)));
    CHECK(sc.is_trivial(w) == fr.is_trivial(w));
  }
  for_each_word(2, 6, EnumMode::all_reduced, [&](const Word& w) {
    CHECK(sc.is_trivial(w) == fr.is_trivial(w));
    return true;
  });
}
