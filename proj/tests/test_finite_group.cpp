#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "freelike/finite_group.hpp"
#include "freelike/io.hpp"

using namespace freelike;

namespace {

// Quaternion units as (w, x, y, z) with Hamilton's product.
using Quat = std::array<int, 4>;
Quat qmul(const Quat& p, const Quat& q) {
  return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
          p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
          p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
          p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}
const std::map<std::string, Quat> kQuat = {
    {"1", {1, 0, 0, 0}},  {"-1", {-1, 0, 0, 0}}, {"i", {0, 1, 0, 0}}, {"-i", {0, -1, 0, 0}},
    {"j", {0, 0, 1, 0}},  {"-j", {0, 0, -1, 0}}, {"k", {0, 0, 0, 1}}, {"-k", {0, 0, 0, -1}}};

// Permutations of {0,1,2}; the product xy applies x first.
using Perm = std::array<int, 3>;
Perm pmul(const Perm& x, const Perm& y) { return {y[x[0]], y[x[1]], y[x[2]]}; }
const std::map<std::string, Perm> kPerm = {{"e", {0, 1, 2}},     {"(12)", {1, 0, 2}},
                                           {"(13)", {2, 1, 0}},  {"(23)", {0, 2, 1}},
                                           {"(123)", {1, 2, 0}}, {"(132)", {2, 0, 1}}};

// Independent evaluation of a word through an element model.
template <class T>
T model_eval(const Word& w, const std::vector<T>& images, T one, std::function<T(T, T)> mul,
             std::function<T(T)> inv) {
  T acc = one;
  for (Letter l : w) {
    const T& x = images[static_cast<std::size_t>(l.generator())];
    acc = mul(acc, l.is_inverse() ? inv(x) : x);
  }
  return acc;
}

Quat qinv(Quat q) { return {q[0], -q[1], -q[2], -q[3]}; }
Perm pinv(Perm p) {
  Perm r{};
  for (int i = 0; i < 3; ++i) r[p[i]] = i;
  return r;
}

Word random_word(std::mt19937_64& rng, int rank, std::size_t len) {
  std::vector<Letter> raw;
  std::uniform_int_distribution<int> g(0, rank - 1), s(0, 1);
  for (std::size_t i = 0; i < len; ++i) raw.push_back(Letter(g(rng), s(rng) ? 1 : -1));
  return reduce(raw, rank);
}

// Fixpoint closure straight from the table.
std::set<int> brute_closure(const FiniteGroup& g, const std::vector<int>& tuple) {
  std::set<int> s = {g.identity()};
  s.insert(tuple.begin(), tuple.end());
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<int> cur(s.begin(), s.end());
    for (int x : cur) {
      for (int y : cur) grew |= s.insert(g.multiply(x, y)).second;
    }
  }
  return s;
}

// Shortest nontrivial cyclically reduced word (signed generator sequence)
// evaluating to the identity, by depth-first search over signed letters.
std::optional<int> brute_girth(const FiniteGroup& g, const std::vector<int>& tuple, int max_len) {
  const int k = static_cast<int>(tuple.size());
  for (int len = 1; len <= max_len; ++len) {
    std::vector<int> seq;  // +-(i+1)
    std::function<bool(int)> dfs = [&](int value) -> bool {
      if (static_cast<int>(seq.size()) == len) {
        return value == g.identity() && seq.front() != -seq.back();
      }
      for (int gen = 1; gen <= k; ++gen) {
        for (int s : {gen, -gen}) {
          if (!seq.empty() && seq.back() == -s) continue;
          const int x = tuple[static_cast<std::size_t>(gen - 1)];
          seq.push_back(s);
          const bool hit = dfs(g.multiply(value, s > 0 ? x : g.inverse(x)));
          seq.pop_back();
          if (hit) return true;
        }
      }
      return false;
    };
    if (dfs(g.identity())) return len;
  }
  return std::nullopt;
}

std::vector<int> tuple_of(const FiniteGroup& g, std::initializer_list<const char*> names) {
  std::vector<int> t;
  for (const char* n : names) t.push_back(*g.find(n));
  return t;
}

}  // namespace

TEST_CASE("built-in groups") {
  const FiniteGroup z2 = cyclic_group(2);
  CHECK(z2.order() == 2);
  CHECK(z2.multiply(1, 1) == z2.identity());

  const FiniteGroup s3 = symmetric_group_3();
  CHECK(s3.order() == 6);
  int involutions = 0;
  for (int x = 0; x < 6; ++x) involutions += s3.element_order(x) == 2;
  CHECK(involutions == 3);

  const FiniteGroup q8 = quaternion_group();
  CHECK(q8.order() == 8);
  involutions = 0;
  for (int x = 0; x < 8; ++x) involutions += q8.element_order(x) == 2;
  CHECK(involutions == 1);
  CHECK(q8.name(q8.identity()) == "1");

  const FiniteGroup z3sq = cyclic_square(3);
  CHECK(z3sq.order() == 9);
  CHECK(builtin_group("q8").order() == 8);
  CHECK(builtin_group("S3").order() == 6);
  CHECK(builtin_group("Z7").order() == 7);
  CHECK(builtin_group("Z4xZ4").order() == 16);
  CHECK_THROWS_AS(builtin_group("A5"), InvalidArgument);
  CHECK_THROWS_AS(builtin_group("Z0"), InvalidArgument);
}

TEST_CASE("tables match independent models") {
  const FiniteGroup q8 = quaternion_group();
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      CHECK(kQuat.at(q8.name(q8.multiply(x, y))) == qmul(kQuat.at(q8.name(x)), kQuat.at(q8.name(y))));
    }
  }
  const FiniteGroup s3 = symmetric_group_3();
  for (int x = 0; x < 6; ++x) {
    for (int y = 0; y < 6; ++y) {
      CHECK(kPerm.at(s3.name(s3.multiply(x, y))) == pmul(kPerm.at(s3.name(x)), kPerm.at(s3.name(y))));
    }
  }
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 1}}, 0), InvalidArgument);
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 0}}, 1), InvalidArgument);
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 0}}, 0, {"e"}), InvalidArgument);
  // A Latin square with identity that is not associative (order 5 loop).
  const std::vector<std::vector<int>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(FiniteGroup(loop, 0), InvalidArgument);
}

TEST_CASE("evaluate_word") {
  const FiniteGroup q8 = quaternion_group();
  const auto ij = tuple_of(q8, {"i", "j"});
  CHECK(evaluate_word(q8, Word(2), ij) == q8.identity());
  CHECK(q8.name(evaluate_word(q8, parse_word("x1^2", 2), ij)) == "-1");
  CHECK(q8.name(evaluate_word(q8, parse_word("x1 x2", 2), ij)) == "k");

  const FiniteGroup s3 = symmetric_group_3();
  const auto comm = tuple_of(s3, {"(123)", "(132)"});
  CHECK(evaluate_word(s3, commutator(generator(0, 2), generator(1, 2)), comm) == s3.identity());
  CHECK_THROWS_AS(evaluate_word(s3, Word(3), comm), RankMismatch);
}

TEST_CASE("evaluation agrees with models and is a homomorphism") {
  const FiniteGroup q8 = quaternion_group();
  const FiniteGroup s3 = symmetric_group_3();
  std::mt19937_64 rng(41);
  for (int i = 0; i < 500; ++i) {
    const Word u = random_word(rng, 3, rng() % 12);
    const Word v = random_word(rng, 3, rng() % 12);
    std::vector<int> tq = {int(rng() % 8), int(rng() % 8), int(rng() % 8)};
    std::vector<int> ts = {int(rng() % 6), int(rng() % 6), int(rng() % 6)};

    std::vector<Quat> qi;
    for (int x : tq) qi.push_back(kQuat.at(q8.name(x)));
    CHECK(kQuat.at(q8.name(evaluate_word(q8, u, tq))) ==
          model_eval<Quat>(u, qi, kQuat.at("1"), qmul, qinv));
    std::vector<Perm> pi;
    for (int x : ts) pi.push_back(kPerm.at(s3.name(x)));
    CHECK(kPerm.at(s3.name(evaluate_word(s3, u, ts))) ==
          model_eval<Perm>(u, pi, kPerm.at("e"), pmul, pinv));

    CHECK(evaluate_word(q8, concat(u, v), tq) ==
          q8.multiply(evaluate_word(q8, u, tq), evaluate_word(q8, v, tq)));
    CHECK(evaluate_word(s3, concat(u, v), ts) ==
          s3.multiply(evaluate_word(s3, u, ts), evaluate_word(s3, v, ts)));
  }
}

TEST_CASE("subgroup closure") {
  const FiniteGroup q8 = quaternion_group();
  CHECK(is_generating(q8, tuple_of(q8, {"i", "j"})));
  const FiniteGroup s3 = symmetric_group_3();
  CHECK(subgroup_generated(s3, tuple_of(s3, {"(123)"})).size() == 3);
  CHECK_FALSE(is_generating(s3, tuple_of(s3, {"(123)"})));
  CHECK(subgroup_generated(s3, std::vector<int>{s3.identity()}) == std::vector<int>{s3.identity()});

  for (const FiniteGroup& g : {q8, s3, cyclic_square(3), builtin_group("Z6")}) {
    for (int x = 0; x < g.order(); ++x) {
      for (int y = 0; y < g.order(); ++y) {
        const std::vector<int> t = {x, y};
        const auto brute = brute_closure(g, t);
        const auto got = subgroup_generated(g, t);
        CHECK(std::vector<int>(brute.begin(), brute.end()) == got);
        CHECK(is_generating(g, t) == (static_cast<int>(brute.size()) == g.order()));
      }
    }
  }
}

TEST_CASE("almost identities of Q8 and S3") {
  const FiniteGroup q8 = quaternion_group();
  const Word q = parse_word("x1^2 x2^2", 2);
  CHECK(verify_almost_identity(q8, q, 2).holds);
  auto qi = is_identity(q8, q, 2);
  REQUIRE_FALSE(qi.holds);
  CHECK(format_tuple(q8, qi.counterexample->tuple) == "i,1");
  CHECK(q8.name(qi.counterexample->evaluation) == "-1");
  CHECK_FALSE(qi.counterexample->generates);
  CHECK(qi.tuples_checked > 0);

  auto sq = verify_almost_identity(q8, parse_word("x1^2", 2), 2);
  REQUIRE_FALSE(sq.holds);
  CHECK(format_tuple(q8, sq.counterexample->tuple) == "i,j");
  CHECK(sq.counterexample->generates);

  const FiniteGroup s3 = symmetric_group_3();
  const Word s = parse_word("x1^2 x2 x1^2 x2^-1", 2);
  auto sa = verify_almost_identity(s3, s, 2);
  CHECK(sa.holds);
  CHECK(sa.tuples_checked == 36);
  CHECK(sa.generating_tuples == 18);
  auto si = is_identity(s3, s, 2);
  REQUIRE_FALSE(si.holds);
  CHECK_FALSE(si.counterexample->generates);
  CHECK(format_tuple(s3, si.counterexample->tuple) == "(123),e");

  CHECK(is_identity(s3, Word(2), 2).holds);
  CHECK(is_identity(q8, Word(3), 3).holds);

  CHECK_THROWS_AS(verify_almost_identity(q8, power(generator(0, 5), 4), 5), BudgetExceeded);
  CHECK_THROWS_AS(verify_almost_identity(q8, q, 3), RankMismatch);
  CHECK(verify_almost_identity(q8, q, 2, 64).holds);
  CHECK_THROWS_AS(verify_almost_identity(q8, q, 2, 63), BudgetExceeded);
}

TEST_CASE("almost identity scan matches direct enumeration") {
  const FiniteGroup q8 = quaternion_group();
  const FiniteGroup s3 = symmetric_group_3();
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    const FiniteGroup& g = i % 2 ? q8 : s3;
    const Word u = random_word(rng, 2, rng() % 10);
    std::optional<std::vector<int>> first_ai, first_id;
    for (int x = 0; x < g.order(); ++x) {
      for (int y = 0; y < g.order(); ++y) {
        const std::vector<int> t = {x, y};
        if (evaluate_word(g, u, t) == g.identity()) continue;
        if (!first_id) first_id = t;
        if (!first_ai && static_cast<int>(brute_closure(g, t).size()) == g.order()) first_ai = t;
      }
    }
    auto ai = verify_almost_identity(g, u, 2);
    CHECK(ai.holds == !first_ai);
    if (first_ai) CHECK(ai.counterexample->tuple == *first_ai);
    auto id = is_identity(g, u, 2);
    CHECK(id.holds == !first_id);
    if (first_id) CHECK(id.counterexample->tuple == *first_id);
  }
}

TEST_CASE("finite girth") {
  CHECK(finite_girth(cyclic_group(2), std::vector<int>{1}) == 2);
  const FiniteGroup s3 = symmetric_group_3();
  CHECK(finite_girth(s3, tuple_of(s3, {"(12)", "(123)"})) == 2);
  CHECK(finite_girth(s3, tuple_of(s3, {"(123)", "(12)"})) ==
        brute_girth(s3, tuple_of(s3, {"(123)", "(12)"}), 8));
  CHECK_THROWS_AS(finite_girth(s3, tuple_of(s3, {"(123)"})), InvalidArgument);

  const FiniteGroup q8 = quaternion_group();
  const Word q = parse_word("x1^2 x2^2", 2);
  const Word s = parse_word("x1^2 x2 x1^2 x2^-1", 2);
  for (const auto& [g, bound] : {std::pair{q8, q.size()}, std::pair{s3, s.size()}}) {
    for (int x = 0; x < g.order(); ++x) {
      for (int y = 0; y < g.order(); ++y) {
        const std::vector<int> t = {x, y};
        if (!is_generating(g, t)) continue;
        const auto got = finite_girth(g, t);
        REQUIRE(got);
        CHECK(static_cast<std::size_t>(*got) <= bound);
        CHECK(got == brute_girth(g, t, g.order() + 1));
      }
    }
  }
}

TEST_CASE("group file round trip") {
  const FiniteGroup s3 = symmetric_group_3();
  const FiniteGroup back = parse_group(format_group(s3));
  CHECK(back.table() == s3.table());
  CHECK(back.identity() == s3.identity());
  CHECK(back.names() == s3.names());

  const FiniteGroup z3 = parse_group("order: 3\n0\n0 1 2\n1 2 0\n2 0 1\n");
  CHECK(z3.order() == 3);
  CHECK(z3.identity() == 0);
  CHECK_THROWS_AS(parse_group("order: 2\n0\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_group("0 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_group("order: 2\nidentity: 0\n0 1\n1 1\n"), InvalidArgument);
}
