#include "freelike/finite_group.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "freelike/groupcert.hpp"
#include "freelike/oracle.hpp"
#include "freelike/rng.hpp"

namespace freelike {

namespace {

constexpr int kExhaustiveAssociativity = 64;

void validate_table(const std::vector<std::vector<int>>& t, int e) {
  const int n = static_cast<int>(t.size());
  if (n == 0) throw InvalidArgument("group table is empty");
  if (e < 0 || e >= n) throw InvalidArgument("identity index out of range");
  for (const auto& row : t) {
    if (static_cast<int>(row.size()) != n) throw InvalidArgument("group table is not square");
    for (int v : row) {
      if (v < 0 || v >= n) throw InvalidArgument("group table entry out of range");
    }
  }
  auto at = [&](int x, int y) { return t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; };
  for (int x = 0; x < n; ++x) {
    if (at(e, x) != x || at(x, e) != x) {
      throw InvalidArgument("element " + std::to_string(e) + " is not a two-sided identity");
    }
  }
  std::vector<char> seen(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int y = 0; y < n; ++y) seen[static_cast<std::size_t>(at(x, y))] = 1;
    if (std::count(seen.begin(), seen.end(), 1) != n) {
      throw InvalidArgument("row " + std::to_string(x) + " is not a permutation");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int y = 0; y < n; ++y) seen[static_cast<std::size_t>(at(y, x))] = 1;
    if (std::count(seen.begin(), seen.end(), 1) != n) {
      throw InvalidArgument("column " + std::to_string(x) + " is not a permutation");
    }
  }
  auto check = [&](int x, int y, int z) {
    if (at(at(x, y), z) != at(x, at(y, z))) {
      throw InvalidArgument("table is not associative at (" + std::to_string(x) + "," +
                            std::to_string(y) + "," + std::to_string(z) + ")");
    }
  };
  if (n <= kExhaustiveAssociativity) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) check(x, y, z);
  } else {
    const CounterRng rng(0x5eed);
    const auto un = static_cast<std::uint64_t>(n);
    for (std::uint64_t s = 0; s < 100000; ++s) {
      check(static_cast<int>(rng.below(un, s, 0)), static_cast<int>(rng.below(un, s, 1)),
            static_cast<int>(rng.below(un, s, 2)));
    }
  }
}

void check_tuple(const FiniteGroup& g, std::span<const int> tuple) {
  for (int x : tuple) {
    if (x < 0 || x >= g.order()) throw InvalidArgument("tuple entry is not a group element");
  }
}

struct Quaternion {
  int sign;  // +1 or -1
  int unit;  // 0 = 1, 1 = i, 2 = j, 3 = k
};

Quaternion quaternion_product(Quaternion x, Quaternion y) {
  // unit products: row = left factor, column = right factor, as (sign, unit).
  static constexpr std::array<std::array<std::array<int, 2>, 4>, 4> kUnits = {{
      {{{1, 0}, {1, 1}, {1, 2}, {1, 3}}},
      {{{1, 1}, {-1, 0}, {1, 3}, {-1, 2}}},
      {{{1, 2}, {-1, 3}, {-1, 0}, {1, 1}}},
      {{{1, 3}, {1, 2}, {-1, 1}, {-1, 0}}},
  }};
  const auto& u = kUnits[static_cast<std::size_t>(x.unit)][static_cast<std::size_t>(y.unit)];
  return {x.sign * y.sign * u[0], u[1]};
}

FiniteGroup table_from(int n, int identity, std::vector<std::string> names,
                       const std::function<int(int, int)>& mul) {
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = mul(x, y);
  return FiniteGroup(std::move(table), identity, std::move(names));
}

std::uint64_t tuple_count(int order, int k, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) {
    total *= static_cast<std::uint64_t>(order);
    if (total > budget) {
      throw BudgetExceeded(std::to_string(order) + "^" + std::to_string(k) +
                           " tuples exceed the budget of " + std::to_string(budget));
    }
  }
  return total;
}

TupleScan scan_tuples(const FiniteGroup& g, const Word& u, int k, std::uint64_t budget,
                      bool generating_only) {
  if (k < 1) throw InvalidArgument("tuple length must be at least 1");
  if (u.rank() != k) {
    throw RankMismatch("word of rank " + std::to_string(u.rank()) + " checked on " +
                       std::to_string(k) + "-tuples");
  }
  const std::uint64_t total = tuple_count(g.order(), k, budget);
  TupleScan scan;
  std::vector<int> tuple(static_cast<std::size_t>(k), 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    // Last coordinate varies fastest.
    std::uint64_t rest = t;
    for (int i = k - 1; i >= 0; --i) {
      tuple[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(g.order()));
      rest /= static_cast<std::uint64_t>(g.order());
    }
    ++scan.tuples_checked;
    const bool generates = is_generating(g, tuple);
    if (generates) ++scan.generating_tuples;
    if (generating_only && !generates) continue;
    const int value = g.evaluate(u, tuple);
    if (value != g.identity() && !scan.counterexample) {
      scan.holds = false;
      scan.counterexample = TupleReport{tuple, generates, value};
    }
  }
  return scan;
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, int identity,
                         std::vector<std::string> element_names)
    : table_(std::move(table)), identity_(identity), names_(std::move(element_names)) {
  validate_table(table_, identity_);
  const int n = order();
  if (names_.empty()) {
    for (int x = 0; x < n; ++x) names_.push_back(std::to_string(x));
  }
  if (static_cast<int>(names_.size()) != n) throw InvalidArgument("one name per element required");
  inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (multiply(x, y) == identity_) inverse_[static_cast<std::size_t>(x)] = y;
    }
  }
}

int FiniteGroup::element_order(int x) const {
  int k = 1;
  for (int y = x; y != identity_; y = multiply(y, x)) ++k;
  return k;
}

std::optional<int> FiniteGroup::find(std::string_view name) const {
  for (int x = 0; x < order(); ++x) {
    if (names_[static_cast<std::size_t>(x)] == name) return x;
  }
  return std::nullopt;
}

int FiniteGroup::evaluate(const Word& w, std::span<const int> tuple) const {
  if (tuple.size() != static_cast<std::size_t>(w.rank())) {
    throw RankMismatch("word of rank " + std::to_string(w.rank()) + " evaluated on a " +
                       std::to_string(tuple.size()) + "-tuple");
  }
  check_tuple(*this, tuple);
  int acc = identity_;
  for (Letter l : w) {
    const int x = tuple[static_cast<std::size_t>(l.generator())];
    acc = multiply(acc, l.is_inverse() ? inverse(x) : x);
  }
  return acc;
}

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw InvalidArgument("cyclic group order must be at least 1");
  return table_from(n, 0, {}, [n](int x, int y) { return (x + y) % n; });
}

FiniteGroup cyclic_square(int n) {
  if (n < 1) throw InvalidArgument("cyclic group order must be at least 1");
  std::vector<std::string> names;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) names.push_back("(" + std::to_string(x) + "," + std::to_string(y) + ")");
  return table_from(n * n, 0, std::move(names), [n](int p, int q) {
    return ((p / n + q / n) % n) * n + (p % n + q % n) % n;
  });
}

FiniteGroup quaternion_group() {
  static const std::array<Quaternion, 8> kElements = {{
      {1, 1}, {-1, 1}, {1, 2}, {-1, 2}, {1, 3}, {-1, 3}, {1, 0}, {-1, 0}}};
  auto index = [](Quaternion q) {
    for (int i = 0; i < 8; ++i) {
      if (kElements[static_cast<std::size_t>(i)].sign == q.sign &&
          kElements[static_cast<std::size_t>(i)].unit == q.unit) {
        return i;
      }
    }
    throw Error("quaternion product left the unit group");
  };
  return table_from(8, 6, {"i", "-i", "j", "-j", "k", "-k", "1", "-1"}, [&](int x, int y) {
    return index(quaternion_product(kElements[static_cast<std::size_t>(x)],
                                    kElements[static_cast<std::size_t>(y)]));
  });
}

FiniteGroup symmetric_group_3() {
  // Images of 1, 2, 3 (0-based).
  static const std::array<std::array<int, 3>, 6> kPerms = {{
      {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}}};
  auto index = [](const std::array<int, 3>& p) {
    for (int i = 0; i < 6; ++i) {
      if (kPerms[static_cast<std::size_t>(i)] == p) return i;
    }
    throw Error("not a permutation of three points");
  };
  return table_from(6, 0, {"e", "(12)", "(13)", "(23)", "(123)", "(132)"}, [&](int x, int y) {
    std::array<int, 3> composed{};
    for (std::size_t p = 0; p < 3; ++p) {
      composed[p] = kPerms[static_cast<std::size_t>(y)]
                         [static_cast<std::size_t>(kPerms[static_cast<std::size_t>(x)][p])];
    }
    return index(composed);
  });
}

FiniteGroup builtin_group(std::string_view name) {
  std::string s;
  for (char c : name) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  if (s == "Q8") return quaternion_group();
  if (s == "S3") return symmetric_group_3();
  auto number = [&](std::size_t& pos) {
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || pos - start > 4) throw InvalidArgument("unknown group \"" + std::string(name) + "\"");
    return std::stoi(s.substr(start, pos - start));
  };
  if (s.size() >= 2 && s[0] == 'Z') {
    std::size_t pos = 1;
    const int n = number(pos);
    if (pos == s.size()) return cyclic_group(n);
    if (s.compare(pos, 2, "XZ") == 0) {
      pos += 2;
      const int m = number(pos);
      if (pos == s.size() && m == n) return cyclic_square(n);
    }
  }
  throw InvalidArgument("unknown group \"" + std::string(name) + "\" (expected Q8, S3, Z<n> or Z<n>xZ<n>)");
}

int evaluate_word(const FiniteGroup& g, const Word& w, std::span<const int> tuple) {
  return g.evaluate(w, tuple);
}

std::vector<int> subgroup_generated(const FiniteGroup& g, std::span<const int> tuple) {
  check_tuple(g, tuple);
  std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
  std::vector<int> members{g.identity()};
  in[static_cast<std::size_t>(g.identity())] = 1;
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (int x : tuple) {
      for (int y : {g.multiply(members[head], x), g.multiply(members[head], g.inverse(x))}) {
        if (!in[static_cast<std::size_t>(y)]) {
          in[static_cast<std::size_t>(y)] = 1;
          members.push_back(y);
        }
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

bool is_generating(const FiniteGroup& g, std::span<const int> tuple) {
  return static_cast<int>(subgroup_generated(g, tuple).size()) == g.order();
}

TupleScan verify_almost_identity(const FiniteGroup& g, const Word& u, int k, std::uint64_t budget) {
  return scan_tuples(g, u, k, budget, true);
}

TupleScan is_identity(const FiniteGroup& g, const Word& u, int k, std::uint64_t budget) {
  return scan_tuples(g, u, k, budget, false);
}

std::optional<int> finite_girth(const FiniteGroup& g, std::span<const int> tuple) {
  if (tuple.empty()) throw InvalidArgument("finite_girth needs a nonempty tuple");
  if (!is_generating(g, tuple)) {
    throw InvalidArgument("tuple " + format_tuple(g, tuple) + " does not generate the group");
  }
  const int k = static_cast<int>(tuple.size());
  const GroupOracle oracle = finite_group_oracle(g, {tuple.begin(), tuple.end()});
  std::vector<Word> gens;
  for (int i = 0; i < k; ++i) gens.push_back(generator(i, k));
  const auto cert = girth_scan(oracle, make_generating_set(std::move(gens)), g.order() + 1);
  if (!cert.shortest_relation) return std::nullopt;
  return static_cast<int>(cert.shortest_relation->size());
}

std::string format_tuple(const FiniteGroup& g, std::span<const int> tuple) {
  std::string out;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ',';
    out += g.name(tuple[i]);
  }
  return out;
}

}  // namespace freelike
