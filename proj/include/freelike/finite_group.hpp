#pragma once

// Finite groups as validated multiplication tables, with exhaustive checks of
// identities and almost identities over k-tuples.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "freelike/word.hpp"

namespace freelike {

class FiniteGroup {
 public:
  // Validates the table: identity acts trivially, every row and column is a
  // permutation, associativity (exhaustive up to order 64, sampled above).
  FiniteGroup(std::vector<std::vector<int>> table, int identity,
              std::vector<std::string> element_names = {});

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int multiply(int x, int y) const { return table_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; }
  int inverse(int x) const { return inverse_[static_cast<std::size_t>(x)]; }
  int element_order(int x) const;
  const std::string& name(int x) const { return names_[static_cast<std::size_t>(x)]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> find(std::string_view name) const;
  const std::vector<std::vector<int>>& table() const { return table_; }

  // Left-to-right product of the letter images; tuple[i] is the image of x_{i+1}.
  int evaluate(const Word& w, std::span<const int> tuple) const;

 private:
  std::vector<std::vector<int>> table_;
  int identity_;
  std::vector<std::string> names_;
  std::vector<int> inverse_;
};

// Z/n with elements named 0..n-1.
FiniteGroup cyclic_group(int n);
// Z/n x Z/n with elements (x,y), index x*n + y.
FiniteGroup cyclic_square(int n);
// Quaternion units ordered i, -i, j, -j, k, -k, 1, -1.
FiniteGroup quaternion_group();
// Permutations of {1,2,3} composed left to right: (xy)(p) = y(x(p)).
FiniteGroup symmetric_group_3();
// "Q8", "S3", "Z<n>", "Z<n>xZ<n>".
FiniteGroup builtin_group(std::string_view name);

int evaluate_word(const FiniteGroup& g, const Word& w, std::span<const int> tuple);

// Closure of the tuple under products and inverses, sorted.
std::vector<int> subgroup_generated(const FiniteGroup& g, std::span<const int> tuple);
bool is_generating(const FiniteGroup& g, std::span<const int> tuple);

struct TupleReport {
  std::vector<int> tuple;
  bool generates = false;
  int evaluation = 0;
};

struct TupleScan {
  bool holds = true;
  std::optional<TupleReport> counterexample;  // first failing tuple, lexicographic
  std::uint64_t tuples_checked = 0;
  std::uint64_t generating_tuples = 0;
};

inline constexpr std::uint64_t kDefaultTupleBudget = 4096;

// u vanishes on every generating k-tuple.
TupleScan verify_almost_identity(const FiniteGroup& g, const Word& u, int k,
                                 std::uint64_t budget = kDefaultTupleBudget);
// u vanishes on every k-tuple.
TupleScan is_identity(const FiniteGroup& g, const Word& u, int k,
                      std::uint64_t budget = kDefaultTupleBudget);

// Length of the shortest nontrivial cyclically reduced word vanishing on a
// generating tuple (the girth of the Cayley graph).
std::optional<int> finite_girth(const FiniteGroup& g, std::span<const int> tuple);

std::string format_tuple(const FiniteGroup& g, std::span<const int> tuple);

}  // namespace freelike
