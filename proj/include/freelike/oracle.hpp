#pragma once

// Uniform equality/triviality service over different group backends.

#include <functional>
#include <optional>
#include <string>

#include "freelike/presentation.hpp"
#include "freelike/word.hpp"

namespace freelike {

class FiniteGroup;

// A capability record: callers never branch on the backend.
class GroupOracle {
 public:
  using TrivialFn = std::function<bool(const Word&)>;
  // Exact normal-form key: two words are equal in the group iff their keys match.
  using NormalFormFn = std::function<std::string(const Word&)>;

  GroupOracle(int rank, std::string description, TrivialFn trivial,
              NormalFormFn normal_form = nullptr);

  int rank() const { return rank_; }
  const std::string& description() const { return description_; }
  bool has_normal_form() const { return static_cast<bool>(normal_form_); }
  std::string normal_form(const Word& w) const;

  bool is_trivial(const Word& w) const;
  bool are_equal(const Word& u, const Word& v) const;

 private:
  void check(const Word& w) const;

  int rank_;
  std::string description_;
  TrivialFn trivial_;
  NormalFormFn normal_form_;
};

GroupOracle free_group_oracle(int rank);
// Needs a C'(1/6) certificate on `p`.
GroupOracle small_cancellation_oracle(const Presentation& p);
// Letter i of the alphabet maps to group element assignment[i].
GroupOracle finite_group_oracle(const FiniteGroup& g, std::vector<int> assignment);

inline bool is_trivial(const GroupOracle& o, const Word& w) { return o.is_trivial(w); }
inline bool are_equal(const GroupOracle& o, const Word& u, const Word& v) {
  return o.are_equal(u, v);
}

}  // namespace freelike
