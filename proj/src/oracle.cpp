#include "freelike/oracle.hpp"

#include <memory>

#include "freelike/finite_group.hpp"

namespace freelike {

GroupOracle::GroupOracle(int rank, std::string description, TrivialFn trivial,
                         NormalFormFn normal_form)
    : rank_(rank),
      description_(std::move(description)),
      trivial_(std::move(trivial)),
      normal_form_(std::move(normal_form)) {
  if (!trivial_) throw InvalidArgument("oracle without a triviality test");
}

void GroupOracle::check(const Word& w) const {
  if (w.rank() != rank_) {
    throw RankMismatch("oracle of rank " + std::to_string(rank_) + " queried with a word of rank " +
                       std::to_string(w.rank()));
  }
}

std::string GroupOracle::normal_form(const Word& w) const {
  check(w);
  if (!normal_form_) throw InvalidArgument("oracle " + description_ + " has no normal form");
  return normal_form_(w);
}

bool GroupOracle::is_trivial(const Word& w) const {
  check(w);
  return trivial_(w);
}

bool GroupOracle::are_equal(const Word& u, const Word& v) const {
  check(u);
  check(v);
  return trivial_(concat(u, invert(v)));
}

GroupOracle free_group_oracle(int rank) {
  return GroupOracle(
      rank, "free group of rank " + std::to_string(rank), [](const Word& w) { return w.empty(); },
      [](const Word& w) {
        std::string key;
        key.reserve(w.size());
        for (Letter l : w) key.push_back(static_cast<char>(l.code()));
        return key;
      });
}

GroupOracle small_cancellation_oracle(const Presentation& p) {
  if (!p.dehn_ready()) {
    throw Unverified("small-cancellation oracle needs a presentation verified for C'(1/6)");
  }
  auto shared = std::make_shared<const Presentation>(p);
  return GroupOracle(
      p.rank(),
      "small-cancellation group with " + std::to_string(p.base_relators().size()) + " relators",
      [shared](const Word& w) { return dehn_trivial(w, *shared); });
}

GroupOracle finite_group_oracle(const FiniteGroup& g, std::vector<int> assignment) {
  for (int e : assignment) {
    if (e < 0 || e >= g.order()) throw InvalidArgument("letter assigned to a non-element");
  }
  if (assignment.empty()) throw InvalidArgument("finite-table oracle needs a letter assignment");
  auto group = std::make_shared<const FiniteGroup>(g);
  auto tuple = std::make_shared<const std::vector<int>>(std::move(assignment));
  const int rank = static_cast<int>(tuple->size());
  return GroupOracle(
      rank, "finite group of order " + std::to_string(g.order()),
      [group, tuple](const Word& w) { return group->evaluate(w, *tuple) == group->identity(); },
      [group, tuple](const Word& w) { return std::to_string(group->evaluate(w, *tuple)); });
}

}  // namespace freelike
