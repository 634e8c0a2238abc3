#include <algorithm>

#include "freelike/word.hpp"

namespace freelike {

namespace {

// Depth-first generator of reduced words of one fixed length in lexicographic
// order. In canonical mode it keeps the FKM prenecklace period so that only
// candidates for the least rotation are expanded, and prunes prefixes that a
// reversed-inverse reading already beats.
class Enumerator {
 public:
  Enumerator(int rank, int length, EnumMode mode) : rank_(rank), length_(length), mode_(mode) {
    buf_.resize(static_cast<std::size_t>(length));
  }

  // Places `c` at position `pos`; on success updates `period`.
  bool accept(std::size_t pos, Letter c, std::size_t& period) const {
    if (pos > 0 && cancels(buf_[pos - 1], c)) return false;
    if (mode_ == EnumMode::all_reduced) return true;
    if (pos == 0) {
      if (c.is_inverse()) return false;  // a canonical word starts with its least letter
      period = 1;
      return true;
    }
    if (c.generator() < buf_[0].generator()) return false;
    const Letter ref = buf_[pos - period];
    if (c < ref) return false;
    const std::size_t next_period = (c == ref) ? period : pos + 1;
    // Reading w[pos]^-1 w[pos-1]^-1 ... w[0]^-1 is a prefix of a rotation of w^-1.
    for (std::size_t t = 0; t <= pos; ++t) {
      const Letter mine = (t == pos) ? c : buf_[t];
      const Letter theirs = (t == 0 ? c : buf_[pos - t]).inverse();
      if (theirs < mine) return false;
      if (mine < theirs) break;
    }
    period = next_period;
    return true;
  }

  bool leaf_ok(std::size_t period) const {
    if (mode_ == EnumMode::all_reduced) return true;
    const std::size_t n = buf_.size();
    if (n % period != 0) return false;
    if (n >= 2 && cancels(buf_[n - 1], buf_[0])) return false;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t t = 0; t < n; ++t) {
        const Letter theirs = buf_[(j + n - t) % n].inverse();
        if (theirs < buf_[t]) return false;
        if (buf_[t] < theirs) break;
      }
    }
    return true;
  }

  bool run(std::span<const Letter> prefix, const std::function<bool(const Word&)>& visit) {
    if (prefix.size() > buf_.size()) throw InvalidArgument("enumeration prefix too long");
    std::size_t period = 0;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (prefix[i].generator() >= rank_ || !accept(i, prefix[i], period)) return true;
      buf_[i] = prefix[i];
    }
    visit_ = &visit;
    return dfs(prefix.size(), period);
  }

  void collect_prefixes(std::size_t depth, std::vector<std::vector<Letter>>& out) {
    collect(0, 0, depth, out);
  }

 private:
  bool dfs(std::size_t pos, std::size_t period) {
    if (pos == buf_.size()) {
      if (!leaf_ok(period)) return true;
      return (*visit_)(from_reduced_unchecked(buf_, rank_));
    }
    for (int code = 0; code < 2 * rank_; ++code) {
      const Letter c = Letter::from_code(static_cast<std::uint8_t>(code));
      std::size_t p = period;
      if (!accept(pos, c, p)) continue;
      buf_[pos] = c;
      if (!dfs(pos + 1, p)) return false;
    }
    return true;
  }

  void collect(std::size_t pos, std::size_t period, std::size_t depth,
               std::vector<std::vector<Letter>>& out) {
    if (pos == depth) {
      out.emplace_back(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(depth));
      return;
    }
    for (int code = 0; code < 2 * rank_; ++code) {
      const Letter c = Letter::from_code(static_cast<std::uint8_t>(code));
      std::size_t p = period;
      if (!accept(pos, c, p)) continue;
      buf_[pos] = c;
      collect(pos + 1, p, depth, out);
    }
  }

  int rank_;
  int length_;
  EnumMode mode_;
  std::vector<Letter> buf_;
  const std::function<bool(const Word&)>* visit_ = nullptr;
};

void check_args(int rank, int length) {
  if (rank < 1 || rank > kMaxRank) throw InvalidArgument("enumeration needs rank >= 1");
  if (length < 1) throw InvalidArgument("enumeration needs length >= 1");
}

}  // namespace

bool for_each_word_with_prefix(int rank, int length, EnumMode mode,
                               std::span<const Letter> prefix,
                               const std::function<bool(const Word&)>& visit) {
  check_args(rank, length);
  Enumerator e(rank, length, mode);
  return e.run(prefix, visit);
}

std::vector<std::vector<Letter>> enumeration_prefixes(int rank, int length, EnumMode mode,
                                                      int depth) {
  check_args(rank, length);
  Enumerator e(rank, length, mode);
  std::vector<std::vector<Letter>> out;
  e.collect_prefixes(static_cast<std::size_t>(std::clamp(depth, 0, length)), out);
  return out;
}

bool for_each_word(int rank, int max_len, EnumMode mode,
                   const std::function<bool(const Word&)>& visit) {
  check_args(rank, max_len);
  for (int len = 1; len <= max_len; ++len) {
    if (!for_each_word_with_prefix(rank, len, mode, {}, visit)) return false;
  }
  return true;
}

std::vector<Word> enumerate_words(int rank, int max_len, EnumMode mode) {
  std::vector<Word> out;
  for_each_word(rank, max_len, mode, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

}  // namespace freelike
