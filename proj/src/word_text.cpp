#include <cctype>

#include "freelike/rational.hpp"
#include "freelike/word.hpp"

namespace freelike {

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, int rank) : text_(text), rank_(rank) {}

  std::vector<Letter> parse_all() {
    auto letters = parse_sequence();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return letters;
  }

  int max_generator() const { return max_generator_; }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("word \"" + std::string(text_) + "\": " + what + " at offset " +
                     std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '*' ||
            text_[pos_] == '.')) {
      ++pos_;
    }
  }

  std::vector<Letter> parse_sequence() {
    std::vector<Letter> out;
    for (;;) {
      skip_space();
      if (pos_ == text_.size() || text_[pos_] == ')') break;
      auto atom = parse_atom();
      long exponent = 1;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '^') {
        ++pos_;
        exponent = parse_int();
      }
      append_power(out, atom, exponent);
    }
    return out;
  }

  std::vector<Letter> parse_atom() {
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      auto inner = parse_sequence();
      if (pos_ == text_.size() || text_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (ch == '1') {
      ++pos_;
      return {};
    }
    if ((ch == 'x' || ch == 'X') && pos_ + 1 < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      const long index = parse_unsigned();
      if (index < 1) fail("variables are numbered from x1");
      return {make_letter(static_cast<int>(index - 1), ch == 'X' ? -1 : 1)};
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      ++pos_;
      const bool upper = std::isupper(static_cast<unsigned char>(ch)) != 0;
      const int index = std::tolower(static_cast<unsigned char>(ch)) - 'a';
      return {make_letter(index, upper ? -1 : 1)};
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  Letter make_letter(int index, int sign) {
    if (index >= kMaxRank) fail("generator index too large");
    if (rank_ >= 0 && index >= rank_) {
      fail("generator " + std::to_string(index + 1) + " outside alphabet of rank " +
           std::to_string(rank_));
    }
    max_generator_ = std::max(max_generator_, index);
    return Letter(index, sign);
  }

  long parse_unsigned() {
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 100000000) fail("number too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return value;
  }

  long parse_int() {
    skip_space();
    bool parenthesized = false;
    if (pos_ < text_.size() && text_[pos_] == '(') {
      parenthesized = true;
      ++pos_;
    }
    long sign = 1;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      sign = text_[pos_] == '-' ? -1 : 1;
      ++pos_;
    }
    const long value = sign * parse_unsigned();
    if (parenthesized) {
      if (pos_ == text_.size() || text_[pos_] != ')') fail("missing ')' after exponent");
      ++pos_;
    }
    return value;
  }

  static void append_power(std::vector<Letter>& out, const std::vector<Letter>& atom,
                           long exponent) {
    const long times = exponent < 0 ? -exponent : exponent;
    for (long i = 0; i < times; ++i) {
      if (exponent > 0) {
        out.insert(out.end(), atom.begin(), atom.end());
      } else {
        for (auto it = atom.rbegin(); it != atom.rend(); ++it) out.push_back(it->inverse());
      }
    }
  }

  std::string_view text_;
  int rank_;
  std::size_t pos_ = 0;
  int max_generator_ = -1;
};

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace

Word parse_word(std::string_view text, int rank) {
  WordParser parser(text, rank);
  auto letters = parser.parse_all();
  return reduce(letters, rank);
}

std::vector<Word> parse_word_list(std::string_view text, int rank) {
  std::vector<Word> out;
  for (auto part : split_commas(text)) out.push_back(parse_word(part, rank));
  return out;
}

int infer_rank(std::string_view text) {
  int best = -1;
  for (auto part : split_commas(text)) {
    WordParser parser(part, -1);
    parser.parse_all();
    best = std::max(best, parser.max_generator());
  }
  return best + 1;
}

std::string format_letter(Letter l, WordStyle style) {
  if (style == WordStyle::letters && l.generator() < 26) {
    const char base = static_cast<char>((l.is_inverse() ? 'A' : 'a') + l.generator());
    return std::string(1, base);
  }
  std::string s = "x" + std::to_string(l.generator() + 1);
  if (l.is_inverse()) s += "^-1";
  return s;
}

std::string format_word(const Word& w, WordStyle style) {
  if (w.empty()) return "1";
  if (w.rank() > 26) style = WordStyle::variables;
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    const std::size_t run = j - i;
    const Letter l = w[i];
    if (style == WordStyle::letters) {
      out += format_letter(l, style);
      if (run > 1) out += "^" + std::to_string(run);
    } else {
      if (!out.empty()) out += ' ';
      out += "x" + std::to_string(l.generator() + 1);
      const long e = static_cast<long>(run) * l.sign();
      if (e != 1) out += "^" + std::to_string(e);
    }
    i = j;
  }
  return out;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t used_num = 0, used_den = 0;
      const std::string num = text.substr(0, slash);
      const std::string den = text.substr(slash + 1);
      const long long n = std::stoll(num, &used_num);
      const long long d = std::stoll(den, &used_den);
      if (used_num != num.size() || used_den != den.size()) throw ParseError("");
      return Rational(n, d);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) {
      std::size_t used = 0;
      const long long n = std::stoll(text, &used);
      if (used != text.size()) throw ParseError("");
      return Rational(n);
    }
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 12) throw ParseError("");
    for (char c : frac) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("");
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const bool negative = !whole.empty() && whole[0] == '-';
    const long long w = whole.empty() || whole == "-" ? 0 : std::stoll(whole);
    const long long f = std::stoll(frac);
    const long long magnitude = (w < 0 ? -w : w) * scale + f;
    return Rational(negative ? -magnitude : magnitude, scale);
  } catch (const std::logic_error&) {
    throw ParseError("not a rational number: \"" + text + "\"");
  } catch (const ParseError&) {
    throw ParseError("not a rational number: \"" + text + "\"");
  }
}

}  // namespace freelike
