#include "freelike/io.hpp"

#include <fstream>
#include <sstream>

namespace freelike {

namespace {

std::string strip(std::string line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

bool starts_with(const std::string& s, std::string_view prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

int parse_count(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad " + what + " \"" + text + "\"");
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write " + path);
  out << text;
  if (!out) throw FileError("write failed for " + path);
}

Presentation parse_presentation(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int rank = -1;
  std::vector<std::string> relator_lines;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty()) continue;
    if (starts_with(line, "rank:")) {
      if (rank >= 0 || !relator_lines.empty()) throw ParseError("`rank:` must come once, before the relators");
      rank = parse_count(strip(line.substr(5)), "rank");
      if (rank < 1 || rank > 26) throw ParseError("presentation rank must lie in [1, 26]");
      continue;
    }
    relator_lines.push_back(line);
  }
  if (rank < 0) {
    rank = 1;
    for (const auto& r : relator_lines) rank = std::max(rank, infer_rank(r));
  }
  std::vector<Word> relators;
  for (const auto& r : relator_lines) relators.push_back(parse_word(r, rank));
  return Presentation(rank, std::move(relators));
}

std::string format_presentation(const Presentation& p) {
  std::string out = "rank: " + std::to_string(p.rank()) + "\n";
  for (const Word& r : p.base_relators()) out += format_word(r) + "\n";
  return out;
}

FiniteGroup parse_group(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int order = -1;
  int identity = -1;
  std::vector<std::string> names;
  std::vector<std::vector<int>> rows;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty()) continue;
    if (starts_with(line, "order:")) {
      order = parse_count(strip(line.substr(6)), "order");
      if (order < 1 || order > 4096) throw ParseError("group order out of range");
      continue;
    }
    if (order < 0) throw ParseError("group file must start with `order: n`");
    if (starts_with(line, "identity:")) {
      identity = parse_count(strip(line.substr(9)), "identity index");
      continue;
    }
    if (starts_with(line, "names:")) {
      std::istringstream s(line.substr(6));
      std::string name;
      while (s >> name) names.push_back(name);
      continue;
    }
    std::istringstream s(line);
    std::vector<int> row;
    std::string cell;
    while (s >> cell) row.push_back(parse_count(cell, "table entry"));
    if (identity < 0 && row.size() == 1 && order != 1) {
      identity = row.front();
      continue;
    }
    if (static_cast<int>(row.size()) != order) {
      throw ParseError("table row " + std::to_string(rows.size() + 1) + " has " +
                       std::to_string(row.size()) + " entries, expected " + std::to_string(order));
    }
    rows.push_back(std::move(row));
  }
  if (order < 0) throw ParseError("group file lacks `order: n`");
  if (static_cast<int>(rows.size()) != order) {
    throw ParseError("group table has " + std::to_string(rows.size()) + " rows, expected " +
                     std::to_string(order));
  }
  if (identity < 0) throw ParseError("group file lacks the identity index");
  return FiniteGroup(std::move(rows), identity, std::move(names));
}

std::string format_group(const FiniteGroup& g) {
  std::string out = "order: " + std::to_string(g.order()) + "\n";
  out += "identity: " + std::to_string(g.identity()) + "\n";
  out += "names:";
  for (const auto& n : g.names()) out += " " + n;
  out += "\n";
  for (const auto& row : g.table()) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? " " : "") + std::to_string(row[i]);
    out += "\n";
  }
  return out;
}

}  // namespace freelike
