#pragma once

// Text file formats: presentations, finite group tables, whole-file reads.

#include <string>
#include <string_view>

#include "freelike/finite_group.hpp"
#include "freelike/presentation.hpp"

namespace freelike {

class FileError : public Error {
 public:
  using Error::Error;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

// `rank: m`, then one relator per line; `#` starts a comment. Without a rank
// line the rank is the largest generator mentioned.
Presentation parse_presentation(std::string_view text);
std::string format_presentation(const Presentation& p);

// `order: n`, `identity: e` (or a bare index line), optional `names: x y ...`,
// then n rows of n element indices.
FiniteGroup parse_group(std::string_view text);
std::string format_group(const FiniteGroup& g);

}  // namespace freelike
