#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace invis::io {

/// Shortest form is not required; 17 significant digits round-trip any double.
std::string fmt_real(double v);

struct TextLine {
  int lineno = 0;
  std::string key;
  std::vector<std::string> values;
};

/// Splits text into whitespace-separated key/value lines, dropping blanks and '#' comments.
std::vector<TextLine> split_lines(const std::string& text);

double parse_real(const std::string& s, const std::string& path);
long long parse_int(const std::string& s, const std::string& path);

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);

}  // namespace invis::io
