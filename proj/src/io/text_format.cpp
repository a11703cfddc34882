#include "invis/io/text_format.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "invis/errors.hpp"

namespace invis::io {

std::string fmt_real(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<TextLine> split_lines(const std::string& text) {
  std::vector<TextLine> out;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    TextLine tl;
    tl.lineno = n;
    if (!(ls >> tl.key)) continue;
    std::string v;
    while (ls >> v) tl.values.push_back(v);
    out.push_back(std::move(tl));
  }
  return out;
}

double parse_real(const std::string& s, const std::string& path) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  // ERANGE with a nonzero finite result is a subnormal, which round-trips exactly.
  const bool lost = errno == ERANGE && (v == 0.0 || !std::isfinite(v));
  if (s.empty() || end != s.c_str() + s.size() || lost || !std::isfinite(v))
    throw ParseError(path, "expected a finite real, got '" + s + "'");
  return v;
}

long long parse_int(const std::string& s, const std::string& path) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
    throw ParseError(path, "expected an integer, got '" + s + "'");
  return v;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace invis::io
