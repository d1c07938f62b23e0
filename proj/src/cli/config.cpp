#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "diracep/cli.hpp"
#include "diracep/errors.hpp"

namespace diracep::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

double parse_double(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw InvalidArgument("not a finite number: '" + std::string(text) + "'");
  }
  return v;
}

Range parse_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw InvalidArgument("range must be min:max:count, got '" + std::string(text) + "'");
  Range r;
  r.min = parse_double(parts[0]);
  r.max = parse_double(parts[1]);
  unsigned long long count = 0;
  auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
  if (parts[2].empty() || ec != std::errc() || ptr != parts[2].data() + parts[2].size()) {
    throw InvalidArgument("range count must be an integer, got '" + std::string(parts[2]) + "'");
  }
  if (count < 2) throw InvalidArgument("range count must be at least 2");
  if (!(r.min < r.max)) throw InvalidArgument("range needs min < max");
  r.count = static_cast<std::size_t>(count);
  return r;
}

std::map<std::string, double> parse_assignments(std::string_view text) {
  std::map<std::string, double> out;
  for (auto item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("expected name=value, got '" + std::string(item) + "'");
    }
    const std::string name(trim(item.substr(0, eq)));
    if (name.empty() || out.count(name)) throw InvalidArgument("bad or repeated name in '" + std::string(text) + "'");
    out[name] = parse_double(item.substr(eq + 1));
  }
  return out;
}

std::array<double, 2> parse_pair(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw InvalidArgument("expected a,b, got '" + std::string(text) + "'");
  return {parse_double(parts[0]), parse_double(parts[1])};
}

std::vector<std::string> config_file_tokens(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file " + path.string());
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const auto key = trim(s.substr(0, eq));
    if (key.empty()) throw InvalidArgument(path.string() + ":" + std::to_string(lineno) + ": empty key");
    tokens.push_back("--" + std::string(key) + "=" + std::string(trim(s.substr(eq + 1))));
  }
  return tokens;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace diracep::cli
