#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "diracep/bloch.hpp"

namespace diracep::cli {

enum ExitCode : int {
  ok = 0,
  check_failed = 1,
  config_error = 2,
  numerical_failure = 3,
  unresolved = 4,
  precondition_violation = 5,
};

/// Inclusive grid `min:max:count`.
struct Range {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

/// Parse `min:max:count`. count must be >= 2 and min < max. Throws
/// InvalidArgument.
Range parse_range(std::string_view text);

/// Parse `name=value,name=value`. Throws InvalidArgument.
std::map<std::string, double> parse_assignments(std::string_view text);

/// Parse `a,b` into two doubles.
std::array<double, 2> parse_pair(std::string_view text);

/// Strict double parse of the whole string. Throws InvalidArgument.
double parse_double(std::string_view text);

/// Turn a key=value config file into `--key=value` tokens. Blank lines and
/// lines starting with '#' are skipped. Throws InvalidArgument.
std::vector<std::string> config_file_tokens(const std::filesystem::path& path);

/// %.17g.
std::string format_double(double x);

/// CSV of a sweep: `param1,param2,band,re_omega,im_omega` (param2 dropped for
/// one-axis sweeps), grid-major, bands 1-based.
std::string bands_csv(const SweepResult& sweep);

/// Write through a temporary file in the same directory and rename over the
/// target. Throws InvalidArgument when the path cannot be written.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diracep::cli
