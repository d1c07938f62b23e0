#include <fstream>
#include <system_error>

#include "diracep/cli.hpp"
#include "diracep/errors.hpp"

namespace diracep::cli {

std::string bands_csv(const SweepResult& sweep) {
  const bool two_d = sweep.first.values.size() > 1 && sweep.second.values.size() > 1;
  // A one-axis sweep reports the swept axis as param1.
  const bool second_swept = !two_d && sweep.second.values.size() > 1;
  const std::size_t ny = sweep.second.values.size();

  std::string out = two_d ? "param1,param2,band,re_omega,im_omega\n" : "param1,band,re_omega,im_omega\n";
  for (std::size_t p = 0; p < sweep.point_count(); ++p) {
    const double x = sweep.first.values[p / ny];
    const double y = sweep.second.values[p % ny];
    std::string prefix;
    if (two_d) {
      prefix = format_double(x) + "," + format_double(y) + ",";
    } else {
      prefix = format_double(second_swept ? y : x) + ",";
    }
    for (std::size_t b = 0; b < sweep.n_bands; ++b) {
      const complex w = sweep.bands[b][p];
      out += prefix;
      out += std::to_string(b + 1);
      out += ',';
      out += format_double(w.real());
      out += ',';
      out += format_double(w.imag());
      out += '\n';
    }
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidArgument("cannot write " + path.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw InvalidArgument("cannot write " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InvalidArgument("cannot write " + path.string());
  }
}

}  // namespace diracep::cli
