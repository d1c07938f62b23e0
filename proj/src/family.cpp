#include "diracep/family.hpp"

#include <string>

#include "diracep/bloch.hpp"
#include "diracep/errors.hpp"
#include "diracep/kernels.hpp"
#include "diracep/models.hpp"

namespace diracep {

int HamiltonianFamily::axis_index(std::string_view name) const {
  for (int i = 0; i < 2; ++i) {
    if (axes[static_cast<std::size_t>(i)] == name) return i;
  }
  return -1;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const auto last = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const auto fi = static_cast<double>(i);
    out[i] = ((last - fi) * lo + fi * hi) / last;
  }
  out.front() = lo;
  out.back() = hi;
  if (count % 2 == 1) out[count / 2] = lo / 2.0 + hi / 2.0;
  return out;
}

const std::vector<std::string>& family_ids() {
  static const std::vector<std::string> ids{
      "h3",       "haprime",      "hbprime",       "haddprime",   "bloch",       "stack-a",
      "stack-b",  "imagcone",     "twoband-first", "twoband-second", "twoband-herm"};
  return ids;
}

namespace {

ModelParams params(double v0, double tau, double k) { return ModelParams{v0, tau, k}; }

AnalyticBands linear_pair_bands(double v0, std::vector<double> offsets) {
  return [v0, offsets](std::span<const double> tau, std::span<const double> k) {
    std::vector<double> lower(tau.size()), upper(tau.size());
    kernels::linear_pair(tau, k, v0, lower, upper);
    std::vector<std::vector<double>> out;
    for (double shift : offsets) {
      std::vector<double> lo = lower, hi = upper;
      if (shift != 0.0) {
        for (auto& x : lo) x += shift;
        for (auto& x : hi) x += shift;
      }
      out.push_back(std::move(lo));
      out.push_back(std::move(hi));
    }
    return out;
  };
}

}  // namespace

HamiltonianFamily make_family(std::string_view id, const FamilyOptions& opts) {
  if (!(opts.v0 > 0.0)) throw InvalidArgument("v0 must be positive");
  const double v0 = opts.v0;
  HamiltonianFamily f;
  f.id = std::string(id);
  f.axes = {"tau", "k"};

  if (id == "h3") {
    f.dimension = 3;
    f.evaluate = [v0](double tau, double k) { return build_h3(params(v0, tau, k)); };
  } else if (id == "haprime" || id == "hbprime") {
    f.dimension = 2;
    if (id == "haprime") {
      f.evaluate = [v0](double tau, double k) { return build_ha_prime(params(v0, tau, k)); };
    } else {
      f.evaluate = [v0](double tau, double k) { return build_hb_prime(params(v0, tau, k)); };
    }
    f.analytic = linear_pair_bands(v0, {0.0});
  } else if (id == "haddprime") {
    f.dimension = 2;
    f.evaluate = [v0](double tau, double k) { return build_ha_double_prime(params(v0, tau, k)); };
    f.analytic = [v0](std::span<const double> tau, std::span<const double> k) {
      std::vector<double> dtau(tau.begin(), tau.end());
      for (auto& x : dtau) x -= 1.0;
      std::vector<double> lower(tau.size()), upper(tau.size());
      kernels::exceptional_line_pair(dtau, k, v0, lower, upper);
      return std::vector<std::vector<double>>{std::move(lower), std::move(upper)};
    };
  } else if (id == "bloch") {
    if (opts.trunc_m < 2) throw InvalidArgument("truncation M must be at least 2");
    const int m = opts.trunc_m;
    f.dimension = 2 * m + 1;
    f.evaluate = [v0, m](double tau, double k) { return build_bloch(BlochSpec{v0, tau, m}, k); };
  } else if (id == "stack-a" || id == "stack-b") {
    BlockStackSpec spec{opts.shifts, id == "stack-a" ? StackKind::A : StackKind::B};
    build_block_stack(spec, params(v0, 1.0, 0.0));  // validates the shifts up front
    f.dimension = 2 * static_cast<Eigen::Index>(spec.shifts.size());
    f.evaluate = [v0, spec](double tau, double k) {
      return build_block_stack(spec, params(v0, tau, k));
    };
    std::vector<double> offsets;
    for (double s : spec.shifts) offsets.push_back(s - 1.0);
    f.analytic = linear_pair_bands(v0, offsets);
  } else if (id == "imagcone") {
    f.axes = {"k", "g"};
    f.dimension = 3;
    f.evaluate = [](double k, double g) { return build_imag_cone(k, g); };
  } else if (id == "twoband-first" || id == "twoband-second" || id == "twoband-herm") {
    f.axes = {"dminus", "d3"};
    f.dimension = 2;
    const double dplus = opts.delta_plus;
    if (id == "twoband-first") {
      f.evaluate = [dplus](double dm, double d3) {
        return two_band_generic({dplus, dm, d3, false}).h;
      };
    } else if (id == "twoband-second") {
      f.evaluate = [dplus](double dm, double d3) {
        return two_band_generic({dplus, dm * dm, d3, false}).h;
      };
    } else {
      f.evaluate = [](double d, double d3) { return two_band_generic({d, d, d3, true}).h; };
    }
  } else {
    std::string known;
    for (const auto& k : family_ids()) known += (known.empty() ? "" : ", ") + k;
    throw InvalidArgument("unknown model '" + std::string(id) + "' (known: " + known + ")");
  }
  return f;
}

}  // namespace diracep
