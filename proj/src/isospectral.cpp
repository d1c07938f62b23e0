#include "diracep/isospectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diracep/errors.hpp"
#include "diracep/kernels.hpp"

namespace diracep {

namespace {

double analytic_distance(const HamiltonianFamily& f, const std::vector<double>& xs,
                         const std::vector<double>& ys) {
  const auto bands = f.analytic(xs, ys);
  double worst = 0.0;
  std::vector<double> expect(bands.size());
  for (std::size_t p = 0; p < xs.size(); ++p) {
    for (std::size_t b = 0; b < bands.size(); ++b) expect[b] = bands[b][p];
    std::sort(expect.begin(), expect.end());
    auto w = eigenvalues(f.evaluate(xs[p], ys[p]), Ordering::by_real_part);
    sort_lexicographic(w);
    for (std::size_t b = 0; b < w.size(); ++b) worst = std::max(worst, std::abs(w[b] - expect[b]));
  }
  return worst;
}

}  // namespace

DegeneracyComparison compare_degeneracy(const HamiltonianFamily& a, const HamiltonianFamily& b,
                                        ParamPoint point, complex omega0,
                                        const AnalysisConfig& cfg) {
  DegeneracyComparison out;
  out.location = point;
  out.omega0 = omega0;
  AnalysisConfig c = cfg;
  c.bands = BandSelection::nearest(omega0);
  try {
    const auto ra = classify_degeneracy(a, point, c);
    out.label_a = ra.label;
    out.geometric_a = ra.geometric_multiplicity;
  } catch (const Error& e) {
    out.note = a.id + ": " + e.what();
  }
  try {
    const auto rb = classify_degeneracy(b, point, c);
    out.label_b = rb.label;
    out.geometric_b = rb.geometric_multiplicity;
  } catch (const Error& e) {
    out.note += (out.note.empty() ? "" : "; ") + b.id + ": " + e.what();
  }
  return out;
}

IsospectralReport verify_isospectral(const HamiltonianFamily& a, const HamiltonianFamily& b,
                                     const Axis& first, const Axis& second,
                                     const IsospectralOptions& opts) {
  if (a.dimension != b.dimension) {
    throw InvalidArgument("dimension mismatch: " + a.id + " is " + std::to_string(a.dimension) +
                          ", " + b.id + " is " + std::to_string(b.dimension));
  }
  if (first.values.empty() || second.values.empty()) throw InvalidArgument("empty grid axis");

  IsospectralReport rep;
  rep.family_a = a.id;
  rep.family_b = b.id;
  std::vector<double> xs, ys;
  for (double x : first.values) {
    for (double y : second.values) {
      xs.push_back(x);
      ys.push_back(y);
      auto wa = eigenvalues(a.evaluate(x, y), Ordering::unsorted);
      auto wb = eigenvalues(b.evaluate(x, y), Ordering::unsorted);
      sort_lexicographic(wa);
      sort_lexicographic(wb);
      double d = 0.0;
      for (std::size_t i = 0; i < wa.size(); ++i) d = std::max(d, std::abs(wa[i] - wb[i]));
      if (d > rep.max_deviation || rep.points == 0) {
        rep.max_deviation = std::max(rep.max_deviation, d);
        rep.worst_point = {x, y};
      }
      ++rep.points;
    }
  }

  if (a.analytic || b.analytic) {
    rep.analytic_deviation = 0.0;
    if (a.analytic) rep.analytic_deviation = analytic_distance(a, xs, ys);
    if (b.analytic) rep.analytic_deviation = std::max(rep.analytic_deviation, analytic_distance(b, xs, ys));
  } else {
    rep.analytic_deviation = std::numeric_limits<double>::quiet_NaN();
  }

  if (!opts.compare_degeneracies) return rep;

  const auto ca = find_degeneracies(a, first, second, opts.find_tol);
  const auto cb = find_degeneracies(b, first, second, opts.find_tol);
  std::vector<char> used(cb.size(), 0);
  const double near = 1e-6;
  for (const auto& da : ca) {
    bool matched = false;
    for (std::size_t j = 0; j < cb.size(); ++j) {
      const auto& db = cb[j];
      if (used[j] || std::abs(da.location.x - db.location.x) > near ||
          std::abs(da.location.y - db.location.y) > near || std::abs(da.omega0 - db.omega0) > near) {
        continue;
      }
      used[j] = 1;
      matched = true;
      rep.degeneracies.push_back(compare_degeneracy(a, b, da.location, da.omega0, opts.analysis));
      break;
    }
    if (!matched) ++rep.unmatched;
  }
  rep.unmatched += static_cast<std::size_t>(std::count(used.begin(), used.end(), 0));
  return rep;
}

double free_space_equivalence(const BlochSpec& spec, const std::vector<double>& k_grid) {
  validate(spec);
  if (spec.tau != 1.0) {
    throw PreconditionViolation("free-space equivalence holds only at tau = 1");
  }
  const auto n = static_cast<std::size_t>(spec.size());
  std::vector<double> folded(n);
  double worst = 0.0;
  for (double k : k_grid) {
    kernels::folded_parabola(k, spec.trunc_m, folded);
    std::sort(folded.begin(), folded.end());
    const auto w = eigenvalues(build_bloch(spec, k), Ordering::by_real_part);
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(w[i] - folded[i]));
  }
  return worst;
}

}  // namespace diracep
