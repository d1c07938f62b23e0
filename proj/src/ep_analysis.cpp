#include "diracep/ep_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "diracep/errors.hpp"

namespace diracep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string point_text(const HamiltonianFamily& f, ParamPoint p) {
  std::ostringstream os;
  os.precision(17);
  os << f.axes[0] << "=" << p.x << "," << f.axes[1] << "=" << p.y;
  return os.str();
}

// Snap cos/sin of exact quarter turns so probes land on the axes.
std::array<double, 2> unit_direction(double angle) {
  double c = std::cos(angle);
  double s = std::sin(angle);
  if (std::abs(c) < 1e-15) c = 0.0;
  if (std::abs(s) < 1e-15) s = 0.0;
  return {c, s};
}

std::array<double, 2> normalized(std::array<double, 2> d) {
  const double n = std::hypot(d[0], d[1]);
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("direction must be a non-zero vector");
  return {d[0] / n, d[1] / n};
}

ParamPoint offset(ParamPoint p, std::array<double, 2> dir, double r) {
  return {p.x + r * dir[0], p.y + r * dir[1]};
}

// Least squares for y ~ X b with columns scaled to unit max; returns b and RMS.
template <int Cols>
std::pair<Eigen::Matrix<double, Cols, 2>, double> least_squares(
    const Eigen::Matrix<double, Eigen::Dynamic, Cols>& x, const Eigen::Matrix<double, Eigen::Dynamic, 2>& y) {
  Eigen::Matrix<double, Eigen::Dynamic, Cols> scaled = x;
  Eigen::Matrix<double, Cols, 1> scale;
  for (int c = 0; c < Cols; ++c) {
    scale(c) = scaled.col(c).cwiseAbs().maxCoeff();
    if (scale(c) == 0.0) scale(c) = 1.0;
    scaled.col(c) /= scale(c);
  }
  Eigen::Matrix<double, Cols, 2> b = scaled.colPivHouseholderQr().solve(y);
  for (int c = 0; c < Cols; ++c) b.row(c) /= scale(c);
  const double rms = std::sqrt((x * b - y).squaredNorm() / static_cast<double>(x.rows()));
  return {b, rms};
}

double pair_gap(const std::vector<complex>& w, const std::optional<std::array<int, 2>>& pair) {
  if (pair) {
    const auto a = static_cast<std::size_t>((*pair)[0] - 1);
    const auto b = static_cast<std::size_t>((*pair)[1] - 1);
    return std::abs(w[a] - w[b]);
  }
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < w.size(); ++a) {
    for (std::size_t b = a + 1; b < w.size(); ++b) gap = std::min(gap, std::abs(w[a] - w[b]));
  }
  return gap;
}

double golden_section(const std::function<double(double)>& f, double lo, double hi,
                      double resolution) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > resolution) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

}  // namespace

std::string_view label_name(Label label) {
  switch (label) {
    case Label::DiracPoint: return "DiracPoint";
    case Label::DiracEP: return "DiracEP";
    case Label::ConventionalEP2: return "ConventionalEP2";
    case Label::Unresolved: return "Unresolved";
  }
  return "Unresolved";
}

std::string_view node_type_name(NodeType node) {
  return node == NodeType::point ? "point" : "line_or_surface";
}

std::string_view puiseux_model_name(PuiseuxModel model) {
  return model == PuiseuxModel::half_integer ? "half_integer" : "integer";
}

SelectedPair select_pair(const HamiltonianFamily& family, ParamPoint point,
                         const BandSelection& sel, double degeneracy_relative_tol) {
  SelectedPair out;
  out.spectrum = eig_dense(family(point), Ordering::by_real_part);
  const auto& w = out.spectrum.values;
  const std::size_t n = w.size();
  out.cluster_tol = degeneracy_tolerance(w, degeneracy_relative_tol);

  if (sel.kind == BandSelection::Kind::indices) {
    const int a = sel.indices[0], b = sel.indices[1];
    if (a < 1 || b < 1 || a == b || static_cast<std::size_t>(std::max(a, b)) > n) {
      throw InvalidArgument("band pair indices out of range");
    }
    out.indices = {static_cast<std::size_t>(std::min(a, b) - 1),
                   static_cast<std::size_t>(std::max(a, b) - 1)};
  } else {
    bool found = false;
    double best_key = std::numeric_limits<double>::infinity();
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double gap = std::abs(w[i] - w[j]);
        if (gap > out.cluster_tol) continue;
        const complex mean = (w[i] + w[j]) / 2.0;
        const double key = sel.kind == BandSelection::Kind::lowest ? mean.real()
                                                                   : std::abs(mean - sel.target);
        if (!found || key < best_key || (key == best_key && gap < best_gap)) {
          found = true;
          best_key = key;
          best_gap = gap;
          out.indices = {i, j};
        }
      }
    }
    if (!found) {
      throw PreconditionViolation("no degenerate band pair at " + point_text(family, point));
    }
  }
  const complex wa = w[out.indices[0]];
  const complex wb = w[out.indices[1]];
  out.gap = std::abs(wa - wb);
  out.omega0 = (wa + wb) / 2.0;
  if (out.gap > out.cluster_tol) {
    std::ostringstream os;
    os << "bands " << out.indices[0] + 1 << "," << out.indices[1] + 1 << " are not degenerate at "
       << point_text(family, point) << " (gap " << out.gap << ")";
    throw PreconditionViolation(os.str());
  }
  return out;
}

std::array<complex, 2> tracked_pair(const CMatrix& a, complex omega0) {
  std::vector<complex> w = eigenvalues(a, Ordering::unsorted);
  if (w.size() < 2) throw InvalidArgument("tracking a band pair needs at least two bands");
  std::partial_sort(w.begin(), w.begin() + 2, w.end(), [&](complex x, complex y) {
    return std::abs(x - omega0) < std::abs(y - omega0);
  });
  complex u = w[0], l = w[1];
  const double tie = 1e-12 * std::max(1.0, std::abs(omega0));
  if (std::abs(u.real() - l.real()) > tie) {
    if (u.real() < l.real()) std::swap(u, l);
  } else if (u.imag() < l.imag()) {
    std::swap(u, l);
  }
  return {u, l};
}

std::vector<DegeneracyCandidate> find_degeneracies(const HamiltonianFamily& family,
                                                   const Axis& first, const Axis& second,
                                                   double tol, const FindOptions& opts) {
  if (!(tol > 0.0)) throw InvalidArgument("find_degeneracies: tol must be positive");
  const std::size_t nx = first.values.size();
  const std::size_t ny = second.values.size();
  if (nx == 0 || ny == 0) throw InvalidArgument("find_degeneracies: empty grid axis");

  auto gap_at = [&](double x, double y) {
    return pair_gap(eigenvalues(family.evaluate(x, y)), opts.band_pair);
  };

  std::vector<double> gaps(nx * ny);
  std::vector<double> scale(nx * ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const auto w = eigenvalues(family.evaluate(first.values[i], second.values[j]));
      gaps[i * ny + j] = pair_gap(w, opts.band_pair);
      scale[i * ny + j] = degeneracy_tolerance(w, 1.0);
    }
  }

  std::vector<DegeneracyCandidate> out;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const double g0 = gaps[i * ny + j];
      bool is_min = std::isfinite(g0);
      for (int di = -1; di <= 1 && is_min; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const auto ii = static_cast<std::ptrdiff_t>(i) + di;
          const auto jj = static_cast<std::ptrdiff_t>(j) + dj;
          if (ii < 0 || jj < 0 || ii >= static_cast<std::ptrdiff_t>(nx) ||
              jj >= static_cast<std::ptrdiff_t>(ny)) {
            continue;
          }
          if (gaps[static_cast<std::size_t>(ii) * ny + static_cast<std::size_t>(jj)] < g0) {
            is_min = false;
            break;
          }
        }
      }
      if (!is_min) continue;

      double x = first.values[i];
      double y = second.values[j];
      if (g0 > 1e-14 * scale[i * ny + j]) {
        const double xlo = first.values[i > 0 ? i - 1 : i];
        const double xhi = first.values[i + 1 < nx ? i + 1 : i];
        const double ylo = second.values[j > 0 ? j - 1 : j];
        const double yhi = second.values[j + 1 < ny ? j + 1 : j];
        double best = g0;
        for (int sweep = 0; sweep < 40; ++sweep) {
          const double px = x, py = y;
          if (xhi > xlo) {
            const double cand = golden_section([&](double t) { return gap_at(t, y); }, xlo, xhi,
                                               opts.resolution);
            const double g = gap_at(cand, y);
            if (g < best) {
              best = g;
              x = cand;
            }
          }
          if (yhi > ylo) {
            const double cand = golden_section([&](double t) { return gap_at(x, t); }, ylo, yhi,
                                               opts.resolution);
            const double g = gap_at(x, cand);
            if (g < best) {
              best = g;
              y = cand;
            }
          }
          if (std::abs(x - px) <= opts.resolution && std::abs(y - py) <= opts.resolution) break;
        }
      }

      const auto w = eigenvalues(family.evaluate(x, y));
      for (std::size_t a = 0; a < w.size(); ++a) {
        for (std::size_t b = a + 1; b < w.size(); ++b) {
          const std::array<int, 2> bands{static_cast<int>(a) + 1, static_cast<int>(b) + 1};
          if (opts.band_pair && bands != *opts.band_pair) continue;
          const double g = std::abs(w[a] - w[b]);
          if (g >= tol) continue;
          out.push_back({{x, y}, (w[a] + w[b]) / 2.0, g, bands});
        }
      }
    }
  }

  // Merge duplicates: same pair of bands within the location resolution.
  const double merge_radius = std::max(10.0 * opts.resolution, 1e-9);
  std::vector<DegeneracyCandidate> merged;
  for (const auto& c : out) {
    auto dup = std::find_if(merged.begin(), merged.end(), [&](const DegeneracyCandidate& m) {
      return m.bands == c.bands && std::abs(m.location.x - c.location.x) <= merge_radius &&
             std::abs(m.location.y - c.location.y) <= merge_radius;
    });
    if (dup == merged.end()) {
      merged.push_back(c);
    } else if (c.gap < dup->gap) {
      *dup = c;
    }
  }
  std::sort(merged.begin(), merged.end(), [](const DegeneracyCandidate& a, const DegeneracyCandidate& b) {
    if (a.location.x != b.location.x) return a.location.x < b.location.x;
    if (a.location.y != b.location.y) return a.location.y < b.location.y;
    return a.bands < b.bands;
  });
  return merged;
}

std::vector<std::array<double, 2>> equally_spaced_rays(int count) {
  if (count < 1) throw InvalidArgument("ray count must be positive");
  std::vector<std::array<double, 2>> rays;
  for (int j = 0; j < count; ++j) rays.push_back(unit_direction(2.0 * std::numbers::pi * j / count));
  return rays;
}

std::vector<double> log_radii(double r_min, double r_max, int count) {
  if (!(r_min > 0.0) || !(r_max > r_min) || count < 2) {
    throw InvalidArgument("radii need 0 < r_min < r_max and at least two samples");
  }
  std::vector<double> r(static_cast<std::size_t>(count));
  const double lo = std::log(r_min), hi = std::log(r_max);
  for (int i = 0; i < count; ++i) r[static_cast<std::size_t>(i)] = std::exp(lo + (hi - lo) * i / (count - 1));
  r.front() = r_min;
  r.back() = r_max;
  return r;
}

ConeFit fit_cone(const HamiltonianFamily& family, ParamPoint center, const BandSelection& sel,
                 const std::vector<std::array<double, 2>>& rays, const std::vector<double>& radii,
                 double line_tol) {
  if (radii.size() < 4) throw InvalidArgument("fit_cone needs at least 4 radii");
  for (double r : radii) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("radii must be positive");
  }
  if (rays.empty()) throw InvalidArgument("fit_cone needs at least one ray");

  const SelectedPair pair = select_pair(family, center, sel);
  ConeFit fit;
  fit.center = center;
  fit.omega0 = pair.omega0;
  fit.radii = radii;

  const auto n = static_cast<Eigen::Index>(radii.size());
  for (const auto& raw_dir : rays) {
    RayFit ray;
    ray.direction = normalized(raw_dir);
    double max_split = 0.0;
    std::vector<double> split(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const auto [u, l] = tracked_pair(family(offset(center, ray.direction, radii[i])), pair.omega0);
      ray.upper.push_back(u);
      ray.lower.push_back(l);
      split[i] = std::abs(u - l);
      max_split = std::max(max_split, split[i]);
    }

    Eigen::Matrix<double, Eigen::Dynamic, 2> sheets(n, 2);
    Eigen::Matrix<double, Eigen::Dynamic, 2> basis(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double r = radii[static_cast<std::size_t>(i)];
      basis(i, 0) = r;
      basis(i, 1) = r * r;
      sheets(i, 0) = (ray.upper[static_cast<std::size_t>(i)] - pair.omega0).real();
      sheets(i, 1) = (ray.lower[static_cast<std::size_t>(i)] - pair.omega0).real();
    }
    const auto [coef, rms] = least_squares<2>(basis, sheets);
    ray.slope_upper = coef(0, 0);
    ray.slope_lower = coef(0, 1);
    ray.curvature_upper = coef(1, 0);
    ray.curvature_lower = coef(1, 1);
    ray.tilt = (ray.slope_upper + ray.slope_lower) / 2.0;
    ray.slope_residual = rms;

    if (max_split < line_tol) {
      ray.exceptional_line = true;
      ray.exponent = kNaN;
      ray.exponent_residual = kNaN;
    } else {
      std::vector<std::pair<double, double>> pts;
      for (std::size_t i = 0; i < radii.size(); ++i) {
        if (split[i] > 0.0) pts.emplace_back(std::log(radii[i]), std::log(split[i]));
      }
      if (pts.size() < 2) {
        ray.exponent = kNaN;
        ray.exponent_residual = kNaN;
      } else {
        Eigen::Matrix<double, Eigen::Dynamic, 2> x(static_cast<Eigen::Index>(pts.size()), 2);
        Eigen::Matrix<double, Eigen::Dynamic, 2> y(static_cast<Eigen::Index>(pts.size()), 2);
        for (std::size_t i = 0; i < pts.size(); ++i) {
          const auto row = static_cast<Eigen::Index>(i);
          x(row, 0) = 1.0;
          x(row, 1) = pts[i].first;
          y(row, 0) = pts[i].second;
          y(row, 1) = 0.0;
        }
        const auto [b, res] = least_squares<2>(x, y);
        ray.exponent = b(1, 0);
        ray.exponent_residual = res * std::sqrt(2.0);  // the zero column adds nothing
      }
    }
    fit.rays.push_back(std::move(ray));
  }
  return fit;
}

RealityProbe local_reality(const HamiltonianFamily& family, ParamPoint point, complex omega0,
                           const AnalysisConfig& cfg) {
  if (!(cfg.probe_radius > 0.0) || cfg.probe_angles < 2 || cfg.probe_rings < 1) {
    throw InvalidArgument("probe disk needs a positive radius, >= 2 angles and >= 1 ring");
  }
  RealityProbe out;
  const auto angles = static_cast<std::size_t>(cfg.probe_angles);
  std::vector<char> flagged(angles, 0);
  const double node_tol = cfg.reality_tol * std::max(1.0, std::abs(omega0));
  for (std::size_t a = 0; a < angles; ++a) {
    const auto dir = unit_direction(2.0 * std::numbers::pi * static_cast<double>(a) /
                                    static_cast<double>(angles));
    for (int ring = 1; ring <= cfg.probe_rings; ++ring) {
      const double r = cfg.probe_radius * ring / cfg.probe_rings;
      const auto [u, l] = tracked_pair(family(offset(point, dir, r)), omega0);
      const double im = std::max(std::abs(u.imag()), std::abs(l.imag()));
      out.max_abs_im = std::max(out.max_abs_im, im);
      if (im > cfg.reality_tol) flagged[a] = 1;
      if (std::abs(u.real() - l.real()) <= node_tol) out.node_type = NodeType::line_or_surface;
    }
  }
  out.locally_real = out.max_abs_im <= cfg.reality_tol;
  for (std::size_t a = 0; a < angles; ++a) {
    if (flagged[a] && flagged[(a + 1) % angles]) out.branch_cut_detected = true;
  }
  return out;
}

DegeneracyReport classify_degeneracy(const HamiltonianFamily& family, ParamPoint point,
                                     const AnalysisConfig& cfg) {
  const SelectedPair pair = select_pair(family, point, cfg.bands, cfg.degeneracy_relative_tol);
  const CMatrix a = family(point);
  const auto n = a.rows();

  DegeneracyReport rep;
  rep.family = family.id;
  rep.axes = family.axes;
  rep.location = point;
  rep.omega0 = pair.omega0;
  rep.bands = {static_cast<int>(pair.indices[0]) + 1, static_cast<int>(pair.indices[1]) + 1};
  rep.gap = pair.gap;
  for (const complex& w : pair.spectrum.values) {
    if (std::abs(w - pair.omega0) <= pair.cluster_tol) ++rep.algebraic_multiplicity;
  }
  rep.geometric_multiplicity =
      static_cast<int>(n) - numerical_rank(a - pair.omega0 * CMatrix::Identity(n, n), cfg.rank_tol);
  rep.coalescence_overlap = std::abs(
      pair.spectrum.vectors[pair.indices[0]].dot(pair.spectrum.vectors[pair.indices[1]]));
  if (rep.geometric_multiplicity == 1) rep.eigenvector = null_vector(a, pair.omega0);

  AnalysisConfig probe_cfg = cfg;
  rep.reality = local_reality(family, point, pair.omega0, probe_cfg);
  rep.cone = fit_cone(family, point, BandSelection::nearest(pair.omega0),
                      equally_spaced_rays(cfg.ray_count), log_radii(cfg.r_min, cfg.r_max, cfg.n_radii),
                      cfg.line_tol);

  bool all_linear = true;
  bool any_sqrt = false;
  int measured = 0;
  rep.exponent_min = std::numeric_limits<double>::infinity();
  rep.exponent_max = -std::numeric_limits<double>::infinity();
  for (const auto& ray : rep.cone.rays) {
    if (ray.exceptional_line) {
      ++rep.line_rays;
      continue;
    }
    if (!std::isfinite(ray.exponent)) {
      all_linear = false;
      continue;
    }
    ++measured;
    rep.exponent_min = std::min(rep.exponent_min, ray.exponent);
    rep.exponent_max = std::max(rep.exponent_max, ray.exponent);
    if (ray.exponent < cfg.linear_lo || ray.exponent > cfg.linear_hi) all_linear = false;
    if (ray.exponent >= cfg.sqrt_lo && ray.exponent <= cfg.sqrt_hi) any_sqrt = true;
  }
  if (measured == 0) {
    all_linear = false;
    rep.exponent_min = rep.exponent_max = kNaN;
  }

  const bool coalesced = rep.coalescence_overlap > cfg.coalescence_threshold;
  if (rep.algebraic_multiplicity != 2) {
    rep.notes.push_back("algebraic multiplicity " + std::to_string(rep.algebraic_multiplicity) +
                        " is outside the two-fold taxonomy");
  } else if (rep.geometric_multiplicity == 2) {
    if (rep.reality.locally_real && all_linear) {
      rep.label = Label::DiracPoint;
    } else {
      rep.notes.push_back("diabolic degeneracy without a real linear cone");
    }
  } else if (rep.geometric_multiplicity == 1) {
    if (rep.reality.locally_real && !rep.reality.branch_cut_detected && all_linear) {
      rep.label = Label::DiracEP;
    } else if (any_sqrt || rep.reality.branch_cut_detected) {
      rep.label = Label::ConventionalEP2;
    } else {
      rep.notes.push_back("defective degeneracy matching neither cone nor square-root dispersion");
    }
  }
  if (rep.line_rays > 0) {
    rep.notes.push_back(std::to_string(rep.line_rays) + " ray(s) lie along an exceptional line");
  }
  if ((rep.geometric_multiplicity == 1) != coalesced) {
    rep.notes.push_back("eigenvector overlap disagrees with the rank-based geometric multiplicity");
  }
  return rep;
}

PuiseuxResult puiseux_diagnostic(const HamiltonianFamily& family, ParamPoint point,
                                 std::array<double, 2> direction, const AnalysisConfig& cfg,
                                 const PuiseuxOptions& opts) {
  if (!(opts.eps_min > 0.0) || !(opts.eps_max > opts.eps_min) || opts.samples < 5) {
    throw InvalidArgument("puiseux sampling needs 0 < eps_min < eps_max and >= 5 samples");
  }
  const SelectedPair pair = select_pair(family, point, cfg.bands, cfg.degeneracy_relative_tol);
  int multiplicity = 0;
  for (const complex& w : pair.spectrum.values) {
    if (std::abs(w - pair.omega0) <= pair.cluster_tol) ++multiplicity;
  }
  if (multiplicity != 2) {
    throw PreconditionViolation("puiseux diagnostic needs a two-fold degeneracy, found " +
                                std::to_string(multiplicity));
  }

  PuiseuxResult out;
  out.direction = normalized(direction);
  out.omega0 = pair.omega0;
  out.eps = log_radii(opts.eps_min, opts.eps_max, opts.samples);

  const auto n = static_cast<Eigen::Index>(out.eps.size());
  Eigen::Matrix<double, Eigen::Dynamic, 4> basis(n, 4);
  Eigen::Matrix<double, Eigen::Dynamic, 2> upper(n, 2), lower(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double e = out.eps[static_cast<std::size_t>(i)];
    const double root = std::sqrt(e);
    basis(i, 0) = root;
    basis(i, 1) = e;
    basis(i, 2) = e * root;
    basis(i, 3) = e * e;
    const auto [u, l] = tracked_pair(family(offset(point, out.direction, e)), pair.omega0);
    upper(i, 0) = (u - pair.omega0).real();
    upper(i, 1) = (u - pair.omega0).imag();
    lower(i, 0) = (l - pair.omega0).real();
    lower(i, 1) = (l - pair.omega0).imag();
  }
  const Eigen::Matrix<double, Eigen::Dynamic, 2>* data[2] = {&upper, &lower};
  for (int s = 0; s < 2; ++s) {
    const auto [coef, rms] = least_squares<4>(basis, *data[s]);
    out.sheets[static_cast<std::size_t>(s)] = {complex(coef(0, 0), coef(0, 1)),
                                               complex(coef(1, 0), coef(1, 1)), rms};
    out.c_half = std::max(out.c_half, std::abs(out.sheets[static_cast<std::size_t>(s)].c_half));
    out.c_one = std::max(out.c_one, std::abs(out.sheets[static_cast<std::size_t>(s)].c_one));
  }
  out.model = out.c_half * std::sqrt(opts.eps_max) > out.c_one * opts.eps_max
                  ? PuiseuxModel::half_integer
                  : PuiseuxModel::integer;
  return out;
}

}  // namespace diracep
