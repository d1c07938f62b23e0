#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diracep/linalg.hpp"

namespace diracep {

/// A point in a two-parameter plane, coordinates in the family's axis order.
struct ParamPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const ParamPoint&, const ParamPoint&) = default;
};

/// One grid axis. A single value means the coordinate is held fixed.
struct Axis {
  std::string name;
  std::vector<double> values;
};

/// Inclusive grid of `count` points. Endpoints are exact and, for odd counts,
/// so is the midpoint, which puts symmetric degeneracies on grid points.
std::vector<double> linspace(double lo, double hi, std::size_t count);

/// Real closed-form bands of a family, [band][point], for a batch of points.
using AnalyticBands =
    std::function<std::vector<std::vector<double>>(std::span<const double>, std::span<const double>)>;

/// A named, parametrised map (x, y) -> dense complex square matrix.
struct HamiltonianFamily {
  std::string id;
  std::array<std::string, 2> axes;
  Eigen::Index dimension = 0;
  std::function<CMatrix(double, double)> evaluate;
  /// Present for families whose bands are known in closed form (all real).
  AnalyticBands analytic;

  CMatrix operator()(ParamPoint p) const { return evaluate(p.x, p.y); }
  /// Index of an axis by name, or -1.
  int axis_index(std::string_view name) const;
};

/// Model-specific settings that are not swept.
struct FamilyOptions {
  double v0 = 1.0;
  int trunc_m = 8;
  std::vector<double> shifts{1.0, 2.0, 3.0};
  /// Two-band models: fixed Delta_+ (non-Hermitian variant only).
  double delta_plus = 0.0;
};

/// Identifiers understood by make_family, in documentation order.
const std::vector<std::string>& family_ids();

/// Build a family by id:
///   h3, haprime, hbprime, haddprime, bloch, stack-a, stack-b   axes (tau, k)
///   imagcone                                                   axes (k, g)
///   twoband-first   Delta_- = dminus (first order)             axes (dminus, d3)
///   twoband-second  Delta_- = dminus^2                         axes (dminus, d3)
///   twoband-herm    Hermitian, Delta_- = Delta_+ = dminus      axes (dminus, d3)
/// Throws InvalidArgument for an unknown id or invalid options.
HamiltonianFamily make_family(std::string_view id, const FamilyOptions& opts = {});

}  // namespace diracep
