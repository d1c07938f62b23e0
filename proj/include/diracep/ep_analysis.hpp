#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diracep/family.hpp"
#include "diracep/linalg.hpp"

namespace diracep {

/// Which pair of bands at a point forms the degeneracy under study.
struct BandSelection {
  enum class Kind { lowest, indices, nearest };

  Kind kind = Kind::lowest;
  /// 1-based band indices in ascending (real, imag) order; Kind::indices.
  std::array<int, 2> indices{1, 2};
  /// Energy to match; Kind::nearest.
  complex target{};

  static BandSelection lowest() { return {}; }
  static BandSelection bands(int a, int b) { return {Kind::indices, {a, b}, {}}; }
  static BandSelection nearest(complex w) { return {Kind::nearest, {1, 2}, w}; }
};

struct AnalysisConfig {
  double degeneracy_relative_tol = 1e-8;
  double rank_tol = 1e-8;
  BandSelection bands;

  double probe_radius = 0.02;
  int probe_angles = 16;
  int probe_rings = 5;
  double reality_tol = 1e-9;

  int ray_count = 8;
  double r_min = 1e-5;
  double r_max = 0.02;
  int n_radii = 12;
  /// A ray whose splitting stays below this at every radius is an
  /// exceptional-line direction.
  double line_tol = 1e-12;

  double linear_lo = 0.8;
  double linear_hi = 1.2;
  double sqrt_lo = 0.35;
  double sqrt_hi = 0.65;
  double coalescence_threshold = 0.999;
};

/// The degenerate pair picked at a point.
struct SelectedPair {
  Spectrum spectrum;
  std::array<std::size_t, 2> indices{};  // 0-based into spectrum
  complex omega0{};
  double gap = 0.0;
  double cluster_tol = 0.0;
};

/// Eigendecompose family(point) and pick the pair. Throws
/// PreconditionViolation when no pair closer than the clustering tolerance
/// exists (or the requested pair is split).
SelectedPair select_pair(const HamiltonianFamily& family, ParamPoint point,
                         const BandSelection& sel, double degeneracy_relative_tol = 1e-8);

/// The two eigenvalues of `a` nearest omega0, upper sheet first (larger real
/// part; larger imaginary part when the real parts agree).
std::array<complex, 2> tracked_pair(const CMatrix& a, complex omega0);

struct DegeneracyCandidate {
  ParamPoint location;
  complex omega0{};
  double gap = 0.0;
  std::array<int, 2> bands{};  // 1-based
};

struct FindOptions {
  /// Refinement stops once the search bracket is below this.
  double resolution = 1e-10;
  /// Restrict the gap to one band pair (1-based, ascending real part).
  std::optional<std::array<int, 2>> band_pair;
};

/// Grid local minima of the eigenvalue gap, refined by golden-section
/// coordinate descent to `resolution`, kept when the refined gap is below
/// `tol`. Grid points whose gap is already zero to rounding are kept exactly.
/// One candidate per (location, degenerate pair); duplicates are merged.
std::vector<DegeneracyCandidate> find_degeneracies(const HamiltonianFamily& family,
                                                   const Axis& first, const Axis& second,
                                                   double tol, const FindOptions& opts = {});

struct RayFit {
  std::array<double, 2> direction{};  // unit vector in parameter space
  bool exceptional_line = false;
  double exponent = 0.0;              // NaN on a line direction
  double exponent_residual = 0.0;     // RMS of the log-log fit
  double slope_upper = 0.0;           // d Re(omega - omega0) / dr
  double slope_lower = 0.0;
  double curvature_upper = 0.0;
  double curvature_lower = 0.0;
  double tilt = 0.0;                  // mean of the two slopes
  double slope_residual = 0.0;        // RMS of the sheet fits
  std::vector<complex> upper;         // sampled sheets, one per radius
  std::vector<complex> lower;
};

struct ConeFit {
  ParamPoint center;
  complex omega0{};
  std::vector<double> radii;
  std::vector<RayFit> rays;
};

/// `count` unit directions at angles 2*pi*j/count.
std::vector<std::array<double, 2>> equally_spaced_rays(int count);

/// log-spaced radii in [r_min, r_max].
std::vector<double> log_radii(double r_min, double r_max, int count);

/// Per ray: exponent from a least-squares fit of log|w+ - w-| against log r,
/// and each sheet's real offset fitted as slope*r + curvature*r^2. Rays with
/// no measurable splitting are flagged as exceptional-line directions.
/// Throws InvalidArgument for fewer than 4 radii.
ConeFit fit_cone(const HamiltonianFamily& family, ParamPoint center, const BandSelection& sel,
                 const std::vector<std::array<double, 2>>& rays, const std::vector<double>& radii,
                 double line_tol = 1e-12);

enum class NodeType { point, line_or_surface };

struct RealityProbe {
  double max_abs_im = 0.0;
  bool locally_real = true;
  bool branch_cut_detected = false;
  NodeType node_type = NodeType::point;
};

/// Probe a disk of `radius` (angles x rings) around the point, tracking the
/// two sheets nearest omega0. A branch cut is reported when |Im| exceeds
/// reality_tol on a sector of at least two adjacent angles; the node is a line
/// or surface when the real parts of the sheets coincide away from the centre.
RealityProbe local_reality(const HamiltonianFamily& family, ParamPoint point, complex omega0,
                           const AnalysisConfig& cfg);

enum class Label { DiracPoint, DiracEP, ConventionalEP2, Unresolved };

std::string_view label_name(Label label);
std::string_view node_type_name(NodeType node);

struct DegeneracyReport {
  std::string family;
  std::array<std::string, 2> axes;
  ParamPoint location;
  complex omega0{};
  std::array<int, 2> bands{};
  double gap = 0.0;
  int algebraic_multiplicity = 0;
  int geometric_multiplicity = 0;
  double coalescence_overlap = 0.0;
  /// Null vector of H - omega0 when the eigenspace is one-dimensional.
  CVector eigenvector;
  RealityProbe reality;
  ConeFit cone;
  double exponent_min = 0.0;
  double exponent_max = 0.0;
  int line_rays = 0;
  Label label = Label::Unresolved;
  std::vector<std::string> notes;
};

/// Table-style record for one degeneracy. Throws PreconditionViolation when
/// the point is not degenerate.
DegeneracyReport classify_degeneracy(const HamiltonianFamily& family, ParamPoint point,
                                     const AnalysisConfig& cfg = {});

enum class PuiseuxModel { half_integer, integer };

std::string_view puiseux_model_name(PuiseuxModel model);

struct PuiseuxSheet {
  complex c_half{};
  complex c_one{};
  double residual = 0.0;
};

struct PuiseuxResult {
  PuiseuxModel model = PuiseuxModel::integer;
  std::array<double, 2> direction{};
  complex omega0{};
  /// Largest |coefficient| over the two sheets.
  double c_half = 0.0;
  double c_one = 0.0;
  std::array<PuiseuxSheet, 2> sheets;  // upper, lower
  std::vector<double> eps;
};

struct PuiseuxOptions {
  double eps_min = 1e-6;
  double eps_max = 1e-3;
  int samples = 16;
};

/// Fit each sheet's offset to c_half eps^(1/2) + c_one eps + c_3/2 eps^(3/2)
/// + c_2 eps^2 along `direction`. The half-integer model is reported when
/// c_half eps^(1/2) outweighs c_one eps at eps_max. Throws
/// PreconditionViolation unless the degeneracy has algebraic multiplicity 2.
PuiseuxResult puiseux_diagnostic(const HamiltonianFamily& family, ParamPoint point,
                                 std::array<double, 2> direction, const AnalysisConfig& cfg = {},
                                 const PuiseuxOptions& opts = {});

}  // namespace diracep
