#pragma once

#include <string>
#include <utility>
#include <vector>

#include "diracep/family.hpp"
#include "diracep/linalg.hpp"

namespace diracep {

/// Truncated plane-wave basis m = -M..M of the PT-symmetric crystal with
/// potential V0 (cos x + i tau sin x).
struct BlochSpec {
  double v0 = 1.0;
  double tau = 1.0;
  int trunc_m = 8;

  Eigen::Index size() const { return 2 * trunc_m + 1; }
};

/// Throws InvalidArgument unless v0 > 0, tau >= 0 and trunc_m >= 2.
void validate(const BlochSpec& spec);

/// Tridiagonal Bloch Hamiltonian: (m+k)^2 on the diagonal, t_- on the
/// superdiagonal (row m, column m+1) and t_+ on the subdiagonal.
CMatrix build_bloch(const BlochSpec& spec, double k);

/// Band energies over a one- or two-axis grid.
///
/// Points are stored grid-major (first axis outer): point = i * ny + j. Bands
/// are ordered by continuity: ascending real part at the first point, then
/// pair_continuation along each row, with each row seeded from the first
/// point of the previous row.
struct SweepResult {
  std::string model;
  Axis first;
  Axis second;
  std::size_t n_bands = 0;
  std::vector<std::vector<complex>> bands;  // [band][point]
  /// Points where two bands are closer than 10x the degeneracy tolerance;
  /// continuity ordering there is not meaningful.
  std::vector<char> near_degenerate;

  std::size_t point_count() const { return first.values.size() * second.values.size(); }
};

struct SweepOptions {
  unsigned threads = 1;
  double degeneracy_relative_tol = 1e-8;
};

/// Evaluate every grid point (concurrently when threads > 1), then order bands.
SweepResult sweep_family(const HamiltonianFamily& family, const Axis& first, const Axis& second,
                         const SweepOptions& opts = {});

/// All 2M+1 Bloch bands along k at fixed tau. k_grid must be monotonic and
/// inside the first Brillouin zone [-1/2, 1/2].
SweepResult band_structure(const BlochSpec& spec, const std::vector<double>& k_grid,
                           const SweepOptions& opts = {});

/// Bloch bands over the hybrid (tau, k) plane; spec.tau is ignored.
SweepResult hybrid_sweep(const BlochSpec& spec, const std::vector<double>& tau_grid,
                         const std::vector<double>& k_grid, const SweepOptions& opts = {});

}  // namespace diracep
