#pragma once

#include <vector>

#include "diracep/linalg.hpp"

namespace diracep {

/// Parameters shared by the three-band model, its two-band reductions and the
/// Bloch crystal. Couplings are t_+/- = V0 (1 +/- tau) / 2.
struct ModelParams {
  double v0 = 1.0;
  double tau = 1.0;
  double k = 0.0;

  double t_minus() const { return v0 * (1.0 - tau) / 2.0; }
  double t_plus() const { return v0 * (1.0 + tau) / 2.0; }
  /// t^2 = t_- t_+ = V0^2 (1 - tau^2) / 4.
  double t_squared() const;
  /// Distance from the Dirac EP along tau: dtau = tau - 1.
  double dtau() const { return tau - 1.0; }
};

/// Throws InvalidArgument unless v0 > 0, tau >= 0 and all fields are finite.
void validate(const ModelParams& p);

/// Amplitudes of a two-band perturbation in the raising/lowering/sigma_3 basis.
struct PauliPerturbation {
  complex delta_plus{};
  complex delta_minus{};
  complex delta_3{};
  bool hermitian_variant = false;
};

enum class StackKind { A, B };

/// Block-diagonal stack of linearised two-band blocks at increasing energies.
struct BlockStackSpec {
  std::vector<double> shifts;
  StackKind kind = StackKind::A;
};

struct BandOffsets {
  double plus = 0.0;
  double minus = 0.0;
};

/// Three-band model [[1-2k, t-, 0], [t+, 0, t-], [0, t+, 1+2k]].
CMatrix build_h3(const ModelParams& p);

/// Expanded characteristic cubic of build_h3:
/// w^3 - 2w^2 + (1 - 4k^2 - 2t^2) w + 2t^2 = 0.
CubicCoeffs char_poly_h3(const ModelParams& p);

/// Leading-order band offsets from omega0 = 1: t^2 +/- sqrt(t^4 + 4k^2) with
/// t^2 replaced by its linearisation -(V0^2/2) dtau.
BandOffsets h3_cone_exact(double k, double dtau, double v0);

/// Offsets along the ray dtau = (2 alpha / V0^2) k.
BandOffsets h3_cone_ray(double alpha, double k);

/// (1 + t^2) I + [[-2k, t-^2], [t+^2, 2k]]. Jordan block at tau = 1, k = 0.
CMatrix build_ha_prime(const ModelParams& p);

/// [[1 + 2t^2, -2k], [-2k, 1]]. Real symmetric; identity at tau = 1, k = 0.
CMatrix build_hb_prime(const ModelParams& p);

/// Linearised two-band model with the dtau^2 block removed:
/// (1 - (V0^2/2) dtau) I + [[-2k, 0], [V0^2 (1 + dtau), 2k]].
/// Its sheets 1 - (V0^2/2) dtau -/+ 2k meet on the whole line k = 0.
CMatrix build_ha_double_prime(const ModelParams& p);

enum class Branch { plus, minus };

struct NonlinearOptions {
  double damping = 0.5;
  double tolerance = 1e-12;
  int max_iterations = 1000;
  /// Iteration is abandoned once |omega| drops below this.
  double basin_floor = 0.1;
};

struct NonlinearResult {
  complex omega{};
  int iterations = 0;
  bool converged = false;
  /// True when the fixed-point iteration failed and the value came from the
  /// cubic instead.
  bool fell_back = false;
};

/// Self-consistent eigenvalue of the energy-dependent two-band reduction,
/// omega = (1 + t^2/omega) +/- sqrt(4k^2 + t^4/omega^2), by damped fixed-point
/// iteration. The branch sign is held fixed for the whole run. Throws
/// NumericalFailure when the iteration leaves the basin or does not converge.
NonlinearResult nonlinear_eig_ha(const ModelParams& p, Branch branch, complex init = 1.0,
                                 const NonlinearOptions& opts = {});

/// As nonlinear_eig_ha, but on failure returns the root of char_poly_h3
/// nearest the branch's leading-order estimate, flagged with fell_back = true.
NonlinearResult nonlinear_eig_ha_or_cubic(const ModelParams& p, Branch branch,
                                          complex init = 1.0,
                                          const NonlinearOptions& opts = {});

struct TwoBandResult {
  CMatrix h;
  complex omega_plus{};
  complex omega_minus{};
};

/// Generic two-band perturbation of a Jordan block. With sigma_+/- = sigma_1
/// +/- i sigma_2 the matrix is H0 + dH = [[D3, 2(1 + D+)], [2 D-, -D3]] and
/// omega = +/- sqrt(4 D- (1 + D+) + D3^2). The Hermitian variant drops H0:
/// [[D3, 2 D+], [2 D-, -D3]], omega = +/- sqrt(4 D- D+ + D3^2).
TwoBandResult two_band_generic(const PauliPerturbation& pert);

/// [[ik, g, 1], [g, 1, g], [0, g, -ik]], characteristic polynomial
/// w^3 - w^2 + (k^2 - 2g^2) w - (k^2 + g^2).
CMatrix build_imag_cone(double k, double g);

/// Characteristic cubic of build_imag_cone.
CubicCoeffs char_poly_imag_cone(double k, double g);

/// Block-diagonal stack; block m is build_ha_prime (A) or build_hb_prime (B)
/// with its identity offset 1 + t^2 replaced by shifts[m] + t^2.
CMatrix build_block_stack(const BlockStackSpec& spec, const ModelParams& p);

}  // namespace diracep
