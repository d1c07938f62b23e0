#pragma once

// Closed-form band formulas shared by the scalar API and the batch kernels.
// The AVX2 kernels evaluate exactly the same operation sequence, so results
// agree bit-for-bit with these (no FMA contraction anywhere).

#include <cmath>

namespace diracep::formulas {

/// t^2 = t_- t_+ = V0^2 (1 - tau^2) / 4, evaluated exactly.
inline double t_squared(double tau, double v0) {
  return v0 * v0 * (1.0 - tau * tau) / 4.0;
}

/// Eigenvalue pair of the linearised two-band models: 1 + t^2 -/+ sqrt(t^4 + 4k^2).
inline void linear_pair(double tau, double k, double v0, double& lower, double& upper) {
  const double t2 = t_squared(tau, v0);
  const double root = std::sqrt(t2 * t2 + 4.0 * k * k);
  const double centre = 1.0 + t2;
  lower = centre - root;
  upper = centre + root;
}

/// Leading-order offsets from omega0 = 1 near the Dirac EP, with
/// t^2 ~ -(V0^2/2) dtau: t^2 +/- sqrt(t^4 + 4k^2).
inline void leading_order_offsets(double k, double dtau, double v0, double& plus, double& minus) {
  const double t2 = -(v0 * v0 / 2.0) * dtau;
  const double root = std::sqrt(t2 * t2 + 4.0 * k * k);
  plus = t2 + root;
  minus = t2 - root;
}

/// Offsets along the ray dtau = (2 alpha / V0^2) k: (-alpha +/- sqrt(4 + alpha^2)) k.
inline void ray_offsets(double alpha, double k, double& plus, double& minus) {
  const double root = std::sqrt(4.0 + alpha * alpha);
  plus = (root - alpha) * k;
  minus = (-alpha - root) * k;
}

/// Sheets of the exceptional-line model: 1 - (V0^2/2) dtau -/+ 2k.
inline void exceptional_line_pair(double dtau, double k, double v0, double& lower, double& upper) {
  const double centre = 1.0 - (v0 * v0 / 2.0) * dtau;
  const double split = 2.0 * std::abs(k);
  lower = centre - split;
  upper = centre + split;
}

/// Free-space energy of plane wave m at momentum k.
inline double free_space(double m, double k) {
  const double q = m + k;
  return q * q;
}

}  // namespace diracep::formulas
