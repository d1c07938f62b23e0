#include "diracep/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "diracep/errors.hpp"
#include "diracep/kernels/formulas.hpp"

namespace diracep {

double ModelParams::t_squared() const { return formulas::t_squared(tau, v0); }

void validate(const ModelParams& p) {
  if (!std::isfinite(p.v0) || !std::isfinite(p.tau) || !std::isfinite(p.k)) {
    throw InvalidArgument("model parameters must be finite");
  }
  if (!(p.v0 > 0.0)) throw InvalidArgument("v0 must be positive");
  if (p.tau < 0.0) throw InvalidArgument("tau must be non-negative");
}

CMatrix build_h3(const ModelParams& p) {
  validate(p);
  const double tm = p.t_minus();
  const double tp = p.t_plus();
  CMatrix h = CMatrix::Zero(3, 3);
  h(0, 0) = 1.0 - 2.0 * p.k;
  h(0, 1) = tm;
  h(1, 0) = tp;
  h(1, 2) = tm;
  h(2, 1) = tp;
  h(2, 2) = 1.0 + 2.0 * p.k;
  return h;
}

CubicCoeffs char_poly_h3(const ModelParams& p) {
  validate(p);
  const double t2 = p.t_squared();
  return {1.0, -2.0, 1.0 - 4.0 * p.k * p.k - 2.0 * t2, 2.0 * t2};
}

BandOffsets h3_cone_exact(double k, double dtau, double v0) {
  BandOffsets out;
  formulas::leading_order_offsets(k, dtau, v0, out.plus, out.minus);
  return out;
}

BandOffsets h3_cone_ray(double alpha, double k) {
  BandOffsets out;
  formulas::ray_offsets(alpha, k, out.plus, out.minus);
  return out;
}

CMatrix build_ha_prime(const ModelParams& p) {
  validate(p);
  const double t2 = p.t_squared();
  const double tm = p.t_minus();
  const double tp = p.t_plus();
  CMatrix h(2, 2);
  h << 1.0 + t2 - 2.0 * p.k, tm * tm,
       tp * tp, 1.0 + t2 + 2.0 * p.k;
  return h;
}

CMatrix build_hb_prime(const ModelParams& p) {
  validate(p);
  const double t2 = p.t_squared();
  CMatrix h(2, 2);
  h << 1.0 + 2.0 * t2, -2.0 * p.k,
       -2.0 * p.k, 1.0;
  return h;
}

CMatrix build_ha_double_prime(const ModelParams& p) {
  validate(p);
  const double dtau = p.dtau();
  const double v0sq = p.v0 * p.v0;
  const double centre = 1.0 - (v0sq / 2.0) * dtau;
  CMatrix h(2, 2);
  h << centre - 2.0 * p.k, 0.0,
       v0sq * (1.0 + dtau), centre + 2.0 * p.k;
  return h;
}

NonlinearResult nonlinear_eig_ha(const ModelParams& p, Branch branch, complex init,
                                 const NonlinearOptions& opts) {
  validate(p);
  const double t2 = p.t_squared();
  const double t4 = t2 * t2;
  const double four_k2 = 4.0 * p.k * p.k;
  const double sign = branch == Branch::plus ? 1.0 : -1.0;
  const double lambda = opts.damping;

  complex w = init;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    if (std::abs(w) < opts.basin_floor || !std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      throw NumericalFailure("nonlinear_eig_ha: iteration left the basin at step " +
                             std::to_string(it));
    }
    const complex rhs = 1.0 + t2 / w + sign * std::sqrt(four_k2 + t4 / (w * w));
    const complex next = (1.0 - lambda) * w + lambda * rhs;
    const double step = std::abs(next - w);
    w = next;
    if (step < opts.tolerance) return {w, it, true, false};
  }
  throw NumericalFailure("nonlinear_eig_ha: no convergence in " +
                         std::to_string(opts.max_iterations) + " iterations");
}

NonlinearResult nonlinear_eig_ha_or_cubic(const ModelParams& p, Branch branch, complex init,
                                          const NonlinearOptions& opts) {
  try {
    return nonlinear_eig_ha(p, branch, init, opts);
  } catch (const NumericalFailure&) {
    // The two roots nearest omega0 = 1 carry the +/- branches; + is the upper one.
    auto roots = solve_cubic(char_poly_h3(p));
    std::sort(roots.begin(), roots.end(),
              [](complex a, complex b) { return std::abs(a - 1.0) < std::abs(b - 1.0); });
    complex lo = roots[0];
    complex hi = roots[1];
    if (hi.real() < lo.real()) std::swap(lo, hi);
    return {branch == Branch::plus ? hi : lo, 0, false, true};
  }
}

TwoBandResult two_band_generic(const PauliPerturbation& pert) {
  const complex dp = pert.delta_plus;
  const complex dm = pert.delta_minus;
  const complex d3 = pert.delta_3;
  for (complex z : {dp, dm, d3}) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidArgument("two_band_generic: perturbation amplitudes must be finite");
    }
  }
  TwoBandResult out;
  out.h.resize(2, 2);
  complex radicand;
  if (pert.hermitian_variant) {
    out.h << d3, 2.0 * dp,
             2.0 * dm, -d3;
    radicand = 4.0 * dm * dp + d3 * d3;
  } else {
    out.h << d3, 2.0 * (1.0 + dp),
             2.0 * dm, -d3;
    radicand = 4.0 * dm * (1.0 + dp) + d3 * d3;
  }
  out.omega_plus = std::sqrt(radicand);
  out.omega_minus = -out.omega_plus;
  return out;
}

CMatrix build_imag_cone(double k, double g) {
  if (!std::isfinite(k) || !std::isfinite(g)) {
    throw InvalidArgument("build_imag_cone: parameters must be finite");
  }
  const complex ik(0.0, k);
  CMatrix h(3, 3);
  h << ik, g, 1.0,
       g, 1.0, g,
       0.0, g, -ik;
  return h;
}

CubicCoeffs char_poly_imag_cone(double k, double g) {
  return {1.0, -1.0, k * k - 2.0 * g * g, -(k * k + g * g)};
}

CMatrix build_block_stack(const BlockStackSpec& spec, const ModelParams& p) {
  validate(p);
  if (spec.shifts.empty()) throw InvalidArgument("block stack needs at least one shift");
  for (std::size_t i = 0; i < spec.shifts.size(); ++i) {
    if (!std::isfinite(spec.shifts[i])) throw InvalidArgument("block shifts must be finite");
    if (i > 0 && !(spec.shifts[i] > spec.shifts[i - 1])) {
      throw InvalidArgument("block shifts must be strictly increasing");
    }
  }
  const auto m = static_cast<Eigen::Index>(spec.shifts.size());
  const CMatrix base = spec.kind == StackKind::A ? build_ha_prime(p) : build_hb_prime(p);
  // Both base blocks carry the identity offset 1 + t^2; swap 1 for the shift.
  CMatrix h = CMatrix::Zero(2 * m, 2 * m);
  for (Eigen::Index b = 0; b < m; ++b) {
    CMatrix block = base;
    block.diagonal().array() += spec.shifts[static_cast<std::size_t>(b)] - 1.0;
    h.block(2 * b, 2 * b, 2, 2) = block;
  }
  return h;
}

}  // namespace diracep
