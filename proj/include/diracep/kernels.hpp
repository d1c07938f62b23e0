#pragma once

// Batched closed-form evaluators over parameter grids. Each kernel has a
// scalar reference and, on x86-64, an AVX2 variant chosen at runtime.

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "diracep/linalg.hpp"

namespace diracep::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// ISAs compiled in and supported by the running CPU, scalar first.
std::vector<Isa> available_isas();

/// Best available ISA. DIRACEP_ISA=scalar in the environment forces scalar.
Isa active_isa();

/// 1 + t^2 -/+ sqrt(t^4 + 4k^2) for each (tau[i], k[i]).
void linear_pair(std::span<const double> tau, std::span<const double> k, double v0,
                 std::span<double> lower, std::span<double> upper, Isa isa = active_isa());

/// Leading-order cone offsets t^2 +/- sqrt(t^4 + 4k^2) with t^2 = -(V0^2/2) dtau.
void leading_order_offsets(std::span<const double> k, std::span<const double> dtau, double v0,
                           std::span<double> plus, std::span<double> minus,
                           Isa isa = active_isa());

/// (-alpha +/- sqrt(4 + alpha^2)) k for each (alpha[i], k[i]).
void ray_offsets(std::span<const double> alpha, std::span<const double> k,
                 std::span<double> plus, std::span<double> minus, Isa isa = active_isa());

/// 1 - (V0^2/2) dtau -/+ 2|k| for each (dtau[i], k[i]).
void exceptional_line_pair(std::span<const double> dtau, std::span<const double> k, double v0,
                           std::span<double> lower, std::span<double> upper,
                           Isa isa = active_isa());

/// (m + k)^2 for m = -m_max..m_max, written in that order.
void folded_parabola(double k, int m_max, std::span<double> out, Isa isa = active_isa());

/// Cubic residual c(w) at each root, in complex arithmetic.
void cubic_residuals(const CubicCoeffs& c, std::span<const complex> roots,
                     std::span<complex> out, Isa isa = active_isa());

namespace scalar {
void linear_pair(const double* tau, const double* k, double v0, double* lower, double* upper,
                 std::size_t n);
void leading_order_offsets(const double* k, const double* dtau, double v0, double* plus,
                           double* minus, std::size_t n);
void ray_offsets(const double* alpha, const double* k, double* plus, double* minus,
                 std::size_t n);
void exceptional_line_pair(const double* dtau, const double* k, double v0, double* lower,
                           double* upper, std::size_t n);
void folded_parabola(double k, int m_max, double* out);
void cubic_residuals(const CubicCoeffs& c, const complex* roots, complex* out, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool supported();
void linear_pair(const double* tau, const double* k, double v0, double* lower, double* upper,
                 std::size_t n);
void leading_order_offsets(const double* k, const double* dtau, double v0, double* plus,
                           double* minus, std::size_t n);
void ray_offsets(const double* alpha, const double* k, double* plus, double* minus,
                 std::size_t n);
void exceptional_line_pair(const double* dtau, const double* k, double v0, double* lower,
                           double* upper, std::size_t n);
void folded_parabola(double k, int m_max, double* out);
void cubic_residuals(const CubicCoeffs& c, const complex* roots, complex* out, std::size_t n);
}  // namespace avx2

}  // namespace diracep::kernels
