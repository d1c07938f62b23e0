#include "diracep/kernels.hpp"
#include "diracep/kernels/formulas.hpp"

namespace diracep::kernels::scalar {

void linear_pair(const double* tau, const double* k, double v0, double* lower, double* upper,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) formulas::linear_pair(tau[i], k[i], v0, lower[i], upper[i]);
}

void leading_order_offsets(const double* k, const double* dtau, double v0, double* plus,
                           double* minus, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    formulas::leading_order_offsets(k[i], dtau[i], v0, plus[i], minus[i]);
  }
}

void ray_offsets(const double* alpha, const double* k, double* plus, double* minus,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) formulas::ray_offsets(alpha[i], k[i], plus[i], minus[i]);
}

void exceptional_line_pair(const double* dtau, const double* k, double v0, double* lower,
                           double* upper, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    formulas::exceptional_line_pair(dtau[i], k[i], v0, lower[i], upper[i]);
  }
}

void folded_parabola(double k, int m_max, double* out) {
  for (int m = -m_max; m <= m_max; ++m) out[m + m_max] = formulas::free_space(m, k);
}

void cubic_residuals(const CubicCoeffs& c, const complex* roots, complex* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double wr = roots[i].real();
    const double wi = roots[i].imag();
    double rr = c.c3;
    double ri = 0.0;
    for (double coef : {c.c2, c.c1, c.c0}) {
      const double nr = rr * wr - ri * wi + coef;
      const double ni = rr * wi + ri * wr;
      rr = nr;
      ri = ni;
    }
    out[i] = complex(rr, ri);
  }
}

}  // namespace diracep::kernels::scalar
