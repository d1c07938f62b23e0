// AVX2 variants of the closed-form kernels. Operation order mirrors
// formulas.hpp exactly; tails fall through to the scalar reference.

#include <immintrin.h>

#include "diracep/kernels.hpp"

namespace diracep::kernels::avx2 {

namespace {

inline __m256d abs_pd(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

// v0*v0*(1 - tau*tau)/4
inline __m256d t_squared(__m256d tau, __m256d v0sq) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d quarter_div = _mm256_set1_pd(4.0);
  return _mm256_div_pd(_mm256_mul_pd(v0sq, _mm256_sub_pd(one, _mm256_mul_pd(tau, tau))),
                       quarter_div);
}

}  // namespace

bool supported() { return __builtin_cpu_supports("avx2"); }

void linear_pair(const double* tau, const double* k, double v0, double* lower, double* upper,
                 std::size_t n) {
  const __m256d v0sq = _mm256_set1_pd(v0 * v0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d four = _mm256_set1_pd(4.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t2 = t_squared(_mm256_loadu_pd(tau + i), v0sq);
    const __m256d kk = _mm256_loadu_pd(k + i);
    const __m256d root = _mm256_sqrt_pd(
        _mm256_add_pd(_mm256_mul_pd(t2, t2), _mm256_mul_pd(_mm256_mul_pd(four, kk), kk)));
    const __m256d centre = _mm256_add_pd(one, t2);
    _mm256_storeu_pd(lower + i, _mm256_sub_pd(centre, root));
    _mm256_storeu_pd(upper + i, _mm256_add_pd(centre, root));
  }
  scalar::linear_pair(tau + i, k + i, v0, lower + i, upper + i, n - i);
}

void leading_order_offsets(const double* k, const double* dtau, double v0, double* plus,
                           double* minus, std::size_t n) {
  const __m256d half_v0sq = _mm256_set1_pd(v0 * v0 / 2.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d kk = _mm256_loadu_pd(k + i);
    // -(v0*v0/2) * dtau
    const __m256d t2 = _mm256_mul_pd(_mm256_xor_pd(half_v0sq, sign), _mm256_loadu_pd(dtau + i));
    const __m256d root = _mm256_sqrt_pd(
        _mm256_add_pd(_mm256_mul_pd(t2, t2), _mm256_mul_pd(_mm256_mul_pd(four, kk), kk)));
    _mm256_storeu_pd(plus + i, _mm256_add_pd(t2, root));
    _mm256_storeu_pd(minus + i, _mm256_sub_pd(t2, root));
  }
  scalar::leading_order_offsets(k + i, dtau + i, v0, plus + i, minus + i, n - i);
}

void ray_offsets(const double* alpha, const double* k, double* plus, double* minus,
                 std::size_t n) {
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(alpha + i);
    const __m256d kk = _mm256_loadu_pd(k + i);
    const __m256d root = _mm256_sqrt_pd(_mm256_add_pd(four, _mm256_mul_pd(a, a)));
    _mm256_storeu_pd(plus + i, _mm256_mul_pd(_mm256_sub_pd(root, a), kk));
    _mm256_storeu_pd(minus + i, _mm256_mul_pd(_mm256_sub_pd(_mm256_xor_pd(a, sign), root), kk));
  }
  scalar::ray_offsets(alpha + i, k + i, plus + i, minus + i, n - i);
}

void exceptional_line_pair(const double* dtau, const double* k, double v0, double* lower,
                           double* upper, std::size_t n) {
  const __m256d half_v0sq = _mm256_set1_pd(v0 * v0 / 2.0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d centre = _mm256_sub_pd(one, _mm256_mul_pd(half_v0sq, _mm256_loadu_pd(dtau + i)));
    const __m256d split = _mm256_mul_pd(two, abs_pd(_mm256_loadu_pd(k + i)));
    _mm256_storeu_pd(lower + i, _mm256_sub_pd(centre, split));
    _mm256_storeu_pd(upper + i, _mm256_add_pd(centre, split));
  }
  scalar::exceptional_line_pair(dtau + i, k + i, v0, lower + i, upper + i, n - i);
}

void folded_parabola(double k, int m_max, double* out) {
  const std::size_t n = static_cast<std::size_t>(2 * m_max + 1);
  const __m256d kk = _mm256_set1_pd(k);
  const __m256d step = _mm256_set1_pd(4.0);
  __m256d m = _mm256_setr_pd(-m_max, -m_max + 1, -m_max + 2, -m_max + 3);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d q = _mm256_add_pd(m, kk);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(q, q));
    m = _mm256_add_pd(m, step);
  }
  for (; i < n; ++i) {
    const double q = static_cast<double>(static_cast<int>(i) - m_max) + k;
    out[i] = q * q;
  }
}

void cubic_residuals(const CubicCoeffs& c, const complex* roots, complex* out, std::size_t n) {
  const double* raw = reinterpret_cast<const double*>(roots);
  double* dst = reinterpret_cast<double*>(out);
  const double coefs[3] = {c.c2, c.c1, c.c0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(raw + 2 * i);      // r0 i0 r1 i1
    const __m256d b = _mm256_loadu_pd(raw + 2 * i + 4);  // r2 i2 r3 i3
    const __m256d wr = _mm256_unpacklo_pd(a, b);         // r0 r2 r1 r3
    const __m256d wi = _mm256_unpackhi_pd(a, b);         // i0 i2 i1 i3
    __m256d rr = _mm256_set1_pd(c.c3);
    __m256d ri = _mm256_setzero_pd();
    for (double coef : coefs) {
      const __m256d nr = _mm256_add_pd(
          _mm256_sub_pd(_mm256_mul_pd(rr, wr), _mm256_mul_pd(ri, wi)), _mm256_set1_pd(coef));
      const __m256d ni = _mm256_add_pd(_mm256_mul_pd(rr, wi), _mm256_mul_pd(ri, wr));
      rr = nr;
      ri = ni;
    }
    _mm256_storeu_pd(dst + 2 * i, _mm256_unpacklo_pd(rr, ri));
    _mm256_storeu_pd(dst + 2 * i + 4, _mm256_unpackhi_pd(rr, ri));
  }
  scalar::cubic_residuals(c, roots + i, out + i, n - i);
}

}  // namespace diracep::kernels::avx2
