#include "diracep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "diracep/errors.hpp"

namespace diracep {

namespace {

bool lex_less(const complex& a, const complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

std::vector<std::size_t> lex_order(std::span<const complex> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return lex_less(values[a], values[b]); });
  return idx;
}

// Raw zgeev call. `vectors` is filled only when requested.
std::vector<complex> run_zgeev(const CMatrix& a, CMatrix* vectors) {
  check_matrix(a);
  const auto n = static_cast<lapack_int>(a.rows());
  CMatrix work = a;  // zgeev overwrites its input; Eigen storage is column-major
  std::vector<complex> w(static_cast<std::size_t>(n));
  lapack_int info = 0;
  if (vectors != nullptr) {
    vectors->resize(n, n);
    info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, work.data(), n, w.data(), nullptr, 1,
                         vectors->data(), n);
  } else {
    info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, w.data(), nullptr, 1,
                         nullptr, 1);
  }
  if (info > 0) {
    throw NumericalFailure("zgeev failed to converge (info=" + std::to_string(info) + ")");
  }
  if (info < 0) {
    throw InvalidArgument("zgeev rejected argument " + std::to_string(-info));
  }
  return w;
}

}  // namespace

double CubicCoeffs::max_abs() const {
  return std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
}

complex CubicCoeffs::evaluate(complex w) const { return ((c3 * w + c2) * w + c1) * w + c0; }

void check_matrix(const CMatrix& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw InvalidArgument("matrix must be square and non-empty, got " + std::to_string(a.rows()) +
                          "x" + std::to_string(a.cols()));
  }
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const complex z = a(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidArgument("matrix has a non-finite entry at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      }
    }
  }
}

void normalize_phase(CVector& v) {
  const double norm = v.norm();
  if (norm == 0.0) return;
  v /= norm;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-12) {
      v *= std::conj(v(i)) / mag;
      v(i) = complex(mag, 0.0);
      return;
    }
  }
}

void sort_lexicographic(std::vector<complex>& values) {
  std::stable_sort(values.begin(), values.end(), lex_less);
}

Spectrum eig_dense(const CMatrix& a, Ordering order) {
  CMatrix vr;
  std::vector<complex> w = run_zgeev(a, &vr);
  const auto n = static_cast<std::size_t>(a.rows());

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (order == Ordering::by_real_part) idx = lex_order(w);

  Spectrum s;
  s.ordering = order == Ordering::by_real_part ? Ordering::by_real_part : Ordering::unsorted;
  s.values.reserve(n);
  s.vectors.reserve(n);
  const double a_norm = a.norm();
  for (std::size_t i : idx) {
    CVector v = vr.col(static_cast<Eigen::Index>(i));
    normalize_phase(v);
    const double residual = (a * v - w[i] * v).norm();
    if (residual > 1e-10 * a_norm) {
      throw NumericalFailure("eigenpair residual " + std::to_string(residual) +
                             " exceeds 1e-10*||A||_F");
    }
    s.values.push_back(w[i]);
    s.vectors.push_back(std::move(v));
  }
  return s;
}

std::vector<complex> eigenvalues(const CMatrix& a, Ordering order) {
  std::vector<complex> w = run_zgeev(a, nullptr);
  if (order == Ordering::by_real_part) sort_lexicographic(w);
  return w;
}

int numerical_rank(const CMatrix& a, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("numerical_rank: tol must be positive");
  check_matrix(a);
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = tol * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++rank;
  }
  return rank;
}

double degeneracy_tolerance(std::span<const complex> values, double relative) {
  double radius = 0.0;
  for (const complex& z : values) radius = std::max(radius, std::abs(z));
  return relative * std::max(1.0, radius);
}

int geometric_multiplicity(const CMatrix& a, complex omega, double tol) {
  check_matrix(a);
  const auto n = a.rows();
  const CMatrix shifted = a - omega * CMatrix::Identity(n, n);

  const std::vector<complex> w = eigenvalues(a, Ordering::unsorted);
  double nearest = std::numeric_limits<double>::infinity();
  for (const complex& z : w) nearest = std::min(nearest, std::abs(z - omega));
  if (nearest > degeneracy_tolerance(w)) {
    // The eigenvalue of a defective cluster can sit sqrt(eps) away from the
    // exact value; accept omega if A - omega*I is numerically singular.
    Eigen::JacobiSVD<CMatrix> svd(shifted);
    const auto& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) <= tol * std::max(sv(0), 1.0))) {
      throw PreconditionViolation("geometric_multiplicity: omega is not an eigenvalue");
    }
  }
  return static_cast<int>(n) - numerical_rank(shifted, tol);
}

CVector null_vector(const CMatrix& a, complex omega) {
  check_matrix(a);
  const auto n = a.rows();
  Eigen::JacobiSVD<CMatrix> svd(a - omega * CMatrix::Identity(n, n), Eigen::ComputeFullV);
  CVector v = svd.matrixV().col(n - 1);
  normalize_phase(v);
  return v;
}

std::array<complex, 3> solve_cubic(const CubicCoeffs& c) {
  if (c.c3 == 0.0 || !std::isfinite(c.c3)) {
    throw InvalidArgument("solve_cubic: leading coefficient must be non-zero");
  }
  if (!std::isfinite(c.c2) || !std::isfinite(c.c1) || !std::isfinite(c.c0)) {
    throw InvalidArgument("solve_cubic: coefficients must be finite");
  }
  const double a = c.c2 / c.c3;
  const double b = c.c1 / c.c3;
  const double d = c.c0 / c.c3;

  // Depressed cubic y^3 + p*y + q = 0 with w = y - a/3.
  const double shift = a / 3.0;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d;
  const double half_q = q / 2.0;
  const double third_p = p / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;

  double real_roots[3];
  int n_real = 0;
  complex pair{};

  if (disc < 0.0) {
    // Three distinct real roots (p < 0 here).
    const double m = 2.0 * std::sqrt(-third_p);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int j = 0; j < 3; ++j) {
      real_roots[j] = m * std::cos(theta - 2.0 * std::numbers::pi * j / 3.0) - shift;
    }
    n_real = 3;
  } else {
    // One real root plus a conjugate pair; sign choice avoids cancellation.
    const double s = std::sqrt(disc);
    const double mag = std::cbrt(std::abs(half_q) + s);
    const double u = half_q > 0.0 ? -mag : mag;
    const double v = u != 0.0 ? -third_p / u : 0.0;
    real_roots[0] = u + v - shift;
    n_real = 1;
    pair = complex(-(u + v) / 2.0 - shift, std::sqrt(3.0) / 2.0 * std::abs(u - v));
    if (pair.imag() == 0.0) {
      real_roots[1] = pair.real();
      real_roots[2] = pair.real();
      n_real = 3;
    }
  }

  // Newton polish on the original coefficients; a step is kept only if it
  // lowers the residual, so near-multiple roots are left alone.
  auto polish = [&](complex w) {
    for (int it = 0; it < 4; ++it) {
      const complex f = c.evaluate(w);
      const complex df = (3.0 * c.c3 * w + 2.0 * c.c2) * w + c.c1;
      if (df == 0.0) break;
      const complex next = w - f / df;
      if (!(std::abs(c.evaluate(next)) < std::abs(f))) break;
      w = next;
    }
    return w;
  };

  std::array<complex, 3> roots;
  if (n_real == 3) {
    for (int j = 0; j < 3; ++j) roots[j] = complex(polish(complex(real_roots[j])).real(), 0.0);
  } else {
    roots[0] = complex(polish(complex(real_roots[0])).real(), 0.0);
    complex upper = polish(pair);
    if (upper.imag() < 0.0) upper = std::conj(upper);
    roots[1] = std::conj(upper);
    roots[2] = upper;
  }
  std::stable_sort(roots.begin(), roots.end(), lex_less);
  return roots;
}

namespace {

// Hungarian algorithm (shortest augmenting path), cost[i][j] for row i -> col j.
std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assignment(n);
  for (std::size_t j = 1; j <= n; ++j) assignment[p[j] - 1] = j - 1;
  return assignment;
}

}  // namespace

std::vector<std::size_t> pair_continuation(std::span<const complex> prev,
                                           std::span<const complex> next) {
  if (prev.size() != next.size()) {
    throw InvalidArgument("pair_continuation: length mismatch (" + std::to_string(prev.size()) +
                          " vs " + std::to_string(next.size()) + ")");
  }
  const std::size_t n = prev.size();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[i][j] = std::norm(prev[i] - next[j]);
  }
  if (n > 8) return hungarian(cost);

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::size_t> best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  // Permutations are visited in lexicographic order starting at the identity;
  // a later permutation must be strictly cheaper (beyond rounding) to win.
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += cost[i][perm[i]];
    if (total < best_cost - 1e-14 * (1.0 + best_cost) || best_cost == std::numeric_limits<double>::infinity()) {
      best_cost = total;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<complex> apply_permutation(std::span<const complex> values,
                                       std::span<const std::size_t> perm) {
  std::vector<complex> out(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out[i] = values[perm[i]];
  return out;
}

}  // namespace diracep
