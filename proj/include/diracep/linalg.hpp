#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace diracep {

using complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class Ordering { by_real_part, by_continuity, unsorted };

/// Eigenvalues and unit-norm right eigenvectors of one matrix evaluation.
///
/// Every eigenvector has Euclidean norm 1 and its first non-negligible entry
/// is real and positive, so repeated runs produce identical output.
struct Spectrum {
  std::vector<complex> values;
  std::vector<CVector> vectors;
  Ordering ordering = Ordering::by_real_part;

  std::size_t size() const { return values.size(); }
};

/// Coefficients of c3*w^3 + c2*w^2 + c1*w + c0.
struct CubicCoeffs {
  double c3 = 1.0;
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  double max_abs() const;
  complex evaluate(complex w) const;
};

/// Throws InvalidArgument unless the matrix is square, non-empty and finite.
void check_matrix(const CMatrix& a);

/// Dense eigendecomposition (LAPACK zgeev with permutation + scaling balance).
///
/// Balancing isolates the diagonal of triangular inputs exactly, which keeps
/// eigenvalues of Jordan-type matrices exact instead of split by sqrt(eps).
/// For a numerically defective cluster the returned eigenvectors are nearly
/// parallel.
Spectrum eig_dense(const CMatrix& a, Ordering order = Ordering::by_real_part);

/// Eigenvalues only; same backend and ordering rules as eig_dense.
std::vector<complex> eigenvalues(const CMatrix& a, Ordering order = Ordering::by_real_part);

/// Number of singular values above tol * (largest singular value).
int numerical_rank(const CMatrix& a, double tol);

/// Default clustering tolerance for a spectrum: 1e-8 * max(1, spectral radius).
double degeneracy_tolerance(std::span<const complex> values, double relative = 1e-8);

/// n - rank(A - omega*I). Throws PreconditionViolation when omega is not an
/// eigenvalue of A within the clustering tolerance.
int geometric_multiplicity(const CMatrix& a, complex omega, double tol);

/// Unit vector spanning the (numerical) null space direction of A - omega*I,
/// taken from the smallest right singular vector. Phase convention as in
/// Spectrum.
CVector null_vector(const CMatrix& a, complex omega);

/// Roots of a real cubic. Three real roots or one real root plus an exactly
/// conjugate pair, sorted by (real, imag).
std::array<complex, 3> solve_cubic(const CubicCoeffs& c);

/// Assignment of next-step eigenvalues to previous-step bands: result[i] is
/// the index into `next` that continues band i. Minimises the total squared
/// distance; exhaustive for n <= 8 (ties keep index order), Hungarian above.
std::vector<std::size_t> pair_continuation(std::span<const complex> prev,
                                           std::span<const complex> next);

/// Apply a permutation from pair_continuation.
std::vector<complex> apply_permutation(std::span<const complex> values,
                                       std::span<const std::size_t> perm);

/// Sort complex values by real part, then imaginary part.
void sort_lexicographic(std::vector<complex>& values);

/// Rotate v so its first entry with modulus above 1e-12 is real positive,
/// after normalising to unit length.
void normalize_phase(CVector& v);

}  // namespace diracep
