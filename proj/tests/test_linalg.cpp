#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "diracep/errors.hpp"
#include "diracep/linalg.hpp"
#include "diracep/models.hpp"
#include "oracles.hpp"

using namespace diracep;

namespace {

CMatrix random_matrix(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  CMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = complex(d(rng), d(rng));
  }
  return a;
}

double brute_force_cost(std::span<const complex> prev, std::span<const complex> next,
                        std::vector<std::size_t>& best) {
  std::vector<std::size_t> p(prev.size());
  std::iota(p.begin(), p.end(), 0);
  double best_cost = INFINITY;
  do {
    double c = 0;
    for (std::size_t i = 0; i < p.size(); ++i) c += std::norm(prev[i] - next[p[i]]);
    if (c < best_cost) {
      best_cost = c;
      best = p;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return best_cost;
}

double cost(std::span<const complex> prev, std::span<const complex> next,
            const std::vector<std::size_t>& p) {
  double c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) c += std::norm(prev[i] - next[p[i]]);
  return c;
}

}  // namespace

TEST_CASE("numerical_rank") {
  CHECK(numerical_rank(CMatrix::Zero(3, 3), 1e-8) == 0);
  CMatrix a(2, 2);
  a << 0, 0, 1, 0;
  CHECK(numerical_rank(a, 1e-8) == 1);
  CHECK(numerical_rank(CMatrix::Identity(3, 3), 1e-8) == 3);
  // Relative cutoff: scaling the matrix does not change the rank.
  CMatrix b = CMatrix::Identity(3, 3);
  b(2, 2) = 1e-10;
  CHECK(numerical_rank(b, 1e-8) == 2);
  CHECK(numerical_rank(1e6 * b, 1e-8) == 2);
}

TEST_CASE("geometric_multiplicity") {
  CHECK(geometric_multiplicity(build_h3({1.0, 1.0, 0.0}), 1.0, 1e-8) == 1);
  CHECK(geometric_multiplicity(build_hb_prime({1.0, 1.0, 0.0}), 1.0, 1e-8) == 2);
  CHECK(geometric_multiplicity(CMatrix::Identity(2, 2), 1.0, 1e-8) == 2);
  CHECK_THROWS_AS(geometric_multiplicity(CMatrix::Identity(2, 2), 1.5, 1e-8), PreconditionViolation);
}

TEST_CASE("check_matrix rejects bad input") {
  CHECK_THROWS_AS(check_matrix(CMatrix(2, 3)), InvalidArgument);
  CHECK_THROWS_AS(check_matrix(CMatrix(0, 0)), InvalidArgument);
  CMatrix a = CMatrix::Identity(2, 2);
  a(1, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eig_dense(a), InvalidArgument);
  CHECK_THROWS_AS(numerical_rank(a, 1e-8), InvalidArgument);
}

TEST_CASE("eig_dense residuals and phase convention") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<Eigen::Index>(2 + trial % 9);
    const CMatrix a = random_matrix(rng, n);
    const Spectrum s = eig_dense(a);
    REQUIRE(s.size() == static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < s.size(); ++i) {
      const CVector& v = s.vectors[i];
      CHECK((a * v - s.values[i] * v).norm() <= 1e-10 * a.norm());
      CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-14));
      Eigen::Index first = 0;
      while (std::abs(v(first)) <= 1e-12) ++first;
      CHECK(v(first).imag() == 0.0);
      CHECK(v(first).real() > 0.0);
    }
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s.values[i - 1].real() <= s.values[i].real());
  }
}

TEST_CASE("eig_dense keeps triangular Jordan pairs exact") {
  CMatrix a(2, 2);
  a << 1, 0, 1, 1;
  const Spectrum s = eig_dense(a);
  CHECK(s.values[0] == complex(1.0, 0.0));
  CHECK(s.values[1] == complex(1.0, 0.0));
  CHECK(std::abs(s.vectors[0].dot(s.vectors[1])) > 0.999);
}

TEST_CASE("solve_cubic examples") {
  // w (1 - w)^2
  auto r = solve_cubic({1.0, -2.0, 1.0, 0.0});
  CHECK(std::abs(r[0]) <= 1e-14);
  CHECK(std::abs(r[1] - 1.0) <= 1e-7);
  CHECK(std::abs(r[2] - 1.0) <= 1e-7);

  r = solve_cubic({1.0, -1.0, 0.0, 0.0});
  CHECK(std::abs(r[0]) <= 1e-7);
  CHECK(std::abs(r[1]) <= 1e-7);
  CHECK(std::abs(r[2] - 1.0) <= 1e-14);

  r = solve_cubic({1.0, 0.0, 0.0, -1.0});
  const double h = std::sqrt(3.0) / 2.0;
  CHECK(std::abs(r[0] - complex(-0.5, -h)) <= 1e-14);
  CHECK(std::abs(r[1] - complex(-0.5, h)) <= 1e-14);
  CHECK(std::abs(r[2] - 1.0) <= 1e-14);
  CHECK(r[0] == std::conj(r[1]));

  CHECK_THROWS_AS(solve_cubic({0.0, 1.0, 1.0, 1.0}), InvalidArgument);
}

TEST_CASE("solve_cubic against an independent root finder") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    const CubicCoeffs c{u(rng), u(rng), u(rng), u(rng)};
    if (std::abs(c.c3) < 0.05) continue;
    const auto roots = solve_cubic(c);
    const auto ref = oracle::poly_roots({c.c3, c.c2, c.c1, c.c0});
    const double scale = c.max_abs();
    for (const complex& w : roots) {
      const double m = std::abs(w);
      CHECK(std::abs(c.evaluate(w)) <= 1e-12 * scale * (1.0 + m * m * m));
    }
    CHECK(oracle::multiset_distance({roots.begin(), roots.end()}, ref) <= 1e-9 * (1.0 + std::abs(ref[2])));
    // Conjugate pairs are exact.
    if (roots[0].imag() != 0.0) CHECK(roots[0] == std::conj(roots[1]));
  }
}

TEST_CASE("solve_cubic agrees with eig_dense on companion matrices") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const CubicCoeffs c{1.0, u(rng), u(rng), u(rng)};
    CMatrix comp = CMatrix::Zero(3, 3);
    comp(0, 0) = -c.c2;
    comp(0, 1) = -c.c1;
    comp(0, 2) = -c.c0;
    comp(1, 0) = 1.0;
    comp(2, 1) = 1.0;
    const auto roots = solve_cubic(c);
    CHECK(oracle::multiset_distance({roots.begin(), roots.end()}, eigenvalues(comp)) <= 1e-9);
  }
}

TEST_CASE("pair_continuation examples") {
  std::vector<complex> prev{0.0, 1.0}, next{1.01, 0.02};
  auto p = pair_continuation(prev, next);
  CHECK(p == std::vector<std::size_t>{1, 0});
  CHECK(apply_permutation(next, p) == std::vector<complex>{0.02, 1.01});

  prev = {complex(1, 1), complex(1, -1)};
  next = {complex(1, 1.1), complex(1, -1.1)};
  CHECK(pair_continuation(prev, next) == std::vector<std::size_t>{0, 1});

  // Conjugate pair collapsing onto a real degeneracy: both assignments cost
  // the same, so index order is kept.
  prev = {complex(1, 0.01), complex(1, -0.01)};
  next = {1.0, 1.0};
  CHECK(pair_continuation(prev, next) == std::vector<std::size_t>{0, 1});
  // Brute force over both assignments picks the cheaper one.
  next = {complex(1.0, -0.009), complex(1.0, 0.011)};
  std::vector<std::size_t> best;
  brute_force_cost(prev, next, best);
  CHECK(pair_continuation(prev, next) == best);

  CHECK_THROWS_AS(pair_continuation(std::vector<complex>{1.0}, std::vector<complex>{1.0, 2.0}),
                  InvalidArgument);
}

TEST_CASE("pair_continuation is optimal") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {3u, 5u, 8u, 9u}) {
    for (int trial = 0; trial < (n > 8 ? 3 : 40); ++trial) {
      std::vector<complex> prev(n), next(n);
      for (auto& v : prev) v = complex(u(rng), u(rng));
      for (auto& v : next) v = complex(u(rng), u(rng));
      std::vector<std::size_t> best;
      const double c = brute_force_cost(prev, next, best);
      const auto p = pair_continuation(prev, next);
      auto sorted = p;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < n; ++i) REQUIRE(sorted[i] == i);
      CHECK(cost(prev, next, p) == doctest::Approx(c).epsilon(1e-12));
    }
  }
}

TEST_CASE("null_vector and normalize_phase") {
  const CVector v = null_vector(build_h3({1.0, 1.0, 0.0}), 1.0);
  CHECK(std::abs(v(0)) <= 1e-12);
  CHECK(std::abs(v(1)) <= 1e-12);
  CHECK(std::abs(v(2) - 1.0) <= 1e-12);

  CVector w(3);
  w << complex(0, 0), complex(0, 2), complex(1, 1);
  normalize_phase(w);
  CHECK(w.norm() == doctest::Approx(1.0));
  CHECK(w(1).imag() == 0.0);
  CHECK(w(1).real() > 0.0);
}

TEST_CASE("degeneracy_tolerance scales with spectral radius") {
  std::vector<complex> small{0.1, 0.2}, big{100.0, -300.0};
  CHECK(degeneracy_tolerance(small) == doctest::Approx(1e-8));
  CHECK(degeneracy_tolerance(big) == doctest::Approx(3e-6));
}
