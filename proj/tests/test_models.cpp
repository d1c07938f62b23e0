#include <doctest.h>

#include <cmath>
#include <random>

#include "diracep/errors.hpp"
#include "diracep/models.hpp"
#include "oracles.hpp"

using namespace diracep;

namespace {

std::vector<complex> eigs(const CMatrix& a) { return eigenvalues(a); }

// det(w I - A) by cofactor expansion, 3x3 only.
complex char_det3(const CMatrix& a, complex w) {
  const CMatrix m = w * CMatrix::Identity(3, 3) - a;
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

}  // namespace

TEST_CASE("ModelParams validation") {
  CHECK_THROWS_AS(validate(ModelParams{0.0, 1.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(validate(ModelParams{1.0, -0.1, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(validate(ModelParams{1.0, 1.0, NAN}), InvalidArgument);
  CHECK_NOTHROW(validate(ModelParams{1.0, 0.0, 0.3}));
  const ModelParams p{2.0, 0.5, 0.0};
  CHECK(p.t_minus() == 0.5);
  CHECK(p.t_plus() == 1.5);
  CHECK(p.t_squared() == doctest::Approx(0.75));
}

TEST_CASE("build_h3") {
  CMatrix expect(3, 3);
  expect << 1, 0, 0, 1, 0, 0, 0, 1, 1;
  CHECK(build_h3({1.0, 1.0, 0.0}) == expect);

  const CMatrix herm = build_h3({1.0, 0.0, 0.0});
  CHECK(herm == herm.transpose());
  CHECK(herm(0, 1) == 0.5);

  const auto w = eigs(build_h3({1.0, 1.0, 0.1}));
  CHECK(std::abs(w[0]) <= 1e-14);
  CHECK(std::abs(w[1] - 0.8) <= 1e-12);
  CHECK(std::abs(w[2] - 1.2) <= 1e-12);
}

TEST_CASE("char_poly_h3 matches the matrix") {
  auto roots = solve_cubic(char_poly_h3({1.0, 1.0, 0.0}));
  CHECK(std::abs(roots[0]) <= 1e-12);
  CHECK(std::abs(roots[1] - 1.0) <= 1e-7);
  CHECK(std::abs(roots[2] - 1.0) <= 1e-7);

  roots = solve_cubic(char_poly_h3({1.0, 1.0, 0.1}));
  CHECK(std::abs(roots[1] - 0.8) <= 1e-12);
  CHECK(std::abs(roots[2] - 1.2) <= 1e-12);

  // Frozen from a 40-digit polynomial root solve at V0=1, tau=1.02, k=0.01.
  roots = solve_cubic(char_poly_h3({1.0, 1.02, 0.01}));
  CHECK(std::abs(roots[0] - 0.020634197689625840562) <= 1e-14);
  CHECK(std::abs(roots[1] - 0.96699215185277486785) <= 1e-14);
  CHECK(std::abs(roots[2] - 1.0123736504575992916) <= 1e-14);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> v0(0.2, 3.0), tau(0.0, 2.0), k(-0.5, 0.5);
  for (int trial = 0; trial < 300; ++trial) {
    const ModelParams p{v0(rng), tau(rng), k(rng)};
    const auto r = solve_cubic(char_poly_h3(p));
    CHECK(oracle::multiset_distance({r.begin(), r.end()}, eigs(build_h3(p))) <= 1e-10);
  }
}

TEST_CASE("cone closed forms") {
  auto o = h3_cone_exact(0.1, 0.0, 1.0);
  CHECK(o.plus == doctest::Approx(0.2));
  CHECK(o.minus == doctest::Approx(-0.2));
  o = h3_cone_exact(0.0, 0.02, 1.0);
  CHECK(o.plus == doctest::Approx(0.0));
  CHECK(o.minus == doctest::Approx(-0.02));
  o = h3_cone_exact(0.004, 0.02, 1.0);
  CHECK(o.plus / 0.004 == doctest::Approx(-2.5 + std::sqrt(10.25)));
  CHECK(o.minus / 0.004 == doctest::Approx(-2.5 - std::sqrt(10.25)));

  o = h3_cone_ray(0.0, 0.01);
  CHECK(o.plus == doctest::Approx(0.02));
  CHECK(o.minus == doctest::Approx(-0.02));
  o = h3_cone_ray(2.5, 0.01);
  CHECK(o.plus == doctest::Approx(0.0070156211871642434324).epsilon(1e-14));
  CHECK(o.minus == doctest::Approx(-0.057015621187164243432).epsilon(1e-14));

  for (double alpha : {0.0, 1.0, 2.5, 5.0, -3.0}) {
    const double k = 1e-4;
    const auto ray = h3_cone_ray(alpha, k);
    const auto exact = h3_cone_exact(k, 2.0 * alpha * k, 1.0);
    CHECK(std::abs(ray.plus - exact.plus) <= 1e-15);
    CHECK(std::abs(ray.minus - exact.minus) <= 1e-15);
  }
}

TEST_CASE("build_ha_prime") {
  CMatrix jordan(2, 2);
  jordan << 1, 0, 1, 1;
  CHECK(build_ha_prime({1.0, 1.0, 0.0}) == jordan);
  CHECK(geometric_multiplicity(jordan, 1.0, 1e-8) == 1);

  auto w = eigs(build_ha_prime({1.0, 0.0, 0.0}));
  CHECK(w[0].real() == doctest::Approx(1.0));
  CHECK(w[1].real() == doctest::Approx(1.5));

  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const ModelParams p{1.0, 2.0 * i / 19.0, -0.5 + j / 19.0};
      const double t2 = p.t_squared();
      const double root = std::sqrt(4.0 * p.k * p.k + t2 * t2);
      const auto w2 = oracle::eig2(build_ha_prime(p));
      const auto got = eigs(build_ha_prime(p));
      CHECK(oracle::multiset_distance(got, {1.0 + t2 - root, 1.0 + t2 + root}) <= 1e-12);
      CHECK(oracle::multiset_distance(got, {w2[0], w2[1]}) <= 1e-12);
    }
  }
}

TEST_CASE("build_hb_prime") {
  CHECK(build_hb_prime({1.0, 1.0, 0.0}) == CMatrix::Identity(2, 2));
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.5;
  d(1, 1) = 1.0;
  CHECK(build_hb_prime({1.0, 0.0, 0.0}) == d);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> tau(0.0, 2.0), k(-0.5, 0.5);
  for (int trial = 0; trial < 200; ++trial) {
    const ModelParams p{1.0, tau(rng), k(rng)};
    const CMatrix h = build_hb_prime(p);
    CHECK(h == h.adjoint());
    CHECK(oracle::multiset_distance(eigs(h), eigs(build_ha_prime(p))) <= 1e-12);
  }
}

TEST_CASE("nonlinear_eig_ha") {
  auto r = nonlinear_eig_ha({1.0, 1.0, 0.1}, Branch::plus);
  CHECK(r.converged);
  CHECK(std::abs(r.omega - 1.2) <= 1e-10);
  r = nonlinear_eig_ha({1.0, 1.0, 0.1}, Branch::minus);
  CHECK(std::abs(r.omega - 0.8) <= 1e-10);
  r = nonlinear_eig_ha({1.0, 1.0, 0.0}, Branch::plus);
  CHECK(std::abs(r.omega - 1.0) <= 1e-10);
  r = nonlinear_eig_ha({1.0, 1.0, 0.0}, Branch::minus);
  CHECK(std::abs(r.omega - 1.0) <= 1e-10);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  int converged = 0, total = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const ModelParams p{1.0, 1.0 + u(rng), u(rng)};
    const auto roots = solve_cubic(char_poly_h3(p));
    for (Branch b : {Branch::plus, Branch::minus}) {
      ++total;
      const auto res = nonlinear_eig_ha_or_cubic(p, b);
      CHECK(oracle::nearest({roots.begin(), roots.end()}, res.omega) <= 1e-10);
      CHECK(res.converged != res.fell_back);
      if (res.converged) ++converged;
    }
  }
  CHECK(converged >= 0.95 * total);

  // Started in the wrong place the iteration leaves the basin.
  CHECK_THROWS_AS(nonlinear_eig_ha({1.0, 1.0, 0.01}, Branch::minus, 0.05), NumericalFailure);
  const auto fb = nonlinear_eig_ha_or_cubic({1.0, 1.0, 0.01}, Branch::minus, 0.05);
  CHECK(fb.fell_back);
  CHECK_FALSE(fb.converged);
  CHECK(std::abs(fb.omega - 0.98) <= 1e-10);
}

TEST_CASE("build_ha_double_prime") {
  const CMatrix h = build_ha_double_prime({1.0, 1.02, 0.0});
  const auto w = eigs(h);
  CHECK(std::abs(w[0] - 0.99) <= 1e-14);
  CHECK(std::abs(w[1] - 0.99) <= 1e-14);
  CHECK(geometric_multiplicity(h, w[0], 1e-8) == 1);

  const auto v = eigs(build_ha_double_prime({1.0, 1.0, 0.01}));
  CHECK(std::abs(v[0] - 0.98) <= 1e-14);
  CHECK(std::abs(v[1] - 1.02) <= 1e-14);

  // Degenerate only on k = 0.
  for (double k : {-0.01, -1e-4, 1e-4, 0.02}) {
    const auto s = eigs(build_ha_double_prime({1.0, 0.99, k}));
    CHECK(std::abs(s[1] - s[0]) == doctest::Approx(4.0 * std::abs(k)));
  }
}

TEST_CASE("two_band_generic") {
  const double dm = 0.01;
  auto r = two_band_generic({0.0, dm * dm, 0.01, false});
  CHECK(std::abs(r.omega_plus - std::sqrt(5.0) * 0.01) <= 1e-15);
  CHECK(std::abs(r.omega_minus + std::sqrt(5.0) * 0.01) <= 1e-15);

  r = two_band_generic({0.0, 0.01, 0.0, false});
  CHECK(std::abs(r.omega_plus - 0.2) <= 1e-15);
  CHECK(std::abs(r.omega_minus + 0.2) <= 1e-15);

  r = two_band_generic({0.01, 0.01, 0.01, true});
  CHECK(std::abs(r.omega_plus - std::sqrt(5e-4)) <= 1e-15);
  CHECK(r.h == r.h.adjoint());

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  for (int trial = 0; trial < 1000; ++trial) {
    auto c = [&] {
      complex z(u(rng), u(rng));
      return std::abs(z) > 0.1 ? z * (0.1 / std::abs(z)) : z;
    };
    const PauliPerturbation pert{c(), c(), c(), trial % 2 == 1};
    const auto res = two_band_generic(pert);
    const auto w = oracle::eig2(res.h);
    CHECK(oracle::multiset_distance({res.omega_plus, res.omega_minus}, {w[0], w[1]}) <= 1e-12);
    CHECK(oracle::multiset_distance({res.omega_plus, res.omega_minus}, eigs(res.h)) <= 1e-12);
  }
}

TEST_CASE("build_imag_cone") {
  const CMatrix h = build_imag_cone(0.0, 0.0);
  auto w = eigs(h);
  CHECK(std::abs(w[0]) <= 1e-14);
  CHECK(std::abs(w[1]) <= 1e-14);
  CHECK(std::abs(w[2] - 1.0) <= 1e-14);
  CHECK(geometric_multiplicity(h, 0.0, 1e-8) == 1);

  w = eigs(build_imag_cone(0.01, 0.0));
  CHECK(std::abs(std::abs(w[0].imag()) - 0.01) <= 1e-5);

  // Frozen from a 40-digit root solve of the cubic at (0.006, 0.008).
  w = eigs(build_imag_cone(0.006, 0.008));
  const complex frozen(-0.000095971983400235229186, -0.0099985798324193913219);
  CHECK(oracle::multiset_distance({w[0], w[1]}, {frozen, std::conj(frozen)}) <= 1e-13);
  CHECK(std::abs(w[2] - 1.0001919439668004705) <= 1e-13);
  CHECK(std::abs(std::abs(w[0].imag()) - 0.01) <= 0.05 * 0.01);

  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double k = u(rng), g = u(rng);
    const CMatrix m = build_imag_cone(k, g);
    const CubicCoeffs c = char_poly_imag_cone(k, g);
    for (complex z : {complex(0.3, 0.1), complex(-1.2, 0.0), complex(2.0, -0.7)}) {
      CHECK(std::abs(c.evaluate(z) - char_det3(m, z)) <= 1e-12);
    }
  }
}

TEST_CASE("build_block_stack") {
  const ModelParams p{1.0, 0.7, 0.13};
  CHECK(build_block_stack({{1.0}, StackKind::A}, p).isApprox(build_ha_prime(p), 1e-15));
  CHECK(build_block_stack({{1.0}, StackKind::B}, p).isApprox(build_hb_prime(p), 1e-15));

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> tau(0.0, 2.0), k(-0.5, 0.5);
  for (int trial = 0; trial < 100; ++trial) {
    const ModelParams q{1.0, tau(rng), k(rng)};
    CHECK(oracle::multiset_distance(eigs(build_block_stack({{1.0, 2.0}, StackKind::A}, q)),
                                    eigs(build_block_stack({{1.0, 2.0}, StackKind::B}, q))) <= 1e-12);
  }

  const CMatrix a = build_block_stack({{1.0, 2.0, 3.0}, StackKind::A}, {1.0, 1.0, 0.0});
  for (int m = 0; m < 3; ++m) {
    const CMatrix block = a.block(2 * m, 2 * m, 2, 2);
    CHECK(geometric_multiplicity(block, 1.0 + m, 1e-8) == 1);
    CHECK(geometric_multiplicity(a, 1.0 + m, 1e-8) == 1);
  }

  CHECK_THROWS_AS(build_block_stack({{}, StackKind::A}, p), InvalidArgument);
  CHECK_THROWS_AS(build_block_stack({{1.0, 1.0}, StackKind::A}, p), InvalidArgument);
  CHECK_THROWS_AS(build_block_stack({{2.0, 1.0}, StackKind::B}, p), InvalidArgument);
}
