#include <doctest.h>

#include <cmath>

#include "diracep/bloch.hpp"
#include "diracep/ep_analysis.hpp"
#include "diracep/errors.hpp"
#include "diracep/models.hpp"

using namespace diracep;

namespace {

HamiltonianFamily constant_family(CMatrix m) {
  HamiltonianFamily f;
  f.id = "constant";
  f.axes = {"x", "y"};
  f.dimension = m.rows();
  f.evaluate = [m](double x, double y) {
    CMatrix a = m;
    a(0, 0) += x;
    a(1, 1) += y;
    return a;
  };
  return f;
}

AnalysisConfig near(complex w) {
  AnalysisConfig c;
  c.bands = BandSelection::nearest(w);
  return c;
}

}  // namespace

TEST_CASE("select_pair") {
  const auto h3 = make_family("h3");
  auto p = select_pair(h3, {1.0, 0.0}, BandSelection::lowest());
  CHECK(p.omega0 == complex(1.0, 0.0));
  CHECK(p.indices == std::array<std::size_t, 2>{1, 2});
  p = select_pair(h3, {1.0, 0.0}, BandSelection::bands(3, 2));
  CHECK(p.indices == std::array<std::size_t, 2>{1, 2});
  CHECK_THROWS_AS(select_pair(h3, {1.0, 0.0}, BandSelection::bands(1, 2)), PreconditionViolation);
  CHECK_THROWS_AS(select_pair(h3, {1.0, 0.0}, BandSelection::bands(1, 4)), InvalidArgument);
  CHECK_THROWS_AS(select_pair(h3, {0.5, 0.1}, BandSelection::lowest()), PreconditionViolation);

  const auto stack = make_family("stack-a");
  p = select_pair(stack, {1.0, 0.0}, BandSelection::nearest(2.1));
  CHECK(p.omega0 == complex(2.0, 0.0));
  p = select_pair(stack, {1.0, 0.0}, BandSelection::lowest());
  CHECK(p.omega0 == complex(1.0, 0.0));
}

TEST_CASE("classify: the three canonical cases") {
  const auto h3 = classify_degeneracy(make_family("h3"), {1.0, 0.0});
  CHECK(h3.label == Label::DiracEP);
  CHECK(h3.algebraic_multiplicity == 2);
  CHECK(h3.geometric_multiplicity == 1);
  CHECK(h3.coalescence_overlap > 0.999);
  CHECK(h3.reality.locally_real);
  CHECK(h3.reality.max_abs_im <= 1e-10);
  CHECK_FALSE(h3.reality.branch_cut_detected);
  CHECK(h3.exponent_min >= 0.95);
  CHECK(h3.exponent_max <= 1.05);
  CHECK(h3.notes.empty());

  const auto hb = classify_degeneracy(make_family("hbprime"), {1.0, 0.0});
  CHECK(hb.label == Label::DiracPoint);
  CHECK(hb.geometric_multiplicity == 2);
  CHECK(hb.coalescence_overlap < 0.999);
  CHECK(hb.reality.max_abs_im == 0.0);
  CHECK(hb.eigenvector.size() == 0);

  const auto edge = classify_degeneracy(make_family("bloch"), {1.0, 0.5});
  CHECK(edge.label == Label::ConventionalEP2);
  CHECK(edge.omega0 == complex(0.25, 0.0));
  CHECK(edge.geometric_multiplicity == 1);
  CHECK(edge.reality.branch_cut_detected);
  CHECK_FALSE(edge.reality.locally_real);
  CHECK(edge.exponent_min <= 0.55);
}

TEST_CASE("coalescence overlap agrees with the rank on every shipped model") {
  struct Case {
    const char* id;
    ParamPoint at;
    complex w;
  };
  const Case cases[] = {{"h3", {1, 0}, 1.0},          {"haprime", {1, 0}, 1.0},
                        {"hbprime", {1, 0}, 1.0},     {"haddprime", {1, 0}, 1.0},
                        {"haddprime", {1.02, 0}, 0.99}, {"bloch", {1, 0}, 1.0},
                        {"bloch", {1, 0.5}, 0.25},     {"stack-a", {1, 0}, 3.0},
                        {"stack-b", {1, 0}, 2.0},      {"imagcone", {0, 0}, 0.0},
                        {"twoband-first", {0, 0}, 0.0}, {"twoband-second", {0, 0}, 0.0},
                        {"twoband-herm", {0, 0}, 0.0}};
  for (const auto& c : cases) {
    CAPTURE(c.id);
    const auto rep = classify_degeneracy(make_family(c.id), c.at, near(c.w));
    CHECK(rep.geometric_multiplicity <= rep.algebraic_multiplicity);
    CHECK((rep.geometric_multiplicity == 1) == (rep.coalescence_overlap > 0.999));
  }
}

TEST_CASE("classify: other families") {
  CHECK(classify_degeneracy(make_family("haprime"), {1, 0}).label == Label::DiracEP);
  CHECK(classify_degeneracy(make_family("twoband-second"), {0, 0}).label == Label::DiracEP);
  CHECK(classify_degeneracy(make_family("twoband-herm"), {0, 0}).label == Label::DiracPoint);
  CHECK(classify_degeneracy(make_family("twoband-first"), {0, 0}).label == Label::ConventionalEP2);
  CHECK(classify_degeneracy(make_family("bloch"), {1, 0}, near(1.0)).label == Label::DiracEP);

  const auto line = classify_degeneracy(make_family("haddprime"), {1, 0});
  CHECK(line.line_rays == 2);
  CHECK(line.reality.node_type == NodeType::line_or_surface);

  // A tangential crossing between two stack blocks is degenerate but not a cone.
  const auto touch = classify_degeneracy(make_family("stack-b"), {1, 0.25}, near(1.5));
  CHECK(touch.geometric_multiplicity == 2);
  CHECK(touch.label == Label::Unresolved);
  CHECK_FALSE(touch.notes.empty());

  // Three-fold degeneracies fall outside the two-fold taxonomy.
  const auto triple = classify_degeneracy(constant_family(CMatrix::Identity(3, 3)), {0, 0});
  CHECK(triple.algebraic_multiplicity == 3);
  CHECK(triple.label == Label::Unresolved);

  CHECK_THROWS_AS(classify_degeneracy(make_family("h3"), {0.7, 0.1}), PreconditionViolation);
}

TEST_CASE("find_degeneracies") {
  const auto h3 = make_family("h3");
  const Axis tau{"tau", linspace(0.5, 1.5, 41)};
  const Axis k{"k", linspace(-0.2, 0.2, 41)};
  FindOptions only23;
  only23.band_pair = std::array<int, 2>{2, 3};
  auto c = find_degeneracies(h3, tau, k, 1e-4, only23);
  REQUIRE(c.size() == 1);
  CHECK(c[0].location == ParamPoint{1.0, 0.0});
  CHECK(c[0].omega0 == complex(1.0, 0.0));

  // Without the filter the search also finds the exceptional curve where
  // bands 1 and 2 merge; the 2,3 contact is still the only one involving band 3.
  c = find_degeneracies(h3, tau, k, 1e-4);
  int with3 = 0;
  for (const auto& d : c) {
    if (d.bands[1] == 3) {
      ++with3;
      CHECK(d.location == ParamPoint{1.0, 0.0});
    } else {
      CHECK(d.bands == std::array<int, 2>{1, 2});
    }
  }
  CHECK(with3 == 1);

  const auto bloch = make_family("bloch");
  c = find_degeneracies(bloch, Axis{"tau", {1.0}}, Axis{"k", linspace(-0.5, 0.5, 101)}, 1e-6);
  bool centre = false, left = false, right = false;
  for (const auto& d : c) {
    CHECK((d.location.y == 0.0 || std::abs(d.location.y) == 0.5));
    centre |= d.location.y == 0.0 && d.omega0 == complex(1.0, 0.0);
    left |= d.location.y == -0.5 && d.omega0 == complex(0.25, 0.0);
    right |= d.location.y == 0.5 && d.omega0 == complex(0.25, 0.0);
  }
  CHECK(centre);
  CHECK(left);
  CHECK(right);

  c = find_degeneracies(make_family("hbprime"), tau, k, 1e-6);
  REQUIRE(c.size() == 1);
  CHECK(c[0].location == ParamPoint{1.0, 0.0});

  // Off-grid degeneracies are refined to the resolution.
  c = find_degeneracies(make_family("hbprime"), Axis{"tau", linspace(0.55, 1.35, 9)},
                        Axis{"k", linspace(-0.23, 0.17, 9)}, 1e-6);
  REQUIRE(c.size() == 1);
  CHECK(std::abs(c[0].location.x - 1.0) <= 1e-8);
  CHECK(std::abs(c[0].location.y) <= 1e-8);

  CHECK(find_degeneracies(make_family("hbprime"), Axis{"tau", linspace(0.2, 0.4, 5)}, k, 1e-6).empty());
}

TEST_CASE("fit_cone") {
  const auto h3 = make_family("h3");
  const auto radii = log_radii(1e-5, 1e-3, 8);
  auto fit = fit_cone(h3, {1, 0}, BandSelection::lowest(), {{0.0, 1.0}}, radii);
  REQUIRE(fit.rays.size() == 1);
  CHECK(fit.rays[0].slope_upper == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(fit.rays[0].slope_lower == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(std::abs(fit.rays[0].exponent - 1.0) <= 1e-9);
  CHECK(std::abs(fit.rays[0].tilt) <= 1e-9);

  // dtau = 5k, direction (5, 1): slopes per unit k are -2.5 +/- sqrt(10.25).
  fit = fit_cone(h3, {1, 0}, BandSelection::lowest(), {{5.0, 1.0}}, radii);
  const double uk = 1.0 / std::sqrt(26.0);
  CHECK(fit.rays[0].slope_upper / uk == doctest::Approx(-2.5 + std::sqrt(10.25)).epsilon(1e-3));
  CHECK(fit.rays[0].slope_lower / uk == doctest::Approx(-2.5 - std::sqrt(10.25)).epsilon(1e-3));
  CHECK(fit.rays[0].tilt / uk == doctest::Approx(-2.5).epsilon(1e-3));
  CHECK(fit.rays[0].exponent == doctest::Approx(1.0).epsilon(1e-2));

  fit = fit_cone(make_family("haddprime"), {1, 0}, BandSelection::lowest(), {{1.0, 0.0}, {0.0, 1.0}},
                 radii);
  CHECK(fit.rays[0].exceptional_line);
  CHECK(std::isnan(fit.rays[0].exponent));
  CHECK_FALSE(fit.rays[1].exceptional_line);

  CHECK_THROWS_AS(fit_cone(h3, {1, 0}, BandSelection::lowest(), {{1.0, 0.0}}, {1e-4, 1e-3, 1e-2}),
                  InvalidArgument);
  CHECK_THROWS_AS(fit_cone(h3, {1, 0}, BandSelection::lowest(), {{0.0, 0.0}}, radii), InvalidArgument);
}

TEST_CASE("zone-edge exponent matches a direct eigensolve") {
  // Brute force: splitting of the two eigenvalues nearest 0.25 at two radii
  // along dtau > 0, then the log-log slope between them.
  auto split = [](double r) {
    auto w = eigenvalues(build_bloch({1.0, 1.0 + r, 8}, 0.5));
    std::sort(w.begin(), w.end(), [](complex a, complex b) { return std::abs(a - 0.25) < std::abs(b - 0.25); });
    return std::abs(w[0] - w[1]);
  };
  const double brute = std::log(split(1e-3) / split(1e-5)) / std::log(100.0);
  CHECK(brute == doctest::Approx(0.5).epsilon(0.02));

  const auto fit = fit_cone(make_family("bloch"), {1, 0.5}, BandSelection::lowest(), {{1.0, 0.0}},
                            log_radii(1e-5, 1e-3, 12));
  CHECK(fit.rays[0].exponent >= 0.45);
  CHECK(fit.rays[0].exponent <= 0.55);
  CHECK(fit.rays[0].exponent == doctest::Approx(brute).epsilon(0.02));
}

TEST_CASE("local_reality") {
  AnalysisConfig cfg;
  auto probe = local_reality(make_family("h3"), {1, 0}, 1.0, cfg);
  CHECK(probe.max_abs_im <= 1e-10);
  CHECK(probe.locally_real);

  probe = local_reality(make_family("imagcone"), {0, 0}, 0.0, cfg);
  CHECK_FALSE(probe.locally_real);
  CHECK(probe.max_abs_im == doctest::Approx(0.02).epsilon(0.05));
  CHECK(probe.node_type == NodeType::line_or_surface);

  probe = local_reality(make_family("hbprime"), {0.7, 0.2}, 1.0, cfg);
  CHECK(probe.max_abs_im == 0.0);

  AnalysisConfig bad = cfg;
  bad.probe_angles = 1;
  CHECK_THROWS_AS(local_reality(make_family("h3"), {1, 0}, 1.0, bad), InvalidArgument);
}

TEST_CASE("tracked_pair orders the sheets") {
  const auto up = tracked_pair(build_h3({1.0, 1.0, 0.01}), 1.0);
  CHECK(std::abs(up[0] - 1.02) <= 1e-12);
  CHECK(std::abs(up[1] - 0.98) <= 1e-12);
  const auto ic = tracked_pair(build_imag_cone(0.01, 0.0), 0.0);
  CHECK(ic[0].imag() > 0.0);
  CHECK(ic[1].imag() < 0.0);
}

TEST_CASE("puiseux_diagnostic") {
  const auto h3 = make_family("h3");
  for (const auto& dir : equally_spaced_rays(8)) {
    const auto r = puiseux_diagnostic(h3, {1, 0}, dir);
    CHECK(r.model == PuiseuxModel::integer);
    CHECK(r.c_half <= 1e-3 * r.c_one);
  }
  auto r = puiseux_diagnostic(make_family("bloch"), {1, 0.5}, {1.0, 0.0});
  CHECK(r.model == PuiseuxModel::half_integer);
  r = puiseux_diagnostic(make_family("twoband-first"), {0, 0}, {1.0, 0.0});
  CHECK(r.model == PuiseuxModel::half_integer);
  CHECK(r.c_half == doctest::Approx(2.0).epsilon(1e-3));

  CHECK_THROWS_AS(puiseux_diagnostic(constant_family(CMatrix::Identity(3, 3)), {0, 0}, {1.0, 0.0}),
                  PreconditionViolation);
  CHECK_THROWS_AS(puiseux_diagnostic(h3, {1, 0}, {0.0, 0.0}), InvalidArgument);
}

TEST_CASE("radii and rays") {
  const auto rays = equally_spaced_rays(4);
  CHECK(rays[1] == std::array<double, 2>{0.0, 1.0});
  CHECK(rays[2] == std::array<double, 2>{-1.0, 0.0});
  const auto r = log_radii(1e-5, 0.02, 12);
  CHECK(r.front() == 1e-5);
  CHECK(r.back() == 0.02);
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] / r[i - 1] == doctest::Approx(r[1] / r[0]));
  CHECK_THROWS_AS(log_radii(0.0, 1.0, 5), InvalidArgument);
  CHECK(label_name(Label::ConventionalEP2) == "ConventionalEP2");
}
