#include "pluri/subharm.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "pluri/catalog.hpp"
#include "pluri/rng.hpp"

using namespace pluri;

namespace {

CPoint pt(Complex a, Complex b) { return CPoint{a, b}; }

TEST(CircleMean, QuadraticSlackIsExactlyRadiusSquared) {
  // mean of |t|^2 over the circle of radius r is |t0|^2 + r^2: the uniform
  // rule integrates degree-1 trigonometric polynomials exactly at >= 8 nodes
  for (int nodes : {8, 16, 256}) {
    const auto reports =
        circle_mean_test([](Complex t) { return std::norm(t); }, Complex{0, 0}, {1.0, 0.5}, nodes);
    EXPECT_NEAR(reports[0].slack, 1.0, 1e-14);
    EXPECT_NEAR(reports[1].slack, 0.25, 1e-14);
  }
}

TEST(CircleMean, HarmonicFunctionHasZeroSlack) {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const Complex t0{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const double r = 0.1 + rng.uniform01();
    const auto reports = circle_mean_test([](Complex t) { return t.real(); }, t0, {r}, 64);
    EXPECT_NEAR(reports[0].slack, 0.0, 1e-12);
  }
}

TEST(CircleMean, SuperharmonicCounterexampleFails) {
  const auto reports =
      circle_mean_test([](Complex t) { return -std::norm(t); }, Complex{0, 0}, {1.0}, 64);
  EXPECT_NEAR(reports[0].slack, -1.0, 1e-14);
}

TEST(CircleMean, PoleAtCenterIsVacuous) {
  const auto reports =
      circle_mean_test([](Complex t) { return std::log(std::abs(t)); }, Complex{0, 0}, {0.5}, 32);
  EXPECT_TRUE(std::isinf(reports[0].slack));
  EXPECT_GT(reports[0].slack, 0.0);
}

TEST(CircleMean, PoleOnNodeIsAnError) {
  // log|t - 0.5| is -inf at the first node of the radius-0.5 circle
  EXPECT_THROW(
      circle_mean_test([](Complex t) { return std::log(std::abs(t - Complex{0.5, 0.0})); }, Complex{0, 0},
                       {0.5}, 32),
      Error);
}

TEST(LaplacianGrid, HarmonicAndConvexPass) {
  const GridSpec grid{Complex{0, 0}, 1.0, 21};
  // log|t - 2| is harmonic on the square; the stencil carries its own
  // discretization bias h^2/12 (f_xxxx + f_yyyy) ~ 0.01, so the tolerance
  // must absorb it
  const PshReport harmonic =
      laplacian_grid_test([](Complex t) { return std::log(std::abs(t - Complex{2.0, 0.0})); }, grid, 0.02);
  EXPECT_TRUE(harmonic.pass);
  EXPECT_GT(harmonic.min_slack, -0.02);
  // |t|^4 has Laplacian 16 |t|^2 >= 0
  const PshReport quartic =
      laplacian_grid_test([](Complex t) { return std::norm(t) * std::norm(t); }, grid, 1e-7);
  EXPECT_TRUE(quartic.pass);
  EXPECT_GE(quartic.min_slack, 0.0);
}

TEST(LaplacianGrid, NegLogOnePlusAbsSqFails) {
  // Laplacian of -log(1+|t|^2) is -4/(1+|t|^2)^2 < 0; at 0 it is -4
  const GridSpec grid{Complex{0, 0}, 1.0, 41};
  const PshReport rep =
      laplacian_grid_test([](Complex t) { return -std::log1p(std::norm(t)); }, grid, 1e-7);
  EXPECT_FALSE(rep.pass);
  EXPECT_NEAR(rep.min_slack, -4.0, 0.05);
  EXPECT_NEAR(std::abs(rep.witness.t), 0.0, 0.08);  // worst case at the origin
}

// Refining the mesh by 2 divides the stencil error of a smooth quartic by 4
// (within 10%).
TEST(LaplacianGrid, RefinementQuartersTheError) {
  auto f = [](Complex t) { return std::pow(t.real(), 4.0); };  // Laplacian 12 x^2
  auto worst_err = [&](int mesh) {
    const GridSpec grid{Complex{0.5, 0.3}, 0.4, mesh};
    double worst = 0.0;
    const double h = grid.spacing();
    for (int i = 1; i + 1 < mesh; ++i)
      for (int j = 1; j + 1 < mesh; ++j) {
        const Complex t = grid.node(i, j);
        const double stencil = (f(grid.node(i - 1, j)) + f(grid.node(i + 1, j)) + f(grid.node(i, j - 1)) +
                                f(grid.node(i, j + 1)) - 4.0 * f(t)) /
                               (h * h);
        worst = std::max(worst, std::abs(stencil - 12.0 * t.real() * t.real()));
      }
    return worst;
  };
  const double coarse = worst_err(11);
  const double fine = worst_err(21);  // spacing halves
  EXPECT_NEAR(coarse / fine, 4.0, 0.4);
}

TEST(PshLineTest, LogNormPasses) {
  auto F = [](const CPoint& X, Complex) { return std::log(euclid_norm(X)); };
  const std::vector<std::pair<CPoint, Complex>> bases{{pt({1.0, 0.0}, {0.2, 0.0}), Complex{0, 0}},
                                                      {pt({0.3, 0.1}, {-0.7, 0.2}), Complex{0.1, 0.1}}};
  const PshReport rep =
      psh_line_test(F, bases, make_line_directions(2, 16, 7), {0.05, 0.1}, 128, 1e-7);
  EXPECT_TRUE(rep.pass);
}

// The Hartogs-family pseudometric passes on 50 lines through 10 bases.
TEST(PshLineTest, HartogsMetricPasses) {
  const SubharmonicExpr phi = abs_sq_plus_const(-1.0);
  auto F = [&](const CPoint& X, Complex t) { return azukawa_hartogs(phi, t, X); };
  Rng rng(13);
  std::vector<std::pair<CPoint, Complex>> bases;
  for (int i = 0; i < 10; ++i)
    bases.emplace_back(rng.gaussian_point(2), Complex{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)});
  const PshReport rep =
      psh_line_test(F, bases, make_line_directions(2, 50, 17), {0.05, 0.1}, 256, 1e-7);
  EXPECT_TRUE(rep.pass);
  EXPECT_GE(rep.min_slack, -1e-8);
}

TEST(PshLineTest, HarmonicTiltPassesAbsoluteTiltFails) {
  auto psh = [](const CPoint& X, Complex t) { return -t.real() + std::log(euclid_norm(X)); };
  auto not_psh = [](const CPoint& X, Complex t) { return -std::abs(t) + std::log(euclid_norm(X)); };
  const std::vector<std::pair<CPoint, Complex>> bases{{pt({1.0, 0.0}, {0.0, 0.0}), Complex{0, 0}}};
  const std::vector<LineDirection> dirs = make_line_directions(2, 8, 3);  // includes the pure-t axis
  EXPECT_TRUE(psh_line_test(psh, bases, dirs, {0.1}, 128, 1e-7).pass);
  const PshReport bad = psh_line_test(not_psh, bases, dirs, {0.1}, 128, 1e-7);
  EXPECT_FALSE(bad.pass);
  // witness: the pure-t line through t = 0, where -|t| has slack -r
  EXPECT_NEAR(bad.min_slack, -0.1, 1e-9);
  EXPECT_EQ(bad.witness.direction_tau, (Complex{1.0, 0.0}));
}

TEST(DirectionalDistance, GaugeExamples) {
  const ParamDisc disc{Complex{0, 0}, 0.6};
  const CPoint origin = zero_point(2);
  // MaxAbs fiber: distance 1 along the first axis
  const DomainFamily poly =
      DomainFamily::balanced_scaled(MinkowskiGauge::max_abs(2), SubharmonicExpr::constant(0.0), disc);
  EXPECT_NEAR(directional_distance(poly, Complex{0, 0}, origin, 1), 1.0, 1e-9);
  // Ellipsoid (2, 1): gauge hits 1 at z_1 = 2
  const DomainFamily ell =
      DomainFamily::balanced_scaled(MinkowskiGauge::ellipsoid({2.0, 1.0}), SubharmonicExpr::constant(0.0), disc);
  EXPECT_NEAR(directional_distance(ell, Complex{0, 0}, origin, 1), 2.0, 2e-9);
  EXPECT_NEAR(directional_distance(ell, Complex{0, 0}, origin, 2), 1.0, 1e-9);
  // scaled family with phi = -1: membership e^{-1} s < 1, distance e
  const DomainFamily scaled_family =
      DomainFamily::balanced_scaled(MinkowskiGauge::max_abs(2), SubharmonicExpr::constant(-1.0), disc);
  EXPECT_NEAR(directional_distance(scaled_family, Complex{0, 0}, origin, 1), std::exp(1.0), 3e-9);
}

TEST(DirectionalDistance, MatchesInverseGaugeOffAxisToo) {
  const DomainFamily f = catalog::geomean_pair();
  Rng rng(19);
  for (int i = 0; i < 10; ++i) {
    const Complex t{rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4)};
    const double d = directional_distance(f, t, zero_point(2), 1);
    EXPECT_NEAR(d * f.fiber_gauge(t)(unit_axis(2, 0)), 1.0, 1e-9);
  }
}

TEST(DirectionalDistance, HartogsFiberDistanceIsRadius) {
  const DomainFamily f = catalog::hartogs();
  const Complex t{0.2, 0.1};
  EXPECT_NEAR(directional_distance(f, t, zero_point(2), 1), std::exp(-f.weight(t)), 1e-8);
}

TEST(DirectionalDistance, Errors) {
  const DomainFamily f = catalog::scaled_polydisc();
  EXPECT_THROW(directional_distance(f, Complex{0, 0}, pt({5.0, 0.0}, {0.0, 0.0}), 1), Error);  // outside
  EXPECT_THROW(directional_distance(f, Complex{0, 0}, zero_point(2), 3), Error);               // bad axis
}

// The five balanced families pass the line test; the counterexample fails.
TEST(BalancedFamilies, LineTestPassesAndCounterexampleFails) {
  for (const auto& [name, family] : catalog::balanced_five()) {
    auto F = [&family = family](const CPoint& X, Complex t) { return std::log(family.fiber_gauge(t)(X)); };
    Rng rng(29);
    std::vector<std::pair<CPoint, Complex>> bases;
    for (int i = 0; i < 4; ++i)
      bases.emplace_back(rng.gaussian_point(2),
                         family.param_disc().center +
                             Complex{rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2)});
    const PshReport rep =
        psh_line_test(F, bases, make_line_directions(2, 16, 31), {0.05, 0.1}, 256, 1e-7);
    EXPECT_TRUE(rep.pass) << name << " min slack " << rep.min_slack;
  }

  const DomainFamily bad = catalog::superharmonic_counterexample();
  auto F = [&](const CPoint& X, Complex t) { return std::log(bad.fiber_gauge(t)(X)); };
  const std::vector<std::pair<CPoint, Complex>> bases{{pt({1.0, 0.0}, {0.5, 0.0}), Complex{0, 0}}};
  const PshReport rep = psh_line_test(F, bases, make_line_directions(2, 8, 31), {0.1}, 256, 1e-7);
  EXPECT_FALSE(rep.pass);
  EXPECT_LT(rep.min_slack, -1e-3);  // slack -r^2 on the pure-t line
}

// t -> -log dist passes the grid test on all five families (Case 2 route).
TEST(BalancedFamilies, DirectionalDistanceGridTest) {
  for (const auto& [name, family] : catalog::balanced_five()) {
    GridSpec grid;
    grid.center = family.param_disc().center;
    grid.halfwidth = family.param_disc().radius / std::sqrt(2.0) * 0.99;
    grid.mesh = 9;
    const auto& fam = family;
    const PshReport rep = laplacian_grid_test(
        [&fam](Complex t) { return -std::log(directional_distance(fam, t, zero_point(2), 1)); }, grid,
        1e-7);
    EXPECT_TRUE(rep.pass) << name << " min stencil " << rep.min_slack;
  }
}

TEST(VolumeSubharmonicity, FixedBallIsConstantWithZeroSlack) {
  const GridSpec grid{Complex{0, 0}, 0.4, 7};
  const VolumeSubharmonicityResult res =
      volume_subharmonicity_test(catalog::fixed_ball(), grid, SphericalGrid::hopf(16, 8, 8), 1e-7);
  EXPECT_TRUE(res.report.pass);
  EXPECT_DOUBLE_EQ(res.report.min_slack, 0.0);
}

TEST(VolumeSubharmonicity, HartogsPassesAndMatchesClosedForm) {
  const GridSpec grid{Complex{0, 0}, 0.42, 9};
  const VolumeSubharmonicityResult res =
      volume_subharmonicity_test(catalog::hartogs(), grid, SphericalGrid::hopf(32, 12, 12), 1e-7);
  EXPECT_TRUE(res.report.pass);
  ASSERT_TRUE(res.closed_form_max_rel_gap.has_value());
  EXPECT_LT(*res.closed_form_max_rel_gap, 0.005);
  EXPECT_EQ(res.table.size(), 81u);
}

TEST(VolumeSubharmonicity, ScaledFamilyPassesAndCounterexampleFails) {
  const GridSpec grid{Complex{0, 0}, 0.4, 9};
  const SphericalGrid sphere = SphericalGrid::hopf(16, 8, 8);
  // -log V(t) = 4 phi(t) + const: subharmonic iff phi is
  EXPECT_TRUE(volume_subharmonicity_test(catalog::scaled_ellipsoid(), grid, sphere, 1e-7).report.pass);
  const VolumeSubharmonicityResult bad =
      volume_subharmonicity_test(catalog::superharmonic_counterexample(), grid, sphere, 1e-7);
  EXPECT_FALSE(bad.report.pass);
  EXPECT_NEAR(bad.report.min_slack, -16.0, 0.1);  // Laplacian of -4|t|^2
}

}  // namespace
