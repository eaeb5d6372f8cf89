#include "pluri/extension.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "pluri/rng.hpp"

using namespace pluri;

namespace {

CPoint pt(Complex a, Complex b) { return CPoint{a, b}; }
const double kPi = 3.14159265358979323846;

TEST(BergmanKernel, CenterValues) {
  EXPECT_NEAR(bergman_kernel_ball(1.0, zero_point(2), zero_point(2)).real(), 2.0 / (kPi * kPi), 1e-15);
  EXPECT_NEAR(bergman_kernel_ball(1.0, CPoint{Complex{0, 0}}, CPoint{Complex{0, 0}}).real(), 1.0 / kPi,
              1e-15);
}

TEST(BergmanKernel, HandEvaluatedDiagonal) {
  const CPoint w = pt({0.5, 0.0}, {0.0, 0.0});
  EXPECT_NEAR(bergman_kernel_ball(1.0, w, w).real(), 128.0 / (27.0 * kPi * kPi), 1e-14);
}

TEST(BergmanKernel, RadiusScaling) {
  // K_R(z, w) = R^{-2n} K_1(z/R, w/R)
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    const double R = 0.5 + 2.0 * rng.uniform01();
    const CPoint z = scaled(rng.ball_point(2), Complex{0.9 * R, 0.0});
    const CPoint w = scaled(rng.ball_point(2), Complex{0.7 * R, 0.0});
    const Complex lhs = bergman_kernel_ball(R, z, w);
    const Complex rhs = std::pow(R, -4.0) * bergman_kernel_ball(1.0, scaled(z, Complex{1.0 / R, 0.0}),
                                                                scaled(w, Complex{1.0 / R, 0.0}));
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12 * std::abs(lhs));
  }
}

TEST(BergmanKernel, BoundaryPointsRejected) {
  EXPECT_THROW(bergman_kernel_ball(1.0, pt({1.0, 0.0}, {0.0, 0.0}), zero_point(2)), Error);
  EXPECT_THROW(bergman_kernel_ball(1.0, zero_point(2), pt({0.0, 0.0}, {1.0, 0.0})), Error);
}

// Reproducing property: Int_B |K(., w)|^2 = K(w, w), by Monte Carlo.
TEST(BergmanKernel, ReproducingProperty) {
  McConfig mc;
  mc.samples = 400'000;
  const CPoint w = pt({0.4, 0.1}, {-0.2, 0.0});
  const double kww = bergman_kernel_ball(1.0, w, w).real();
  const double ball_vol = unit_ball_volume(2);
  const MeanAccumulator acc = run_chunked_mc(mc, [&](Rng& rng, long long n, MeanAccumulator& a) {
    for (long long i = 0; i < n; ++i) {
      const double k = std::abs(bergman_kernel_ball(1.0, rng.ball_point(2), w));
      a.add(k * k);
    }
  });
  EXPECT_NEAR(ball_vol * acc.mean(), kww, 3.0 * ball_vol * acc.std_error());
}

TEST(MinimalExtensionNorm, AnalyticValues) {
  EXPECT_NEAR(minimal_extension_norm_analytic(1.0, zero_point(2)), kPi * kPi / 2.0, 1e-12);
  EXPECT_NEAR(minimal_extension_norm_analytic(1.0, pt({0.5, 0.0}, {0.0, 0.0})), 27.0 * kPi * kPi / 128.0,
              1e-12);
  EXPECT_NEAR(minimal_extension_norm_analytic(1.0, CPoint{Complex{0, 0}}), kPi, 1e-12);
}

TEST(MinimalExtensionNorm, McAgreesWithAnalytic) {
  McConfig mc;
  mc.samples = 400'000;
  for (double r : {0.0, 0.5}) {
    const CPoint w = pt({r, 0.0}, {0.0, 0.0});
    const VolumeEstimate v = minimal_extension_norm_mc(1.0, w, mc);
    EXPECT_NEAR(v.value, minimal_extension_norm_analytic(1.0, w), 3.0 * v.error) << "r = " << r;
  }
}

TEST(Theorem53Check, BallInstances) {
  const SphericalGrid sphere = SphericalGrid::hopf(64, 32, 32);
  McConfig mc;
  mc.samples = 300'000;
  const double sigma2 = unit_ball_volume(2);

  // r = 0: all three agree at sigma_2
  const ExtensionCheckResult center = theorem53_check(1.0, zero_point(2), sphere, mc);
  EXPECT_NEAR(center.minimal_norm, sigma2, 1e-12);
  EXPECT_NEAR(center.indicatrix_volume, sigma2, 1e-6);
  EXPECT_NEAR(center.robin_bound, sigma2, 1e-6);

  // r = 0.5: (27 pi^2/128, 27 pi^2/128, 9 pi^2/32)
  const ExtensionCheckResult half = theorem53_check(1.0, pt({0.5, 0.0}, {0.0, 0.0}), sphere, mc);
  EXPECT_NEAR(half.minimal_norm, 27.0 * kPi * kPi / 128.0, 1e-12);
  EXPECT_NEAR(half.indicatrix_volume, 27.0 * kPi * kPi / 128.0, 1e-6);
  EXPECT_NEAR(half.robin_bound, 9.0 * kPi * kPi / 32.0, 1e-8);
  EXPECT_LT(half.indicatrix_volume, half.robin_bound);
  EXPECT_GT(half.ratio_volume_to_robin, 0.0);

  // r = 0.8: V = sigma_2 (0.36)^3, robin = sigma_2 (0.36)^2
  const ExtensionCheckResult deep = theorem53_check(1.0, pt({0.8, 0.0}, {0.0, 0.0}), sphere, mc);
  EXPECT_NEAR(deep.indicatrix_volume, sigma2 * std::pow(0.36, 3.0), 1e-6);
  EXPECT_NEAR(deep.robin_bound, sigma2 * std::pow(0.36, 2.0), 1e-6);

  // inequalities hold with equality on the ball within 1%
  for (const ExtensionCheckResult* res : {&center, &half, &deep}) {
    EXPECT_LE(res->minimal_norm, res->indicatrix_volume * 1.01);
    EXPECT_NEAR(res->ratio_norm_to_volume, 1.0, 0.01);
    EXPECT_LE(res->indicatrix_volume, res->robin_bound * 1.005);
  }
}

TEST(Theorem53Check, DimensionGuard) {
  const SphericalGrid sphere = SphericalGrid::hopf(8, 4, 4);
  McConfig mc;
  EXPECT_THROW(theorem53_check(1.0, CPoint{Complex{0, 0}}, sphere, mc), Error);
}

TEST(SublevelMass, CenteredPoleIsExactlyConstant) {
  McConfig mc;
  mc.samples = 300'000;
  const std::vector<SublevelMassPoint> series = sublevel_mass_limit(1.0, zero_point(2), {-4.0, -8.0}, mc);
  const double sigma2 = unit_ball_volume(2);
  for (const SublevelMassPoint& p : series) {
    EXPECT_NEAR(p.scaled_mass, sigma2, 3.0 * p.std_error) << "t = " << p.t;
    EXPECT_FALSE(p.flagged);
  }
}

TEST(SublevelMass, OffCenterApproachesIndicatrixVolume) {
  McConfig mc;
  mc.samples = 1'000'000;
  const CPoint w = pt({0.5, 0.0}, {0.0, 0.0});
  const double v_target = unit_ball_volume(2) * std::pow(0.75, 3.0);
  const std::vector<SublevelMassPoint> series = sublevel_mass_limit(1.0, w, {-4.0, -8.0}, mc);
  EXPECT_NEAR(series[1].scaled_mass, v_target, 0.05 * v_target);
  // the deep point sits closer than the shallow one (up to MC noise)
  EXPECT_LE(std::abs(series[1].scaled_mass - v_target),
            std::abs(series[0].scaled_mass - v_target) + 3.0 * (series[0].std_error + series[1].std_error));
}

TEST(SublevelMass, ParameterValidation) {
  McConfig mc;
  EXPECT_THROW(sublevel_mass_limit(1.0, zero_point(2), {-1.0}, mc), Error);  // t > -2
}

}  // namespace
