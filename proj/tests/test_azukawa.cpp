#include "pluri/azukawa.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "pluri/rng.hpp"

using namespace pluri;

namespace {

CPoint pt(Complex a, Complex b) { return CPoint{a, b}; }
const double kLog43 = std::log(4.0 / 3.0);

TEST(AzukawaBall, CenteredPoleIsLogNorm) {
  EXPECT_NEAR(azukawa_ball(1.0, zero_point(2), pt({3.0, 0.0}, {4.0, 0.0})), std::log(5.0), 1e-15);
  // centered poles work in any dimension
  EXPECT_NEAR(azukawa_ball(2.0, zero_point(3), CPoint{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}}),
              -std::log(2.0), 1e-15);
}

TEST(AzukawaBall, OffCenterClosedForm) {
  const CPoint w = pt({0.5, 0.0}, {0.0, 0.0});
  EXPECT_NEAR(azukawa_ball(1.0, w, pt({1.0, 0.0}, {0.0, 0.0})), kLog43, 1e-14);
  EXPECT_NEAR(azukawa_ball(1.0, w, pt({0.0, 0.0}, {1.0, 0.0})), 0.5 * kLog43, 1e-14);
  EXPECT_EQ(azukawa_ball(1.0, w, zero_point(2)), kNegInfinity);
}

TEST(AzukawaBall, RotationConventionMatchesAxisPole) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    // pole w off the axis: rotate w onto (|w|, 0) and evaluate at UX
    CPoint w = rng.gaussian_point(2);
    w = scaled(w, Complex{0.6 * rng.uniform01() / euclid_norm(w), 0.0});
    const CPoint X = rng.gaussian_point(2);
    const double nw = euclid_norm(w);
    const Complex u11 = w[0] / nw, u12 = w[1] / nw;
    const CPoint ux = pt(X[0] * std::conj(u11) + X[1] * std::conj(u12), X[0] * (-u12) + X[1] * u11);
    EXPECT_NEAR(azukawa_ball(1.0, w, X), azukawa_ball(1.0, pt({nw, 0.0}, {0.0, 0.0}), ux), 1e-12);
  }
}

TEST(AzukawaBall, UnsupportedOffCenterDimension) {
  const CPoint w3{Complex{0.5, 0}, Complex{0, 0}, Complex{0, 0}};
  const CPoint x3{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}};
  EXPECT_THROW(azukawa_ball(1.0, w3, x3), Error);
}

TEST(AzukawaBalanced, Examples) {
  EXPECT_NEAR(azukawa_balanced(MinkowskiGauge::max_abs(2), pt({2.0, 0.0}, {1.0, 0.0})), std::log(2.0), 1e-15);
  EXPECT_EQ(azukawa_balanced(MinkowskiGauge::max_abs(2), zero_point(2)), kNegInfinity);
  EXPECT_NEAR(azukawa_balanced(MinkowskiGauge::ellipsoid({2.0, 1.0}), pt({2.0, 0.0}, {0.0, 0.0})), 0.0, 1e-15);
}

// A = phi + (1/2) log[(|X1|^2 + (1-e^{2phi})|X2|^2)/(1-e^{2phi})^2] with
// phi = -log 2 equals the scaled r = 1/2 ball values.
TEST(AzukawaHartogs, HandEvaluatedExamples) {
  const SubharmonicExpr phi = SubharmonicExpr::constant(-std::log(2.0));
  EXPECT_NEAR(azukawa_hartogs(phi, Complex{0, 0}, pt({1.0, 0.0}, {0.0, 0.0})), std::log(2.0 / 3.0), 1e-14);
  EXPECT_NEAR(azukawa_hartogs(phi, Complex{0, 0}, pt({0.0, 0.0}, {1.0, 0.0})),
              -std::log(2.0) + 0.5 * kLog43, 1e-14);
  EXPECT_EQ(azukawa_hartogs(phi, Complex{0, 0}, zero_point(2)), kNegInfinity);
}

TEST(AzukawaHartogs, ConsistentWithScaledBall) {
  Rng rng(5);
  const SubharmonicExpr phi = abs_sq_plus_const(-1.0);
  for (int i = 0; i < 100; ++i) {
    const Complex t{rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7)};
    if (std::norm(t) >= 0.9) continue;
    const double R = std::exp(-phi(t));
    const CPoint X = rng.gaussian_point(2);
    EXPECT_NEAR(azukawa_hartogs(phi, t, X),
                azukawa_ball(R, pt({1.0, 0.0}, {0.0, 0.0}), X), 1e-10);
  }
}

// The three routes to the family pseudometric coincide: the displayed
// formula, the radius-e^{-phi} ball, and the scaling wrapper applied to the
// unit ball with pole (e^{phi}, 0).
TEST(AzukawaHartogs, ThreeRepresentationsAgree) {
  Rng rng(6);
  const SubharmonicExpr phi = abs_sq_plus_const(-1.0);
  for (int i = 0; i < 50; ++i) {
    const Complex t{rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)};
    const double p = phi(t);
    const CPoint X = rng.gaussian_point(2);
    const double direct = azukawa_hartogs(phi, t, X);
    const double via_ball = azukawa_ball(std::exp(-p), pt({1.0, 0.0}, {0.0, 0.0}), X);
    const double via_scale =
        AzukawaEvaluator::ball_closed_form(1.0, pt({std::exp(p), 0.0}, {0.0, 0.0})).scaled(std::exp(-p))(X);
    EXPECT_NEAR(direct, via_ball, 1e-10);
    EXPECT_NEAR(direct, via_scale, 1e-10);
  }
}

TEST(AzukawaHartogs, NonNegativeWeightIsDomainError) {
  const SubharmonicExpr phi = SubharmonicExpr::constant(0.25);
  EXPECT_THROW(azukawa_hartogs(phi, Complex{0, 0}, pt({1.0, 0.0}, {0.0, 0.0})), Error);
}

// Log-homogeneity of the closed forms: A(lambda X) = A(X) + log|lambda| to 1e-12.
TEST(AzukawaEvaluators, LogHomogeneity) {
  Rng rng(7);
  const std::vector<AzukawaEvaluator> evals{
      AzukawaEvaluator::ball_closed_form(1.0, pt({0.5, 0.0}, {0.0, 0.0})),
      AzukawaEvaluator::balanced_closed_form(
          MinkowskiGauge::max_of(MinkowskiGauge::ellipsoid({1.5, 1.0}), MinkowskiGauge::max_abs(2))),
      AzukawaEvaluator::hartogs_family(abs_sq_plus_const(-1.0), Complex{0.2, 0.1}),
  };
  for (const AzukawaEvaluator& A : evals) {
    for (int i = 0; i < 333; ++i) {
      const CPoint X = rng.gaussian_point(2);
      double a, b;
      rng.gaussian_pair(a, b);
      const Complex lambda{a, b};
      if (std::abs(lambda) < 1e-3) continue;
      EXPECT_NEAR(A(scaled(X, lambda)), A(X) + std::log(std::abs(lambda)), 1e-12);
    }
  }
}

// S^1 invariance is exact: rotating X by i is an exact floating-point map.
TEST(AzukawaEvaluators, CircleInvarianceExact) {
  Rng rng(9);
  const AzukawaEvaluator A = AzukawaEvaluator::ball_closed_form(1.0, pt({0.5, 0.0}, {0.0, 0.0}));
  const AzukawaEvaluator B = AzukawaEvaluator::balanced_closed_form(MinkowskiGauge::sum_abs(2));
  for (int i = 0; i < 100; ++i) {
    const CPoint X = rng.gaussian_point(2);
    EXPECT_EQ(A(scaled(X, Complex{0.0, 1.0})), A(X));
    EXPECT_EQ(B(scaled(X, Complex{0.0, 1.0})), B(X));
  }
}

TEST(AzukawaLimit, CenteredBallSequenceIsExact) {
  const GreenEvaluator g = GreenEvaluator::ball(1.0, zero_point(2));
  LambdaSchedule s;
  s.count = 12;  // 0.1 * 2^{-k}, Richardson on the last pair
  const LimitEstimate lim = azukawa_limit(g, pt({1.0, 0.0}, {0.0, 0.0}), s);
  EXPECT_NEAR(lim.estimate, 0.0, 1e-12);
  EXPECT_NEAR(lim.spread, 0.0, 1e-12);
}

TEST(AzukawaLimit, OffCenterBallMatchesClosedForm) {
  const GreenEvaluator g = GreenEvaluator::ball(1.0, pt({0.5, 0.0}, {0.0, 0.0}));
  const LimitEstimate lim = azukawa_limit(g, pt({1.0, 0.0}, {0.0, 0.0}), LambdaSchedule{});
  EXPECT_NEAR(lim.estimate, kLog43, 1e-6);
}

TEST(AzukawaLimit, BalancedSequenceIsConstant) {
  const GreenEvaluator g = GreenEvaluator::balanced(MinkowskiGauge::max_abs(2));
  const LimitEstimate lim = azukawa_limit(g, pt({1.0, 0.0}, {1.0, 0.0}), LambdaSchedule{});
  EXPECT_NEAR(lim.estimate, 0.0, 1e-12);
  EXPECT_NEAR(lim.spread, 0.0, 1e-12);
}

// 200 seeded random instances: limit matches the closed forms within 1e-6.
TEST(AzukawaLimit, OracleAgreementOnRandomInstances) {
  Rng rng(13);
  LambdaSchedule s;
  s.require_convergence = true;
  int done = 0;
  while (done < 200) {
    const bool use_ball = rng.uniform01() < 0.5;
    CPoint X = rng.gaussian_point(2);
    if (euclid_norm(X) < 1e-6) continue;
    if (use_ball) {
      const double R = 0.5 + 1.5 * rng.uniform01();
      CPoint w = zero_point(2);
      if (rng.uniform01() < 0.8) {
        w = rng.gaussian_point(2);
        w = scaled(w, Complex{0.75 * R * rng.uniform01() / euclid_norm(w), 0.0});
      }
      const GreenEvaluator g = GreenEvaluator::ball(R, w);
      EXPECT_NEAR(azukawa_limit(g, X, s).estimate, azukawa_ball(R, w, X), 1e-6);
    } else {
      const MinkowskiGauge h = rng.uniform01() < 0.5
                                   ? MinkowskiGauge::ellipsoid({0.5 + rng.uniform01(), 0.5 + rng.uniform01()})
                                   : MinkowskiGauge::geo_mean(MinkowskiGauge::max_abs(2),
                                                              MinkowskiGauge::sum_abs(2), rng.uniform01());
      const GreenEvaluator g = GreenEvaluator::balanced(h);
      EXPECT_NEAR(azukawa_limit(g, X, s).estimate, azukawa_balanced(h, X), 1e-6);
    }
    ++done;
  }
}

TEST(AzukawaLimit, AutoShrinkNearBoundaryPole) {
  // pole close to the boundary: lambda0 = 0.1 overshoots, the estimator shrinks
  const CPoint w = pt({0.9, 0.0}, {0.0, 0.0});
  const GreenEvaluator g = GreenEvaluator::ball(1.0, w);
  const CPoint X = pt({30.0, 0.0}, {0.0, 0.0});  // w + 0.1 X far outside
  const LimitEstimate lim = azukawa_limit(g, X, LambdaSchedule{});
  EXPECT_NEAR(lim.estimate, azukawa_ball(1.0, w, X), 1e-5);
}

TEST(AzukawaLimit, ErrorsAndValidation) {
  const GreenEvaluator g = GreenEvaluator::ball(1.0, zero_point(2));
  EXPECT_THROW(azukawa_limit(g, zero_point(2), LambdaSchedule{}), Error);  // X = 0
  LambdaSchedule bad;
  bad.lambda0 = 1e-9;
  bad.count = 12;  // floor violation: 1e-9 * 2^{-11} < 1e-10
  EXPECT_THROW(azukawa_limit(g, pt({1.0, 0.0}, {0.0, 0.0}), bad), Error);
  LambdaSchedule bad2;
  bad2.order = 3;
  EXPECT_THROW(azukawa_limit(g, pt({1.0, 0.0}, {0.0, 0.0}), bad2), Error);
  // eight halvings of lambda0 cannot bring w + lambda X inside
  const GreenEvaluator tight = GreenEvaluator::ball(1.0, pt({0.99, 0.0}, {0.0, 0.0}));
  EXPECT_THROW(azukawa_limit(tight, pt({1e6, 0.0}, {0.0, 0.0}), LambdaSchedule{}), Error);
}

// Verification mode rejects sources whose sequence genuinely oscillates.
TEST(AzukawaLimit, ConvergenceGuardTriggersOnOscillation) {
  const MinkowskiGauge wobble = MinkowskiGauge::unchecked(
      [](const CPoint& z) {
        const double n = euclid_norm(z);
        return n <= 0.0 ? 0.0 : n * (1.0 + 0.3 * std::sin(5.0 * std::log(n)));
      },
      2, 2.0);
  const GreenEvaluator g = GreenEvaluator::balanced(wobble);
  LambdaSchedule s;
  s.require_convergence = true;
  EXPECT_THROW(azukawa_limit(g, pt({1.0, 0.0}, {0.0, 0.0}), s), Error);
  s.require_convergence = false;
  EXPECT_NO_THROW(azukawa_limit(g, pt({1.0, 0.0}, {0.0, 0.0}), s));
}

TEST(AzukawaScale, WrapperSubtractsLogRho) {
  Rng rng(17);
  const AzukawaEvaluator A = AzukawaEvaluator::balanced_closed_form(MinkowskiGauge::max_abs(2));
  const AzukawaEvaluator identity = A.scaled(1.0);
  for (int i = 0; i < 100; ++i) {
    const CPoint X = rng.gaussian_point(2);
    EXPECT_EQ(identity(X), A(X));
  }
  // centered unit ball scaled by 2 has A(e_1) = -log 2
  const AzukawaEvaluator ball2 = AzukawaEvaluator::ball_closed_form(1.0, zero_point(2)).scaled(2.0);
  EXPECT_NEAR(ball2(pt({1.0, 0.0}, {0.0, 0.0})), -std::log(2.0), 1e-15);
  // polydisc scaled by e: A(e_1) = log 1 - 1
  EXPECT_NEAR(A.scaled(std::exp(1.0))(pt({1.0, 0.0}, {0.0, 0.0})), -1.0, 1e-15);
  EXPECT_THROW(A.scaled(-2.0), Error);
}

TEST(RobinConstant, DiscExamples) {
  LambdaSchedule s;
  // unit disc, centered pole: g = log|z|, robin constant 0
  EXPECT_NEAR(robin_constant(GreenEvaluator::ball(1.0, CPoint{Complex{0, 0}}), s), 0.0, 1e-12);
  // disc of radius R: scaling law gives -log R
  EXPECT_NEAR(robin_constant(GreenEvaluator::ball(2.5, CPoint{Complex{0, 0}}), s), -std::log(2.5), 1e-9);
  // unit disc, pole 0.5: log(1/(1-1/4))
  EXPECT_NEAR(robin_constant(GreenEvaluator::ball(1.0, CPoint{Complex{0.5, 0}}), s), kLog43, 1e-8);
  // dimension guard
  EXPECT_THROW(robin_constant(GreenEvaluator::ball(1.0, zero_point(2)), s), Error);
}

}  // namespace
