#include <gtest/gtest.h>

#include "lgi/coherent_algebra.hpp"
#include "lgi/lgi_coherent.hpp"
#include "test_support.hpp"

namespace {

using namespace lgi;
using lgi::testing::Draw;
using lgi::testing::kPi;

const MeasurementSetting kHalf(0.5, 0.0);

TEST(JointProbsStep, RevivalAtFullPeriod) {
  const JointProbs j = joint_probs_step(0.5, kHalf, ModeParams(1.0, 0.0), 2.0 * kPi);
  EXPECT_NEAR(j.pp, 1.0, 1e-12);
  EXPECT_NEAR(j.pm, 0.0, 1e-12);
  EXPECT_NEAR(j.mp, 0.0, 1e-12);
  EXPECT_NEAR(j.mm, 0.0, 1e-12);
}

TEST(JointProbsStep, ImmediateRemeasurement) {
  const JointProbs j = joint_probs_step(0.5, kHalf, ModeParams(1.0, 0.3), 0.0);
  EXPECT_NEAR(j.pp, 1.0, 1e-15);
  EXPECT_NEAR(j.pm + j.mp + j.mm, 0.0, 1e-15);
}

TEST(JointProbsStep, ZeroDelayIsDiagonal) {
  Draw draw(21);
  for (int i = 0; i < 200; ++i) {
    const Complex a = draw.amplitude(3.0);
    const MeasurementSetting s = draw.setting(3.0);
    const JointProbs j = joint_probs_step(a, s, draw.mode(1.0), 0.0);
    EXPECT_NEAR(j.pm, 0.0, 1e-12);
    EXPECT_NEAR(j.mp, 0.0, 1e-12);
    EXPECT_NEAR(j.pp, parity_probability(a, s, Parity::plus), 1e-12);
    EXPECT_NEAR(j.correlation(), 1.0, 1e-12);
  }
}

TEST(JointProbsStep, RejectsNegativeTau) {
  EXPECT_THROW(joint_probs_step(0.5, kHalf, ModeParams(1.0, 0.0), -0.1), std::invalid_argument);
}

TEST(JointProbsStep, CompletenessAndMarginals) {
  Draw draw(22);
  for (int i = 0; i < 1000; ++i) {
    const Complex a = draw.amplitude(3.0);
    const MeasurementSetting s = draw.setting(3.0);
    const ModeParams p = draw.mode(1.0);
    const JointProbs j = joint_probs_step(a, s, p, draw.tau(2.0 * kPi));
    EXPECT_NEAR(j.total(), 1.0, 1e-12);
    EXPECT_NEAR(j.first_marginal(Parity::plus), parity_probability(a, s, Parity::plus), 1e-12);
    EXPECT_NEAR(j.first_marginal(Parity::minus), parity_probability(a, s, Parity::minus), 1e-12);
    for (double v : {j.pp, j.pm, j.mp, j.mm}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(JointProbsStep, SecondMarginalIsFreelyEvolvedProbabilityWithoutBackAction) {
  // Far from beta the first measurement barely disturbs the state.
  const Complex a{4.0, 0.0};
  const MeasurementSetting s(0.1, 0.3);
  const ModeParams p(1.0, 0.0);
  const double tau = 0.7;
  const JointProbs j = joint_probs_step(a, s, p, tau);
  const double free_plus = parity_probability(a * p.label_factor(tau), s, Parity::plus);
  EXPECT_NEAR(j.second_marginal(Parity::plus), free_plus, 1e-6);
}

TEST(Correlator, Examples) {
  const ModeParams still(1.0, 0.0);
  EXPECT_NEAR(correlator(0.5, kHalf, ModeParams(1.0, 0.4), 0.0), 1.0, 1e-15);
  EXPECT_NEAR(correlator(0.5, kHalf, still, 2.0 * kPi), 1.0, 1e-12);
  const double half_period = correlator(0.5, kHalf, still, kPi);
  EXPECT_GE(half_period, -1.0);
  EXPECT_LE(half_period, 1.0);
}

TEST(Correlator, Bounded) {
  Draw draw(23);
  for (int i = 0; i < 1000; ++i) {
    const double c = correlator(draw.amplitude(3.0), draw.setting(3.0), draw.mode(1.0), draw.tau(10.0));
    EXPECT_GE(c, -1.0 - 1e-9);
    EXPECT_LE(c, 1.0 + 1e-9);
  }
}

TEST(K3Coherent, LongTimeLimit) {
  const LgiPoint pt = k3_coherent(0.5, kHalf, ModeParams(1.0, 0.2), 50.0);
  EXPECT_NEAR(pt.k3, 0.367879, 1e-4);
  EXPECT_NEAR(pt.k3, std::exp(-1.0), 1e-4);
  EXPECT_FALSE(pt.violates());
}

TEST(K3Coherent, RevivalGivesOne) {
  const LgiPoint pt = k3_coherent(0.5, kHalf, ModeParams(1.0, 0.0), 2.0 * kPi);
  EXPECT_NEAR(pt.c21, 1.0, 1e-12);
  EXPECT_NEAR(pt.c32, 1.0, 1e-12);
  EXPECT_NEAR(pt.c31, 1.0, 1e-12);
  EXPECT_NEAR(pt.k3, 1.0, 1e-12);
  EXPECT_FALSE(pt.violates());
}

TEST(K3Coherent, RejectsNonPositiveTau) {
  EXPECT_THROW(k3_coherent(0.5, kHalf, ModeParams(1.0, 0.0), 0.0), std::invalid_argument);
  EXPECT_THROW(k3_coherent(0.5, kHalf, ModeParams(1.0, 0.0), -1.0), std::invalid_argument);
}

TEST(K3Coherent, ComposesFromCorrelators) {
  Draw draw(24);
  for (int i = 0; i < 300; ++i) {
    const Complex a = draw.amplitude(2.0);
    const MeasurementSetting s = draw.setting(3.0);
    const ModeParams p = draw.mode(1.0);
    const double tau = draw.tau(2.0 * kPi);
    const LgiPoint pt = k3_coherent(a, s, p, tau);
    EXPECT_NEAR(pt.k3, pt.c21 + pt.c32 - pt.c31, 1e-12);
    EXPECT_EQ(pt.c21, correlator(a, s, p, tau));
    EXPECT_EQ(pt.c31, correlator(a, s, p, 2.0 * tau));
    EXPECT_EQ(pt.c32, correlator(a * p.label_factor(tau), s, p, tau));
    for (double c : {pt.c21, pt.c32, pt.c31}) EXPECT_LE(std::abs(c), 1.0 + 1e-9);
  }
}

TEST(K3Coherent, LowerLgiBound) {
  Draw draw(25);
  for (int i = 0; i < 2000; ++i) {
    const LgiPoint pt = k3_coherent(draw.amplitude(2.0), draw.setting(5.0), draw.mode(1.0), draw.tau(10.0));
    EXPECT_GE(pt.k3, -3.0);
    EXPECT_LE(pt.k3, 1.5 + 1e-6);
  }
}

TEST(K3Coherent, PeriodicWithoutDamping) {
  Draw draw(26);
  for (int i = 0; i < 300; ++i) {
    const Complex a = draw.amplitude(2.0);
    const MeasurementSetting s = draw.setting(3.0);
    const ModeParams p(draw.uniform(0.5, 1.5), 0.0);
    // period of the free rotation is 2 pi / omega; the unit-frequency case is the figure convention.
    const double period = 2.0 * kPi / p.omega();
    const double tau = draw.tau(period);
    EXPECT_NEAR(k3_coherent(a, s, p, tau).k3, k3_coherent(a, s, p, tau + period).k3, 1e-10);
  }
  const ModeParams unit(1.0, 0.0);
  for (double tau = 0.05; tau < 6.5; tau += 0.05)
    EXPECT_NEAR(k3_coherent(0.5, kHalf, unit, tau).k3, k3_coherent(0.5, kHalf, unit, tau + 2.0 * kPi).k3, 1e-10);
}

TEST(K3Coherent, LongTimeLimitForAnySetting) {
  Draw draw(27);
  for (int i = 0; i < 200; ++i) {
    const Complex a = draw.amplitude(2.0);
    const MeasurementSetting s = draw.setting(2.0);
    const ModeParams p(draw.uniform(0.5, 1.5), draw.uniform(0.1, 1.0));
    const LgiPoint pt = k3_coherent(a, s, p, 100.0 / p.gamma());
    EXPECT_NEAR(pt.k3, std::exp(-4.0 * s.r() * s.r()), 1e-6);
  }
}

TEST(K3Coherent, LongTimeLimitDoesNotDependOnOmega) {
  const Complex a{0.7, -0.2};
  const MeasurementSetting s(0.8, 1.1);
  const double k1 = k3_coherent(a, s, ModeParams(1.0, 0.4), 80.0).k3;
  const double k2 = k3_coherent(a, s, ModeParams(2.3, 0.4), 80.0).k3;
  EXPECT_LT(std::abs(k1 - k2), 1e-8);
}

double dtheta(double theta, double r, double tau) {
  const double h = 1e-5;
  const ModeParams p(1.0, 0.0);
  return (k3_coherent(0.5, MeasurementSetting(r, theta + h), p, tau).k3 -
          k3_coherent(0.5, MeasurementSetting(r, theta - h), p, tau).k3) /
         (2.0 * h);
}

TEST(K3Coherent, RidgeLinesAreStationaryInTheta) {
  Draw draw(28);
  for (int i = 0; i < 200; ++i) {
    const double tau = draw.tau(6.5);
    const double r = draw.uniform(0.0, 3.0);
    EXPECT_LT(std::abs(dtheta(kPi - tau, r, tau)), 1e-6);
    EXPECT_LT(std::abs(dtheta(-tau, r, tau)), 1e-6);
  }
}

TEST(K3Coherent, RealAmplitudeIsMirrorSymmetricInTheta) {
  // For real a, reflecting beta about the real axis conjugates every overlap.
  Draw draw(29);
  const ModeParams p(1.0, 0.0);
  for (int i = 0; i < 200; ++i) {
    const double a = draw.uniform(0.0, 2.0);
    const double r = draw.uniform(0.0, 3.0), theta = draw.uniform(-kPi, kPi), tau = draw.tau(6.5);
    // free rotation breaks the mirror unless the ridge argument is shifted by tau
    const double lhs = k3_coherent(a, MeasurementSetting(r, theta - tau), p, tau).k3;
    const double rhs = k3_coherent(a, MeasurementSetting(r, -theta - tau), p, tau).k3;
    EXPECT_NEAR(lhs, rhs, 1e-10);
  }
}

}  // namespace
