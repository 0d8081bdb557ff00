#include <gtest/gtest.h>

#include <cstdlib>

#include "lgi/optimizer.hpp"
#include "test_support.hpp"

namespace {

using namespace lgi;
using namespace lgi::opt;
using lgi::testing::Draw;
using lgi::testing::kPi;

const ModeParams kStill(1.0, 0.0);

double circular_distance(double x, double y, double period) {
  const double d = std::fmod(std::abs(x - y), period);
  return std::min(d, period - d);
}

TEST(SweepGrid, DefaultsAndValidation) {
  SweepGrid g;
  EXPECT_EQ(g.taus().size(), 260u);
  EXPECT_NEAR(g.taus().front(), 0.025, 1e-15);
  EXPECT_NEAR(g.taus().back(), 6.5, 1e-12);
  EXPECT_DOUBLE_EQ(g.r_max(1.0), 4.0);
  EXPECT_NEAR(g.r_max(0.001), 1.5 * std::sqrt(kPi / 0.012), 1e-12);
  for (double tau : {0.001, 0.01, 0.1})
    EXPECT_GE(g.r_max(tau), std::sqrt(kPi / (12.0 * tau)));

  SweepGrid bad;
  bad.d_tau = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = SweepGrid{};
  bad.tau_max = 0.01;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = SweepGrid{};
  bad.n_r = 2;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(ThreadLimit, ReadsEnvironment) {
  ::setenv("LGI_THREADS", "3", 1);
  EXPECT_EQ(thread_limit(), 3);
  ::setenv("LGI_THREADS", "1", 1);
  EXPECT_EQ(thread_limit(), 1);
  ::unsetenv("LGI_THREADS");
  EXPECT_GE(thread_limit(), 1);
}

TEST(ThetaPeriod, ByKind) {
  EXPECT_DOUBLE_EQ(theta_period(StateKind::coherent), 2.0 * kPi);
  EXPECT_DOUBLE_EQ(theta_period(StateKind::cat), kPi);
}

TEST(CoarseGrid, SerialAndParallelAgreeExactly) {
  SweepGrid g;
  g.n_theta = 32;
  g.n_r = 24;
  for (StateKind kind : {StateKind::coherent, StateKind::cat}) {
    const auto serial = coarse_grid(kind, 0.5, kStill, 0.3, g, Execution::serial);
    const auto parallel = coarse_grid(kind, 0.5, kStill, 0.3, g, Execution::parallel);
    ASSERT_EQ(serial.size(), 32u * 24u);
    EXPECT_EQ(serial, parallel);
    const double theta = 5 * theta_period(kind) / 32, r = 7 * g.r_max(0.3) / 23;
    EXPECT_DOUBLE_EQ(serial[5 * 24 + 7], k3_at(kind, 0.5, kStill, 0.3, theta, r));
  }
}

TEST(OptimizeAt, RidgeOptimumAtSmallTau) {
  const OptimumRecord rec = optimize_at(0.05, StateKind::coherent, 0.5, kStill, SweepGrid{});
  EXPECT_NEAR(rec.theta_star, kPi - 0.05, 1e-5);
  EXPECT_NEAR(rec.r_star, 1.98901, 1e-3);
  EXPECT_FALSE(rec.degenerate_theta);
  EXPECT_EQ(rec.tau, 0.05);
}

TEST(OptimizeAt, SingularMaxima) {
  const OptimumRecord coh = optimize_at(0.001, StateKind::coherent, 0.5, kStill, SweepGrid{});
  EXPECT_NEAR(coh.k3_star, 1.49848, 5e-4);
  const OptimumRecord cat = optimize_at(0.001, StateKind::cat, 0.5, kStill, SweepGrid{});
  EXPECT_NEAR(cat.k3_star, 1.49902, 5e-4);
}

TEST(OptimizeAt, DegenerateWindow) {
  for (StateKind kind : {StateKind::coherent, StateKind::cat}) {
    const OptimumRecord rec = optimize_at(3.0, kind, 0.5, kStill, SweepGrid{});
    EXPECT_TRUE(rec.degenerate_theta);
    EXPECT_LT(rec.r_star, kDegenerateR);
    EXPECT_EQ(rec.theta_star, 0.0);
    EXPECT_NEAR(rec.k3_star, 1.0, 1e-9);
  }
}

TEST(OptimizeAt, RejectsNonPositiveTau) {
  EXPECT_THROW(optimize_at(0.0, StateKind::coherent, 0.5, kStill, SweepGrid{}), std::invalid_argument);
}

TEST(OptimizeAt, IterationCapRaises) {
  SweepGrid g;
  g.max_evaluations = 1;
  EXPECT_THROW(optimize_at(0.5, StateKind::coherent, 0.5, kStill, g), NonConvergence);
}

TEST(OptimizeAt, BeatsRandomProbes) {
  Draw draw(71);
  const SweepGrid g;
  for (StateKind kind : {StateKind::coherent, StateKind::cat})
    for (double tau : {0.1, 0.45, 1.3, 2.6, 5.0}) {
      for (const ModeParams& p : {kStill, ModeParams(1.0, 0.1)}) {
        const OptimumRecord rec = optimize_at(tau, kind, 0.5, p, g);
        for (int i = 0; i < 1000; ++i) {
          const double theta = draw.uniform(0.0, 2.0 * kPi), r = draw.uniform(0.0, g.r_max(tau));
          EXPECT_GE(rec.k3_star, k3_at(kind, 0.5, p, tau, theta, r) - 1e-12);
        }
      }
    }
}

TEST(OptimizeAt, ReportingRanges) {
  Draw draw(72);
  SweepGrid g;
  g.n_theta = 64;
  g.n_r = 48;
  for (int i = 0; i < 20; ++i) {
    const double tau = draw.uniform(0.05, 6.5);
    const OptimumRecord coh = optimize_at(tau, StateKind::coherent, 0.5, kStill, g);
    EXPECT_GT(coh.theta_star, -kPi);
    EXPECT_LE(coh.theta_star, kPi);
    const OptimumRecord cat = optimize_at(tau, StateKind::cat, 0.5, kStill, g);
    EXPECT_GE(cat.theta_star, 0.0);
    EXPECT_LT(cat.theta_star, kPi);
    EXPECT_GE(coh.r_star, 0.0);
    EXPECT_EQ(coh.degenerate_theta, coh.r_star < kDegenerateR);
  }
}

TEST(OptimizeAt, SerialMatchesParallel) {
  for (StateKind kind : {StateKind::coherent, StateKind::cat})
    for (double tau : {0.2, 1.1}) {
      const OptimumRecord s = optimize_at(tau, kind, 0.5, kStill, SweepGrid{}, Execution::serial);
      const OptimumRecord p = optimize_at(tau, kind, 0.5, kStill, SweepGrid{}, Execution::parallel);
      EXPECT_EQ(s.theta_star, p.theta_star);
      EXPECT_EQ(s.r_star, p.r_star);
      EXPECT_EQ(s.k3_star, p.k3_star);
    }
}

SweepGrid coarse_tau_grid() {
  SweepGrid g;
  g.d_tau = 0.1;
  g.tau_min = 0.1;
  return g;
}

TEST(Sweep, DeterministicOrderedAndThreadIndependent) {
  SweepGrid g = coarse_tau_grid();
  g.tau_max = 2.0;
  const SweepResult a = sweep(g, StateKind::cat, 0.5, kStill, Execution::parallel);
  const SweepResult b = sweep(g, StateKind::cat, 0.5, kStill, Execution::serial);
  ASSERT_TRUE(a.failures.empty());
  ASSERT_EQ(a.records.size(), g.taus().size());
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].tau, g.taus()[i]);
    EXPECT_EQ(a.records[i].k3_star, b.records[i].k3_star);
    EXPECT_EQ(a.records[i].theta_star, b.records[i].theta_star);
    EXPECT_EQ(a.records[i].r_star, b.records[i].r_star);
  }
}

TEST(Sweep, AggregatesFailures) {
  SweepGrid g = coarse_tau_grid();
  g.tau_max = 0.5;
  g.max_evaluations = 1;
  const SweepResult res = sweep(g, StateKind::coherent, 0.5, kStill);
  EXPECT_EQ(res.failures.size() + res.records.size(), g.taus().size());
  EXPECT_FALSE(res.failures.empty());
  for (const SweepFailure& f : res.failures) EXPECT_NE(f.message.find("exceeded"), std::string::npos);
}

TEST(Sweep, DampingSuppressesMaxima) {
  const SweepGrid g = coarse_tau_grid();
  for (StateKind kind : {StateKind::coherent, StateKind::cat}) {
    const SweepResult free = sweep(g, kind, 0.5, kStill);
    const SweepResult damped = sweep(g, kind, 0.5, ModeParams(1.0, 1.0));
    ASSERT_EQ(free.records.size(), damped.records.size());
    int exceptions = 0;
    for (std::size_t i = 0; i < free.records.size(); ++i) {
      EXPECT_LE(free.records[i].k3_star, 1.5 + 1e-6);
      const double excess = damped.records[i].k3_star - free.records[i].k3_star;
      if (excess <= 1e-6) continue;
      // Where the undamped optimum sits at r = 0 with K3 = 1, damping lifts the
      // coherent K3 slightly above 1 at small r (confirmed by the Fock oracle).
      ++exceptions;
      const double tau = free.records[i].tau;
      EXPECT_EQ(kind, StateKind::coherent) << "tau " << tau;
      EXPECT_TRUE(free.records[i].degenerate_theta) << "tau " << tau;
      EXPECT_GT(tau, 2.1);
      EXPECT_LT(tau, 4.2);
      EXPECT_LT(excess, 1e-3) << "tau " << tau;
      EXPECT_LT(damped.records[i].r_star, 0.05) << "tau " << tau;
    }
    if (kind == StateKind::coherent) EXPECT_EQ(exceptions, 20);
  }
}

TEST(Sweep, CoherentOptimaSitOnRidgeLines) {
  const SweepResult res = sweep(coarse_tau_grid(), StateKind::coherent, 0.5, kStill);
  for (const OptimumRecord& r : res.records) {
    if (r.degenerate_theta) continue;
    const double d = std::min(circular_distance(r.theta_star, kPi - r.tau, 2.0 * kPi),
                              circular_distance(r.theta_star, -r.tau, 2.0 * kPi));
    EXPECT_LT(d, 1e-4) << "tau " << r.tau;
  }
}

TEST(Sweep, CatDegenerateWindow) {
  SweepGrid g;
  g.tau_min = 2.1;
  g.tau_max = 4.2;
  g.d_tau = 0.3;
  for (const OptimumRecord& r : sweep(g, StateKind::cat, 0.5, kStill).records) {
    EXPECT_TRUE(r.degenerate_theta) << "tau " << r.tau;
    EXPECT_EQ(r.theta_star, 0.0);
  }
}

TEST(SingularityProbe, RatiosApproachOne) {
  std::vector<double> taus;
  for (int n = 8; n >= 1; --n) taus.push_back(0.001 * n);
  const auto coh = singularity_probe(taus, StateKind::coherent, 0.5);
  const auto cat = singularity_probe(taus, StateKind::cat, 0.5);
  ASSERT_EQ(coh.size(), 8u);
  for (std::size_t i = 0; i < coh.size(); ++i) {
    EXPECT_EQ(coh[i].tau, taus[i]);
    EXPECT_NEAR(coh[i].ratio, coh[i].r_star * coh[i].r_star * coh[i].tau / (kPi / 12.0), 1e-12);
    EXPECT_GE(coh[i].ratio, 0.9068 - 0.005);
    EXPECT_LE(coh[i].ratio, 0.9683 + 0.005);
    EXPECT_GE(cat[i].ratio, 0.9934 - 0.003);
    EXPECT_LE(cat[i].ratio, 0.9991 + 0.003);
    if (i > 0) {
      EXPECT_GT(coh[i].ratio, coh[i - 1].ratio);
      EXPECT_GT(cat[i].ratio, cat[i - 1].ratio);
    }
  }
}

TEST(SingularityProbe, RejectsLargeTau) {
  EXPECT_THROW(singularity_probe({0.02}, StateKind::coherent, 0.5), std::invalid_argument);
}

}  // namespace
