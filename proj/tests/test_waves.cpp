#include <gtest/gtest.h>

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "subwave/waves.hpp"

using namespace subwave;

TEST(Profile, LogisticAndSteps) {
  const auto p = WaveProfile::logistic(1.0);
  EXPECT_NEAR(p(0.0), 0.5, 1e-15);
  EXPECT_GT(p(-40.0), 1.0 - 1e-15);
  EXPECT_LT(p(40.0), 1e-15);
  const auto lo = WaveProfile::lower_step(0.1, 1.0, 1.0);
  EXPECT_EQ(lo(0.5), 0.9);
  EXPECT_EQ(lo(1.5), 0.0);
  const auto up = WaveProfile::upper_step(0.1, 1.0, 1.0);
  EXPECT_EQ(up(0.5), 1.0);
  EXPECT_EQ(up(1.5), 0.1);
}

TEST(Profile, BracketSandwichesProfile) {
  const auto p = WaveProfile::logistic(2.0);
  const auto sw = make_step_waves(p, 0.05);
  EXPECT_LE(sw.bracket.x_minus, sw.bracket.x_plus);
  EXPECT_GT(p(sw.bracket.x_minus), 0.95);
  EXPECT_LT(p(sw.bracket.x_plus), 0.05);
  for (double x = -10; x <= 10; x += 0.01) {
    EXPECT_LE(sw.lower(x), p(x));
    EXPECT_LE(p(x), sw.upper(x));
  }
}

TEST(Subordinate, StepWaveIsSurvival) {
  // psi = 1{xi <= 0}: psi^E = P(v E(t) >= x) = erfc(x/(2 v sqrt t)) for alpha = 1/2
  const auto s = SubordinatorSpec::stable(0.5);
  const auto step = WaveProfile::upper_step(1e-300, 0.0, 1.0);
  for (double x : {0.5, 1.0, 3.0})
    EXPECT_NEAR(subordinate(step, s, x, 2.0), boost::math::erfc(x / (2 * std::sqrt(2.0))), 1e-12);
}

TEST(Subordinate, QuadratureRouteAgrees) {
  for (const auto& spec : {SubordinatorSpec::stable(0.7), SubordinatorSpec::gamma(1.0, 1.0)}) {
    const auto p = WaveProfile::logistic(1.0);
    const auto lo = WaveProfile::lower_step(0.05, -1.0, 1.0);
    for (double x : {-1.0, 0.5, 2.0}) {
      EXPECT_NEAR(subordinate(p, spec, x, 1.3), subordinate_by_quadrature(p, spec, x, 1.3), 1e-8);
      EXPECT_NEAR(subordinate(lo, spec, x, 1.3), subordinate_by_quadrature(lo, spec, x, 1.3), 1e-8);
    }
  }
}

TEST(Subordinate, ZeroTimeIsProfile) {
  const auto p = WaveProfile::logistic(1.0);
  const auto fam = subordinated_wave(p, SubordinatorSpec::gamma(1, 1));
  EXPECT_EQ(fam(0.0)(0.3), p(0.3));
}

TEST(Subordinate, SandwichPointwiseAndCesaro) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-4.0, 8.0), ut(0.2, 5.0);
  for (const auto& spec : {SubordinatorSpec::stable(0.6), SubordinatorSpec::distributed(Weight::constant(1.0))}) {
    const auto p = WaveProfile::logistic(1.0);
    const auto sw = make_step_waves(p, 0.05);
    for (auto avg : {TimeAverage::Pointwise, TimeAverage::Cesaro}) {
      const auto fl = subordinated_wave(sw.lower, spec, avg), fs = subordinated_wave(p, spec, avg),
                 fu = subordinated_wave(sw.upper, spec, avg);
      for (int i = 0; i < 20; ++i) {
        const double x = ux(rng), t = ut(rng);
        const double a = fl(t)(x), b = fs(t)(x), c = fu(t)(x);
        EXPECT_LE(a, b + 1e-8);
        EXPECT_LE(b, c + 1e-8);
      }
    }
  }
}

TEST(Cesaro, DirectMatchesTimeQuadrature) {
  const auto spec = SubordinatorSpec::gamma(1.0, 1.0);
  const auto p = WaveProfile::logistic(1.0);
  const auto fam = subordinated_wave(p, spec, TimeAverage::Cesaro);
  const double x = 0.8, t = 3.0;
  const double want = cesaro_mean([&](double s) { return subordinate(p, spec, x, s); }, t, 1e-9);
  EXPECT_NEAR(fam(t)(x), want, 1e-7);
}

TEST(Cesaro, TauberianOfStepIsExponential) {
  const auto spec = SubordinatorSpec::stable(0.5);
  const auto lo = WaveProfile::lower_step(0.05, 0.0, 1.0);
  const auto fam = subordinated_wave(lo, spec, TimeAverage::Cesaro, CesaroEvaluator::Tauberian);
  const double t = 1e4, x = 30.0;
  EXPECT_NEAR(fam(t)(x), 0.95 * std::exp(-x / std::sqrt(t)), 1e-14);
}

TEST(Front, PositionAndTrace) {
  const auto spec = SubordinatorSpec::stable(0.5);
  const auto lo = WaveProfile::lower_step(0.05, 0.0, 1.0);
  const auto fam = subordinated_wave(lo, spec);
  const auto tr = front_trace(fam, 0.5, {1.0, 10.0, 100.0, 1000.0}, FrontSide::LowerWave);
  ASSERT_TRUE(tr.failures.empty());
  for (Eigen::Index i = 0; i < tr.t_values.size(); ++i)
    EXPECT_NEAR(fam(tr.t_values(i))(tr.x_values(i)), 0.5, 1e-8);
  // self-similar: x / sqrt(t) constant
  EXPECT_NEAR(tr.x_values(3) / tr.x_values(1), 10.0, 1e-6);
  EXPECT_THROW(front_position([](double) { return 0.2; }, 0.5, -1.0, 1.0), LevelNotAttained);
}
