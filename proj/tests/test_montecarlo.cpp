#include <gtest/gtest.h>

#include <cmath>

#include "subwave/montecarlo.hpp"

using namespace subwave;

TEST(Rng, ReproducibleAndSplit) {
  RngStream a(42, 1), b(42, 1), c(42, 2);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_GT(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  EXPECT_NE(a.uniform(), c.uniform());
  RngStream s1 = a.split(3), s2 = a.split(3), s3 = a.split(4);
  EXPECT_EQ(s1.uniform(), s2.uniform());
  EXPECT_NE(s1.uniform(), s3.uniform());
}

// E exp(-lambda X) of one increment against the Laplace exponent.
TEST(Increments, LaplaceTransform) {
  for (const auto& spec : {SubordinatorSpec::stable(0.5), SubordinatorSpec::stable(0.8),
                           SubordinatorSpec::gamma(1.0, 2.0)}) {
    RngStream rng(9);
    const double delta = 0.3, lambda = 1.5;
    const int n = 200000;
    double m = 0.0, m2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = std::exp(-lambda * sample_increment(spec, delta, rng));
      m += x;
      m2 += x * x;
    }
    m /= n;
    const double se = std::sqrt((m2 / n - m * m) / n);
    EXPECT_NEAR(m, std::exp(-delta * laplace_exponent(spec, lambda)), 4 * se) << spec.describe();
  }
}

TEST(InverseSampling, MeanOfHalfStable) {
  // E E(t) = t^alpha / Gamma(1+alpha)
  RngStream rng(5);
  const double t = 1.0;
  const int n = 20000;
  double m = 0.0, m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = sample_inverse(SubordinatorSpec::stable(0.5), t, rng, 1e-3);
    m += e;
    m2 += e * e;
  }
  m /= n;
  const double se = std::sqrt((m2 / n - m * m) / n);
  EXPECT_NEAR(m, 1.0 / std::tgamma(1.5), 4 * se + 1e-3);
}

TEST(McSubordinate, AgreesWithQuadrature) {
  const auto spec = SubordinatorSpec::gamma(1.0, 1.0);
  const auto p = WaveProfile::logistic(1.0);
  McOptions opt;
  opt.step = 2e-3;
  const auto est = mc_subordinate_batch(p, spec, {{0.5, 1.0}, {-1.0, 2.0}}, 40000, RngStream(11), opt);
  EXPECT_NEAR(est[0].mean, subordinate(p, spec, 0.5, 1.0), 3.5 * est[0].std_error);
  EXPECT_NEAR(est[1].mean, subordinate(p, spec, -1.0, 2.0), 3.5 * est[1].std_error);
}

TEST(McSubordinate, ThreadCountDoesNotChangeResult) {
  const auto spec = SubordinatorSpec::stable(0.5);
  const auto p = WaveProfile::logistic(1.0);
  McOptions o1, o4;
  o1.step = o4.step = 5e-3;
  o1.chunk = o4.chunk = 1000;
  o4.threads = 4;
  const auto a = mc_subordinate_batch(p, spec, {{0.3, 1.0}}, 8000, RngStream(1), o1);
  const auto b = mc_subordinate_batch(p, spec, {{0.3, 1.0}}, 8000, RngStream(1), o4);
  EXPECT_EQ(a[0].mean, b[0].mean);
  EXPECT_EQ(a[0].std_error, b[0].std_error);
}

TEST(McSubordinate, StepHalvingBiasSmall) {
  const auto r = mc_step_halving(WaveProfile::logistic(1.0), SubordinatorSpec::stable(0.5), 0.2, 1.0, 20000,
                                 RngStream(2), 4e-3);
  EXPECT_LE(std::abs(r.diff_mean), 4 * r.diff_error + 2e-3);
}

TEST(McSubordinate, CapEnforced) {
  McOptions opt;
  opt.step = 1e-3;
  opt.cap = 10;
  EXPECT_THROW(mc_subordinate(WaveProfile::logistic(1.0), SubordinatorSpec::stable(0.5), 0.0, 100.0, 10,
                              RngStream(1), opt),
               CapExceeded);
}

TEST(Histogram, CountsAndKs) {
  const auto h = make_histogram({0.1, 0.2, 0.25, 0.9, 1.5}, 0.0, 1.0, 4);
  EXPECT_EQ(h.total, 5);
  EXPECT_EQ(h.counts[0], 2);
  EXPECT_EQ(h.counts[1], 1);
  EXPECT_EQ(h.counts[3], 1);
  RngStream r(4);
  std::vector<double> a, b, c;
  for (int i = 0; i < 2000; ++i) {
    a.push_back(r.uniform());
    b.push_back(r.uniform());
    c.push_back(r.uniform() * 0.8);
  }
  EXPECT_GT(ks_two_sample(a, b).p_value, 0.001);
  EXPECT_LT(ks_two_sample(a, c).p_value, 1e-6);
}
