#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "subwave/asymptotics.hpp"

using namespace subwave;

namespace {
LawParams params(double beta, double offset = 0.0) {
  LawParams p;
  p.alpha = 0.5;
  p.mu0 = 2.0;
  p.C = 1.0;
  p.s = 1.0;
  p.beta = beta;
  p.x_offset = offset;
  return p;
}
}  // namespace

TEST(Law, ConstantsAndShapes) {
  const auto lo = AsymptoticLaw::make(KernelClass::C1, BoundSide::Lower, params(0.5));
  EXPECT_NEAR(lo.C_side, std::log(0.95 / 0.5), 1e-15);
  const auto up = AsymptoticLaw::make(KernelClass::C2, BoundSide::Upper, params(0.5));
  EXPECT_NEAR(up.C_side, std::log(0.95 / 0.45) / 2.0, 1e-15);
  const auto c3 = AsymptoticLaw::make(KernelClass::C3, BoundSide::Lower, params(0.5));
  EXPECT_NEAR(c3.shape(std::exp(3.0)), 9.0, 1e-12);
  EXPECT_THROW(AsymptoticLaw::make(KernelClass::C1, BoundSide::Upper, params(0.01)), DomainError);
  EXPECT_THROW(AsymptoticLaw::make(KernelClass::Unclassified, BoundSide::Lower, params(0.5)), DomainError);
  EXPECT_THROW(c3.shape(0.5), DomainError);
}

TEST(Law, FrontInvertsAsymptote) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto cls : {KernelClass::C1, KernelClass::C2, KernelClass::C3})
    for (auto side : {BoundSide::Lower, BoundSide::Upper})
      for (int k = 0; k < 20; ++k) {
        auto p = params(0.0, 4.0 * u(rng) - 2.0);
        p.eps = 0.01 + 0.3 * u(rng);
        p.beta = p.eps + (1.0 - 2.0 * p.eps) * (0.05 + 0.9 * u(rng));
        p.v = 0.5 + u(rng);
        const auto law = AsymptoticLaw::make(cls, side, p);
        const double t = std::exp(2.0 + 10.0 * u(rng));
        EXPECT_NEAR(cesaro_asymptote(law, front_law(law, t), t), p.beta, 1e-12);
      }
}

TEST(Fit, RecoversExponentAndCoefficient) {
  FrontTrace tr;
  tr.beta = 0.5;
  tr.t_values.resize(6);
  tr.x_values.resize(6);
  for (int i = 0; i < 6; ++i) {
    const double t = std::pow(10.0, 2 + i * 0.8);
    tr.t_values(i) = t;
    tr.x_values(i) = 1.3 * std::pow(t, 0.37) - 2.0;
  }
  FitParams fp;
  fp.x_offset = -2.0;
  const auto r = fit_scaling(tr, KernelClass::C1, fp);
  EXPECT_NEAR(r.fitted, 0.37, 1e-12);
  EXPECT_NEAR(std::exp(r.intercept), 1.3, 1e-10);
  for (int i = 0; i < 6; ++i) tr.x_values(i) = 0.7 * std::log(tr.t_values(i)) + 1.0;
  EXPECT_NEAR(fit_scaling(tr, KernelClass::C2).fitted, 0.7, 1e-12);
  tr.t_values.conservativeResize(3);
  tr.x_values.conservativeResize(3);
  EXPECT_THROW(fit_scaling(tr, KernelClass::C2), DomainError);
}

TEST(Bounds, TwoSidedCheck) {
  const auto lo = AsymptoticLaw::make(KernelClass::C2, BoundSide::Lower, params(0.5, -1.0));
  const auto up = AsymptoticLaw::make(KernelClass::C2, BoundSide::Upper, params(0.5, 1.0));
  FrontTrace tr;
  tr.beta = 0.5;
  const std::vector<double> ts{1e3, 1e4, 1e5, 1e6};
  tr.t_values = Eigen::Map<const Eigen::VectorXd>(ts.data(), 4);
  tr.x_values.resize(4);
  for (int i = 0; i < 4; ++i) tr.x_values(i) = 0.5 * (front_law(lo, ts[i]) + front_law(up, ts[i]));
  auto r = check_two_sided(tr, lo, up, 0.0);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.worst_margin, 0.0);
  tr.x_values(3) = 1.2 * front_law(up, 1e6);
  r = check_two_sided(tr, lo, up, 0.05);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.violations, 1);
  // points before the burn-in are reported but not counted
  r = check_two_sided(tr, lo, up, 0.05, 1e7);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.violations, 0);
}
