#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "subwave/quadrature.hpp"
#include "subwave/summation.hpp"

using namespace subwave;

TEST(GaussKronrod, SmoothIntegrand) {
  const auto r = quad::gauss_kronrod([](double x) { return std::cos(x); }, 0.0, std::numbers::pi / 2);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.0, 1e-14);
}

TEST(GaussKronrod, PeakedIntegrandNeedsSubdivision) {
  const auto r = quad::gauss_kronrod([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 2.0 * std::atan(1.0 / 1e-2) / 1e-2, 1e-9);
  EXPECT_GT(r.evaluations, 15);
}

TEST(TanhSinh, EndpointSingularity) {
  // int_0^1 x^{-1/2} = 2, int_0^1 log x = -1
  auto r = quad::tanh_sinh([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 2.0, 1e-12);
  r = quad::tanh_sinh([](double x) { return std::log(x); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, -1.0, 1e-12);
}

TEST(ExpSinh, HalfLine) {
  auto r = quad::exp_sinh([](double x) { return std::exp(-x); }, 0.0);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  r = quad::exp_sinh([](double x) { return 1.0 / (1.0 + x * x); }, 1.0);
  EXPECT_NEAR(r.value, std::numbers::pi / 4, 1e-11);
}

TEST(GaussJacobi, MomentsExact) {
  for (double s : {0.0, 0.5, 1.0, 2.5}) {
    const auto rule = quad::gauss_jacobi_unit(16, s);
    for (int k = 0; k < 31; ++k) {
      const double got = rule.apply([k](double x) { return std::pow(x, k); });
      EXPECT_NEAR(got, 1.0 / (k + s + 1.0), 1e-13) << "s=" << s << " k=" << k;
    }
  }
}

TEST(NeumaierSum, RecoversCancelledTerms) {
  NeumaierSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  EXPECT_EQ(s.value(), 2.0);
}
