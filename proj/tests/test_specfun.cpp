#include <gtest/gtest.h>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "subwave/specfun.hpp"

using namespace subwave;

TEST(Rgamma, ValuesAndPoles) {
  EXPECT_NEAR(rgamma(0.5), 1.0 / std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_NEAR(rgamma(5.0), 1.0 / 24.0, 1e-16);
  EXPECT_EQ(rgamma(0.0), 0.0);
  EXPECT_EQ(rgamma(-3.0), 0.0);
  EXPECT_NEAR(rgamma(-0.5), 1.0 / boost::math::tgamma(-0.5), 1e-15);
}

// E_{1/2}(-y) = e^{y^2} erfc(y)
TEST(MittagLeffler, HalfOrderClosedForm) {
  for (double y : {0.0, 0.3, 1.0, 2.0, 4.0, 7.0, 20.0, 60.0, 200.0}) {
    double ref = 0.0;
    if (y <= 20.0) {
      ref = boost::math::erfc(y) * std::exp(y * y);
    } else {  // e^{y^2} overflows; asymptotic series of the scaled erfc
      const double u = 1.0 / (2.0 * y * y);
      ref = (1.0 - u + 3.0 * u * u - 15.0 * u * u * u) / (y * std::sqrt(std::numbers::pi));
    }
    EXPECT_NEAR(mittag_leffler(0.5, -y), ref, 1e-10 * ref + 1e-14) << "y=" << y;
  }
  EXPECT_NEAR(mittag_leffler(0.5, -1.0), 0.427583576155807, 1e-12);
}

TEST(MittagLeffler, OrderOneIsExponential) {
  for (double x : {0.0, -0.5, -3.0, -30.0}) EXPECT_NEAR(mittag_leffler(1.0, x), std::exp(x), 1e-12);
}

TEST(MittagLeffler, ContinuousAcrossRegimes) {
  for (double a : {0.3, 0.5, 0.7, 0.9}) {
    for (double x0 : {1.0, 50.0}) {
      const double lo = mittag_leffler(a, -x0 * (1 - 1e-12)), hi = mittag_leffler(a, -x0 * (1 + 1e-12));
      EXPECT_NEAR(lo, hi, 1e-10) << "alpha=" << a << " x0=" << x0;
    }
  }
}

TEST(MittagLeffler, CompletelyMonotone) {
  for (double a : {0.3, 0.6}) {
    double prev = 1.0;
    for (double y = 0.1; y < 100; y *= 1.5) {
      const double e = mittag_leffler(a, -y);
      EXPECT_GT(e, 0.0);
      EXPECT_LT(e, prev);
      prev = e;
    }
  }
}

// M_{1/2}(z) = exp(-z^2/4)/sqrt(pi)
TEST(Wright, HalfOrderClosedForm) {
  for (double z : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0})
    EXPECT_NEAR(wright(0.5, z), std::exp(-z * z / 4) / std::sqrt(std::numbers::pi), 1e-13) << "z=" << z;
}

TEST(Wright, NormalisedForOtherOrders) {
  // int_0^inf M_a(z) dz = 1
  for (double a : {0.3, 0.7}) {
    double s = 0.0;
    const double h = 1e-3;
    for (double z = 0.5 * h; z < 60.0; z += h) s += wright(a, z) * h;
    EXPECT_NEAR(s, 1.0, 1e-6) << "alpha=" << a;
  }
}

TEST(StableInverseSurvival, HalfOrderIsErfc) {
  for (double y : {0.1, 0.5, 1.0, 2.0, 4.0})
    EXPECT_NEAR(stable_inverse_survival(0.5, y), boost::math::erfc(y / 2), 1e-12) << "y=" << y;
}

TEST(ExpIntegral, AgainstBoost) {
  for (double x : {1e-6, 0.1, 1.0, 5.0, 30.0})
    EXPECT_NEAR(exp_integral_e1(x), boost::math::expint(1, x), 1e-14 * boost::math::expint(1, x)) << x;
}
