#include <gtest/gtest.h>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <numbers>

#include "subwave/gfd.hpp"
#include "subwave/laplace.hpp"
#include "subwave/specfun.hpp"
#include "subwave/subordinators.hpp"
#include "subwave/waves.hpp"

using namespace subwave;

namespace {
std::vector<SubordinatorSpec> all_specs() {
  return {SubordinatorSpec::stable(0.5), SubordinatorSpec::stable(0.3), SubordinatorSpec::stable(0.8),
          SubordinatorSpec::gamma(1.0, 1.0), SubordinatorSpec::gamma(2.0, 0.5),
          SubordinatorSpec::distributed(Weight::constant(1.0)), SubordinatorSpec::distributed(Weight::power(1.0))};
}
}  // namespace

TEST(Spec, FactoriesValidate) {
  EXPECT_THROW(SubordinatorSpec::stable(0.0), DomainError);
  EXPECT_THROW(SubordinatorSpec::stable(1.0), DomainError);
  EXPECT_THROW(SubordinatorSpec::gamma(-1.0, 1.0), DomainError);
  EXPECT_THROW(SubordinatorSpec::gamma(1.0, 0.0), DomainError);
  EXPECT_THROW(SubordinatorSpec::distributed(Weight::constant(0.0)), DomainError);
  EXPECT_EQ(SubordinatorSpec::stable(0.4).class_tag(), KernelClass::C1);
  EXPECT_EQ(SubordinatorSpec::gamma(1, 1).class_tag(), KernelClass::Unclassified);
  EXPECT_EQ(SubordinatorSpec::distributed(Weight::constant(2.0)).class_tag(), KernelClass::C2);
  const auto c3 = SubordinatorSpec::distributed(Weight::power(1.5, 2.0));
  EXPECT_EQ(c3.class_tag(), KernelClass::C3);
  EXPECT_NEAR(*c3.class_params().C, 2.0 * std::tgamma(2.5), 1e-14);
}

TEST(LaplaceExponent, ClosedForms) {
  for (double l : {0.01, 0.5, 1.0, 3.0, 100.0}) {
    EXPECT_NEAR(laplace_exponent(SubordinatorSpec::stable(0.3), l), std::pow(l, 0.3), 1e-13 * std::pow(l, 0.3));
    EXPECT_NEAR(laplace_exponent(SubordinatorSpec::gamma(2.0, 0.5), l), 2.0 * std::log1p(l / 0.5), 1e-13);
    const double want = l == 1.0 ? 1.0 : (l - 1.0) / std::log(l);
    EXPECT_NEAR(laplace_exponent(SubordinatorSpec::distributed(Weight::constant(1.0)), l), want, 1e-11 * want);
  }
}

TEST(LaplaceExponent, ComplexPathMatchesRealAxis) {
  for (const auto& spec : all_specs())
    for (double l : {0.05, 0.9, 1.0, 1.1, 7.0}) {
      const cplx z = kernel_transform(spec, cplx(l, 0.0));
      const double r = kernel_transform(spec, l);
      EXPECT_NEAR(z.real(), r, 1e-11 * r) << spec.describe() << " lambda=" << l;
      EXPECT_NEAR(z.imag(), 0.0, 1e-11 * r);
    }
}

TEST(Kernel, ForwardTransformOfKernelIsK) {
  for (const auto& spec : all_specs())
    for (double l : {0.5, 2.0}) {
      double value = 0.0;
      if (spec.variant() == SubordinatorSpec::Variant::DistributedOrder) {
        // k ~ 1/(t log^2 t) at 0 leaves O(1/|log tmin|) outside any double grid; go by parts,
        // K = lambda L[P] with P the bounded primitive of k
        const auto P = *GfdKernel::distributed(spec.weight()).primitive;
        value = l * forward_laplace(P, l, 1e-10).value;
      } else {
        value = forward_laplace([&](double t) { return kernel_k(spec, t); }, l, 1e-10).value;
      }
      EXPECT_NEAR(value, kernel_laplace(spec, l), 1e-8 * kernel_laplace(spec, l)) << spec.describe();
    }
}

TEST(Kernel, LevyDensityIsMinusDerivativeOfTail) {
  for (const auto& spec : all_specs())
    for (double t : {0.3, 1.7}) {
      const double h = 1e-5 * t;
      const double d = -(kernel_k(spec, t + h) - kernel_k(spec, t - h)) / (2 * h);
      EXPECT_NEAR(levy_density(spec, t), d, 1e-6 * std::abs(d)) << spec.describe();
    }
}

TEST(Kernel, GammaKernelIsExponentialIntegral) {
  const auto g = SubordinatorSpec::gamma(2.0, 0.5);
  EXPECT_NEAR(kernel_k(g, 3.0), 2.0 * boost::math::expint(1, 1.5), 1e-14);
}

TEST(Density, HalfStableClosedForm) {
  const auto s = SubordinatorSpec::stable(0.5);
  for (double t : {0.5, 1.0, 2.0})
    for (double tau : {0.0, 0.3, 1.0, 4.0}) {
      const double want = std::exp(-tau * tau / (4 * t)) / std::sqrt(std::numbers::pi * t);
      EXPECT_NEAR(density_G(s, t, tau), want, 1e-13 * want);
    }
}

TEST(Density, StableMatchesWright) {
  for (double a : {0.3, 0.7})
    for (double t : {0.5, 2.0})
      for (double tau : {0.0, 0.2, 1.0, 3.0}) {
        const double want = std::pow(t, -a) * wright(a, tau * std::pow(t, -a));
        EXPECT_NEAR(density_G(SubordinatorSpec::stable(a), t, tau), want, 1e-8 * want + 1e-12);
      }
}

TEST(Survival, HalfStableAndCrossCheck) {
  const auto s = SubordinatorSpec::stable(0.5);
  EXPECT_NEAR(survival_E(s, 1.0, 1.0), boost::math::erfc(0.5), 1e-14);
  EXPECT_EQ(survival_E(s, 0.0, 0.0), 1.0);
  EXPECT_EQ(survival_E(s, 0.0, 0.5), 0.0);
  for (const auto& spec : {SubordinatorSpec::stable(0.7), SubordinatorSpec::gamma(1.0, 1.0),
                           SubordinatorSpec::distributed(Weight::constant(1.0))}) {
    for (double theta : {0.1, 1.0, 2.5}) {
      const double a = survival_E(spec, 1.5, theta);
      const auto b = survival_by_density_quadrature(spec, 1.5, theta);
      EXPECT_NEAR(a, b.value, std::max(1e-8, b.abs_error)) << spec.describe() << " theta=" << theta;
    }
  }
}

TEST(Slice, CesaroDensityIsTimeAverage) {
  for (const auto& spec : {SubordinatorSpec::stable(0.5), SubordinatorSpec::gamma(1.0, 1.0)}) {
    const double t = 2.0, tau = 0.7;
    InverseSubordinatorSlice slice(spec, t);
    const double direct = cesaro_mean([&](double s) { return density_G(spec, s, tau); }, t, 1e-9);
    EXPECT_NEAR(slice.cesaro_density(tau).value, direct, 1e-7) << spec.describe();
    const double surv = cesaro_mean([&](double s) { return survival_E(spec, s, tau); }, t, 1e-9);
    EXPECT_NEAR(slice.cesaro_survival(tau).value, surv, 1e-7) << spec.describe();
  }
}

TEST(Slice, TailCutoffAndBound) {
  InverseSubordinatorSlice slice(SubordinatorSpec::gamma(1.0, 1.0), 2.0);
  const double c = slice.tail_cutoff(1e-10);
  EXPECT_NEAR(std::exp(-c * slice.phi_inv_t()), 1e-10, 1e-22);
  for (double tau : {1.0, 5.0, 20.0}) EXPECT_LE(slice.survival(tau).value, slice.tail_bound(tau) + 1e-12);
}

TEST(Grid, NormalisedMass) {
  std::vector<double> taus;
  for (int i = 0; i <= 4000; ++i) taus.push_back(i * 0.005);
  const auto g = tabulate_density(SubordinatorSpec::stable(0.5), {0.5, 1.0}, taus);
  const auto m = g.corrected_mass();
  for (Eigen::Index i = 0; i < m.size(); ++i) EXPECT_NEAR(m(i), 1.0, 1e-5);
}

TEST(Classes, AsymptoteRatiosSettle) {
  const std::vector<double> ls{1e-2, 1e-4, 1e-6, 1e-8};
  for (const auto& spec : {SubordinatorSpec::stable(0.6), SubordinatorSpec::distributed(Weight::constant(2.0)),
                           SubordinatorSpec::distributed(Weight::power(1.0))}) {
    const auto r = verify_class(spec, ls, 0.05);
    EXPECT_TRUE(r.pass) << spec.describe() << ": " << r.note;
  }
  EXPECT_FALSE(verify_class(SubordinatorSpec::gamma(1, 1), ls).pass);
}

TEST(Classes, BernsteinSanity) {
  std::vector<double> ls;
  for (double l = 1e-4; l < 1e4; l *= 3) ls.push_back(l);
  for (const auto& spec : all_specs()) EXPECT_TRUE(bernstein_sanity(spec, ls)) << spec.describe();
}
