#include "subwave/gfd.hpp"

#include <cmath>

#include "subwave/errors.hpp"
#include "subwave/quadrature.hpp"
#include "subwave/specfun.hpp"

namespace subwave {

GfdKernel GfdKernel::caputo(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("caputo: alpha must lie in (0,1)");
  const double g1 = rgamma(1.0 - alpha);
  const double g2 = rgamma(2.0 - alpha);
  GfdKernel kernel;
  kernel.k = [alpha, g1](double t) { return std::pow(t, -alpha) * g1; };
  kernel.primitive = [alpha, g2](double s) { return std::pow(s, 1.0 - alpha) * g2; };
  return kernel;
}

GfdKernel GfdKernel::distributed(const Weight& weight) {
  GfdKernel kernel;
  kernel.k = [weight](double t) { return distributed_kernel(weight, t); };
  // int_0^s k = int_0^1 s^{1-tau} / Gamma(2-tau) mu(tau) d tau; smooth in tau.
  kernel.primitive = [weight](double s) {
    if (s == 0.0) return 0.0;
    const double log_s = std::log(s);
    auto f = [&](double tau) { return std::exp((1.0 - tau) * log_s) * rgamma(2.0 - tau) * weight(tau); };
    const auto r = quad::gauss_kronrod(f, 0.0, 1.0, {1e-17, 1e-13, 2000});
    if (!r.converged) throw NumericalFailure("distributed primitive: quadrature missed tolerance", r.abs_error);
    return r.value;
  };
  return kernel;
}

Eigen::VectorXd cell_integrals(const GfdKernel& kernel, double h, Eigen::Index n) {
  if (!(h > 0.0)) throw DomainError("cell_integrals: h must be > 0");
  Eigen::VectorXd c(n);
  if (kernel.primitive) {
    const auto& P = *kernel.primitive;
    double lo = 0.0;
    for (Eigen::Index m = 0; m < n; ++m) {
      const double hi = P(static_cast<double>(m + 1) * h);
      c(m) = hi - lo;
      lo = hi;
    }
    return c;
  }
  for (Eigen::Index m = 0; m < n; ++m) {
    const double a = static_cast<double>(m) * h, b = a + h;
    // The first cell carries the kernel's singularity at 0.
    const auto r = m == 0 ? quad::tanh_sinh(kernel.k, a, b, {1e-14, 1e-12, 0})
                          : quad::gauss_kronrod(kernel.k, a, b, {1e-15, 1e-12, 200});
    if (!r.converged || !std::isfinite(r.value))
      throw NumericalFailure("apply_gfd: kernel cell integral missed tolerance", r.abs_error);
    c(m) = r.value;
  }
  return c;
}

double apply_gfd(const GfdKernel& kernel, const TimeGridFunction& u, Eigen::Index i) {
  if (i < 1 || i >= u.size()) throw DomainError("apply_gfd: index out of range");
  const Eigen::VectorXd c = cell_integrals(kernel, u.h, i);
  // Slopes of the linear pieces, paired with c reversed.
  const Eigen::VectorXd slope = (u.u.segment(1, i) - u.u.segment(0, i)) / u.h;
  return slope.dot(c.reverse());
}

double apply_gfd(std::function<double(double)> k, const TimeGridFunction& u, Eigen::Index i) {
  return apply_gfd(GfdKernel{std::move(k), std::nullopt}, u, i);
}

double caputo(double alpha, const TimeGridFunction& u, Eigen::Index i) {
  return apply_gfd(GfdKernel::caputo(alpha), u, i);
}

}  // namespace subwave
