#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "subwave/subordinators.hpp"

namespace subwave {

/// u sampled on the uniform grid t_i = i h, i = 0..N.
struct TimeGridFunction {
  double h = 0.0;
  Eigen::VectorXd u;

  Eigen::Index size() const { return u.size(); }
  double t(Eigen::Index i) const { return static_cast<double>(i) * h; }

  template <class F>
  static TimeGridFunction sample(F&& f, double h, Eigen::Index n) {
    TimeGridFunction g{h, Eigen::VectorXd(n + 1)};
    for (Eigen::Index i = 0; i <= n; ++i) g.u(i) = f(static_cast<double>(i) * h);
    return g;
  }
};

struct GfdKernel {
  std::function<double(double)> k;
  /// s -> int_0^s k, when known in closed form.
  std::optional<std::function<double(double)>> primitive;

  static GfdKernel caputo(double alpha);
  static GfdKernel distributed(const Weight& weight);
};

/// Cell integrals c_m = int_{mh}^{(m+1)h} k, m = 0..n-1.
Eigen::VectorXd cell_integrals(const GfdKernel& kernel, double h, Eigen::Index n);

/// (D^{(k)} u)(t_i) = int_0^{t_i} k(t_i - s) u'(s) ds for piecewise-linear u.
double apply_gfd(const GfdKernel& kernel, const TimeGridFunction& u, Eigen::Index i);
double apply_gfd(std::function<double(double)> k, const TimeGridFunction& u, Eigen::Index i);

/// Caputo-Dzhrbashyan derivative of order alpha in (0,1).
double caputo(double alpha, const TimeGridFunction& u, Eigen::Index i);

}  // namespace subwave
