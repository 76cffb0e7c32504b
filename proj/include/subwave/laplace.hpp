#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "subwave/errors.hpp"
#include "subwave/quadrature.hpp"

namespace subwave {

using cplx = std::complex<double>;

struct InversionConfig {
  enum class Method { FixedTalbot, ContourPlusSeriesAcceleration };
  Method method = Method::FixedTalbot;
  int nodes = 32;
  double target_rel_err = 1e-8;
  double abs_tol = 1e-10;  // floor for values near zero (density tails)
};

struct InversionResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool used_fallback = false;
};

/// Node set and weights of one Laplace inversion at a fixed t. Fixed Talbot
/// (N and 3N/4 nodes) is tried first; the Euler-accelerated Bromwich series
/// (two orders) is the first fallback, a plain truncated Bromwich series the
/// second. Callers that invert many transforms at the
/// same t can precompute expensive pieces at nodes() once and then call
/// combine() with an index-based evaluator; fallback nodes are only touched
/// when the contour estimate misses its target.
class InversionPlan {
 public:
  InversionPlan(double t, InversionConfig cfg = {});

  const std::vector<cplx>& nodes() const { return nodes_; }
  double t() const { return t_; }
  const InversionConfig& config() const { return cfg_; }

  /// value_at(i) must return F(nodes()[i]).
  template <class ValueAt>
  InversionResult combine(ValueAt&& value_at) const;

 private:
  struct Stage {
    std::size_t first = 0, count = 0;
    std::vector<cplx> weights;  // f ~ sum Re(w_i F(s_i))
  };
  void add_talbot(int m);
  void add_euler(int m);
  void add_fourier(double a, int n);

  template <class ValueAt>
  double apply(const Stage& s, ValueAt& value_at, double& abs_sum) const;

  double t_;
  InversionConfig cfg_;
  std::vector<cplx> nodes_;
  std::vector<Stage> stages_;  // pairs: (fine, coarse) per method
};

template <class ValueAt>
double InversionPlan::apply(const Stage& s, ValueAt& value_at, double& abs_sum) const {
  double sum = 0.0;
  abs_sum = 0.0;
  for (std::size_t i = 0; i < s.count; ++i) {
    const cplx v = value_at(s.first + i);
    const double term = (s.weights[i] * v).real();
    if (!std::isfinite(term)) return std::numeric_limits<double>::quiet_NaN();
    sum += term;
    abs_sum += std::abs(term);
  }
  return sum;
}

template <class ValueAt>
InversionResult InversionPlan::combine(ValueAt&& value_at) const {
  double best_err = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p + 1 < stages_.size(); p += 2) {
    double abs1 = 0.0, abs2 = 0.0;
    const double f1 = apply(stages_[p], value_at, abs1);
    const double f2 = apply(stages_[p + 1], value_at, abs2);
    if (!std::isfinite(f1) || !std::isfinite(f2)) continue;
    const double err = std::abs(f1 - f2) + 4.0 * std::numeric_limits<double>::epsilon() * abs1;
    if (err <= std::max(cfg_.target_rel_err * std::abs(f1), cfg_.abs_tol)) return {f1, err, p > 0};
    best_err = std::min(best_err, err);
  }
  throw NumericalFailure("invert_laplace: accuracy target missed at t=" + std::to_string(t_), best_err);
}

/// f(t) from its Laplace transform F (complex-callable).
template <class F>
InversionResult invert_laplace_detailed(F&& transform, double t, InversionConfig cfg = {}) {
  InversionPlan plan(t, cfg);
  const auto& nodes = plan.nodes();
  return plan.combine([&](std::size_t i) { return cplx(transform(nodes[i])); });
}

template <class F>
double invert_laplace(F&& transform, double t, InversionConfig cfg = {}) {
  return invert_laplace_detailed(std::forward<F>(transform), t, cfg).value;
}

/// int_0^inf e^{-lambda t} f(t) dt. Substitutes s = lambda t, then tanh-sinh
/// on [0,1] (integrable singularities of f at 0) and exp-sinh on [1,inf).
template <class F>
quad::Result forward_laplace(F&& f, double lambda, double rel_tol = 1e-11) {
  if (!(lambda > 0.0)) throw DomainError("forward_laplace: lambda must be > 0");
  auto g = [&](double s) { return std::exp(-s) * f(s / lambda); };
  const quad::Tolerance tol{1e-300, rel_tol, 4000};
  const auto head = quad::tanh_sinh(g, 0.0, 1.0, tol);
  const auto tail = quad::exp_sinh(g, 1.0, tol);
  quad::Result r{(head.value + tail.value) / lambda, (head.abs_error + tail.abs_error) / lambda,
                 head.evaluations + tail.evaluations, head.converged && tail.converged};
  if (!r.converged) throw NumericalFailure("forward_laplace: quadrature did not converge", r.abs_error);
  return r;
}

/// Leading-order Karamata evaluator of the Cesaro mean (1/t) int_0^t f from
/// F = Lf: F(1/t) / (t Gamma(rho+1)). rho != 1 is extrapolation.
template <class F>
double tauberian_cesaro(F&& transform, double t, double rho = 1.0) {
  if (!(t > 0.0)) throw DomainError("tauberian_cesaro: t must be > 0");
  if (!(rho >= 0.0)) throw DomainError("tauberian_cesaro: rho must be >= 0");
  return transform(1.0 / t) / (t * std::tgamma(rho + 1.0));
}

/// F(lambda) ~ lambda^{-rho} L(1/lambda) as lambda -> 0.
struct SlowlyVaryingAsymptote {
  double rho = 1.0;
  std::function<double(double)> L;

  /// |L(2y)/L(y) - 1| along the given y values.
  std::vector<double> doubling_profile(const std::vector<double>& ys) const;
  /// True when L > 0 on ys and the doubling profile is nonincreasing.
  bool looks_slowly_varying(const std::vector<double>& ys) const;
};

/// L(y) = y^{-rho} F(1/y).
SlowlyVaryingAsymptote asymptote_from_transform(std::function<double(double)> transform, double rho = 1.0);

}  // namespace subwave
