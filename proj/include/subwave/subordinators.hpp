#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "subwave/laplace.hpp"
#include "subwave/quadrature.hpp"

namespace subwave {

enum class KernelClass { C1, C2, C3, Unclassified };

std::string to_string(KernelClass c);

struct ClassParams {
  std::optional<double> alpha, mu0, C, s;
};

/// Weight mu on [0,1] of a distributed-order kernel.
struct Weight {
  enum class Kind { Constant, Power, Custom };
  Kind kind = Kind::Constant;
  double mu0 = 1.0;    // Constant: mu == mu0
  double s = 0.0;      // Power: mu(tau) = scale * tau^s
  double scale = 1.0;
  std::function<double(double)> fn;  // Custom

  static Weight constant(double mu0);
  static Weight power(double s, double scale = 1.0);
  static Weight custom(std::function<double(double)> fn);

  double operator()(double tau) const;
  double at_zero() const { return (*this)(0.0); }
};

class SubordinatorSpec {
 public:
  enum class Variant { Stable, Gamma, DistributedOrder, LaplaceSymbolOnly };

  static SubordinatorSpec stable(double alpha);
  static SubordinatorSpec gamma(double a, double b);
  static SubordinatorSpec distributed(Weight weight);
  /// K must be the analytic continuation of a real symbol (it is evaluated
  /// on inversion contours).
  static SubordinatorSpec symbol_only(std::function<cplx(cplx)> K, KernelClass tag = KernelClass::Unclassified,
                                      ClassParams params = {});

  Variant variant() const { return variant_; }
  KernelClass class_tag() const { return class_tag_; }
  const ClassParams& class_params() const { return class_params_; }
  double alpha() const { return p1_; }
  double a() const { return p1_; }
  double b() const { return p2_; }
  const Weight& weight() const { return weight_; }
  bool has_levy_representation() const { return variant_ != Variant::LaplaceSymbolOnly; }
  bool is_half_stable() const { return variant_ == Variant::Stable && p1_ == 0.5; }
  std::string describe() const;

  // Used by kernel_transform; public so the template can reach them.
  double distributed_K_real(double lambda) const;
  cplx distributed_K_complex(cplx lambda) const;
  cplx symbol(cplx lambda) const { return symbol_(lambda); }

 private:
  SubordinatorSpec() = default;
  Variant variant_ = Variant::Stable;
  KernelClass class_tag_ = KernelClass::Unclassified;
  ClassParams class_params_;
  double p1_ = 0.0, p2_ = 0.0;
  Weight weight_;
  std::shared_ptr<const quad::GaussRule> rule_;  // off-axis K for Power/Custom weights
  std::function<cplx(cplx)> symbol_;
};

/// K(lambda), the Laplace transform of the kernel k; Scalar is double or cplx.
template <class Scalar>
Scalar kernel_transform(const SubordinatorSpec& spec, Scalar lambda);

/// Phi(lambda) = lambda K(lambda).
template <class Scalar>
Scalar laplace_exponent_t(const SubordinatorSpec& spec, Scalar lambda) {
  return lambda * kernel_transform(spec, lambda);
}

double laplace_exponent(const SubordinatorSpec& spec, double lambda);
double kernel_laplace(const SubordinatorSpec& spec, double lambda);
/// Levy tail sigma((t, inf)).
double kernel_k(const SubordinatorSpec& spec, double t);
/// Levy density d sigma / d tau.
double levy_density(const SubordinatorSpec& spec, double tau);
/// k(t) = int_0^1 t^{-tau} / Gamma(1-tau) mu(tau) d tau.
double distributed_kernel(const Weight& weight, double t);

/// Everything about E(t) at one fixed t. K and Phi are evaluated once at all
/// inversion nodes; each query is then a weighted sum.
class InverseSubordinatorSlice {
 public:
  InverseSubordinatorSlice(const SubordinatorSpec& spec, double t, InversionConfig cfg = {});

  double t() const { return t_; }
  const SubordinatorSpec& spec() const { return spec_; }

  InversionResult density(double tau) const;
  /// P(E(t) > theta).
  InversionResult survival(double theta) const;
  /// (1/t) int_0^t G_s(tau) ds.
  InversionResult cesaro_density(double tau) const;
  /// (1/t) int_0^t P(E(s) > theta) ds.
  InversionResult cesaro_survival(double theta) const;

  /// Phi(1/t), the exponent of the Chernoff tail bound.
  double phi_inv_t() const { return phi_inv_t_; }
  /// tau with e^{-tau Phi(1/t)} = level.
  double tail_cutoff(double level = 1e-10) const;
  /// P(E(t) > tau) <= e^{1 - tau Phi(1/t)}.
  double tail_bound(double tau) const;

 private:
  template <class Fn>
  InversionResult invert(Fn&& at_node, const char* what) const;

  SubordinatorSpec spec_;
  double t_;
  InversionPlan plan_;
  std::vector<cplx> K_, Phi_;
  double phi_inv_t_;
};

double density_G(const SubordinatorSpec& spec, double t, double tau, InversionConfig cfg = {});
double survival_E(const SubordinatorSpec& spec, double t, double theta, InversionConfig cfg = {});
/// The same survival through tau-quadrature of the inverted density; slow,
/// kept as a cross-check of survival_E.
quad::Result survival_by_density_quadrature(const SubordinatorSpec& spec, double t, double theta,
                                            InversionConfig cfg = {});

struct DensityGrid {
  Eigen::VectorXd t_values;
  Eigen::VectorXd tau_values;
  Eigen::MatrixXd values;  // rows follow t, columns follow tau
  double est_abs_error = 0.0;
  Eigen::VectorXd tail_mass;  // P(E(t) > tau_max of the grid)

  /// Trapezoid mass over the tau grid plus the tail mass, per t.
  Eigen::VectorXd corrected_mass() const;
};

DensityGrid tabulate_density(const SubordinatorSpec& spec, const std::vector<double>& t_values,
                             const std::vector<double>& tau_values, InversionConfig cfg = {});

struct ClassReport {
  KernelClass tested = KernelClass::Unclassified;
  std::vector<double> lambdas;
  std::vector<double> ratios;  // K(lambda) / candidate asymptote
  double band = 0.05;
  bool pass = false;
  std::string note;
};

/// Ratio of K to the asymptote declared by the spec's class tag along a
/// lambda grid decreasing to 0.
ClassReport verify_class(const SubordinatorSpec& spec, const std::vector<double>& lambda_grid, double band = 0.05);

/// K > 0 and lambda K(lambda) nondecreasing on the grid.
bool bernstein_sanity(const SubordinatorSpec& spec, const std::vector<double>& lambda_grid);

}  // namespace subwave
