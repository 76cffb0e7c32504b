#include "subwave/subordinators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "subwave/errors.hpp"
#include "subwave/specfun.hpp"

namespace subwave {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr int kOffAxisNodes = 64;

// Kahan's trick: log(1+z) without losing digits when |z| is small.
template <class Scalar>
Scalar log1p_any(Scalar z) {
  const Scalar w = Scalar(1.0) + z;
  if (w == Scalar(1.0)) return z;
  return std::log(w) * z / (w - Scalar(1.0));
}

// mu0 (lambda-1) / (lambda log lambda), with the removable point at 1.
cplx constant_weight_K(double mu0, cplx lambda) {
  const cplx u = lambda - 1.0;
  if (std::abs(u) < 1e-5) return mu0 * (1.0 + u / 2.0 - u * u / 12.0) / lambda;
  return mu0 * u / (lambda * std::log(lambda));
}

void require_positive_finite(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be finite and > 0");
}

}  // namespace

std::string to_string(KernelClass c) {
  switch (c) {
    case KernelClass::C1: return "C1";
    case KernelClass::C2: return "C2";
    case KernelClass::C3: return "C3";
    case KernelClass::Unclassified: break;
  }
  return "Unclassified";
}

Weight Weight::constant(double mu0) {
  if (!(mu0 >= 0.0) || !std::isfinite(mu0)) throw DomainError("Weight: mu0 must be >= 0");
  Weight w;
  w.kind = Kind::Constant;
  w.mu0 = mu0;
  return w;
}

Weight Weight::power(double s, double scale) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("Weight: power exponent s must be >= 0");
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw DomainError("Weight: scale must be >= 0");
  Weight w;
  w.kind = Kind::Power;
  w.s = s;
  w.scale = scale;
  w.mu0 = s == 0.0 ? scale : 0.0;
  return w;
}

Weight Weight::custom(std::function<double(double)> fn) {
  if (!fn) throw DomainError("Weight: empty function");
  Weight w;
  w.kind = Kind::Custom;
  w.fn = std::move(fn);
  for (int i = 0; i <= 100; ++i) {
    const double v = w.fn(i / 100.0);
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("Weight: mu must be finite and >= 0 on [0,1]");
  }
  w.mu0 = w.fn(0.0);
  return w;
}

double Weight::operator()(double tau) const {
  switch (kind) {
    case Kind::Constant: return mu0;
    case Kind::Power: return s == 0.0 ? scale : scale * std::pow(tau, s);
    case Kind::Custom: return fn(tau);
  }
  return 0.0;
}

SubordinatorSpec SubordinatorSpec::stable(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("stable: alpha must lie in (0,1)");
  SubordinatorSpec spec;
  spec.variant_ = Variant::Stable;
  spec.p1_ = alpha;
  spec.class_tag_ = KernelClass::C1;
  spec.class_params_.alpha = alpha;
  return spec;
}

SubordinatorSpec SubordinatorSpec::gamma(double a, double b) {
  require_positive_finite(a, "gamma: a");
  require_positive_finite(b, "gamma: b");
  SubordinatorSpec spec;
  spec.variant_ = Variant::Gamma;
  spec.p1_ = a;
  spec.p2_ = b;
  // K(0+) = a/b is finite: none of the three classes.
  spec.class_tag_ = KernelClass::Unclassified;
  return spec;
}

SubordinatorSpec SubordinatorSpec::distributed(Weight weight) {
  SubordinatorSpec spec;
  spec.variant_ = Variant::DistributedOrder;
  switch (weight.kind) {
    case Weight::Kind::Constant:
      if (!(weight.mu0 > 0.0)) throw DomainError("distributed: weight vanishes identically");
      spec.class_tag_ = KernelClass::C2;
      spec.class_params_.mu0 = weight.mu0;
      break;
    case Weight::Kind::Power:
      if (!(weight.scale > 0.0)) throw DomainError("distributed: weight vanishes identically");
      if (weight.s == 0.0) {
        spec.class_tag_ = KernelClass::C2;
        spec.class_params_.mu0 = weight.scale;
      } else {
        // Watson's lemma: int_0^1 lambda^{tau-1} tau^s d tau ~ Gamma(s+1) / (lambda log(1/lambda)^{1+s}).
        spec.class_tag_ = KernelClass::C3;
        spec.class_params_.C = weight.scale * std::tgamma(weight.s + 1.0);
        spec.class_params_.s = weight.s;
      }
      spec.rule_ = std::make_shared<const quad::GaussRule>(quad::gauss_jacobi_unit(kOffAxisNodes, weight.s));
      break;
    case Weight::Kind::Custom: {
      double peak = 0.0;
      for (int i = 0; i <= 100; ++i) peak = std::max(peak, weight(i / 100.0));
      if (!(peak > 0.0)) throw DomainError("distributed: weight vanishes identically");
      if (weight.mu0 > 0.0) {
        spec.class_tag_ = KernelClass::C2;
        spec.class_params_.mu0 = weight.mu0;
      }
      spec.rule_ = std::make_shared<const quad::GaussRule>(quad::gauss_legendre_unit(kOffAxisNodes));
      break;
    }
  }
  spec.weight_ = std::move(weight);
  return spec;
}

SubordinatorSpec SubordinatorSpec::symbol_only(std::function<cplx(cplx)> K, KernelClass tag, ClassParams params) {
  if (!K) throw DomainError("symbol_only: empty symbol");
  const bool ok = (tag == KernelClass::Unclassified) || (tag == KernelClass::C1 && params.alpha) ||
                  (tag == KernelClass::C2 && params.mu0) ||
                  (tag == KernelClass::C3 && params.C && params.s && *params.s > 0.0);
  if (!ok) throw DomainError("symbol_only: class tag lacks its parameters");
  SubordinatorSpec spec;
  spec.variant_ = Variant::LaplaceSymbolOnly;
  spec.symbol_ = std::move(K);
  spec.class_tag_ = tag;
  spec.class_params_ = params;
  return spec;
}

std::string SubordinatorSpec::describe() const {
  std::ostringstream os;
  switch (variant_) {
    case Variant::Stable: os << "stable(alpha=" << p1_ << ")"; break;
    case Variant::Gamma: os << "gamma(a=" << p1_ << ", b=" << p2_ << ")"; break;
    case Variant::DistributedOrder:
      if (weight_.kind == Weight::Kind::Constant)
        os << "distributed(mu=" << weight_.mu0 << ")";
      else if (weight_.kind == Weight::Kind::Power)
        os << "distributed(mu=" << weight_.scale << "*tau^" << weight_.s << ")";
      else
        os << "distributed(custom)";
      break;
    case Variant::LaplaceSymbolOnly: os << "symbol-only"; break;
  }
  return os.str();
}

double SubordinatorSpec::distributed_K_real(double lambda) const {
  const double log_l = std::log(lambda);
  auto f = [&](double tau) { return std::exp((tau - 1.0) * log_l) * weight_(tau); };
  const auto r = quad::gauss_kronrod(f, 0.0, 1.0, {1e-12, 1e-12, 2000});
  if (!r.converged) throw NumericalFailure("distributed K: quadrature missed tolerance", r.abs_error);
  return r.value;
}

cplx SubordinatorSpec::distributed_K_complex(cplx lambda) const {
  if (weight_.kind == Weight::Kind::Constant) return constant_weight_K(weight_.mu0, lambda);
  const cplx log_l = std::log(lambda);
  if (weight_.kind == Weight::Kind::Power)
    return weight_.scale * rule_->apply([&](double tau) { return std::exp((tau - 1.0) * log_l); });
  return rule_->apply([&](double tau) { return std::exp((tau - 1.0) * log_l) * weight_.fn(tau); });
}

template <class Scalar>
Scalar kernel_transform(const SubordinatorSpec& spec, Scalar lambda) {
  using V = SubordinatorSpec::Variant;
  switch (spec.variant()) {
    case V::Stable: return std::pow(lambda, spec.alpha() - 1.0);
    case V::Gamma: return spec.a() * log1p_any(lambda / spec.b()) / lambda;
    case V::DistributedOrder:
      if constexpr (std::is_same_v<Scalar, double>)
        return spec.distributed_K_real(lambda);
      else
        return spec.distributed_K_complex(lambda);
    case V::LaplaceSymbolOnly:
      if constexpr (std::is_same_v<Scalar, double>)
        return spec.symbol(cplx(lambda, 0.0)).real();
      else
        return spec.symbol(lambda);
  }
  return Scalar(0.0);
}

template double kernel_transform<double>(const SubordinatorSpec&, double);
template cplx kernel_transform<cplx>(const SubordinatorSpec&, cplx);

double kernel_laplace(const SubordinatorSpec& spec, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("kernel_laplace: lambda must be > 0");
  return kernel_transform(spec, lambda);
}

double laplace_exponent(const SubordinatorSpec& spec, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("laplace_exponent: lambda must be >= 0");
  if (lambda == 0.0) return 0.0;
  return lambda * kernel_transform(spec, lambda);
}

double distributed_kernel(const Weight& weight, double t) {
  require_positive_finite(t, "distributed_kernel: t");
  const double log_t = std::log(t);
  auto f = [&](double tau) { return std::exp(-tau * log_t) * rgamma(1.0 - tau) * weight(tau); };
  const auto r = quad::gauss_kronrod(f, 0.0, 1.0, {1e-13, 1e-12, 2000});
  if (!r.converged) throw NumericalFailure("distributed_kernel: quadrature missed tolerance", r.abs_error);
  return r.value;
}

double kernel_k(const SubordinatorSpec& spec, double t) {
  require_positive_finite(t, "kernel_k: t");
  using V = SubordinatorSpec::Variant;
  switch (spec.variant()) {
    case V::Stable: return std::pow(t, -spec.alpha()) * rgamma(1.0 - spec.alpha());
    case V::Gamma: return spec.a() * exp_integral_e1(spec.b() * t);
    case V::DistributedOrder: return distributed_kernel(spec.weight(), t);
    case V::LaplaceSymbolOnly: break;
  }
  throw UnsupportedRepresentation("kernel_k: spec is given by its Laplace symbol only");
}

double levy_density(const SubordinatorSpec& spec, double tau) {
  require_positive_finite(tau, "levy_density: tau");
  using V = SubordinatorSpec::Variant;
  switch (spec.variant()) {
    case V::Stable: {
      const double a = spec.alpha();
      return a * std::pow(tau, -1.0 - a) * rgamma(1.0 - a);
    }
    case V::Gamma: return spec.a() * std::exp(-spec.b() * tau) / tau;
    case V::DistributedOrder: {
      const double log_t = std::log(tau);
      auto f = [&](double r) { return r * std::exp(-(r + 1.0) * log_t) * rgamma(1.0 - r) * spec.weight()(r); };
      const auto q = quad::gauss_kronrod(f, 0.0, 1.0, {1e-13, 1e-12, 2000});
      if (!q.converged) throw NumericalFailure("levy_density: quadrature missed tolerance", q.abs_error);
      return q.value;
    }
    case V::LaplaceSymbolOnly: break;
  }
  throw UnsupportedRepresentation("levy_density: spec is given by its Laplace symbol only");
}

// ---------------------------------------------------------------------------

InverseSubordinatorSlice::InverseSubordinatorSlice(const SubordinatorSpec& spec, double t, InversionConfig cfg)
    : spec_(spec), t_(t), plan_(t, cfg) {
  phi_inv_t_ = laplace_exponent(spec_, 1.0 / t);
  if (spec_.is_half_stable()) return;
  const auto& nodes = plan_.nodes();
  K_.resize(nodes.size());
  Phi_.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    K_[i] = kernel_transform(spec_, nodes[i]);
    Phi_[i] = nodes[i] * K_[i];
  }
}

template <class Fn>
InversionResult InverseSubordinatorSlice::invert(Fn&& at_node, const char* what) const {
  try {
    return plan_.combine(at_node);
  } catch (const NumericalFailure& e) {
    throw NumericalFailure(std::string(what) + " for " + spec_.describe() + ": " + e.what(), e.achieved_error());
  }
}

InversionResult InverseSubordinatorSlice::density(double tau) const {
  if (!(tau >= 0.0)) throw DomainError("density: tau must be >= 0");
  if (spec_.is_half_stable()) return {std::exp(-tau * tau / (4.0 * t_)) / (kSqrtPi * std::sqrt(t_)), 0.0, false};
  return invert([&](std::size_t i) { return K_[i] * std::exp(-tau * Phi_[i]); }, "density");
}

InversionResult InverseSubordinatorSlice::survival(double theta) const {
  if (!(theta >= 0.0)) throw DomainError("survival: theta must be >= 0");
  if (theta == 0.0) return {1.0, 0.0, false};
  if (spec_.is_half_stable()) return {std::erfc(theta / (2.0 * std::sqrt(t_))), 0.0, false};
  const auto& s = plan_.nodes();
  return invert([&](std::size_t i) { return std::exp(-theta * Phi_[i]) / s[i]; }, "survival");
}

InversionResult InverseSubordinatorSlice::cesaro_density(double tau) const {
  if (!(tau >= 0.0)) throw DomainError("cesaro_density: tau must be >= 0");
  if (spec_.is_half_stable()) {
    const double st = std::sqrt(t_);
    const double v = 2.0 * std::exp(-tau * tau / (4.0 * t_)) / (kSqrtPi * st) - (tau / t_) * std::erfc(tau / (2.0 * st));
    return {v, 0.0, false};
  }
  const auto& s = plan_.nodes();
  auto r = invert([&](std::size_t i) { return K_[i] * std::exp(-tau * Phi_[i]) / s[i]; }, "cesaro density");
  r.value /= t_;
  r.error_estimate /= t_;
  return r;
}

InversionResult InverseSubordinatorSlice::cesaro_survival(double theta) const {
  if (!(theta >= 0.0)) throw DomainError("cesaro_survival: theta must be >= 0");
  if (theta == 0.0) return {1.0, 0.0, false};
  if (spec_.is_half_stable()) {
    const double st = std::sqrt(t_);
    const double z = theta / (2.0 * st);
    const double v = (1.0 + theta * theta / (2.0 * t_)) * std::erfc(z) - theta / (kSqrtPi * st) * std::exp(-z * z);
    return {v, 0.0, false};
  }
  const auto& s = plan_.nodes();
  auto r = invert([&](std::size_t i) { return std::exp(-theta * Phi_[i]) / (s[i] * s[i]); }, "cesaro survival");
  r.value /= t_;
  r.error_estimate /= t_;
  return r;
}

double InverseSubordinatorSlice::tail_cutoff(double level) const {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("tail_cutoff: level must lie in (0,1)");
  return -std::log(level) / phi_inv_t_;
}

double InverseSubordinatorSlice::tail_bound(double tau) const {
  return std::min(1.0, std::exp(1.0 - tau * phi_inv_t_));
}

double density_G(const SubordinatorSpec& spec, double t, double tau, InversionConfig cfg) {
  if (!(t > 0.0)) throw DomainError("density_G: t must be > 0 (E(0) = 0 has no density)");
  return InverseSubordinatorSlice(spec, t, cfg).density(tau).value;
}

double survival_E(const SubordinatorSpec& spec, double t, double theta, InversionConfig cfg) {
  if (!(theta >= 0.0)) throw DomainError("survival_E: theta must be >= 0");
  if (t == 0.0) return theta == 0.0 ? 1.0 : 0.0;
  if (!(t > 0.0)) throw DomainError("survival_E: t must be >= 0");
  if (theta == 0.0) return 1.0;
  return InverseSubordinatorSlice(spec, t, cfg).survival(theta).value;
}

quad::Result survival_by_density_quadrature(const SubordinatorSpec& spec, double t, double theta,
                                            InversionConfig cfg) {
  if (!(theta >= 0.0)) throw DomainError("survival_by_density_quadrature: theta must be >= 0");
  const InverseSubordinatorSlice slice(spec, t, cfg);
  const double tau_max = slice.tail_cutoff(1e-10);
  if (theta >= tau_max) return {0.0, slice.tail_bound(theta), 0, true};
  double inv_err = 0.0;
  auto f = [&](double tau) {
    const auto r = slice.density(tau);
    inv_err = std::max(inv_err, r.error_estimate);
    return r.value;
  };
  auto q = quad::gauss_kronrod(f, theta, tau_max, {1e-11, 1e-10, 2000});
  q.abs_error += slice.tail_bound(tau_max) + inv_err * (tau_max - theta);
  return q;
}

Eigen::VectorXd DensityGrid::corrected_mass() const {
  Eigen::VectorXd mass(t_values.size());
  const Eigen::Index n = tau_values.size();
  for (Eigen::Index i = 0; i < t_values.size(); ++i) {
    double m = 0.0;
    for (Eigen::Index j = 1; j < n; ++j)
      m += 0.5 * (tau_values(j) - tau_values(j - 1)) * (values(i, j) + values(i, j - 1));
    mass(i) = m + tail_mass(i);
  }
  return mass;
}

DensityGrid tabulate_density(const SubordinatorSpec& spec, const std::vector<double>& t_values,
                             const std::vector<double>& tau_values, InversionConfig cfg) {
  DensityGrid grid;
  grid.t_values = Eigen::Map<const Eigen::VectorXd>(t_values.data(), static_cast<Eigen::Index>(t_values.size()));
  grid.tau_values =
      Eigen::Map<const Eigen::VectorXd>(tau_values.data(), static_cast<Eigen::Index>(tau_values.size()));
  grid.values.resize(grid.t_values.size(), grid.tau_values.size());
  grid.tail_mass = Eigen::VectorXd::Zero(grid.t_values.size());
  for (Eigen::Index i = 0; i < grid.t_values.size(); ++i) {
    const InverseSubordinatorSlice slice(spec, grid.t_values(i), cfg);
    for (Eigen::Index j = 0; j < grid.tau_values.size(); ++j) {
      const auto r = slice.density(grid.tau_values(j));
      grid.values(i, j) = r.value;
      grid.est_abs_error = std::max(grid.est_abs_error, r.error_estimate);
    }
    if (grid.tau_values.size() > 0) grid.tail_mass(i) = slice.survival(grid.tau_values(grid.tau_values.size() - 1)).value;
  }
  return grid;
}

ClassReport verify_class(const SubordinatorSpec& spec, const std::vector<double>& lambda_grid, double band) {
  ClassReport rep;
  rep.tested = spec.class_tag();
  rep.band = band;
  rep.lambdas = lambda_grid;
  const auto& p = spec.class_params();
  if (rep.tested == KernelClass::Unclassified) {
    rep.note = "no asymptotic class declared";
    return rep;
  }
  if (lambda_grid.empty()) {
    rep.note = "empty lambda grid";
    return rep;
  }
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    const double l = lambda_grid[i];
    if (!(l > 0.0) || (i > 0 && !(l < lambda_grid[i - 1]))) {
      rep.note = "lambda grid must be positive and decreasing";
      rep.ratios.clear();
      return rep;
    }
    double candidate = 0.0;
    switch (rep.tested) {
      case KernelClass::C1: candidate = std::pow(l, *p.alpha - 1.0); break;
      case KernelClass::C2: candidate = *p.mu0 / (l * std::log(1.0 / l)); break;
      case KernelClass::C3: candidate = *p.C / (l * std::pow(std::log(1.0 / l), 1.0 + *p.s)); break;
      case KernelClass::Unclassified: break;
    }
    rep.ratios.push_back(kernel_transform(spec, l) / candidate);
  }
  const double first = std::abs(rep.ratios.front() - 1.0);
  const double last = std::abs(rep.ratios.back() - 1.0);
  rep.pass = std::isfinite(last) && last <= band && last <= first + 1e-12;
  if (!rep.pass) rep.note = "ratio does not settle at 1 within the band";
  return rep;
}

bool bernstein_sanity(const SubordinatorSpec& spec, const std::vector<double>& lambda_grid) {
  std::vector<double> ls = lambda_grid;
  std::sort(ls.begin(), ls.end());
  double prev = -1.0;
  for (double l : ls) {
    const double k = kernel_transform(spec, l);
    if (!(k > 0.0)) return false;
    const double phi = l * k;
    if (phi < prev * (1.0 - 1e-12)) return false;
    prev = phi;
  }
  return true;
}

}  // namespace subwave
