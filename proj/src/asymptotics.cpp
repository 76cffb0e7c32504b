#include "subwave/asymptotics.hpp"

#include <cmath>
#include <limits>

#include "subwave/errors.hpp"

namespace subwave {

std::string to_string(BoundSide s) { return s == BoundSide::Lower ? "lower" : "upper"; }

AsymptoticLaw AsymptoticLaw::make(KernelClass cls, BoundSide side, LawParams p) {
  if (!(p.v > 0.0)) throw DomainError("AsymptoticLaw: v must be > 0");
  if (!(p.eps > 0.0 && p.eps < 0.5)) throw DomainError("AsymptoticLaw: eps must lie in (0, 1/2)");
  switch (cls) {
    case KernelClass::C1:
      if (!p.alpha || !(*p.alpha > 0.0 && *p.alpha < 1.0)) throw DomainError("AsymptoticLaw: C1 needs alpha in (0,1)");
      break;
    case KernelClass::C2:
      if (!p.mu0 || !(*p.mu0 > 0.0)) throw DomainError("AsymptoticLaw: C2 needs mu0 > 0");
      break;
    case KernelClass::C3:
      if (!p.C || !p.s || !(*p.C > 0.0) || !(*p.s > 0.0)) throw DomainError("AsymptoticLaw: C3 needs C, s > 0");
      break;
    case KernelClass::Unclassified: throw DomainError("AsymptoticLaw: no law for an unclassified kernel");
  }
  double num = 0.0;
  if (side == BoundSide::Lower) {
    if (!(p.beta > 0.0 && p.beta < 1.0 - p.eps)) throw DomainError("AsymptoticLaw: lower law needs beta in (0, 1-eps)");
    num = std::log((1.0 - p.eps) / p.beta);
  } else {
    // Solving W^+ = beta gives log((1-eps)/(beta-eps)).
    if (!(p.beta > p.eps && p.beta < 1.0)) throw DomainError("AsymptoticLaw: upper law needs beta in (eps, 1)");
    num = std::log((1.0 - p.eps) / (p.beta - p.eps));
  }
  AsymptoticLaw law;
  law.cls = cls;
  law.side = side;
  law.params = p;
  law.C_side = p.v * num / law.class_coefficient();
  return law;
}

AsymptoticLaw AsymptoticLaw::for_spec(const SubordinatorSpec& spec, BoundSide side, LawParams p) {
  const auto& cp = spec.class_params();
  p.alpha = cp.alpha;
  p.mu0 = cp.mu0;
  p.C = cp.C;
  p.s = cp.s;
  return make(spec.class_tag(), side, p);
}

double AsymptoticLaw::class_coefficient() const {
  switch (cls) {
    case KernelClass::C1: return 1.0;
    case KernelClass::C2: return *params.mu0;
    case KernelClass::C3: return *params.C;
    case KernelClass::Unclassified: break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double AsymptoticLaw::shape(double t) const {
  if (cls == KernelClass::C1) {
    if (!(t > 0.0)) throw DomainError("asymptotic law: t must be > 0");
    return std::pow(t, *params.alpha);
  }
  if (!(t > 1.0)) throw DomainError("asymptotic law: logarithmic classes need t > 1");
  const double lt = std::log(t);
  return cls == KernelClass::C2 ? lt : std::pow(lt, 1.0 + *params.s);
}

double AsymptoticLaw::g(double t) const { return class_coefficient() / shape(t); }

double cesaro_asymptote(const AsymptoticLaw& law, double x, double t) {
  const auto& p = law.params;
  const double theta = std::max(0.0, (x - p.x_offset) / p.v);
  const double w = (1.0 - p.eps) * std::exp(-theta * law.g(t));
  return law.side == BoundSide::Lower ? w : w + p.eps;
}

double front_law(const AsymptoticLaw& law, double t) { return law.C_side * law.shape(t) + law.params.x_offset; }

FitReport fit_scaling(const FrontTrace& trace, KernelClass cls, const FitParams& params) {
  if (cls == KernelClass::Unclassified) throw DomainError("fit_scaling: no shape for an unclassified kernel");
  if (cls == KernelClass::C3 && !params.s) throw DomainError("fit_scaling: C3 needs s");
  std::vector<double> xs, ys;
  double t_min = std::numeric_limits<double>::infinity(), t_max = 0.0;
  for (Eigen::Index i = 0; i < trace.t_values.size(); ++i) {
    const double t = trace.t_values(i), x = trace.x_values(i);
    if (!std::isfinite(x)) continue;
    double u = 0.0, y = 0.0;
    if (cls == KernelClass::C1) {
      if (!(x - params.x_offset > 0.0) || !(t > 0.0)) continue;
      u = std::log(t);
      y = std::log(x - params.x_offset);
    } else {
      if (!(t > 1.0)) continue;
      u = cls == KernelClass::C2 ? std::log(t) : std::pow(std::log(t), 1.0 + *params.s);
      y = x;
    }
    xs.push_back(u);
    ys.push_back(y);
    t_min = std::min(t_min, t);
    t_max = std::max(t_max, t);
  }
  const auto n = static_cast<Eigen::Index>(xs.size());
  if (n < 4) throw DomainError("fit_scaling: need at least 4 usable points");
  if (!(t_max >= 100.0 * t_min)) throw DomainError("fit_scaling: t values must span two decades");
  const Eigen::Map<const Eigen::VectorXd> u(xs.data(), n), y(ys.data(), n);
  const double spread = (y.array() - y.mean()).abs().maxCoeff();
  if (!(spread > 1e-12 * std::max(1.0, y.cwiseAbs().maxCoeff()))) throw FitDegenerate("fit_scaling: constant trace");
  Eigen::MatrixXd A(n, 2);
  A.col(0) = u;
  A.col(1).setOnes();
  const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd res = A * coef - y;
  FitReport rep;
  rep.cls = cls;
  rep.side = trace.side;
  rep.fitted = coef(0);
  rep.intercept = coef(1);
  rep.expected = params.expected.value_or(std::numeric_limits<double>::quiet_NaN());
  rep.residual = std::sqrt(res.squaredNorm() / y.squaredNorm());
  rep.points = static_cast<int>(n);
  return rep;
}

double default_burn_in(KernelClass cls) { return cls == KernelClass::C1 ? 1e2 : 1e4; }

BoundReport check_two_sided(const FrontTrace& trace, const AsymptoticLaw& lower, const AsymptoticLaw& upper,
                            double slack, std::optional<double> burn_in) {
  if (lower.side != BoundSide::Lower || upper.side != BoundSide::Upper)
    throw DomainError("check_two_sided: expected a lower and an upper law");
  if (lower.cls != upper.cls || lower.params.v != upper.params.v || lower.params.eps != upper.params.eps)
    throw DomainError("check_two_sided: laws must share class, v and eps");
  if (lower.params.beta != trace.beta || upper.params.beta != trace.beta)
    throw DomainError("check_two_sided: laws and trace must share beta");
  if (!(slack >= 0.0)) throw DomainError("check_two_sided: slack must be >= 0");
  BoundReport rep;
  rep.cls = lower.cls;
  rep.slack = slack;
  rep.burn_in = burn_in.value_or(default_burn_in(lower.cls));
  rep.worst_margin = -std::numeric_limits<double>::infinity();
  int counted = 0;
  for (Eigen::Index i = 0; i < trace.t_values.size(); ++i) {
    BoundPoint p;
    p.t = trace.t_values(i);
    p.x = trace.x_values(i);
    p.counted = p.t >= rep.burn_in;
    if (p.t > 1.0 || lower.cls == KernelClass::C1) {
      p.lower = front_law(lower, p.t);
      p.upper = front_law(upper, p.t);
      const double lo = p.lower - slack * std::abs(p.lower);
      const double hi = p.upper + slack * std::abs(p.upper);
      p.lower_ok = std::isfinite(p.x) && p.x >= lo;
      p.upper_ok = std::isfinite(p.x) && p.x <= hi;
      if (p.counted) {
        ++counted;
        if (!(p.lower_ok && p.upper_ok)) ++rep.violations;
        if (std::isfinite(p.x)) {
          const double m = std::max((lo - p.x) / std::abs(p.lower), (p.x - hi) / std::abs(p.upper));
          rep.worst_margin = std::max(rep.worst_margin, m);
        } else {
          rep.worst_margin = std::numeric_limits<double>::infinity();
        }
      }
    } else {
      p.counted = false;
    }
    rep.points.push_back(p);
  }
  rep.pass = counted > 0 && rep.violations == 0;
  if (counted == 0) rep.notes.push_back("no trace points beyond the burn-in");
  rep.notes.push_back("upper C1 constant uses log((1-eps)/(beta-eps)) with offset x_eps^+");
  if (lower.cls == KernelClass::C2) rep.notes.push_back("upper C2 exponent keeps the factor 1/mu(0)");
  return rep;
}

}  // namespace subwave
