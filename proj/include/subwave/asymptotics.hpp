#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subwave/subordinators.hpp"
#include "subwave/waves.hpp"

namespace subwave {

enum class BoundSide { Lower, Upper };
std::string to_string(BoundSide s);

struct LawParams {
  std::optional<double> alpha, mu0, C, s;  // class parameters (C1: alpha, C2: mu0, C3: C and s)
  double v = 1.0;
  double eps = 0.05;
  double beta = 0.5;
  double x_offset = 0.0;  // x_eps^- for the lower law, x_eps^+ for the upper
};

/// Leading-order Cesaro asymptote of a step wave,
///   lower: (1-eps) exp(-theta g(t)),  upper: (1-eps) exp(-theta g(t)) + eps,
/// theta = (x - x_offset)/v, g(t) = t^{-alpha} | mu0/log t | C log(t)^{-1-s},
/// and its level-beta front x = C_side * shape(t) + x_offset with
/// shape = 1/g up to the class coefficient.
struct AsymptoticLaw {
  KernelClass cls = KernelClass::C1;
  BoundSide side = BoundSide::Lower;
  LawParams params;
  double C_side = 0.0;

  static AsymptoticLaw make(KernelClass cls, BoundSide side, LawParams params);
  /// Class parameters taken from a spec.
  static AsymptoticLaw for_spec(const SubordinatorSpec& spec, BoundSide side, LawParams params);

  double class_coefficient() const;  // 1, mu0 or C
  double g(double t) const;
  double shape(double t) const;      // t^alpha, log t, log(t)^{1+s}
};

double cesaro_asymptote(const AsymptoticLaw& law, double x, double t);
double front_law(const AsymptoticLaw& law, double t);

struct FitParams {
  double x_offset = 0.0;          // subtracted before the C1 log-log fit
  std::optional<double> s;        // C3 shape exponent
  std::optional<double> expected; // reported alongside the fit
};

struct FitReport {
  KernelClass cls = KernelClass::C1;
  FrontSide side = FrontSide::Exact;
  double fitted = 0.0;    // C1: exponent; C2/C3: coefficient of the shape
  double intercept = 0.0;
  double expected = 0.0;  // NaN when not given
  double residual = 0.0;  // RMS residual over RMS of the fitted quantity
  int points = 0;
};

/// Least-squares fit of a front trace to its law shape.
FitReport fit_scaling(const FrontTrace& trace, KernelClass cls, const FitParams& params = {});

struct BoundPoint {
  double t = 0.0, x = 0.0, lower = 0.0, upper = 0.0;
  bool lower_ok = false, upper_ok = false, counted = false;
};

struct BoundReport {
  KernelClass cls = KernelClass::C1;
  double slack = 0.0;
  double burn_in = 0.0;
  std::vector<BoundPoint> points;
  double worst_margin = 0.0;  // max normalised violation; <= 0 inside the bounds
  int violations = 0;
  bool pass = false;
  std::vector<std::string> notes;
};

/// Default burn-in: 1e2 for C1, 1e4 for the logarithmic classes.
double default_burn_in(KernelClass cls);

/// law_lo - slack|law_lo| <= x(t) <= law_up + slack|law_up| for t >= burn_in.
BoundReport check_two_sided(const FrontTrace& trace, const AsymptoticLaw& lower, const AsymptoticLaw& upper,
                            double slack, std::optional<double> burn_in = std::nullopt);

}  // namespace subwave
