#include "subwave/waves.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "subwave/errors.hpp"
#include "subwave/quadrature.hpp"

namespace subwave {
namespace {

constexpr double kTailLevel = 1e-10;

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("eps must lie in (0, 1/2)");
}

// int_0^inf psi(x - v tau) dens(tau) d tau over [0, tau_max]; tail_mass is the
// density's mass beyond tau_max, on which psi lies between psi(x - v tau_max)
// and 1.
template <class Dens>
double integrate_profile(const WaveProfile& profile, double x, double tau_max, double tail_mass, Dens&& dens) {
  auto f = [&](double tau) { return profile(x - profile.v() * tau) * dens(tau); };
  // Split where psi changes fastest: its edge (steps) or its centre.
  const double centre = (x - (profile.is_step() ? profile.edge() : 0.0)) / profile.v();
  const quad::Tolerance tol{1e-13, 1e-11, 4000};
  double value = 0.0;
  bool ok = true;
  double err = 0.0;
  auto run = [&](double a, double b) {
    if (b <= a) return;
    const auto r = quad::gauss_kronrod(f, a, b, tol);
    value += r.value;
    err += r.abs_error;
    ok = ok && r.converged;
  };
  if (centre > 0.0 && centre < tau_max) {
    run(0.0, centre);
    run(centre, tau_max);
  } else {
    run(0.0, tau_max);
  }
  if (!ok && err > 1e-10) throw NumericalFailure("subordinate: tau-quadrature missed tolerance", err);
  return value + tail_mass * profile(x - profile.v() * tau_max);
}

// Step profiles in terms of a survival-type function S(theta) with S = 1 for
// theta <= 0.
template <class Surv>
double step_combination(const WaveProfile& p, double x, Surv&& surv) {
  const double theta = (x - p.edge()) / p.v();
  const double s = theta <= 0.0 ? 1.0 : surv(theta);
  if (p.kind() == WaveProfile::Kind::LowerStep) return (1.0 - p.eps()) * s;
  return p.eps() + (1.0 - p.eps()) * s;
}

double bisect_level(const std::function<double(double)>& f, double level, double lo, double hi, bool keep_lo) {
  // f nonincreasing, f(lo) >= level >= f(hi).
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) >= level)
      lo = mid;
    else
      hi = mid;
  }
  return keep_lo ? lo : hi;
}

}  // namespace

WaveProfile WaveProfile::logistic(double v) {
  return from_function([](double xi) { return 1.0 / (1.0 + std::exp(xi)); }, v);
}

WaveProfile WaveProfile::from_function(std::function<double(double)> psi, double v) {
  if (!(v > 0.0)) throw DomainError("WaveProfile: speed must be > 0");
  if (!psi) throw DomainError("WaveProfile: empty profile");
  WaveProfile p;
  p.kind_ = Kind::Smooth;
  p.v_ = v;
  p.psi_ = std::move(psi);
  return p;
}

WaveProfile WaveProfile::lower_step(double eps, double x_minus, double v) {
  check_eps(eps);
  if (!(v > 0.0)) throw DomainError("WaveProfile: speed must be > 0");
  WaveProfile p;
  p.kind_ = Kind::LowerStep;
  p.v_ = v;
  p.eps_ = eps;
  p.edge_ = x_minus;
  return p;
}

WaveProfile WaveProfile::upper_step(double eps, double x_plus, double v) {
  check_eps(eps);
  if (!(v > 0.0)) throw DomainError("WaveProfile: speed must be > 0");
  WaveProfile p;
  p.kind_ = Kind::UpperStep;
  p.v_ = v;
  p.eps_ = eps;
  p.edge_ = x_plus;
  return p;
}

double WaveProfile::operator()(double xi) const {
  switch (kind_) {
    case Kind::Smooth: return psi_(xi);
    case Kind::LowerStep: return xi <= edge_ ? 1.0 - eps_ : 0.0;
    case Kind::UpperStep: return xi <= edge_ ? 1.0 : eps_;
  }
  return 0.0;
}

StepWaves make_step_waves(const WaveProfile& profile, double eps) {
  check_eps(eps);
  if (profile.is_step()) throw DomainError("make_step_waves: profile is already a step");
  // Widen [-w, w] until psi crosses both levels.
  double w = 1.0;
  while (!(profile(-w) > 1.0 - eps && profile(w) < eps)) {
    w *= 2.0;
    if (w > 1e8) throw BracketNotFound("make_step_waves: profile never crosses eps or 1-eps");
  }
  std::function<double(double)> f = [&](double x) { return profile(x); };
  Bracket b;
  b.eps = eps;
  // Keep the side on which the sandwich holds exactly.
  b.x_minus = bisect_level(f, 1.0 - eps, -w, w, true);
  b.x_plus = bisect_level(f, eps, -w, w, false);
  if (profile(b.x_minus) < 1.0 - eps) b.x_minus = std::nextafter(b.x_minus, -1e300);
  return {WaveProfile::lower_step(eps, b.x_minus, profile.v()), WaveProfile::upper_step(eps, b.x_plus, profile.v()),
          b};
}

namespace {

double subordinate_on(const WaveProfile& profile, const InverseSubordinatorSlice& slice, double x) {
  if (profile.is_step())
    return step_combination(profile, x, [&](double th) { return slice.survival(th).value; });
  const double tau_max = slice.tail_cutoff(kTailLevel);
  return integrate_profile(profile, x, tau_max, slice.survival(tau_max).value,
                           [&](double tau) { return slice.density(tau).value; });
}

double cesaro_on(const WaveProfile& profile, const InverseSubordinatorSlice& slice, double x) {
  if (profile.is_step())
    return step_combination(profile, x, [&](double th) { return slice.cesaro_survival(th).value; });
  // E(s) <= E(t) for s <= t, so the pointwise cutoff also bounds the mean.
  const double tau_max = slice.tail_cutoff(kTailLevel);
  return integrate_profile(profile, x, tau_max, slice.cesaro_survival(tau_max).value,
                           [&](double tau) { return slice.cesaro_density(tau).value; });
}

// Leading-order Karamata: M_t of G(tau) ~ Phi(1/t) e^{-tau Phi(1/t)}, and of
// the survival ~ e^{-theta Phi(1/t)}.
double tauberian_on(const WaveProfile& profile, double phi, double x) {
  if (profile.is_step()) return step_combination(profile, x, [&](double th) { return std::exp(-th * phi); });
  const double tau_max = 40.0 / phi;
  return integrate_profile(profile, x, tau_max, std::exp(-40.0),
                           [&](double tau) { return phi * std::exp(-tau * phi); });
}

}  // namespace

double subordinate(const WaveProfile& profile, const SubordinatorSpec& spec, double x, double t,
                   InversionConfig cfg) {
  if (t == 0.0) return profile(x);
  if (!(t > 0.0)) throw DomainError("subordinate: t must be > 0");
  return subordinate_on(profile, InverseSubordinatorSlice(spec, t, cfg), x);
}

double subordinate_by_quadrature(const WaveProfile& profile, const SubordinatorSpec& spec, double x, double t,
                                 InversionConfig cfg) {
  if (!(t > 0.0)) throw DomainError("subordinate: t must be > 0");
  const InverseSubordinatorSlice slice(spec, t, cfg);
  const double tau_max = slice.tail_cutoff(kTailLevel);
  return integrate_profile(profile, x, tau_max, slice.survival(tau_max).value,
                           [&](double tau) { return slice.density(tau).value; });
}

double cesaro_mean(const std::function<double(double)>& g, double t, double quad_tol) {
  if (!(t > 0.0)) throw DomainError("cesaro_mean: t must be > 0");
  const auto r = quad::gauss_kronrod(g, 0.0, t, {quad_tol * t, 1e-13, 8000});
  if (!r.converged && r.abs_error > quad_tol * t)
    throw NumericalFailure("cesaro_mean: quadrature missed tolerance", r.abs_error / t);
  return r.value / t;
}

WaveFamily subordinated_wave(const WaveProfile& profile, const SubordinatorSpec& spec, TimeAverage avg,
                             CesaroEvaluator how, InversionConfig cfg) {
  return [profile, spec, avg, how, cfg](double t) -> SpatialWave {
    if (t == 0.0) return [profile](double x) { return profile(x); };
    if (!(t > 0.0)) throw DomainError("subordinated_wave: t must be > 0");
    if (avg == TimeAverage::Cesaro && how == CesaroEvaluator::Tauberian) {
      const double phi = laplace_exponent(spec, 1.0 / t);
      return [profile, phi](double x) { return tauberian_on(profile, phi, x); };
    }
    auto slice = std::make_shared<const InverseSubordinatorSlice>(spec, t, cfg);
    if (avg == TimeAverage::Pointwise) return [profile, slice](double x) { return subordinate_on(profile, *slice, x); };
    return [profile, slice](double x) { return cesaro_on(profile, *slice, x); };
  };
}

double front_position(const SpatialWave& wave, double beta, double x_lo, double x_hi) {
  if (!(x_lo < x_hi)) throw DomainError("front_position: need x_lo < x_hi");
  double f_lo = wave(x_lo), f_hi = wave(x_hi);
  if (!(f_lo >= beta && beta >= f_hi))
    throw LevelNotAttained("front_position: level " + std::to_string(beta) + " not bracketed by [" +
                           std::to_string(f_hi) + ", " + std::to_string(f_lo) + "]");
  double lo = x_lo, hi = x_hi;
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-9 * std::max(1.0, std::abs(mid))) return mid;
    const double fm = wave(mid);
    if (std::abs(fm - beta) <= 1e-12) return mid;
    if (fm >= beta)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double front_position(const std::function<double(double, double)>& wave, double beta, double t, double x_lo,
                      double x_hi) {
  return front_position([&](double x) { return wave(x, t); }, beta, x_lo, x_hi);
}

std::string to_string(FrontSide s) {
  switch (s) {
    case FrontSide::Exact: return "exact";
    case FrontSide::LowerWave: return "lower";
    case FrontSide::UpperWave: return "upper";
  }
  return "exact";
}

FrontTrace front_trace(const WaveFamily& family, double beta, const std::vector<double>& t_grid, FrontSide side,
                       FrontSearch search) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("front_trace: beta must lie in (0,1)");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("front_trace: t grid must be increasing");
  FrontTrace trace;
  trace.beta = beta;
  trace.side = side;
  const auto n = static_cast<Eigen::Index>(t_grid.size());
  trace.t_values = Eigen::Map<const Eigen::VectorXd>(t_grid.data(), n);
  trace.x_values = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::quiet_NaN());
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = t_grid[static_cast<std::size_t>(i)];
    try {
      const SpatialWave wave = family(t);
      double lo = search.x_lo, hi = search.x_hi;
      if (std::isfinite(prev)) {
        const double w = std::max(1.0, 0.25 * std::abs(prev));
        lo = prev - w;
        hi = prev + w;
      }
      double step_lo = std::max(1.0, hi - lo), step_hi = step_lo;
      int k = 0;
      while (wave(lo) < beta) {
        if (++k > search.max_expansions) throw LevelNotAttained("front_trace: lower bracket end not found");
        hi = lo;  // everything right of lo is already below beta
        lo -= step_lo;
        step_lo *= 2.0;
      }
      k = 0;
      while (wave(hi) > beta) {
        if (++k > search.max_expansions) throw LevelNotAttained("front_trace: upper bracket end not found");
        lo = hi;
        hi += step_hi;
        step_hi *= 2.0;
      }
      trace.x_values(i) = front_position(wave, beta, lo, hi);
      prev = trace.x_values(i);
    } catch (const std::exception& e) {
      trace.failures.push_back("t=" + std::to_string(t) + ": " + e.what());
    }
  }
  return trace;
}

}  // namespace subwave
