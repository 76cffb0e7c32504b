#include "subwave/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "subwave/errors.hpp"
#include "subwave/quadrature.hpp"
#include "subwave/summation.hpp"

namespace subwave {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAsymptoticSwitch = 50.0;

// sin(pi x) without the loss near integers.
double sinpi(double x) {
  const double n = std::round(x);
  const double r = x - n;
  const double s = std::sin(kPi * r);
  return (static_cast<long long>(n) % 2 == 0) ? s : -s;
}

void check_alpha_open(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError(std::string(who) + ": alpha must lie in (0,1)");
}

// log A(phi) for Zolotarev's kernel, computed without forming the
// individual powers.
double log_zolotarev_a(double alpha, double phi) {
  const double sin_phi = phi > 0.5 * kPi ? std::sin(kPi - phi) : std::sin(phi);
  const double s_a = std::log(std::sin(alpha * phi));
  return (s_a - std::log(sin_phi)) / (1.0 - alpha) + std::log(std::sin((1.0 - alpha) * phi)) - s_a;
}

double ml_series(double alpha, double x, const SeriesAccuracy& acc) {
  NeumaierSum sum;
  const double ax = std::abs(x);
  const double log_ax = std::log(ax);
  for (int n = 0; n < acc.max_terms; ++n) {
    const double mag = std::exp(n * log_ax - std::lgamma(n * alpha + 1.0));
    sum.add(n % 2 == 0 ? mag : -mag);
    if (n > 2 && mag < 1e-4 * acc.abs_tol) return sum.value();
  }
  throw NumericalFailure("mittag_leffler: series did not converge", 1.0);
}

double ml_integral(double alpha, double ax, const SeriesAccuracy& acc) {
  const double c = std::cos(alpha * kPi);
  const double inv_alpha = 1.0 / alpha;
  auto near = [&](double u) { return std::exp(-std::pow(u * ax, inv_alpha)) / (u * u + 2.0 * u * c + 1.0); };
  // u = 1/w maps [1, inf) onto (0, 1] with the same denominator.
  auto far = [&](double w) { return std::exp(-std::pow(ax / w, inv_alpha)) / (1.0 + 2.0 * w * c + w * w); };
  quad::Tolerance tol{0.01 * acc.abs_tol, 1e-13, 4000};
  const auto a = quad::gauss_kronrod(near, 0.0, 1.0, tol);
  const auto b = quad::gauss_kronrod(far, 0.0, 1.0, tol);
  const double scale = std::sin(alpha * kPi) / (alpha * kPi);
  const double err = scale * (a.abs_error + b.abs_error);
  if (!a.converged || !b.converged || err > acc.abs_tol)
    throw NumericalFailure("mittag_leffler: integral representation missed tolerance", err);
  return scale * (a.value + b.value);
}

// Returns NaN when the divergent expansion cannot reach abs_tol. The terms
// oscillate in size (1/Gamma has zeros), so truncation follows the envelope
// |1/Gamma(1-y)| <= Gamma(y)/pi.
double ml_asymptotic(double alpha, double ax, const SeriesAccuracy& acc) {
  NeumaierSum sum;
  const double log_ax = std::log(ax);
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < acc.max_terms; ++k) {
    const double env = std::exp(std::lgamma(alpha * k) - k * log_ax) / kPi;
    if (env > prev) break;  // past the optimal truncation point
    const double term = std::exp(-k * log_ax) * rgamma(1.0 - alpha * k);
    sum.add(k % 2 == 1 ? term : -term);
    prev = env;
    if (env < 1e-4 * acc.abs_tol) return sum.value();
  }
  return prev < acc.abs_tol ? sum.value() : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double rgamma(double x) {
  if (x > 0.0) return x < 170.0 ? 1.0 / std::tgamma(x) : std::exp(-std::lgamma(x));
  if (x == std::round(x)) return 0.0;
  // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi.
  return sinpi(x) * std::exp(std::lgamma(1.0 - x)) / kPi;
}

double mittag_leffler(double alpha, double x, SeriesAccuracy acc) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("mittag_leffler: alpha must lie in (0,1]");
  if (!(x <= 0.0)) throw DomainError("mittag_leffler: argument must be <= 0");
  if (!(acc.abs_tol > 0.0) || acc.max_terms < 1) throw DomainError("mittag_leffler: bad SeriesAccuracy");
  if (x == 0.0) return 1.0;
  if (alpha == 1.0) return std::exp(x);
  const double ax = -x;
  if (ax <= 1.0) return ml_series(alpha, x, acc);
  if (ax > kAsymptoticSwitch) {
    const double v = ml_asymptotic(alpha, ax, acc);
    if (!std::isnan(v)) return v;
  }
  return ml_integral(alpha, ax, acc);
}

double wright(double alpha, double z, SeriesAccuracy acc) {
  check_alpha_open(alpha, "wright");
  if (!(z >= 0.0)) throw DomainError("wright: argument must be >= 0");
  if (z <= 1.0) {
    NeumaierSum sum;
    double log_fact = 0.0;
    const double log_z = z > 0.0 ? std::log(z) : -std::numeric_limits<double>::infinity();
    for (int n = 0; n < acc.max_terms; ++n) {
      if (n > 0) log_fact += std::log(static_cast<double>(n));
      const double rg = rgamma(1.0 - alpha * (n + 1));
      const double mag = (n == 0 ? 1.0 : std::exp(n * log_z - log_fact)) * rg;
      sum.add(n % 2 == 0 ? mag : -mag);
      if (z == 0.0) return sum.value();
      // |1/Gamma| grows at most like Gamma(alpha(n+1)), far slower than n!.
      if (n > 4 && std::exp(n * log_z - log_fact + std::lgamma(alpha * (n + 1) + 1.0)) < 1e-3 * acc.abs_tol)
        return sum.value();
    }
    throw NumericalFailure("wright: series did not converge", 1.0);
  }
  const double q = 1.0 / (1.0 - alpha);
  const double log_pref = alpha * q * std::log(z);
  const double zq = std::pow(z, q);
  auto integrand = [&](double phi) {
    const double la = log_zolotarev_a(alpha, phi);
    const double a = std::exp(la);
    return std::exp(la + log_pref - zq * a);
  };
  const auto r = quad::gauss_kronrod(integrand, 0.0, kPi, {1e-300, 1e-13, 4000});
  if (!r.converged) throw NumericalFailure("wright: Zolotarev integral missed tolerance", r.abs_error);
  return r.value * q / kPi;
}

double stable_inverse_survival(double alpha, double y) {
  check_alpha_open(alpha, "stable_inverse_survival");
  if (!(y >= 0.0)) throw DomainError("stable_inverse_survival: argument must be >= 0");
  if (y == 0.0) return 1.0;
  const double yq = std::pow(y, 1.0 / (1.0 - alpha));
  auto integrand = [&](double phi) { return std::exp(-yq * std::exp(log_zolotarev_a(alpha, phi))); };
  const auto r = quad::gauss_kronrod(integrand, 0.0, kPi, {1e-300, 1e-13, 4000});
  if (!r.converged) throw NumericalFailure("stable_inverse_survival: integral missed tolerance", r.abs_error);
  return r.value / kPi;
}

double exp_integral_e1(double x) {
  if (!(x > 0.0)) throw DomainError("exp_integral_e1: argument must be > 0");
  return -std::expint(-x);
}

}  // namespace subwave
