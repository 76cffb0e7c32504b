#pragma once

// Quadrature building blocks shared by every module: global adaptive
// Gauss-Kronrod, double-exponential rules for endpoint singularities and
// half-lines, and Golub-Welsch Gauss rules on [0,1].

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace subwave::quad {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  bool converged = true;
};

struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-12;
  int max_intervals = 4000;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights belong to Kronrod nodes 1, 3, 5, 7.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double resabs = std::abs(kronrod);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    kronrod += kKronrodWeights[j] * (f1[j] + f2[j]);
    resabs += kKronrodWeights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * kronrod;
  double resasc = kKronrodWeights[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double hab = std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  resasc *= hab;
  resabs *= hab;
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * resabs, err);
  return {a, b, kronrod * half, err};
}

}  // namespace detail

/// Global adaptive Gauss-Kronrod (7/15) on a finite interval. Integrable
/// endpoint singularities are tolerated since endpoints are never sampled.
template <class F>
Result gauss_kronrod(F&& f, double a, double b, Tolerance tol = {}) {
  if (a == b) return {};
  std::priority_queue<detail::Segment> queue;
  auto first = detail::kronrod15(f, a, b);
  double total = first.value;
  double error = first.error;
  queue.push(first);
  int evaluations = 15;
  int intervals = 1;
  while (error > std::max(tol.abs, tol.rel * std::abs(total))) {
    if (intervals >= tol.max_intervals) return {total, error, evaluations, false};
    auto worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (std::abs(worst.b - worst.a) <
        100.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid)))
      return {total, error, evaluations, false};
    queue.pop();
    auto left = detail::kronrod15(f, worst.a, mid);
    auto right = detail::kronrod15(f, mid, worst.b);
    evaluations += 30;
    ++intervals;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  double sum = 0.0, err = 0.0;
  while (!queue.empty()) {
    sum += queue.top().value;
    err += queue.top().error;
    queue.pop();
  }
  return {sum, err, evaluations, true};
}

/// Tanh-sinh rule on [a,b]; robust against algebraic or logarithmic
/// singularities at either endpoint. Abscissae near an endpoint are formed
/// from their distance to it, so f never sees the endpoint itself.
template <class F>
Result tanh_sinh(F&& f, double a, double b, Tolerance tol = {}) {
  constexpr double half_pi = 1.5707963267948966;
  constexpr double u_max = 6.5;  // reaches ~1e-300 from the endpoints
  const double c = 0.5 * (a + b);
  const double d = 0.5 * (b - a);
  int evaluations = 0;

  auto term = [&](double u) {
    const double v = half_pi * std::sinh(u);
    const double e = std::exp(-2.0 * std::abs(v));
    const double dist = d * 2.0 * e / (1.0 + e);  // d * (1 - tanh|v|)
    const double x = u > 0 ? b - dist : (u < 0 ? a + dist : c);
    if (x <= std::min(a, b) || x >= std::max(a, b) || dist == 0.0) return 0.0;
    const double ch = std::cosh(v);
    const double w = d * half_pi * std::cosh(u) / (ch * ch);
    ++evaluations;
    const double fx = f(x);
    return std::isfinite(fx) ? w * fx : 0.0;
  };

  double h = 0.5;
  double sum = term(0.0);
  for (double u = h; u <= u_max; u += h) sum += term(u) + term(-u);
  double estimate = h * sum;
  double error = std::numeric_limits<double>::infinity();
  for (int level = 0; level < 12; ++level) {
    h *= 0.5;
    double added = 0.0;
    for (double u = h; u <= u_max; u += 2.0 * h) added += term(u) + term(-u);
    sum += added;
    const double next = h * sum;
    error = std::abs(next - estimate);
    estimate = next;
    if (level >= 2 && error <= std::max(tol.abs, tol.rel * std::abs(estimate)))
      return {estimate, error, evaluations, true};
  }
  return {estimate, error, evaluations, false};
}

/// Exp-sinh rule on [a, inf) for integrands decaying at infinity.
template <class F>
Result exp_sinh(F&& f, double a, Tolerance tol = {}) {
  constexpr double half_pi = 1.5707963267948966;
  constexpr double u_lo = -6.0, u_hi = 4.5;
  int evaluations = 0;
  auto term = [&](double u) {
    const double g = std::exp(half_pi * std::sinh(u));
    const double x = a + g;
    if (!std::isfinite(x) || x == a) return 0.0;
    ++evaluations;
    const double w = half_pi * std::cosh(u) * g;
    const double value = w * f(x);
    return std::isfinite(value) ? value : 0.0;
  };
  double h = 0.5;
  double sum = 0.0;
  for (double u = u_lo; u <= u_hi + 1e-12; u += h) sum += term(u);
  double estimate = h * sum;
  double error = std::numeric_limits<double>::infinity();
  for (int level = 0; level < 11; ++level) {
    h *= 0.5;
    for (double u = u_lo + h; u < u_hi; u += 2.0 * h) sum += term(u);
    const double next = h * sum;
    error = std::abs(next - estimate);
    estimate = next;
    if (level >= 2 && error <= std::max(tol.abs, tol.rel * std::abs(estimate)))
      return {estimate, error, evaluations, true};
  }
  return {estimate, error, evaluations, false};
}

/// Fixed Gauss rule on [0,1]: sum_i w_i g(x_i) approximates
/// int_0^1 x^s g(x) dx (Gauss-Jacobi; s = 0 gives Gauss-Legendre).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class G>
  auto apply(G&& g) const {
    using R = decltype(g(0.0));
    R sum{0};
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * g(nodes[i]);
    return sum;
  }
};

/// Golub-Welsch construction of the n-point rule for the weight x^s on [0,1].
GaussRule gauss_jacobi_unit(int n, double s);

inline GaussRule gauss_legendre_unit(int n) { return gauss_jacobi_unit(n, 0.0); }

}  // namespace subwave::quad
