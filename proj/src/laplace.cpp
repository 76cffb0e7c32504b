#include "subwave/laplace.hpp"

#include <numbers>

namespace subwave {

InversionPlan::InversionPlan(double t, InversionConfig cfg) : t_(t), cfg_(cfg) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("invert_laplace: t must be finite and > 0");
  if (cfg.nodes < 8) throw DomainError("InversionConfig: nodes must be >= 8");
  if (!(cfg.target_rel_err > 0.0)) throw DomainError("InversionConfig: target_rel_err must be > 0");
  if (cfg.method == InversionConfig::Method::FixedTalbot) {
    add_talbot(cfg.nodes);
    add_talbot(3 * cfg.nodes / 4);
  }
  // Euler orders are fixed: past ~20 the 10^{M/3} amplification eats the gain.
  add_euler(20);
  add_euler(18);
  // Plain trapezoid on the Bromwich line. Slow for bare kernels, but once a
  // factor exp(-tau Phi) damps the tail it converges where contours blow up.
  add_fourier(30.0, 240);
  add_fourier(26.0, 160);
}

void InversionPlan::add_talbot(int m) {
  Stage s;
  s.first = nodes_.size();
  const double r = 2.0 * m / (5.0 * t_);
  const double scale = r / m;
  nodes_.emplace_back(r, 0.0);
  s.weights.emplace_back(0.5 * scale * std::exp(r * t_), 0.0);
  for (int k = 1; k < m; ++k) {
    const double theta = k * std::numbers::pi / m;
    const double cot = std::cos(theta) / std::sin(theta);
    const cplx node(r * theta * cot, r * theta);
    const double sigma = theta + (theta * cot - 1.0) * cot;
    nodes_.push_back(node);
    s.weights.push_back(scale * std::exp(t_ * node) * cplx(1.0, sigma));
  }
  s.count = nodes_.size() - s.first;
  stages_.push_back(std::move(s));
}

void InversionPlan::add_euler(int m) {
  Stage s;
  s.first = nodes_.size();
  const double a = m * std::log(10.0) / 3.0;
  // xi_k: 1/2, 1, ..., 1, then binomial tail sums for k = M+1 .. 2M.
  std::vector<double> xi(2 * m + 1, 1.0);
  xi[0] = 0.5;
  const double two_m = std::pow(2.0, -m);
  xi[2 * m] = two_m;
  double binom = 1.0;  // C(M, j)
  for (int j = 1; j < m; ++j) {
    binom *= static_cast<double>(m - j + 1) / j;
    xi[2 * m - j] = xi[2 * m - j + 1] + two_m * binom;
  }
  const double pre = std::pow(10.0, m / 3.0) / t_;
  for (int k = 0; k <= 2 * m; ++k) {
    nodes_.emplace_back(a / t_, k * std::numbers::pi / t_);
    s.weights.emplace_back(pre * (k % 2 == 0 ? xi[k] : -xi[k]), 0.0);
  }
  s.count = nodes_.size() - s.first;
  stages_.push_back(std::move(s));
}

void InversionPlan::add_fourier(double a, int n) {
  Stage s;
  s.first = nodes_.size();
  const double pre = std::exp(0.5 * a) / t_;
  for (int k = 0; k <= n; ++k) {
    nodes_.emplace_back(0.5 * a / t_, k * std::numbers::pi / t_);
    s.weights.emplace_back(k == 0 ? 0.5 * pre : (k % 2 == 0 ? pre : -pre), 0.0);
  }
  s.count = nodes_.size() - s.first;
  stages_.push_back(std::move(s));
}

std::vector<double> SlowlyVaryingAsymptote::doubling_profile(const std::vector<double>& ys) const {
  std::vector<double> out;
  out.reserve(ys.size());
  for (double y : ys) out.push_back(std::abs(L(2.0 * y) / L(y) - 1.0));
  return out;
}

bool SlowlyVaryingAsymptote::looks_slowly_varying(const std::vector<double>& ys) const {
  for (double y : ys)
    if (!(L(y) > 0.0)) return false;
  const auto p = doubling_profile(ys);
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i] > p[i - 1] * (1.0 + 1e-9) + 1e-15) return false;
  return true;
}

SlowlyVaryingAsymptote asymptote_from_transform(std::function<double(double)> transform, double rho) {
  SlowlyVaryingAsymptote a;
  a.rho = rho;
  a.L = [transform = std::move(transform), rho](double y) { return std::pow(y, -rho) * transform(1.0 / y); };
  return a;
}

}  // namespace subwave
