#pragma once

namespace subwave {

struct SeriesAccuracy {
  double abs_tol = 1e-12;
  int max_terms = 10000;
};

/// 1/Gamma(x), exactly zero at the poles 0, -1, -2, ...
double rgamma(double x);

/// Mittag-Leffler E_alpha(x) on the negative real axis, 0 < alpha <= 1, x <= 0.
double mittag_leffler(double alpha, double x, SeriesAccuracy acc = {});

/// M-Wright function W_{-alpha,1-alpha}(-z), z >= 0. For the alpha-stable
/// inverse subordinator G_t(tau) = t^{-alpha} wright(alpha, tau t^{-alpha}).
double wright(double alpha, double z, SeriesAccuracy acc = {});

/// P(E(t) > theta) for the alpha-stable inverse subordinator as a function of
/// the similarity variable y = theta t^{-alpha} (Zolotarev's integral for the
/// stable distribution function).
double stable_inverse_survival(double alpha, double y);

/// E1(x) = int_x^inf e^{-u}/u du, x > 0.
double exp_integral_e1(double x);

}  // namespace subwave
