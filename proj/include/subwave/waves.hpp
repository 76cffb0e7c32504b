#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "subwave/subordinators.hpp"

namespace subwave {

/// Monotone wave profile psi(xi), xi = x - v t.
class WaveProfile {
 public:
  enum class Kind { Smooth, LowerStep, UpperStep };

  static WaveProfile logistic(double v = 1.0);
  static WaveProfile from_function(std::function<double(double)> psi, double v);
  /// (1-eps) on xi <= x_minus, 0 beyond.
  static WaveProfile lower_step(double eps, double x_minus, double v);
  /// 1 on xi <= x_plus, eps beyond.
  static WaveProfile upper_step(double eps, double x_plus, double v);

  double operator()(double xi) const;
  Kind kind() const { return kind_; }
  double v() const { return v_; }
  double eps() const { return eps_; }
  /// x_minus for the lower step, x_plus for the upper step.
  double edge() const { return edge_; }
  bool is_step() const { return kind_ != Kind::Smooth; }

 private:
  WaveProfile() = default;
  Kind kind_ = Kind::Smooth;
  double v_ = 1.0, eps_ = 0.0, edge_ = 0.0;
  std::function<double(double)> psi_;
};

struct Bracket {
  double eps = 0.0;
  double x_minus = 0.0;  // psi > 1-eps to the left
  double x_plus = 0.0;   // psi < eps to the right
};

struct StepWaves {
  WaveProfile lower, upper;
  Bracket bracket;
};

/// Lower and upper step waves sandwiching a smooth profile.
StepWaves make_step_waves(const WaveProfile& profile, double eps);

/// psi^E(x,t) = int psi(x - v tau) G_t(tau) d tau. Step profiles go through
/// the survival function, smooth ones through tau-quadrature.
double subordinate(const WaveProfile& profile, const SubordinatorSpec& spec, double x, double t,
                   InversionConfig cfg = {});
/// Same integral by tau-quadrature for every profile kind.
double subordinate_by_quadrature(const WaveProfile& profile, const SubordinatorSpec& spec, double x, double t,
                                 InversionConfig cfg = {});

/// (1/t) int_0^t g, absolute error <= quad_tol.
double cesaro_mean(const std::function<double(double)>& g, double t, double quad_tol = 1e-10);

using SpatialWave = std::function<double(double)>;          // x -> value at a fixed t
using WaveFamily = std::function<SpatialWave(double)>;      // t -> spatial wave

enum class TimeAverage { Pointwise, Cesaro };
/// Direct: exact Cesaro means (Laplace side). Tauberian: leading-order
/// Karamata evaluation F(1/t)/t.
enum class CesaroEvaluator { Direct, Tauberian };

/// x -> psi^E(x,t) or x -> M_t(psi^E(x,.)). Per-t work (the inversion
/// nodes) is done once when the family is called with t.
WaveFamily subordinated_wave(const WaveProfile& profile, const SubordinatorSpec& spec,
                             TimeAverage avg = TimeAverage::Pointwise,
                             CesaroEvaluator how = CesaroEvaluator::Direct, InversionConfig cfg = {});

/// Root of wave(x) = beta by bisection on [x_lo, x_hi].
double front_position(const SpatialWave& wave, double beta, double x_lo, double x_hi);
double front_position(const std::function<double(double, double)>& wave, double beta, double t, double x_lo,
                      double x_hi);

enum class FrontSide { Exact, LowerWave, UpperWave };
std::string to_string(FrontSide s);

struct FrontTrace {
  double beta = 0.0;
  FrontSide side = FrontSide::Exact;
  Eigen::VectorXd t_values;
  Eigen::VectorXd x_values;  // NaN where the point failed
  std::vector<std::string> failures;
};

struct FrontSearch {
  double x_lo = -10.0;
  double x_hi = 10.0;
  int max_expansions = 60;
};

/// Fronts over a t grid; each bracket is warm-started from the previous root
/// and widened geometrically until it straddles beta.
FrontTrace front_trace(const WaveFamily& family, double beta, const std::vector<double>& t_grid,
                       FrontSide side = FrontSide::Exact, FrontSearch search = {});

}  // namespace subwave
