#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "subwave/subordinators.hpp"
#include "subwave/waves.hpp"

namespace subwave {

/// Reproducible random stream: identical (seed, stream_id) give identical
/// draws on the same build.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  RngStream(std::uint64_t seed_, std::uint64_t stream_id_ = 0);
  /// Independent child stream number k.
  RngStream split(std::uint64_t k) const;

  /// Uniform on the open interval (0,1).
  double uniform();
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long n = 0;
};

/// One-sided alpha-stable increment with E exp(-lambda X) = exp(-delta lambda^alpha)
/// (Chambers-Mallows-Stuck, skewness 1).
double sample_stable_increment(double alpha, double delta, RngStream& rng);
/// Gamma(shape a delta, rate b) increment of the Gamma subordinator.
double sample_gamma_increment(double a, double b, double delta, RngStream& rng);
/// Increment of the subordinator S over a time step.
double sample_increment(const SubordinatorSpec& spec, double delta, RngStream& rng);

struct McOptions {
  double step = 0.0;            // 0: t / 1e4
  long long cap = 10'000'000;   // steps per path
  int threads = 1;
  long long chunk = 10'000;     // samples per child stream
};

/// E(t) by path accumulation; the crossing is placed uniformly inside the
/// step where S passes t, so the bias is at most one step.
double sample_inverse(const SubordinatorSpec& spec, double t, RngStream& rng, double step = 0.0,
                      long long cap = 10'000'000);

/// E[psi(x - v E(t))].
McEstimate mc_subordinate(const WaveProfile& profile, const SubordinatorSpec& spec, double x, double t,
                          long long n, const RngStream& rng, McOptions opt = {});

/// Many (x,t) points from one set of paths: each path is run to the largest
/// t and E(t) is read off at every requested t. Options.step is absolute.
std::vector<McEstimate> mc_subordinate_batch(const WaveProfile& profile, const SubordinatorSpec& spec,
                                             const std::vector<std::pair<double, double>>& xt, long long n,
                                             const RngStream& rng, McOptions opt);

struct StepHalving {
  McEstimate coarse, fine;
  double diff_mean = 0.0;   // fine - coarse, paired
  double diff_error = 0.0;  // standard error of the paired difference
};

/// Coupled estimates at step and step/2: the coarse path sums pairs of fine
/// increments, so the difference isolates the discretisation bias.
StepHalving mc_step_halving(const WaveProfile& profile, const SubordinatorSpec& spec, double x, double t,
                            long long n, const RngStream& rng, double step);

struct Histogram {
  std::vector<double> edges;  // bins + 1
  std::vector<long long> counts;
  long long total = 0;
};

Histogram make_histogram(const std::vector<double>& samples, double lo, double hi, int bins);

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// Two-sample Kolmogorov-Smirnov test (asymptotic p-value).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace subwave
