#include "subwave/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "subwave/errors.hpp"
#include "subwave/parallel.hpp"
#include "subwave/summation.hpp"

namespace subwave {
namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// Per-spec increment sampler with the constants hoisted.
class IncrementSampler {
 public:
  IncrementSampler(const SubordinatorSpec& spec, double delta) : spec_(spec), delta_(delta) {
    using V = SubordinatorSpec::Variant;
    if (spec.variant() == V::Stable) {
      const double a = spec.alpha();
      scale_ = std::pow(std::cos(kPi * a / 2.0) * delta, 1.0 / a);
    } else if (spec.variant() != V::Gamma) {
      throw UnsupportedRepresentation("Monte Carlo: only stable and Gamma subordinators can be simulated");
    }
  }
  double operator()(RngStream& rng) const {
    if (spec_.variant() == SubordinatorSpec::Variant::Stable) return scale_ * standard_stable(spec_.alpha(), rng);
    return sample_gamma_increment(spec_.a(), spec_.b(), delta_, rng);
  }

  // CMS with skewness 1, B = pi/2: E exp(-lambda X) = exp(-lambda^a / cos(pi a/2)).
  static double standard_stable(double a, RngStream& rng) {
    const double V = kPi * (rng.uniform() - 0.5);
    const double W = -std::log(rng.uniform());
    const double S = std::pow(1.0 + std::pow(std::tan(kPi * a / 2.0), 2), 1.0 / (2.0 * a));
    const double shifted = a * (V + kPi / 2.0);
    return S * std::sin(shifted) / std::pow(std::cos(V), 1.0 / a) *
           std::pow(std::cos(V - shifted) / W, (1.0 - a) / a);
  }

 private:
  const SubordinatorSpec& spec_;
  double delta_;
  double scale_ = 1.0;
};

struct Moments {
  NeumaierSum sum, sum_sq;
  long long n = 0;
  void add(double v) {
    sum.add(v);
    sum_sq.add(v * v);
    ++n;
  }
};

McEstimate finish(const std::vector<Moments>& parts) {
  NeumaierSum s, q;
  long long n = 0;
  for (const auto& p : parts) {  // fixed chunk order
    s.add(p.sum);
    q.add(p.sum_sq);
    n += p.n;
  }
  McEstimate est;
  est.n = n;
  if (n == 0) return est;
  est.mean = s.value() / static_cast<double>(n);
  if (n > 1) {
    const double var = std::max(0.0, (q.value() - static_cast<double>(n) * est.mean * est.mean) /
                                         static_cast<double>(n - 1));
    est.std_error = std::sqrt(var / static_cast<double>(n));
  }
  return est;
}

long long chunk_count(long long n, long long chunk) { return (n + chunk - 1) / chunk; }

}  // namespace

RngStream::RngStream(std::uint64_t seed_, std::uint64_t stream_id_)
    : seed(seed_), stream_id(stream_id_), engine_(seeded_engine(seed_, stream_id_)) {}

RngStream RngStream::split(std::uint64_t k) const { return RngStream(seed, splitmix64(stream_id ^ splitmix64(k + 1))); }

double RngStream::uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

double sample_stable_increment(double alpha, double delta, RngStream& rng) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("sample_stable_increment: alpha must lie in (0,1)");
  if (!(delta > 0.0)) throw DomainError("sample_stable_increment: delta must be > 0");
  return std::pow(std::cos(kPi * alpha / 2.0) * delta, 1.0 / alpha) * IncrementSampler::standard_stable(alpha, rng);
}

double sample_gamma_increment(double a, double b, double delta, RngStream& rng) {
  if (!(a > 0.0 && b > 0.0 && delta > 0.0)) throw DomainError("sample_gamma_increment: a, b, delta must be > 0");
  std::gamma_distribution<double> dist(a * delta, 1.0 / b);
  return dist(rng.engine());
}

double sample_increment(const SubordinatorSpec& spec, double delta, RngStream& rng) {
  if (!(delta > 0.0)) throw DomainError("sample_increment: delta must be > 0");
  return IncrementSampler(spec, delta)(rng);
}

double sample_inverse(const SubordinatorSpec& spec, double t, RngStream& rng, double step, long long cap) {
  if (!(t >= 0.0)) throw DomainError("sample_inverse: t must be >= 0");
  if (t == 0.0) return 0.0;
  if (step == 0.0) step = t / 1e4;
  if (!(step > 0.0)) throw DomainError("sample_inverse: step must be > 0");
  const IncrementSampler inc(spec, step);
  double S = 0.0;
  for (long long k = 0; k < cap; ++k) {
    S += inc(rng);
    if (S >= t) return (static_cast<double>(k) + rng.uniform()) * step;
  }
  throw CapExceeded("sample_inverse: path did not reach t within the step cap");
}

std::vector<McEstimate> mc_subordinate_batch(const WaveProfile& profile, const SubordinatorSpec& spec,
                                             const std::vector<std::pair<double, double>>& xt, long long n,
                                             const RngStream& rng, McOptions opt) {
  if (n < 1) throw DomainError("mc_subordinate: n must be >= 1");
  if (!(opt.step > 0.0)) throw DomainError("mc_subordinate_batch: step must be > 0");
  if (opt.chunk < 1) throw DomainError("mc_subordinate: chunk must be >= 1");
  std::vector<double> ts;
  for (const auto& p : xt) {
    if (!(p.second > 0.0)) throw DomainError("mc_subordinate: t must be > 0");
    ts.push_back(p.second);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<std::size_t> slot(xt.size());
  for (std::size_t i = 0; i < xt.size(); ++i)
    slot[i] = static_cast<std::size_t>(std::lower_bound(ts.begin(), ts.end(), xt[i].second) - ts.begin());

  const IncrementSampler inc(spec, opt.step);
  const long long n_chunks = chunk_count(n, opt.chunk);
  std::vector<std::vector<Moments>> parts(static_cast<std::size_t>(n_chunks), std::vector<Moments>(xt.size()));
  parallel_for(n_chunks, opt.threads, [&](long long c) {
    RngStream local = rng.split(static_cast<std::uint64_t>(c));
    const long long count = std::min(opt.chunk, n - c * opt.chunk);
    auto& moments = parts[static_cast<std::size_t>(c)];
    std::vector<double> E(ts.size());
    for (long long s = 0; s < count; ++s) {
      double S = 0.0;
      std::size_t j = 0;
      long long k = 0;
      while (j < ts.size()) {
        if (k >= opt.cap) throw CapExceeded("mc_subordinate: path did not reach t within the step cap");
        S += inc(local);
        if (S >= ts[j]) {
          // One jump can carry the path across several requested t.
          const double e = (static_cast<double>(k) + local.uniform()) * opt.step;
          while (j < ts.size() && S >= ts[j]) E[j++] = e;
        }
        ++k;
      }
      for (std::size_t i = 0; i < xt.size(); ++i) moments[i].add(profile(xt[i].first - profile.v() * E[slot[i]]));
    }
  });
  std::vector<McEstimate> out;
  for (std::size_t i = 0; i < xt.size(); ++i) {
    std::vector<Moments> col;
    for (const auto& p : parts) col.push_back(p[i]);
    out.push_back(finish(col));
  }
  return out;
}

McEstimate mc_subordinate(const WaveProfile& profile, const SubordinatorSpec& spec, double x, double t, long long n,
                          const RngStream& rng, McOptions opt) {
  if (n < 1) throw DomainError("mc_subordinate: n must be >= 1");
  if (opt.step == 0.0) opt.step = t / 1e4;
  return mc_subordinate_batch(profile, spec, {{x, t}}, n, rng, opt).front();
}

StepHalving mc_step_halving(const WaveProfile& profile, const SubordinatorSpec& spec, double x, double t,
                            long long n, const RngStream& rng, double step) {
  if (n < 2) throw DomainError("mc_step_halving: n must be >= 2");
  if (!(t > 0.0) || !(step > 0.0)) throw DomainError("mc_step_halving: t and step must be > 0");
  const double half = 0.5 * step;
  const IncrementSampler inc(spec, half);
  const long long chunk = 10'000;
  const long long n_chunks = chunk_count(n, chunk);
  std::vector<Moments> coarse(static_cast<std::size_t>(n_chunks)), fine(coarse.size()), diff(coarse.size());
  for (long long c = 0; c < n_chunks; ++c) {
    RngStream local = rng.split(static_cast<std::uint64_t>(c));
    const long long count = std::min(chunk, n - c * chunk);
    for (long long s = 0; s < count; ++s) {
      double S = 0.0, e_fine = -1.0, e_coarse = -1.0;
      for (long long k = 0; e_coarse < 0.0; ++k) {
        if (k >= 20'000'000) throw CapExceeded("mc_step_halving: step cap exceeded");
        S += inc(local);
        if (e_fine < 0.0 && S >= t) e_fine = (static_cast<double>(k) + local.uniform()) * half;
        // The coarse path only sees S at the end of each pair of fine steps.
        if (k % 2 == 1 && S >= t) e_coarse = (static_cast<double>(k / 2) + local.uniform()) * step;
      }
      const double pf = profile(x - profile.v() * e_fine);
      const double pc = profile(x - profile.v() * e_coarse);
      fine[static_cast<std::size_t>(c)].add(pf);
      coarse[static_cast<std::size_t>(c)].add(pc);
      diff[static_cast<std::size_t>(c)].add(pf - pc);
    }
  }
  StepHalving out;
  out.fine = finish(fine);
  out.coarse = finish(coarse);
  const auto d = finish(diff);
  out.diff_mean = d.mean;
  out.diff_error = d.std_error;
  return out;
}

Histogram make_histogram(const std::vector<double>& samples, double lo, double hi, int bins) {
  if (!(hi > lo) || bins < 1) throw DomainError("make_histogram: need hi > lo and bins >= 1");
  Histogram h;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) h.edges[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / bins;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double s : samples) {
    ++h.total;
    if (s < lo || s >= hi) continue;
    auto b = static_cast<std::size_t>((s - lo) / (hi - lo) * bins);
    h.counts[std::min(b, h.counts.size() - 1)]++;
  }
  return h;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double en = std::sqrt(na * nb / (na + nb));
  const double lambda = (en + 0.12 + 0.11 / en) * d;
  // Kolmogorov tail Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
  double q = 0.0;
  if (lambda < 0.2) {
    q = 1.0;
  } else {
    for (int k = 1; k <= 100; ++k) {
      const double term = 2.0 * ((k % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
      q += term;
      if (std::abs(term) < 1e-12) break;
    }
  }
  return {d, std::clamp(q, 0.0, 1.0)};
}

}  // namespace subwave
