#include "subwave/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "subwave/asymptotics.hpp"
#include "subwave/errors.hpp"
#include "subwave/gfd.hpp"
#include "subwave/montecarlo.hpp"
#include "subwave/parallel.hpp"
#include "subwave/quadrature.hpp"

namespace subwave::cli {

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo) || n < 2) throw DomainError("log_grid: need 0 < lo < hi and n >= 2");
  std::vector<double> g(static_cast<std::size_t>(n));
  // Interpolating log10 keeps decades exact.
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = std::pow(10.0, a + (b - a) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (!(hi > lo) || n < 2) throw DomainError("linear_grid: need lo < hi and n >= 2");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  g.back() = hi;
  return g;
}

namespace {

double get_num(const ojson& j, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j.at(key).is_number()) throw ConfigError(std::string("config: '") + key + "' must be a number");
  return j.at(key).get<double>();
}

std::string get_str(const ojson& j, const char* key, const std::string& dflt) {
  if (!j.contains(key)) return dflt;
  if (!j.at(key).is_string()) throw ConfigError(std::string("config: '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

int get_int(const ojson& j, const char* key, int dflt) {
  const double x = get_num(j, key, dflt);
  if (x != std::floor(x) || std::abs(x) > 1e9) throw ConfigError(std::string("config: '") + key + "' must be an integer");
  return static_cast<int>(x);
}

Grid get_grid(const ojson& j, const char* key, const char* lo, const char* hi, Grid dflt) {
  if (!j.contains(key)) return dflt;
  const auto& g = j.at(key);
  if (!g.is_object()) throw ConfigError(std::string("config: '") + key + "' must be an object");
  Grid out{get_num(g, lo, dflt.lo), get_num(g, hi, dflt.hi), get_int(g, "points", dflt.points)};
  if (!(out.hi > out.lo) || out.points < 2)
    throw ConfigError(std::string("config: '") + key + "' needs " + lo + " < " + hi + " and points >= 2");
  return out;
}

}  // namespace

ExperimentConfig parse_config(const ojson& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  ExperimentConfig c;
  c.raw = j;
  if (j.contains("spec")) c.spec = spec_from_json(j.at("spec"));
  if (j.contains("profile")) {
    const auto& p = j.at("profile");
    if (!p.is_object()) throw ConfigError("config: 'profile' must be an object");
    c.profile_kind = get_str(p, "kind", c.profile_kind);
    c.profile_edge = get_num(p, "edge", 0.0);
    if (c.profile_kind != "logistic" && c.profile_kind != "step-lower" && c.profile_kind != "step-upper")
      throw ConfigError("config: profile kind must be logistic, step-lower or step-upper");
  }
  c.v = get_num(j, "v", c.v);
  c.eps = get_num(j, "eps", c.eps);
  c.beta = get_num(j, "beta", c.beta);
  if (!(c.v > 0.0)) throw ConfigError("config: v must be > 0");
  if (!(c.eps > 0.0 && c.eps < 0.5)) throw ConfigError("config: eps must lie in (0, 1/2)");
  if (!(c.beta > c.eps && c.beta < 1.0 - c.eps)) throw ConfigError("config: beta must lie in (eps, 1-eps)");
  c.t_grid = get_grid(j, "t_grid", "t_min", "t_max", c.t_grid);
  if (!(c.t_grid.lo > 0.0)) throw ConfigError("config: t_min must be > 0");
  if (j.contains("t_values")) {
    const auto& tv = j.at("t_values");
    if (!tv.is_array() || tv.empty()) throw ConfigError("config: 't_values' must be a non-empty array");
    for (const auto& t : tv) {
      if (!t.is_number() || !(t.get<double>() > 0.0)) throw ConfigError("config: t_values must be positive numbers");
      if (!c.t_values.empty() && !(t.get<double>() > c.t_values.back()))
        throw ConfigError("config: t_values must be increasing");
      c.t_values.push_back(t.get<double>());
    }
  }
  c.x_grid = get_grid(j, "x_grid", "x_min", "x_max", c.x_grid);
  c.tau_grid = get_grid(j, "tau_grid", "tau_min", "tau_max", c.tau_grid);
  if (c.tau_grid.lo < 0.0) throw ConfigError("config: tau_min must be >= 0");
  c.average = get_str(j, "average", c.average);
  if (c.average != "cesaro" && c.average != "pointwise") throw ConfigError("config: average must be cesaro or pointwise");
  c.evaluator = get_str(j, "evaluator", c.evaluator);
  if (c.evaluator != "tauberian" && c.evaluator != "direct")
    throw ConfigError("config: evaluator must be tauberian or direct");
  c.slack = get_num(j, "slack", c.slack);
  if (!(c.slack >= 0.0)) throw ConfigError("config: slack must be >= 0");
  if (j.contains("burn_in")) c.burn_in = get_num(j, "burn_in", 0.0);
  c.tolerance = get_num(j, "tolerance", c.tolerance);
  if (!(c.tolerance > 0.0)) throw ConfigError("config: tolerance must be > 0");
  if (j.contains("mc")) {
    const auto& m = j.at("mc");
    if (!m.is_object()) throw ConfigError("config: 'mc' must be an object");
    auto& s = c.mc;
    s.t_min = get_num(m, "t_min", s.t_min);
    s.t_max = get_num(m, "t_max", s.t_max);
    s.x_min = get_num(m, "x_min", s.x_min);
    s.x_max = get_num(m, "x_max", s.x_max);
    s.points = get_int(m, "points", s.points);
    s.hist_samples = get_int(m, "hist_samples", s.hist_samples);
    s.hist_bins = get_int(m, "hist_bins", s.hist_bins);
    if (!(s.t_min > 0.0 && s.t_max >= s.t_min) || !(s.x_max >= s.x_min) || s.points < 1 || s.hist_samples < 1 ||
        s.hist_bins < 1)
      throw ConfigError("config: invalid 'mc' block");
  }
  if (j.contains("outputs")) {
    const auto& o = j.at("outputs");
    if (!o.is_object()) throw ConfigError("config: 'outputs' must be an object");
    for (const auto& [k, val] : o.items()) {
      if (!val.is_string()) throw ConfigError("config: output names must be strings");
      const std::filesystem::path p(val.get<std::string>());
      if (p.empty() || p.is_absolute() || p.has_parent_path())
        throw ConfigError("config: output '" + k + "' must be a plain file name");
      c.outputs[k] = p.string();
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  ojson j;
  try {
    j = ojson::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config: " + path + ": " + e.what());
  }
  return parse_config(j);
}

namespace {

struct Args {
  std::string config, out;
  std::uint64_t seed = 1;
  int threads = 0;
  long long samples = 100'000;
  double step = 0.0;
  double alpha = 0.5;
  double t = 1.0;
  double tau_max = 0.0;
  int tau_points = 0;
};

class Runner {
 public:
  Runner(const std::string& cmd, const Args& a, const CLI::App& sub, std::ostream& out)
      : cmd_(cmd), a_(a), sub_(sub), out_(out) {}

  int go() {
    stage_ = "config";
    if (!a_.config.empty()) cfg_ = load_config(a_.config);
    if (a_.threads < 0) throw ConfigError("--threads must be >= 1");
    threads_ = a_.threads > 0 ? a_.threads : default_threads();
    hash_ = config_hash(effective());
    header_ = header_line(hash_);
    if (cmd_ == "density") return density();
    if (cmd_ == "subordinate") return subordinate_cmd();
    if (cmd_ == "front") return front();
    if (cmd_ == "verify") return verify();
    if (cmd_ == "mc-check") return mc_check();
    return gfd_check();
  }

  const std::string& stage() const { return stage_; }

 private:
  bool given(const char* name) const { return sub_.count(name) > 0; }

  // Everything that changes the output; --threads deliberately absent.
  ojson effective() const {
    ojson e;
    e["command"] = cmd_;
    e["config"] = cfg_.raw.is_null() ? ojson::object() : cfg_.raw;
    for (const char* name : {"--seed", "--samples", "--step", "--alpha", "--t", "--tau-max", "--tau-points"}) {
      if (!given(name)) continue;
      const std::string key(name + 2);
      if (key == "seed")
        e[key] = a_.seed;
      else if (key == "samples")
        e[key] = a_.samples;
      else if (key == "tau-points")
        e[key] = a_.tau_points;
      else if (key == "step")
        e[key] = a_.step;
      else if (key == "alpha")
        e[key] = a_.alpha;
      else if (key == "t")
        e[key] = a_.t;
      else
        e[key] = a_.tau_max;
    }
    return e;
  }

  const SubordinatorSpec& spec() const {
    if (!cfg_.spec) throw ConfigError(cmd_ + ": config has no 'spec'");
    return *cfg_.spec;
  }

  WaveProfile profile() const {
    if (cfg_.profile_kind == "step-lower") return WaveProfile::lower_step(cfg_.eps, cfg_.profile_edge, cfg_.v);
    if (cfg_.profile_kind == "step-upper") return WaveProfile::upper_step(cfg_.eps, cfg_.profile_edge, cfg_.v);
    return WaveProfile::logistic(cfg_.v);
  }

  std::vector<double> t_values() const {
    if (!cfg_.t_values.empty()) return cfg_.t_values;
    return log_grid(cfg_.t_grid.lo, cfg_.t_grid.hi, cfg_.t_grid.points);
  }

  CesaroEvaluator evaluator() const {
    return cfg_.evaluator == "direct" ? CesaroEvaluator::Direct : CesaroEvaluator::Tauberian;
  }

  std::string out_name(const std::string& key, const std::string& dflt) const {
    const auto it = cfg_.outputs.find(key);
    return it == cfg_.outputs.end() ? dflt : it->second;
  }

  // Writes to --out/<name>, or to stdout when --out is absent and the file
  // is the primary output.
  template <class Fn>
  void emit(const std::string& key, const std::string& dflt, bool primary, Fn&& write) {
    stage_ = "write";
    if (a_.out.empty()) {
      if (primary) write(out_);
      return;
    }
    std::filesystem::create_directories(a_.out);
    const auto path = std::filesystem::path(a_.out) / out_name(key, dflt);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path.string() + "'");
    write(f);
    if (!f) throw ConfigError("write failed for '" + path.string() + "'");
  }

  void emit_json(const std::string& key, const std::string& dflt, ojson body) {
    ojson doc;
    doc["header"] = header_;
    doc["version"] = tool_version();
    doc["config_hash"] = hash_;
    doc["command"] = cmd_;
    for (auto& [k, val] : body.items()) doc[k] = val;
    emit(key, dflt, true, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  }

  int density() {
    std::vector<double> ts;
    SubordinatorSpec sp = SubordinatorSpec::stable(0.5);
    if (given("--alpha") || !cfg_.spec) {
      try {
        sp = SubordinatorSpec::stable(a_.alpha);
      } catch (const DomainError& e) {
        throw ConfigError(std::string("--alpha: ") + e.what());
      }
    } else {
      sp = spec();
    }
    if (given("--t") || (cfg_.t_values.empty() && !cfg_.raw.contains("t_grid"))) {
      if (!(a_.t > 0.0)) throw ConfigError("--t must be > 0");
      ts = {a_.t};
    } else {
      ts = t_values();
    }
    Grid tg = cfg_.tau_grid;
    if (given("--tau-max")) tg.hi = a_.tau_max;
    if (given("--tau-points")) tg.points = a_.tau_points;
    if (!(tg.hi > tg.lo) || tg.points < 2) throw ConfigError("density: need tau-max > tau_min and tau-points >= 2");
    const auto taus = linear_grid(tg.lo, tg.hi, tg.points);

    stage_ = "density";
    std::vector<DensityGrid> rows(ts.size());
    parallel_for(static_cast<long long>(ts.size()), threads_, [&](long long i) {
      rows[static_cast<std::size_t>(i)] = tabulate_density(sp, {ts[static_cast<std::size_t>(i)]}, taus);
    });
    DensityGrid g;
    const auto nt = static_cast<Eigen::Index>(ts.size()), nx = static_cast<Eigen::Index>(taus.size());
    g.t_values = Eigen::Map<const Eigen::VectorXd>(ts.data(), nt);
    g.tau_values = Eigen::Map<const Eigen::VectorXd>(taus.data(), nx);
    g.values.resize(nt, nx);
    g.tail_mass.resize(nt);
    for (Eigen::Index i = 0; i < nt; ++i) {
      const auto& r = rows[static_cast<std::size_t>(i)];
      g.values.row(i) = r.values.row(0);
      g.tail_mass(i) = r.tail_mass(0);
      g.est_abs_error = std::max(g.est_abs_error, r.est_abs_error);
    }
    emit("density", "density.csv", true, [&](std::ostream& os) { write_density_csv(os, g, header_); });
    return 0;
  }

  int subordinate_cmd() {
    const auto& sp = spec();
    const auto prof = profile();
    const auto ts = t_values();
    const auto xs = linear_grid(cfg_.x_grid.lo, cfg_.x_grid.hi, cfg_.x_grid.points);
    const auto avg = cfg_.average == "cesaro" ? TimeAverage::Cesaro : TimeAverage::Pointwise;
    const auto family = subordinated_wave(prof, sp, avg, evaluator());
    stage_ = "subordinate";
    std::vector<WaveSample> rows(ts.size() * xs.size());
    parallel_for(static_cast<long long>(ts.size()), threads_, [&](long long i) {
      const double t = ts[static_cast<std::size_t>(i)];
      const auto wave = family(t);
      for (std::size_t j = 0; j < xs.size(); ++j)
        rows[static_cast<std::size_t>(i) * xs.size() + j] = {t, xs[j], wave(xs[j])};
    });
    emit("wave", "wave.csv", true, [&](std::ostream& os) { write_wave_csv(os, rows, header_); });
    return 0;
  }

  struct Traces {
    std::optional<StepWaves> steps;
    std::vector<FrontTrace> traces;  // smooth (or the profile itself), lower, upper
  };

  Traces make_traces(bool need_bounds) {
    const auto& sp = spec();
    const auto prof = profile();
    const auto ts = t_values();
    const auto avg = cfg_.average == "cesaro" ? TimeAverage::Cesaro : TimeAverage::Pointwise;
    Traces out;
    std::vector<std::pair<WaveProfile, FrontSide>> jobs{{prof, FrontSide::Exact}};
    if (!prof.is_step()) {
      out.steps = make_step_waves(prof, cfg_.eps);
      jobs.emplace_back(out.steps->lower, FrontSide::LowerWave);
      jobs.emplace_back(out.steps->upper, FrontSide::UpperWave);
    } else if (need_bounds) {
      throw ConfigError(cmd_ + ": bounds need a smooth profile");
    }
    stage_ = "front";
    out.traces.resize(jobs.size());
    parallel_for(static_cast<long long>(jobs.size()), threads_, [&](long long k) {
      const auto& [p, side] = jobs[static_cast<std::size_t>(k)];
      out.traces[static_cast<std::size_t>(k)] =
          front_trace(subordinated_wave(p, sp, avg, evaluator()), cfg_.beta, ts, side);
    });
    return out;
  }

  int front() {
    auto tr = make_traces(false);
    emit("front", "front.csv", true, [&](std::ostream& os) { write_front_csv(os, tr.traces, header_); });
    return 0;
  }

  int verify() {
    const auto& sp = spec();
    const KernelClass cls = sp.class_tag();
    if (cls == KernelClass::Unclassified) throw ConfigError("verify: the spec has no kernel class (C1, C2 or C3)");
    if (profile().is_step()) throw ConfigError("verify: needs a smooth profile");
    cfg_.average = "cesaro";
    auto tr = make_traces(true);
    const auto& br = tr.steps->bracket;

    LawParams lp;
    lp.v = cfg_.v;
    lp.eps = cfg_.eps;
    lp.beta = cfg_.beta;
    lp.x_offset = br.x_minus;
    const auto lower = AsymptoticLaw::for_spec(sp, BoundSide::Lower, lp);
    lp.x_offset = br.x_plus;
    const auto upper = AsymptoticLaw::for_spec(sp, BoundSide::Upper, lp);

    stage_ = "fit";
    ojson checks = ojson::array();
    bool all = true;
    for (std::size_t k = 1; k < 3; ++k) {
      const auto& law = k == 1 ? lower : upper;
      FitParams fp;
      fp.x_offset = law.params.x_offset;
      fp.s = sp.class_params().s;
      fp.expected = cls == KernelClass::C1 ? *sp.class_params().alpha : law.C_side;
      ojson row;
      try {
        const auto fit = fit_scaling(tr.traces[k], cls, fp);
        const double dev =
            cls == KernelClass::C1 ? std::abs(fit.fitted - fit.expected) : std::abs(fit.fitted / fit.expected - 1.0);
        row = to_json(fit);
        row["pass"] = dev <= cfg_.tolerance;
        row["tolerance"] = cfg_.tolerance;
      } catch (const DomainError& e) {
        row = {{"class", to_string(cls)}, {"side", to_string(tr.traces[k].side)}, {"fitted", nullptr},
               {"expected", *fp.expected}, {"residual", nullptr}, {"pass", false}, {"error", e.what()}};
      }
      all = all && row["pass"].get<bool>();
      checks.push_back(row);
    }

    stage_ = "bounds";
    const auto bounds = check_two_sided(tr.traces[0], lower, upper, cfg_.slack, cfg_.burn_in);
    all = all && bounds.pass;
    auto bj = to_json(bounds);
    bj["side"] = to_string(tr.traces[0].side);
    checks.push_back(bj);

    ojson body;
    body["spec"] = spec_to_json(sp);
    body["evaluator"] = cfg_.evaluator;
    body["beta"] = cfg_.beta;
    body["eps"] = cfg_.eps;
    body["v"] = cfg_.v;
    body["bracket"] = {{"x_minus", br.x_minus}, {"x_plus", br.x_plus}};
    body["laws"] = {{"lower_C", lower.C_side}, {"upper_C", upper.C_side}};
    ojson failures = ojson::array();
    for (const auto& t : tr.traces)
      for (const auto& f : t.failures) failures.push_back(to_string(t.side) + ": " + f);
    body["trace_failures"] = failures;
    body["checks"] = checks;
    body["pass"] = all;
    emit_json("report", "verify.json", body);
    return all ? 0 : 1;
  }

  int mc_check() {
    const auto& sp = spec();
    using V = SubordinatorSpec::Variant;
    if (sp.variant() != V::Stable && sp.variant() != V::Gamma)
      throw ConfigError("mc-check: path sampling covers the stable and gamma variants only");
    if (!(a_.samples >= 2)) throw ConfigError("--samples must be >= 2");
    if (given("--step") && !(a_.step > 0.0)) throw ConfigError("--step must be > 0");
    const auto prof = profile();
    const auto& m = cfg_.mc;

    RngStream pick(a_.seed, 1);
    std::vector<std::pair<double, double>> xt;
    for (int i = 0; i < m.points; ++i) {
      const double x = m.x_min + (m.x_max - m.x_min) * pick.uniform();
      const double t = m.t_min + (m.t_max - m.t_min) * pick.uniform();
      xt.emplace_back(x, t);
    }
    McOptions opt;
    opt.step = given("--step") ? a_.step : m.t_max / 1e4;
    opt.threads = threads_;

    stage_ = "mc";
    const auto est = mc_subordinate_batch(prof, sp, xt, a_.samples, RngStream(a_.seed, 2), opt);
    stage_ = "subordinate";
    std::vector<double> exact(xt.size());
    parallel_for(static_cast<long long>(xt.size()), threads_, [&](long long i) {
      const auto& p = xt[static_cast<std::size_t>(i)];
      exact[static_cast<std::size_t>(i)] = subordinate(prof, sp, p.first, p.second);
    });

    ojson checks = ojson::array();
    bool all = true;
    for (std::size_t i = 0; i < xt.size(); ++i) {
      const double diff = std::abs(est[i].mean - exact[i]);
      // A zero standard error means every sample agreed; demand exact agreement up to roundoff.
      const double z = est[i].std_error > 0.0 ? diff / est[i].std_error : (diff <= 1e-12 ? 0.0 : INFINITY);
      const bool ok = z <= 3.0;
      all = all && ok;
      checks.push_back({{"class", to_string(sp.class_tag())},
                        {"side", to_string(FrontSide::Exact)},
                        {"fitted", est[i].mean},
                        {"expected", exact[i]},
                        {"residual", std::isfinite(z) ? ojson(z) : ojson(nullptr)},
                        {"pass", ok},
                        {"x", xt[i].first},
                        {"t", xt[i].second},
                        {"std_error", est[i].std_error},
                        {"n", est[i].n}});
    }

    stage_ = "histogram";
    std::vector<double> samples(static_cast<std::size_t>(m.hist_samples));
    const long long chunk = 1000;
    const long long n_chunks = (m.hist_samples + chunk - 1) / chunk;
    const RngStream hist_rng(a_.seed, 3);
    parallel_for(n_chunks, threads_, [&](long long c) {
      RngStream local = hist_rng.split(static_cast<std::uint64_t>(c));
      const long long end = std::min<long long>(m.hist_samples, (c + 1) * chunk);
      for (long long i = c * chunk; i < end; ++i)
        samples[static_cast<std::size_t>(i)] = sample_inverse(sp, m.t_max, local, opt.step, opt.cap);
    });
    const double hi = *std::max_element(samples.begin(), samples.end());
    const auto hist = make_histogram(samples, 0.0, hi > 0.0 ? std::nextafter(hi, INFINITY) : 1.0, m.hist_bins);

    ojson body;
    body["spec"] = spec_to_json(sp);
    body["seed"] = a_.seed;
    body["samples"] = a_.samples;
    body["step"] = opt.step;
    body["histogram_t"] = m.t_max;
    body["checks"] = checks;
    body["pass"] = all;
    emit("histogram", "histogram.csv", false, [&](std::ostream& os) { write_histogram_csv(os, hist, header_); });
    emit_json("report", "mc_check.json", body);
    return all ? 0 : 1;
  }

  // Caputo derivative of t and t^2, and the distributed-order operator of t,
  // at t = 1 on grids h and h/2.
  int gfd_check() {
    const double alpha = a_.alpha;
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("--alpha must lie in (0,1)");
    const double h = given("--step") ? a_.step : 1e-3;
    if (!(h > 0.0 && h <= 0.1)) throw ConfigError("--step must lie in (0, 0.1]");
    const auto n = static_cast<Eigen::Index>(std::llround(1.0 / h));
    if (std::abs(static_cast<double>(n) * h - 1.0) > 1e-9) throw ConfigError("gfd-check: 1/step must be an integer");
    Weight w = Weight::constant(1.0);
    if (cfg_.spec && cfg_.spec->variant() == SubordinatorSpec::Variant::DistributedOrder) w = cfg_.spec->weight();

    stage_ = "gfd";
    const double tol = cfg_.raw.is_object() && cfg_.raw.contains("tolerance") ? cfg_.tolerance : 1e-3;
    const double eps = std::numeric_limits<double>::epsilon();
    struct Case {
      std::string name;
      GfdKernel kernel;
      std::function<double(double)> u;
      double exact;
    };
    // int_0^1 k(1-s) u'(s) ds for u = t is the primitive of k at 1.
    const double dist_exact =
        quad::gauss_kronrod([&](double tau) { return w(tau) / std::tgamma(2.0 - tau); }, 0.0, 1.0).value;
    std::vector<Case> cases{
        {"caputo", GfdKernel::caputo(alpha), [](double t) { return t; }, 1.0 / std::tgamma(2.0 - alpha)},
        {"caputo", GfdKernel::caputo(alpha), [](double t) { return t * t; }, 2.0 / std::tgamma(3.0 - alpha)},
        {"distributed", GfdKernel::distributed(w), [](double t) { return t; }, dist_exact},
    };
    const char* shapes[] = {"u=t", "u=t^2", "u=t"};
    ojson checks = ojson::array();
    bool all = true;
    for (std::size_t c = 0; c < cases.size(); ++c) {
      const auto& cs = cases[c];
      const double v1 = apply_gfd(cs.kernel, TimeGridFunction::sample(cs.u, h, n), n);
      const double v2 = apply_gfd(cs.kernel, TimeGridFunction::sample(cs.u, h / 2, 2 * n), 2 * n);
      const double e1 = std::abs(v1 - cs.exact), e2 = std::abs(v2 - cs.exact);
      // Roundoff of a 2n-term sum.
      const double floor = 2.0 * static_cast<double>(2 * n) * eps * std::abs(cs.exact);
      // Both errors at roundoff level: the scheme is exact for this u.
      const bool exact_scheme = e1 <= floor && e2 <= floor;
      const double order = exact_scheme ? INFINITY : std::log2(e1 / std::max(e2, eps * std::abs(cs.exact)));
      const double rel = e1 / std::abs(cs.exact);
      const bool ok = rel <= tol && order >= 1.0;
      all = all && ok;
      checks.push_back({{"class", cs.name},
                        {"side", shapes[c]},
                        {"fitted", v1},
                        {"expected", cs.exact},
                        {"residual", rel},
                        {"pass", ok},
                        {"fitted_half_step", v2},
                        {"observed_order", std::isfinite(order) ? ojson(order) : ojson("exact")},
                        {"h", h}});
    }
    ojson body;
    body["alpha"] = alpha;
    body["checks"] = checks;
    body["pass"] = all;
    emit_json("report", "gfd_check.json", body);
    return all ? 0 : 1;
  }

  std::string cmd_;
  Args a_;
  const CLI::App& sub_;
  std::ostream& out_;
  ExperimentConfig cfg_;
  int threads_ = 1;
  std::string hash_, header_, stage_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subordinated traveling waves: densities, fronts and checks", "subwave"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());
  Args a;
  const char* names[][2] = {{"density", "tabulate the density of the inverse subordinator"},
                            {"subordinate", "tabulate the subordinated wave"},
                            {"front", "front traces of a wave and its step bounds"},
                            {"verify", "fit front laws and check the two-sided bounds"},
                            {"mc-check", "Monte Carlo cross-check of the subordinated wave"},
                            {"gfd-check", "Caputo and distributed-order operator checks"}};
  for (const auto& [name, help] : names) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("--config", a.config, "experiment JSON")->check(CLI::ExistingFile);
    s->add_option("--out", a.out, "output directory (stdout when absent)");
    s->add_option("--seed", a.seed, "random seed");
    s->add_option("--threads", a.threads, "worker threads (default: all cores)");
    s->add_option("--samples", a.samples, "Monte Carlo samples");
    s->add_option("--step", a.step, "MC time step or GFD grid step");
    s->add_option("--alpha", a.alpha, "stable index");
    s->add_option("--t", a.t, "time");
    s->add_option("--tau-max", a.tau_max, "largest tau");
    s->add_option("--tau-points", a.tau_points, "tau grid points");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  const CLI::App* sub = app.get_subcommands().front();
  Runner r(sub->get_name(), a, *sub, out);
  try {
    return r.go();
  } catch (const ConfigError& e) {
    err << "subwave: bad config: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "subwave: bad config: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "subwave: numerical failure in stage '" << r.stage() << "': " << e.what() << '\n';
    return 3;
  }
}

int run(int argc, char** argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace subwave::cli
