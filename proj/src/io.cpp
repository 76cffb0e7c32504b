#include "subwave/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>

namespace subwave {

std::string tool_version() { return SUBWAVE_VERSION; }

std::string config_hash(const ojson& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string header_line(const std::string& hash) { return "# subwave " + tool_version() + " config=" + hash; }

namespace {

double number(const ojson& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("spec: missing key '") + key + "'");
  if (!j.at(key).is_number()) throw ConfigError(std::string("spec: '") + key + "' must be a number");
  return j.at(key).get<double>();
}

}  // namespace

SubordinatorSpec spec_from_json(const ojson& j) {
  if (!j.is_object()) throw ConfigError("spec: expected an object");
  if (!j.contains("variant") || !j.at("variant").is_string()) throw ConfigError("spec: missing 'variant'");
  const auto variant = j.at("variant").get<std::string>();
  try {
    if (variant == "stable") return SubordinatorSpec::stable(number(j, "alpha"));
    if (variant == "gamma") return SubordinatorSpec::gamma(number(j, "a"), number(j, "b"));
    if (variant == "distributed") {
      if (!j.contains("weight") || !j.at("weight").is_object()) throw ConfigError("spec: missing 'weight'");
      const auto& w = j.at("weight");
      const auto kind = w.value("kind", std::string());
      if (kind == "const") return SubordinatorSpec::distributed(Weight::constant(number(w, "mu0")));
      if (kind == "power") return SubordinatorSpec::distributed(Weight::power(number(w, "s"), w.value("scale", 1.0)));
      throw ConfigError("spec: weight kind must be 'const' or 'power'");
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("spec: ") + e.what());
  }
  throw ConfigError("spec: unknown variant '" + variant + "'");
}

ojson spec_to_json(const SubordinatorSpec& spec) {
  using V = SubordinatorSpec::Variant;
  ojson j;
  switch (spec.variant()) {
    case V::Stable:
      j["variant"] = "stable";
      j["alpha"] = spec.alpha();
      break;
    case V::Gamma:
      j["variant"] = "gamma";
      j["a"] = spec.a();
      j["b"] = spec.b();
      break;
    case V::DistributedOrder: {
      j["variant"] = "distributed";
      const auto& w = spec.weight();
      if (w.kind == Weight::Kind::Constant)
        j["weight"] = {{"kind", "const"}, {"mu0", w.mu0}};
      else if (w.kind == Weight::Kind::Power)
        j["weight"] = {{"kind", "power"}, {"s", w.s}, {"scale", w.scale}};
      else
        throw ConfigError("spec: custom weights have no JSON form");
      break;
    }
    case V::LaplaceSymbolOnly: throw ConfigError("spec: symbol-only specs have no JSON form");
  }
  return j;
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

void write_density_csv(std::ostream& os, const DensityGrid& grid, const std::string& header) {
  os << header << "\n# est_abs_error=" << fmt(grid.est_abs_error) << "\nt,tau,G\n";
  for (Eigen::Index i = 0; i < grid.t_values.size(); ++i)
    for (Eigen::Index j = 0; j < grid.tau_values.size(); ++j)
      os << fmt(grid.t_values(i)) << ',' << fmt(grid.tau_values(j)) << ',' << fmt(grid.values(i, j)) << '\n';
}

void write_wave_csv(std::ostream& os, const std::vector<WaveSample>& rows, const std::string& header) {
  os << header << "\nt,x,psiE\n";
  for (const auto& r : rows) os << fmt(r.t) << ',' << fmt(r.x) << ',' << fmt(r.value) << '\n';
}

void write_front_csv(std::ostream& os, const std::vector<FrontTrace>& traces, const std::string& header) {
  os << header << "\nt,x_beta,beta,side\n";
  for (const auto& tr : traces)
    for (Eigen::Index i = 0; i < tr.t_values.size(); ++i)
      os << fmt(tr.t_values(i)) << ',' << fmt(tr.x_values(i)) << ',' << fmt(tr.beta) << ',' << to_string(tr.side)
         << '\n';
}

void write_histogram_csv(std::ostream& os, const Histogram& h, const std::string& header) {
  os << header << "\nbin_lo,bin_hi,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    os << fmt(h.edges[i]) << ',' << fmt(h.edges[i + 1]) << ',' << h.counts[i] << '\n';
}

namespace {
// JSON has no NaN; missing values become null.
ojson num(double x) { return std::isfinite(x) ? ojson(x) : ojson(nullptr); }
}  // namespace

ojson to_json(const FitReport& r) {
  ojson j;
  j["class"] = to_string(r.cls);
  j["side"] = to_string(r.side);
  j["fitted"] = num(r.fitted);
  j["expected"] = num(r.expected);
  j["residual"] = num(r.residual);
  j["pass"] = nullptr;  // set by the caller, which owns the tolerance
  j["intercept"] = num(r.intercept);
  j["points"] = r.points;
  return j;
}

ojson to_json(const BoundReport& r) {
  ojson j;
  j["class"] = to_string(r.cls);
  j["side"] = "two-sided";
  j["fitted"] = num(r.worst_margin);
  j["expected"] = 0.0;
  j["residual"] = r.violations;
  j["pass"] = r.pass;
  j["slack"] = r.slack;
  j["burn_in"] = r.burn_in;
  ojson pts = ojson::array();
  for (const auto& p : r.points)
    pts.push_back({{"t", num(p.t)},
                   {"x", num(p.x)},
                   {"lower_law", num(p.lower)},
                   {"upper_law", num(p.upper)},
                   {"lower_ok", p.lower_ok},
                   {"upper_ok", p.upper_ok},
                   {"counted", p.counted}});
  j["points"] = pts;
  j["notes"] = r.notes;
  return j;
}

}  // namespace subwave
