#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "subwave/cli.hpp"
#include "subwave/io.hpp"

using namespace subwave;
namespace fs = std::filesystem;

namespace {

int run_cli(std::vector<std::string> args, std::string* out = nullptr, std::string* err = nullptr) {
  args.insert(args.begin(), "subwave");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("subwave_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_config(const fs::path& dir, const std::string& body) {
  const auto p = dir / "cfg.json";
  std::ofstream(p) << body;
  return p;
}

const std::string kConfigs = SUBWAVE_CONFIG_DIR;

}  // namespace

TEST(Spec, JsonRoundTrip) {
  for (const char* s : {R"({"variant":"stable","alpha":0.3})", R"({"variant":"gamma","a":1.0,"b":2.0})",
                        R"({"variant":"distributed","weight":{"kind":"const","mu0":1.5}})",
                        R"({"variant":"distributed","weight":{"kind":"power","s":1.0}})"}) {
    const auto spec = spec_from_json(ojson::parse(s));
    const auto again = spec_from_json(spec_to_json(spec));
    EXPECT_EQ(spec.describe(), again.describe());
  }
  EXPECT_THROW(spec_from_json(ojson::parse(R"({"variant":"cauchy"})")), ConfigError);
  EXPECT_THROW(spec_from_json(ojson::parse(R"({"variant":"stable"})")), ConfigError);
  EXPECT_THROW(spec_from_json(ojson::parse(R"({"variant":"stable","alpha":1.5})")), ConfigError);
  EXPECT_THROW(spec_from_json(ojson::parse(R"({"variant":"distributed","weight":{"kind":"exp"}})")), ConfigError);
}

TEST(Format, RoundTripAndHash) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5}) EXPECT_EQ(std::stod(fmt(x)), x);
  EXPECT_EQ(fmt(0.5), "0.5");
  const auto h = config_hash(ojson::parse(R"({"a":1})"));
  EXPECT_EQ(h.size(), 16u);
  EXPECT_EQ(h, config_hash(ojson::parse(R"({"a":1})")));
  EXPECT_NE(h, config_hash(ojson::parse(R"({"a":2})")));
  EXPECT_EQ(header_line(h).rfind("# subwave ", 0), 0u);
}

TEST(Config, Validation) {
  EXPECT_THROW(cli::parse_config(ojson::parse(R"({"eps":0.05,"beta":0.01})")), ConfigError);
  EXPECT_THROW(cli::parse_config(ojson::parse(R"({"eps":0.7})")), ConfigError);
  EXPECT_THROW(cli::parse_config(ojson::parse(R"({"t_grid":{"t_min":10,"t_max":1}})")), ConfigError);
  EXPECT_THROW(cli::parse_config(ojson::parse(R"({"evaluator":"magic"})")), ConfigError);
  EXPECT_THROW(cli::parse_config(ojson::parse(R"({"outputs":{"front":"../x.csv"}})")), ConfigError);
  EXPECT_THROW(cli::parse_config(ojson::parse(R"([1,2])")), ConfigError);
  const auto c = cli::parse_config(ojson::parse(R"({"spec":{"variant":"stable","alpha":0.5},"beta":0.4})"));
  EXPECT_TRUE(c.spec.has_value());
  EXPECT_EQ(c.beta, 0.4);
}

TEST(Grids, LogGridHitsDecades) {
  const auto g = cli::log_grid(1e2, 1e6, 9);
  EXPECT_EQ(g.front(), 1e2);
  EXPECT_EQ(g[2], 1e3);
  EXPECT_EQ(g[4], 1e4);
  EXPECT_EQ(g.back(), 1e6);
}

TEST(Cli, DensityFlagsGiveClosedFormRow) {
  std::string out;
  ASSERT_EQ(run_cli({"density", "--alpha", "0.5", "--t", "1", "--tau-max", "5"}, &out), 0);
  std::istringstream in(out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# subwave ", 0), 0u);
  while (std::getline(in, line) && line[0] == '#') {
  }
  EXPECT_EQ(line, "t,tau,G");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 6), "1,0,0.");
  EXPECT_NEAR(std::stod(line.substr(4)), 0.5641895835477563, 1e-12);
}

TEST(Cli, ExitCodes) {
  std::string err;
  EXPECT_EQ(run_cli({"verify", "--config", kConfigs + "/bad.json"}, nullptr, &err), 2);
  EXPECT_NE(err.find("beta"), std::string::npos);
  EXPECT_EQ(run_cli({"nonsense"}), 2);
  EXPECT_EQ(run_cli({"density", "--alpha", "1.5"}), 2);
  const auto d = scratch("gamma_verify");
  const auto cfg = write_config(d, R"({"spec":{"variant":"gamma","a":1,"b":1}})");
  EXPECT_EQ(run_cli({"verify", "--config", cfg.string()}, nullptr, &err), 2);
  const auto mc = write_config(d, R"({"spec":{"variant":"distributed","weight":{"kind":"const","mu0":1}}})");
  EXPECT_EQ(run_cli({"mc-check", "--config", mc.string()}), 2);
}

TEST(Cli, VerifyPassesForAllClasses) {
  for (const char* name : {"c1.json", "c2.json", "c3.json"}) {
    const auto d = scratch(std::string("verify_") + name);
    EXPECT_EQ(run_cli({"verify", "--config", kConfigs + "/" + name, "--out", d.string()}), 0) << name;
    const auto rep = ojson::parse(slurp(d / "verify.json"));
    EXPECT_TRUE(rep["pass"].get<bool>());
    for (const auto& c : rep["checks"])
      for (const char* key : {"class", "side", "fitted", "expected", "residual", "pass"})
        EXPECT_TRUE(c.contains(key)) << key;
  }
}

TEST(Cli, OutputsAreByteIdentical) {
  const auto d = scratch("ident");
  const auto cfg = write_config(d, R"({"spec":{"variant":"gamma","a":1,"b":1},
    "t_grid":{"t_min":0.5,"t_max":4,"points":3},"x_grid":{"x_min":-2,"x_max":2,"points":5},
    "mc":{"points":3,"hist_samples":500}})");
  for (const char* cmd : {"subordinate", "front", "mc-check"}) {
    const auto a = d / (std::string(cmd) + "_a"), b = d / (std::string(cmd) + "_b");
    std::vector<std::string> extra = std::string(cmd) == "mc-check"
                                         ? std::vector<std::string>{"--samples", "2000", "--step", "0.01"}
                                         : std::vector<std::string>{};
    auto args = [&](const fs::path& out, const char* threads) {
      std::vector<std::string> v{cmd, "--config", cfg.string(), "--out", out.string(), "--seed", "3",
                                 "--threads", threads};
      v.insert(v.end(), extra.begin(), extra.end());
      return v;
    };
    const int ca = run_cli(args(a, "1")), cb = run_cli(args(b, "3"));
    EXPECT_EQ(ca, cb);
    ASSERT_LE(ca, 1) << cmd;
    for (const auto& entry : fs::directory_iterator(a)) {
      const auto name = entry.path().filename();
      const auto text = slurp(entry.path());
      EXPECT_EQ(text, slurp(b / name)) << cmd << " " << name;
      EXPECT_EQ(text.rfind("# subwave", 0) == 0 || text.find("\"header\": \"# subwave") != std::string::npos, true);
    }
  }
}

TEST(Cli, GfdCheckPasses) {
  std::string out;
  EXPECT_EQ(run_cli({"gfd-check"}, &out), 0);
  const auto rep = ojson::parse(out);
  EXPECT_EQ(rep["checks"].size(), 3u);
}
