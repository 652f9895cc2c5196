#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "app.hpp"
#include "expr.hpp"
#include "fracgreen/errors.hpp"
#include "fracgreen/field.hpp"
#include "prop.hpp"

using namespace fracgreen;
using namespace fracgreen::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fracgreen_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

// Quick configuration: alpha = 1.4 tabulates fast.
RunConfig quick(const std::string& command, const fs::path& out) {
  RunConfig cfg;
  cfg.command = command;
  cfg.params.alpha = 1.4;
  cfg.params.b = 0.5;
  cfg.params.c = 1.0;
  cfg.tau = {{"1", ""}, {"0", ""}};
  cfg.phi1 = cfg.phi2 = {"1", ""};
  cfg.f = {"c", ""};
  cfg.exact = "1";
  cfg.grid = {5, 5};
  cfg.fd = {16, 16};
  cfg.out_dir = out.string();
  return cfg;
}

struct EnvGuard {
  std::vector<std::string> names;
  void set(const std::string& n, const std::string& v) {
    names.push_back(n);
    setenv(n.c_str(), v.c_str(), 1);
  }
  ~EnvGuard() {
    for (const auto& n : names) unsetenv(n.c_str());
  }
};

}  // namespace

TEST(Expression, Arithmetic) {
  EXPECT_EQ(Expression::parse("1 + 2 * 3")(0), 7.0);
  EXPECT_EQ(Expression::parse("(1 + 2) * 3")(0), 9.0);
  EXPECT_EQ(Expression::parse("2^3^2")(0), 512.0);
  EXPECT_EQ(Expression::parse("-2^2")(0), -4.0);
  EXPECT_EQ(Expression::parse("2^-1")(0), 0.5);
  EXPECT_EQ(Expression::parse("8 / 4 / 2")(0), 1.0);
  EXPECT_EQ(Expression::parse("1e-3 * 2.5E2")(0), 0.25);
  EXPECT_EQ(Expression::parse("--3")(0), 3.0);
}

TEST(Expression, VariablesFunctionsAndSymbols) {
  const auto e = Expression::parse("sin(pi*x) * exp(-y) + y^2");
  EXPECT_NEAR(e(0.5, 1.0), std::exp(-1.0) + 1.0, 1e-15);
  EXPECT_NEAR(Expression::parse("cos(0) + e")(0), 1.0 + M_E, 1e-15);
  EXPECT_NEAR(Expression::parse("sqrt(abs(x)) + log(e) + gamma(5)")(-4.0), 2.0 + 1.0 + 24.0, 1e-12);
  const auto s = Expression::parse("2*y^(2-alpha)/gamma(3-alpha) + c*y^2", {{"alpha", 1.4}, {"c", 1.0}});
  EXPECT_NEAR(s(0.0, 0.5), 2 * std::pow(0.5, 0.6) / std::tgamma(1.6) + 0.25, 1e-14);
}

TEST(Expression, Errors) {
  for (const char* bad : {"", "1 +", "sin(", "(1", "1)", "foo(1)", "z", "2 ** 3", "x y", "alpha"})
    EXPECT_THROW(Expression::parse(bad), InvalidParam) << "'" << bad << "'";
  try {
    Expression::parse("1 + $");
    FAIL();
  } catch (const InvalidParam& e) {
    EXPECT_NE(std::string(e.what()).find("5"), std::string::npos) << e.what();
  }
}

TEST(Csv, RoundTripIsExact) {
  std::mt19937 rng(61);
  SolutionField f;
  f.x = {0.1, 1.0 / 3.0, 0.7};
  f.y = {1e-300, 0.5, 2.0 / 3.0, 1.0};
  for (int i = 0; i < 12; ++i) {
    const double m = std::uniform_real_distribution<double>(-1, 1)(rng);
    const int e = std::uniform_int_distribution<int>(-300, 300)(rng);
    f.values.push_back(std::ldexp(m, e));
    f.err_est.push_back(std::abs(m) * 1e-9);
  }
  f.values[3] = std::numeric_limits<double>::denorm_min();
  f.values[4] = -0.0;
  std::stringstream ss;
  write_csv(ss, f);
  const auto g = read_csv(ss);
  EXPECT_EQ(g.x, f.x);
  EXPECT_EQ(g.y, f.y);
  EXPECT_EQ(g.err_est, f.err_est);
  ASSERT_EQ(g.values.size(), f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) EXPECT_EQ(g.values[i], f.values[i]) << i;
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  fgtest::for_all(2000, 62, [](std::mt19937& rng) {
    const double v = std::ldexp(fgtest::uniform(rng, -1, 1), fgtest::uniform_int(rng, -1000, 1000));
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  });
}

TEST(Config, Precedence) {
  const auto dir = scratch("precedence");
  write(dir / "a.json", R"({"command": "oracle", "tolerances": {"tol": 0.5}, "threads": 2,
                            "output": {"dir": "from_config"}})");
  Overrides o;
  o.config_path = (dir / "a.json").string();
  auto cfg = resolve_config(o);
  EXPECT_EQ(cfg.tol, 0.5);
  EXPECT_EQ(cfg.threads, 2);
  EXPECT_EQ(cfg.command, "oracle");
  EXPECT_EQ(cfg.out_dir, "from_config");

  EnvGuard env;
  env.set("FRACGREEN_TOL", "0.25");
  env.set("FRACGREEN_OUT", "from_env");
  env.set("FRACGREEN_COMMAND", "verify");
  cfg = resolve_config(o);
  EXPECT_EQ(cfg.tol, 0.25);
  EXPECT_EQ(cfg.out_dir, "from_env");
  EXPECT_EQ(cfg.command, "verify");
  EXPECT_EQ(cfg.threads, 2);

  o.tol = 0.125;
  o.out_dir = "from_flag";
  o.command = "solve";
  cfg = resolve_config(o);
  EXPECT_EQ(cfg.tol, 0.125);
  EXPECT_EQ(cfg.out_dir, "from_flag");
  EXPECT_EQ(cfg.command, "solve");
}

TEST(Config, EnvironmentNamesTheFile) {
  const auto dir = scratch("envfile");
  write(dir / "b.json", R"({"params": {"alpha": 1.25}, "data": {"tau": ["0", "0"]}})");
  EnvGuard env;
  env.set("FRACGREEN_CONFIG", (dir / "b.json").string());
  EXPECT_EQ(resolve_config({}).params.alpha, 1.25);
}

TEST(Config, RejectsMalformedInput) {
  const auto dir = scratch("malformed");
  write(dir / "bad.json", "{\"params\": {\"alpha\": }");
  write(dir / "type.json", R"({"params": {"alpha": "fast"}})");
  EXPECT_THROW(load_config((dir / "bad.json").string()), InvalidParam);
  EXPECT_THROW(load_config((dir / "type.json").string()), InvalidParam);
  EXPECT_THROW(load_config((dir / "missing.json").string()), InvalidParam);
  EnvGuard env;
  env.set("FRACGREEN_THREADS", "many");
  RunConfig cfg;
  EXPECT_THROW(apply_env(cfg), InvalidParam);
}

TEST(Config, AcceptsComments) {
  const auto dir = scratch("comments");
  write(dir / "c.json", "{\n  // coefficients\n  \"params\": {\"alpha\": 0.5} /* done */\n}");
  EXPECT_EQ(load_config((dir / "c.json").string()).params.alpha, 0.5);
}

TEST(Config, Validation) {
  RunConfig cfg;
  cfg.params.alpha = 2.5;
  try {
    cfg.validate();
    FAIL();
  } catch (const InvalidParam& e) {
    EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos);
  }
  cfg = RunConfig{};
  cfg.command = "plot";
  EXPECT_THROW(cfg.validate(), InvalidParam);
  cfg = RunConfig{};
  cfg.params.alpha = 1.5;
  EXPECT_THROW(cfg.validate(), InvalidParam);  // one initial trace for n = 2
  cfg = RunConfig{};
  cfg.tol = 0.0;
  EXPECT_THROW(cfg.validate(), InvalidParam);
}

TEST(Data, FromFiles) {
  const auto dir = scratch("files");
  write(dir / "tau.csv", "x,value\n0,1\n0.5,2\n1,0\n");
  SolutionField src;
  src.x = {0.0, 1.0};
  src.y = {0.0, 1.0};
  src.values = {0.0, 1.0, 2.0, 3.0};
  write_csv((dir / "f.csv").string(), src);
  RunConfig cfg;
  cfg.tau = {{"", (dir / "tau.csv").string()}};
  cfg.phi1 = {"1", ""};
  cfg.phi2 = {"0", ""};
  cfg.f = {"", (dir / "f.csv").string()};
  const auto d = build_data(cfg);
  EXPECT_DOUBLE_EQ(d.tau[0](0.25), 1.5);
  EXPECT_DOUBLE_EQ(d.f(0.5, 0.5), 1.5);
  EXPECT_THROW(d.tau[0](1.5), DomainError);
}

TEST(Run, ExitCodes) {
  const auto dir = scratch("exit");
  std::ostringstream out, err;
  EXPECT_EQ(run(quick("solve", dir / "ok"), out, err), 0) << err.str();
  const auto ones = read_csv((dir / "ok" / "solution.csv").string());
  for (double v : ones.values) EXPECT_NEAR(v, 1.0, 1e-6);

  auto tight = quick("solve", dir / "tight");
  tight.phi1 = tight.phi2 = {"y^2", ""};
  tight.tau = {{"0", ""}, {"0", ""}};
  tight.f = {"2*y^(2-alpha)/gamma(3-alpha) + 2*b*y^(2-alpha/2)/gamma(3-alpha/2) + c*y^2", ""};
  tight.exact = "y^2";
  tight.tol = 1e-12;
  EXPECT_EQ(run(tight, out, err), 1);

  auto invalid = quick("solve", dir / "invalid");
  invalid.params.alpha = 2.5;
  std::ostringstream err2;
  EXPECT_EQ(run(invalid, out, err2), 2);
  EXPECT_NE(err2.str().find("alpha"), std::string::npos);

  auto incompatible = quick("solve", dir / "incompatible");
  incompatible.phi1 = {"3", ""};
  EXPECT_EQ(run(incompatible, out, err), 2);

  auto parse_error = quick("solve", dir / "parse");
  parse_error.f = {"c +", ""};
  EXPECT_EQ(run(parse_error, out, err), 2);

  auto numerical = quick("solve", dir / "numerical");
  numerical.params.alpha = 1.8;
  EXPECT_EQ(run(numerical, out, err), 3);
}

TEST(Run, CommandsWriteArtifacts) {
  const auto dir = scratch("artifacts");
  std::ostringstream out, err;
  auto g = quick("gamma", dir);
  g.gamma_nu = {0.0, 0.7};
  g.gamma_m = {0, 1};
  g.gamma_x_min = 0.1;
  EXPECT_EQ(run(g, out, err), 0) << err.str();
  EXPECT_TRUE(fs::exists(dir / "gamma_nu0_m0.csv"));
  EXPECT_TRUE(fs::exists(dir / "gamma_nu0.7_m1.csv"));
  EXPECT_EQ(run(quick("green", dir), out, err), 0) << err.str();
  EXPECT_TRUE(fs::exists(dir / "green.csv"));
  EXPECT_EQ(run(quick("oracle", dir), out, err), 0) << err.str();
  EXPECT_TRUE(fs::exists(dir / "oracle.csv"));
  EXPECT_TRUE(fs::exists(dir / "oracle_report.json"));
  EXPECT_EQ(run(quick("verify", dir), out, err), 0) << err.str();
  EXPECT_TRUE(fs::exists(dir / "verify_report.json"));
  auto conv = quick("convergence", dir);
  conv.levels = 2;
  EXPECT_EQ(run(conv, out, err), 0) << err.str();
  const auto table = slurp(dir / "convergence.csv");
  EXPECT_EQ(table.rfind("method,level,size,max_error,max_change,order\n", 0), 0u);
}

TEST(Run, Deterministic) {
  const auto a = scratch("det_a"), b = scratch("det_b");
  auto cfg = quick("solve", a);
  cfg.phi1 = cfg.phi2 = {"1 + sin(y)", ""};
  cfg.f = {"x*y", ""};
  cfg.exact.clear();
  std::ostringstream out, err;
  run(cfg, out, err);
  cfg.out_dir = b.string();
  cfg.threads = 3;
  run(cfg, out, err);
  const auto sa = slurp(a / "solution.csv"), sb = slurp(b / "solution.csv");
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, sb);
}
