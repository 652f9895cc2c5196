#include "app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "expr.hpp"
#include "fracgreen/errors.hpp"
#include "fracgreen/field.hpp"
#include "fracgreen/greenfn.hpp"
#include "identities.hpp"

namespace fracgreen::cli {

using nlohmann::json;

namespace {

const char* kCommands[] = {"gamma", "green", "solve", "oracle", "verify", "convergence", "identities"};

[[noreturn]] void bad(const std::string& m) { throw InvalidParam(m); }

DataItem item_from(const json& j, const std::string& key) {
  DataItem d;
  if (j.is_string()) {
    d.expr = j.get<std::string>();
  } else if (j.is_number()) {
    d.expr = format_double(j.get<double>());
  } else if (j.is_object() && j.contains("file")) {
    d.file = j.at("file").get<std::string>();
  } else {
    bad("data." + key + " must be an expression string, a number, or {\"file\": path}");
  }
  return d;
}

template <class T>
void take(const json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

}  // namespace

void RunConfig::validate() const {
  params.validate();
  if (std::find(std::begin(kCommands), std::end(kCommands), command) == std::end(kCommands))
    bad("unknown command '" + command + "'");
  if (static_cast<int>(tau.size()) != params.n())
    bad("data.tau needs " + std::to_string(params.n()) + " entries for alpha = " +
        format_double(params.alpha));
  if (!(tol > 0.0)) bad("tol must be positive");
  if (!(residual_tol > 0.0)) bad("residual_tol must be positive");
  if (!(kernel_tol > 0.0) || !(image_tol > 0.0) || !(compat_tol > 0.0))
    bad("kernel_tol, image_tol and compat_tol must be positive");
  if (grid.nx < 3 || grid.ny < 3) bad("grid.nx and grid.ny must be at least 3");
  fd.validate();
  if (quad.xi_points < 5 || quad.t_points < 5)
    bad("quadrature xi_points and t_points must be at least 5");
  if (quad.t_panels < 1 || quad.refine < 1) bad("quadrature t_panels and refine must be positive");
  if (threads < 1) bad("threads must be positive");
  if (levels < 2) bad("levels must be at least 2");
  if (gamma_nx < 1 || gamma_ny < 1) bad("gamma.nx and gamma.ny must be positive");
  for (int m : gamma_m)
    if (m < 0 || m > 2) bad("gamma.m entries must lie in {0, 1, 2}");
  if (green_m < 0 || green_m > 1) bad("green.m must be 0 or 1");
  if (!(green_eta >= 0.0 && green_eta < params.T)) bad("green.eta must lie in [0, T)");
  if (!(green_xi >= params.a1 && green_xi <= params.a2)) bad("green.xi must lie in [a1, a2]");
  for (auto [x, y] : probes)
    if (!(x > params.a1 && x < params.a2 && y > 0.0 && y <= params.T))
      bad("probe (" + format_double(x) + ", " + format_double(y) + ") is not interior");
}

void apply_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) bad("config must be a JSON object");
  take(j, "command", cfg.command);
  if (j.contains("params")) {
    const auto& p = j.at("params");
    take(p, "alpha", cfg.params.alpha);
    take(p, "b", cfg.params.b);
    take(p, "c", cfg.params.c);
    take(p, "a1", cfg.params.a1);
    take(p, "a2", cfg.params.a2);
    take(p, "T", cfg.params.T);
  }
  if (j.contains("data")) {
    const auto& d = j.at("data");
    if (d.contains("tau")) {
      const auto& t = d.at("tau");
      cfg.tau.clear();
      if (t.is_array()) {
        for (std::size_t k = 0; k < t.size(); ++k) cfg.tau.push_back(item_from(t[k], "tau"));
      } else {
        cfg.tau.push_back(item_from(t, "tau"));
      }
    }
    if (d.contains("phi1")) cfg.phi1 = item_from(d.at("phi1"), "phi1");
    if (d.contains("phi2")) cfg.phi2 = item_from(d.at("phi2"), "phi2");
    if (d.contains("f")) cfg.f = item_from(d.at("f"), "f");
    take(d, "exact", cfg.exact);
  }
  if (j.contains("grid")) {
    take(j.at("grid"), "nx", cfg.grid.nx);
    take(j.at("grid"), "ny", cfg.grid.ny);
  }
  if (j.contains("fd")) {
    take(j.at("fd"), "Nx", cfg.fd.Nx);
    take(j.at("fd"), "Ny", cfg.fd.Ny);
  }
  if (j.contains("probes")) {
    cfg.probes.clear();
    for (const auto& p : j.at("probes")) {
      if (!p.is_array() || p.size() != 2) bad("probes must be [x, y] pairs");
      cfg.probes.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
  }
  if (j.contains("quadrature")) {
    const auto& q = j.at("quadrature");
    take(q, "xi_points", cfg.quad.xi_points);
    take(q, "t_points", cfg.quad.t_points);
    take(q, "t_panels", cfg.quad.t_panels);
    take(q, "refine", cfg.quad.refine);
    take(q, "max_xi_panel", cfg.quad.max_xi_panel);
  }
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    take(t, "kernel_tol", cfg.kernel_tol);
    take(t, "image_tol", cfg.image_tol);
    take(t, "compat_tol", cfg.compat_tol);
    take(t, "tol", cfg.tol);
    take(t, "residual_tol", cfg.residual_tol);
  }
  if (j.contains("gamma")) {
    const auto& g = j.at("gamma");
    take(g, "x_min", cfg.gamma_x_min);
    take(g, "x_max", cfg.gamma_x_max);
    take(g, "nx", cfg.gamma_nx);
    take(g, "ny", cfg.gamma_ny);
    take(g, "nu", cfg.gamma_nu);
    take(g, "m", cfg.gamma_m);
  }
  if (j.contains("green")) {
    const auto& g = j.at("green");
    take(g, "xi", cfg.green_xi);
    take(g, "eta", cfg.green_eta);
    take(g, "nu", cfg.green_nu);
    take(g, "m", cfg.green_m);
  }
  if (j.contains("convergence")) take(j.at("convergence"), "levels", cfg.levels);
  take(j, "threads", cfg.threads);
  take(j, "seed", cfg.seed);
  if (j.contains("output")) take(j.at("output"), "dir", cfg.out_dir);
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) bad("cannot open config file " + path);
  json j;
  try {
    j = json::parse(is, nullptr, true, true);
  } catch (const json::exception& e) {
    bad("config " + path + ": " + e.what());
  }
  RunConfig cfg;
  try {
    apply_json(cfg, j);
  } catch (const json::exception& e) {
    bad("config " + path + ": " + e.what());
  }
  return cfg;
}

namespace {

double env_double(const char* name, const char* v) {
  char* end = nullptr;
  const double d = std::strtod(v, &end);
  if (end == v || *end != '\0') bad(std::string(name) + " is not a number: " + v);
  return d;
}

long env_long(const char* name, const char* v) {
  char* end = nullptr;
  const long d = std::strtol(v, &end, 10);
  if (end == v || *end != '\0') bad(std::string(name) + " is not an integer: " + v);
  return d;
}

}  // namespace

void apply_env(RunConfig& cfg) {
  if (const char* v = std::getenv("FRACGREEN_OUT")) cfg.out_dir = v;
  if (const char* v = std::getenv("FRACGREEN_TOL")) cfg.tol = env_double("FRACGREEN_TOL", v);
  if (const char* v = std::getenv("FRACGREEN_THREADS"))
    cfg.threads = static_cast<int>(env_long("FRACGREEN_THREADS", v));
  if (const char* v = std::getenv("FRACGREEN_SEED"))
    cfg.seed = static_cast<unsigned long>(env_long("FRACGREEN_SEED", v));
  if (const char* v = std::getenv("FRACGREEN_COMMAND")) cfg.command = v;
}

RunConfig resolve_config(const Overrides& o) {
  std::string path = o.config_path;
  if (path.empty())
    if (const char* v = std::getenv("FRACGREEN_CONFIG")) path = v;
  RunConfig cfg = path.empty() ? RunConfig{} : load_config(path);
  apply_env(cfg);
  if (!o.command.empty()) cfg.command = o.command;
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (o.tol) cfg.tol = *o.tol;
  if (o.threads) cfg.threads = *o.threads;
  if (o.seed) cfg.seed = *o.seed;
  return cfg;
}

namespace {

// Linear interpolation of a two-column CSV (optional header).
solver::Fn1 trace_from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) bad("cannot open sample file " + path);
  auto xs = std::make_shared<std::vector<double>>();
  auto vs = std::make_shared<std::vector<double>>();
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a, b;
    if (!(ls >> a >> b)) {
      if (xs->empty()) continue;  // header
      bad("sample file " + path + ": malformed row '" + line + "'");
    }
    if (!xs->empty() && !(a > xs->back())) bad("sample file " + path + ": abscissae must increase");
    xs->push_back(a);
    vs->push_back(b);
  }
  if (xs->size() < 2) bad("sample file " + path + " needs at least two rows");
  return [xs, vs, path](double s) {
    const double tol = 1e-12 * (xs->back() - xs->front());
    if (s < xs->front() - tol || s > xs->back() + tol)
      throw DomainError("sample file " + path + " does not cover " + format_double(s));
    s = std::clamp(s, xs->front(), xs->back());
    std::size_t i = std::upper_bound(xs->begin(), xs->end(), s) - xs->begin();
    i = std::clamp<std::size_t>(i, 1, xs->size() - 1);
    const double t = (s - (*xs)[i - 1]) / ((*xs)[i] - (*xs)[i - 1]);
    return (*vs)[i - 1] + t * ((*vs)[i] - (*vs)[i - 1]);
  };
}

// Bilinear interpolation of a field CSV, clamped to its extent.
solver::Fn2 source_from_file(const std::string& path) {
  auto field = std::make_shared<SolutionField>(read_csv(path));
  if (field->nx() < 2 || field->ny() < 2) bad("source file " + path + " needs a 2 x 2 grid at least");
  return [field](double x, double y) {
    const auto& X = field->x;
    const auto& Y = field->y;
    x = std::clamp(x, X.front(), X.back());
    y = std::clamp(y, Y.front(), Y.back());
    auto cell = [](const std::vector<double>& v, double s) {
      std::size_t i = std::upper_bound(v.begin(), v.end(), s) - v.begin();
      return std::clamp<std::size_t>(i, 1, v.size() - 1) - 1;
    };
    const std::size_t i = cell(X, x), k = cell(Y, y);
    const double tx = (x - X[i]) / (X[i + 1] - X[i]), ty = (y - Y[k]) / (Y[k + 1] - Y[k]);
    return (1 - ty) * ((1 - tx) * field->at(i, k) + tx * field->at(i + 1, k)) +
           ty * ((1 - tx) * field->at(i, k + 1) + tx * field->at(i + 1, k + 1));
  };
}

std::map<std::string, double> symbols(const ProblemParams& p) {
  return {{"alpha", p.alpha}, {"beta", p.beta()}, {"b", p.b}, {"c", p.c},
          {"a1", p.a1},       {"a2", p.a2},       {"T", p.T}};
}

// Traces of x (tau) use the first variable; traces of y (phi) are called with y.
solver::Fn1 trace(const DataItem& d, const ProblemParams& p, bool of_y) {
  if (!d.file.empty()) return trace_from_file(d.file);
  const Expression e = Expression::parse(d.expr, symbols(p));
  if (of_y) return [e](double y) { return e(0.0, y); };
  return [e](double x) { return e(x, 0.0); };
}

}  // namespace

solver::ProblemData build_data(const RunConfig& cfg) {
  solver::ProblemData d;
  d.params = cfg.params;
  d.compat_tol = cfg.compat_tol;
  for (const auto& t : cfg.tau) d.tau.push_back(trace(t, cfg.params, false));
  d.phi1 = trace(cfg.phi1, cfg.params, true);
  d.phi2 = trace(cfg.phi2, cfg.params, true);
  if (!cfg.f.file.empty()) {
    d.f = source_from_file(cfg.f.file);
  } else {
    const Expression e = Expression::parse(cfg.f.expr, symbols(cfg.params));
    d.f = [e](double x, double y) { return e(x, y); };
  }
  d.validate();
  return d;
}

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::filesystem::path out_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return std::filesystem::path(cfg.out_dir) / name;
}

void write_json(const RunConfig& cfg, const std::string& name, const json& j) {
  std::ofstream os(out_path(cfg, name));
  if (!os) throw Error("cannot write " + name);
  os << j.dump(2) << '\n';
}

std::shared_ptr<const greenfn::GreenFunction> make_green(const RunConfig& cfg) {
  auto K = std::make_shared<greenfn::GammaKernel>(cfg.params, cfg.kernel_tol);
  return std::make_shared<greenfn::GreenFunction>(K, cfg.params.a1, cfg.params.a2, cfg.image_tol);
}

solver::SolveOptions solve_options(const RunConfig& cfg) {
  solver::SolveOptions o;
  o.quad = cfg.quad;
  o.error_estimate = true;
  o.threads = cfg.threads;
  return o;
}

json verify_json(const solver::VerifyReport& r) {
  auto val = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
  return json{{"ic_error", val(r.ic_error)},       {"ic_rate_error", val(r.ic_rate_error)},
              {"bc_error_a1", val(r.bc_error_a1)}, {"bc_error_a2", val(r.bc_error_a2)},
              {"residual", val(r.residual)},       {"has_nan", r.has_nan}};
}

bool verify_ok(const RunConfig& cfg, const solver::VerifyReport& r) {
  if (r.has_nan) return false;
  if (!(r.ic_error <= cfg.tol) || !(r.bc_error() <= cfg.tol)) return false;
  if (cfg.params.n() == 2 && !(r.ic_rate_error <= cfg.tol)) return false;
  return r.residual <= cfg.residual_tol;
}

void print_verify(std::ostream& out, const solver::VerifyReport& r) {
  out << "ic_error " << num(r.ic_error) << "\n";
  if (!std::isnan(r.ic_rate_error)) out << "ic_rate_error " << num(r.ic_rate_error) << "\n";
  out << "bc_error " << num(r.bc_error()) << "\nresidual " << num(r.residual) << "\n";
}

double max_exact_error(const RunConfig& cfg, const SolutionField& f) {
  const Expression e = Expression::parse(cfg.exact, symbols(cfg.params));
  double m = 0.0;
  for (std::size_t j = 0; j < f.ny(); ++j)
    for (std::size_t i = 0; i < f.nx(); ++i) m = std::max(m, std::abs(f.at(i, j) - e(f.x[i], f.y[j])));
  return m;
}

int cmd_gamma(const RunConfig& cfg, std::ostream& out) {
  const greenfn::GammaKernel K(cfg.params, cfg.kernel_tol);
  for (double nu : cfg.gamma_nu) {
    for (int m : cfg.gamma_m) {
      SolutionField f;
      for (int i = 0; i < cfg.gamma_nx; ++i)
        f.x.push_back(cfg.gamma_nx == 1 ? cfg.gamma_x_min
                                        : cfg.gamma_x_min + (cfg.gamma_x_max - cfg.gamma_x_min) * i /
                                                                (cfg.gamma_nx - 1));
      f.y = solver::grid_y(cfg.params, cfg.gamma_ny);
      for (double y : f.y)
        for (double x : f.x) {
          double v = std::numeric_limits<double>::quiet_NaN();
          if (!(m > 0 && x == 0.0)) v = greenfn::gamma_eval(x, y, nu, m, K);
          f.values.push_back(v);
        }
      const std::string name = "gamma_nu" + format_double(nu) + "_m" + std::to_string(m) + ".csv";
      write_csv(out_path(cfg, name).string(), f);
      out << "wrote " << name << "\n";
    }
  }
  return 0;
}

int cmd_green(const RunConfig& cfg, std::ostream& out) {
  const auto G = make_green(cfg);
  SolutionField f;
  f.x = solver::grid_x(cfg.params, cfg.grid.nx);
  for (int j = 0; j < cfg.grid.ny; ++j)
    f.y.push_back(cfg.green_eta + (cfg.params.T - cfg.green_eta) * (j + 1) / cfg.grid.ny);
  for (double y : f.y)
    for (double x : f.x) {
      double v = std::numeric_limits<double>::quiet_NaN();
      if (!(cfg.green_m > 0 && x == cfg.green_xi))
        v = greenfn::green_eval(x, y, cfg.green_xi, cfg.green_eta, cfg.green_nu, cfg.green_m, *G);
      f.values.push_back(v);
    }
  write_csv(out_path(cfg, "green.csv").string(), f);
  out << "wrote green.csv\n";
  return 0;
}

int cmd_solve(const RunConfig& cfg, const solver::ProblemData& data, std::ostream& out) {
  const solver::Solver S(make_green(cfg), solve_options(cfg));
  const SolutionField field = S.solve_grid(data, cfg.grid);
  write_csv(out_path(cfg, "solution.csv").string(), field);
  const auto rep = solver::verify_solution(field, data);
  json j{{"verify", verify_json(rep)}, {"meta", field.meta}};
  out << "wrote solution.csv (" << field.nx() << " x " << field.ny() << ")\n";
  print_verify(out, rep);
  if (!cfg.exact.empty()) {
    const double e = max_exact_error(cfg, field);
    j["max_exact_error"] = e;
    out << "max_exact_error " << num(e) << "\n";
  }
  if (auto it = field.meta.find("warning"); it != field.meta.end()) out << "warning: " << it->second << "\n";
  write_json(cfg, "solve_report.json", j);
  const bool ok = verify_ok(cfg, rep);
  out << (ok ? "verification passed" : "verification tolerances exceeded") << "\n";
  return ok ? 0 : 1;
}

int cmd_oracle(const RunConfig& cfg, const solver::ProblemData& data, std::ostream& out) {
  const SolutionField field = oracle::fd_solve(data, cfg.fd);
  write_csv(out_path(cfg, "oracle.csv").string(), field);
  out << "wrote oracle.csv (" << field.nx() << " x " << field.ny() << ")\n";
  json j{{"meta", field.meta}};
  if (!cfg.exact.empty()) {
    const double e = max_exact_error(cfg, field);
    j["max_exact_error"] = e;
    out << "max_exact_error " << num(e) << "\n";
  }
  if (auto it = field.meta.find("warning"); it != field.meta.end()) out << "warning: " << it->second << "\n";
  write_json(cfg, "oracle_report.json", j);
  return 0;
}

int cmd_verify(const RunConfig& cfg, const solver::ProblemData& data, std::ostream& out) {
  const auto G = make_green(cfg);
  const solver::Solver S(G, solve_options(cfg));
  const SolutionField field = S.solve_grid(data, cfg.grid);
  write_csv(out_path(cfg, "solution.csv").string(), field);
  const SolutionField fd = oracle::fd_solve(data, cfg.fd);
  write_csv(out_path(cfg, "oracle.csv").string(), fd);
  const auto rep = solver::verify_solution(field, data);
  const auto probes = cfg.probes.empty() ? oracle::default_probes(cfg.params) : cfg.probes;
  const auto cross = oracle::cross_validate(data, cfg.fd, G, probes, solve_options(cfg));

  json pr = json::array();
  for (std::size_t i = 0; i < probes.size(); ++i)
    pr.push_back({{"x", probes[i].first}, {"y", probes[i].second}, {"green", cross.green[i]},
                  {"fd", cross.fd[i]}, {"diff", cross.diff[i]}, {"green_err", cross.green_err[i]},
                  {"fd_err", cross.fd_err[i]}});
  json j{{"verify", verify_json(rep)},
         {"cross", {{"max_abs", cross.max_abs}, {"mean_abs", cross.mean_abs}, {"probes", pr}}}};
  print_verify(out, rep);
  out << "cross max_abs " << num(cross.max_abs) << " mean_abs " << num(cross.mean_abs) << "\n";
  write_json(cfg, "verify_report.json", j);
  const bool ok = verify_ok(cfg, rep) && cross.max_abs <= cfg.tol;
  out << (ok ? "verification passed" : "verification tolerances exceeded") << "\n";
  return ok ? 0 : 1;
}

int cmd_convergence(const RunConfig& cfg, const solver::ProblemData& data, std::ostream& out) {
  const auto probes = cfg.probes.empty() ? oracle::default_probes(cfg.params) : cfg.probes;
  const bool have_exact = !cfg.exact.empty();
  const Expression exact = have_exact ? Expression::parse(cfg.exact, symbols(cfg.params)) : Expression();
  std::ostringstream csv;
  csv << "method,level,size,max_error,max_change,order\n";
  out << "method level size max_error max_change order\n";
  auto emit = [&](const std::string& method, int level, int size, const std::vector<double>& vals,
                  std::vector<double>& prev, double& prev_change) {
    double err = std::numeric_limits<double>::quiet_NaN(), change = err, order = err;
    if (have_exact) {
      err = 0.0;
      for (std::size_t i = 0; i < probes.size(); ++i)
        err = std::max(err, std::abs(vals[i] - exact(probes[i].first, probes[i].second)));
    }
    if (!prev.empty()) {
      change = 0.0;
      for (std::size_t i = 0; i < vals.size(); ++i) change = std::max(change, std::abs(vals[i] - prev[i]));
      if (prev_change > 0.0 && change > 0.0) order = std::log2(prev_change / change);
      prev_change = change;
    }
    prev = vals;
    csv << method << ',' << level << ',' << size << ',' << format_double(err) << ','
        << format_double(change) << ',' << format_double(order) << '\n';
    out << method << ' ' << level << ' ' << size << ' ' << num(err) << ' ' << num(change) << ' '
        << num(order) << '\n';
  };

  const auto G = make_green(cfg);
  std::vector<double> prev;
  double prev_change = 0.0;
  for (int l = 0; l < cfg.levels; ++l) {
    auto o = solve_options(cfg);
    o.error_estimate = false;
    o.quad.refine = cfg.quad.refine << l;
    const solver::Solver S(G, o);
    std::vector<double> vals;
    for (auto [x, y] : probes) vals.push_back(S.solve_point(x, y, data));
    emit("green", l, o.quad.refine, vals, prev, prev_change);
  }
  prev.clear();
  prev_change = 0.0;
  for (int l = 0; l < cfg.levels; ++l) {
    const oracle::FDGrid g{cfg.fd.Nx << l, cfg.fd.Ny << l};
    const auto full = oracle::fd_solve_full(data, g);
    std::vector<double> vals;
    for (auto [x, y] : probes) vals.push_back(oracle::interpolate(full, x, y));
    emit("fd", l, g.Nx, vals, prev, prev_change);
  }
  std::ofstream os(out_path(cfg, "convergence.csv"));
  os << csv.str();
  return 0;
}

int cmd_identities(const RunConfig& cfg, std::ostream& out) {
  const auto checks = identities::run_all(cfg.params, cfg.kernel_tol, cfg.image_tol);
  json arr = json::array();
  bool ok = true;
  for (const auto& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << " measured " << num(c.measured) << " tol "
        << num(c.tol) << "  " << c.detail << "\n";
    arr.push_back({{"name", c.name}, {"measured", c.measured}, {"tol", c.tol}, {"pass", c.pass},
                   {"detail", c.detail}});
    ok = ok && c.pass;
  }
  write_json(cfg, "identities.json", arr);
  return ok ? 0 : 1;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    if (cfg.command == "gamma") return cmd_gamma(cfg, out);
    if (cfg.command == "green") return cmd_green(cfg, out);
    if (cfg.command == "identities") return cmd_identities(cfg, out);
    const solver::ProblemData data = build_data(cfg);
    if (cfg.command == "solve") return cmd_solve(cfg, data, out);
    if (cfg.command == "oracle") return cmd_oracle(cfg, data, out);
    if (cfg.command == "verify") return cmd_verify(cfg, data, out);
    return cmd_convergence(cfg, data, out);
  } catch (const InvalidParam& e) {
    err << "config invalid: " << e.what() << "\n";
    return 2;
  } catch (const CompatibilityError& e) {
    err << "config invalid: " << e.what() << "\n";
    return 2;
  } catch (const QuadratureFailure& e) {
    err << "numerical failure in term " << e.term() << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace fracgreen::cli
