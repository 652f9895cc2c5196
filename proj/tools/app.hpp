#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracgreen/oracle.hpp"
#include "fracgreen/params.hpp"
#include "fracgreen/solver.hpp"
#include "json.hpp"

namespace fracgreen::cli {

/// A trace or source: an expression in x and y, or a CSV sample file.
struct DataItem {
  std::string expr;
  std::string file;
};

struct RunConfig {
  std::string command = "solve";
  ProblemParams params;

  std::vector<DataItem> tau{{"0", ""}};
  DataItem phi1{"0", ""}, phi2{"0", ""}, f{"0", ""};
  std::string exact;  ///< optional exact solution for error columns

  solver::GridSpec grid;
  oracle::FDGrid fd{64, 64};
  std::vector<std::pair<double, double>> probes;  ///< empty: 3 x 3 default probes
  solver::QuadratureConfig quad;

  double kernel_tol = 1e-12;
  double image_tol = 1e-14;
  double compat_tol = 1e-8;
  double tol = 1e-2;            ///< IC/BC and cross-validation pass threshold
  double residual_tol = 5e-2;   ///< interior residual pass threshold

  // gamma command
  double gamma_x_min = -1.0, gamma_x_max = 1.0;
  int gamma_nx = 21, gamma_ny = 10;
  std::vector<double> gamma_nu{0.0};
  std::vector<int> gamma_m{0};
  // green command
  double green_xi = 0.5, green_eta = 0.0, green_nu = 0.0;
  int green_m = 0;
  // convergence command
  int levels = 3;

  int threads = 1;
  unsigned long seed = 0;  ///< reserved; no stochastic paths
  std::string out_dir = ".";

  /// Throws InvalidParam naming the first violated bound.
  void validate() const;
};

/// Overlays the keys present in j onto cfg.
void apply_json(RunConfig& cfg, const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// FRACGREEN_CONFIG is read by the caller; this applies FRACGREEN_OUT, _TOL,
/// _THREADS, _SEED and _COMMAND.
void apply_env(RunConfig& cfg);

/// Command-line values; unset fields leave lower layers in place.
struct Overrides {
  std::string command;
  std::string config_path;
  std::string out_dir;
  std::optional<double> tol;
  std::optional<int> threads;
  std::optional<unsigned long> seed;
};

/// Defaults, then the config file (flag or FRACGREEN_CONFIG), then the
/// environment, then the flags.
RunConfig resolve_config(const Overrides& o);

solver::ProblemData build_data(const RunConfig& cfg);

/// Exit status: 0 success, 1 verification tolerance exceeded, 2 invalid
/// configuration, 3 numerical failure.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace fracgreen::cli
