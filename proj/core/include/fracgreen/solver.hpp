#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fracgreen/field.hpp"
#include "fracgreen/greenfn.hpp"
#include "fracgreen/params.hpp"

namespace fracgreen::solver {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

/// Initial traces tau[k-1] = d^{k-1}u/dy^{k-1}(x, 0), k = 1..n, lateral traces
/// u(a1, y) = phi1(y), u(a2, y) = phi2(y), and the source f(x, y).
struct ProblemData {
  ProblemParams params;
  std::vector<Fn1> tau;
  Fn1 phi1, phi2;
  Fn2 f;
  double compat_tol = 1e-8;

  /// Throws InvalidParam on shape problems and CompatibilityError when
  /// |phi_i(0) - tau_1(a_i)| exceeds compat_tol.
  void validate() const;

  /// All-zero data of the right shape.
  static ProblemData zero(const ProblemParams& p);
};

/// Probe of the C^{1,q} condition on tau_1 needed for n = 2. Returns an empty
/// string when the difference quotients stay bounded, otherwise a warning.
std::string holder_probe(const ProblemData& data);

struct QuadratureConfig {
  int xi_points = 10;     ///< Gauss-Legendre points per xi-panel
  int t_points = 10;      ///< points per panel in t = s^beta
  int t_panels = 4;       ///< uniform t-panels for the source term
  int refine = 1;         ///< multiplies every panel count
  double max_xi_panel = 0.125;  ///< relative to the interval length
};

struct SolveOptions {
  QuadratureConfig quad;
  bool error_estimate = false;  ///< compare against a rule with 4 fewer points
  int threads = 1;
};

struct PointResult {
  double value = 0.0;
  double u1 = 0.0, u2 = 0.0, u3 = 0.0;
  double err_est = 0.0;
};

struct GridSpec {
  int nx = 21;
  int ny = 21;
};

/// Interior nodes x_i = a1 + (i+1) L / (nx+1), y_j = T (j+1) / ny.
std::vector<double> grid_x(const ProblemParams& p, int nx);
std::vector<double> grid_y(const ProblemParams& p, int ny);

class Solver {
 public:
  Solver(std::shared_ptr<const greenfn::GreenFunction> G, SolveOptions opt = {});

  PointResult solve_point_detail(double x, double y, const ProblemData& data) const;
  double solve_point(double x, double y, const ProblemData& data) const {
    return solve_point_detail(x, y, data).value;
  }
  SolutionField solve_grid(const ProblemData& data, const GridSpec& grid) const;
  SolutionField solve_at(const ProblemData& data, const std::vector<double>& xs,
                         const std::vector<double>& ys) const;

  const greenfn::GreenFunction& green() const { return *G_; }
  const SolveOptions& options() const { return opt_; }

 private:
  PointResult evaluate(double x, double y, const ProblemData& data,
                       const QuadratureConfig& q) const;

  std::shared_ptr<const greenfn::GreenFunction> G_;
  SolveOptions opt_;
};

/// Convenience wrappers over a default-configured Solver.
double solve_point(double x, double y, const ProblemData& data,
                   std::shared_ptr<const greenfn::GreenFunction> G);
SolutionField solve_grid(const ProblemData& data, const GridSpec& grid,
                         std::shared_ptr<const greenfn::GreenFunction> G,
                         const SolveOptions& opt = {});

struct VerifyReport {
  double ic_error = 0.0;       ///< max |u(x, 0+) - tau_1(x)|
  double ic_rate_error = 0.0;  ///< max |u_y(x, 0+) - tau_2(x)|, n = 2 only (NaN otherwise)
  double bc_error_a1 = 0.0;    ///< max |u(a1+, y) - phi1(y)|
  double bc_error_a2 = 0.0;
  double residual = 0.0;       ///< max interior |L u - f|
  bool has_nan = false;

  double bc_error() const { return bc_error_a1 > bc_error_a2 ? bc_error_a1 : bc_error_a2; }
};

/// Checks a field against initial data, boundary data, and the equation.
/// Limits use quadratic extrapolation over the three nodes nearest the edge.
VerifyReport verify_solution(const SolutionField& field, const ProblemData& data);

}  // namespace fracgreen::solver
