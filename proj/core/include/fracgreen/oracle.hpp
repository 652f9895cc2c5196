#pragma once

#include <utility>
#include <vector>

#include "fracgreen/field.hpp"
#include "fracgreen/greenfn.hpp"
#include "fracgreen/solver.hpp"

namespace fracgreen::oracle {

/// Uniform grid x_i = a1 + i hx, y_k = k hy on the closed rectangle.
struct FDGrid {
  int Nx = 32;
  int Ny = 32;

  double hx(const ProblemParams& p) const { return p.length() / Nx; }
  double hy(const ProblemParams& p) const { return p.T / Ny; }
  /// Throws InvalidParam unless Nx, Ny >= 4.
  void validate() const;
};

/// Implicit finite-difference solution. The returned field holds the interior
/// nodes i = 1..Nx-1, k = 1..Ny, matching solver::grid_x(Nx - 1), grid_y(Ny).
/// Throws SingularSystem if a tridiagonal pivot vanishes.
SolutionField fd_solve(const solver::ProblemData& data, const FDGrid& grid);

/// The same solution including the walls and y = 0, as values[k * (Nx + 1) + i].
SolutionField fd_solve_full(const solver::ProblemData& data, const FDGrid& grid);

/// Bilinear interpolation in a full field from fd_solve_full.
double interpolate(const SolutionField& full, double x, double y);

struct CrossReport {
  std::vector<std::pair<double, double>> probes;
  std::vector<double> green, fd, diff;
  std::vector<double> green_err;  ///< solver estimate per probe
  std::vector<double> fd_err;     ///< |fd(grid) - fd(grid / 2)| per probe
  double max_abs = 0.0;
  double mean_abs = 0.0;
};

CrossReport cross_validate(const solver::ProblemData& data, const FDGrid& fd,
                           std::shared_ptr<const greenfn::GreenFunction> G,
                           const std::vector<std::pair<double, double>>& probes,
                           const solver::SolveOptions& opt = {});

/// 3 x 3 probes: x = a1 + L {1, 2, 3} / 4 against y = T {1, 2, 3} / 3.
std::vector<std::pair<double, double>> default_probes(const ProblemParams& p);

}  // namespace fracgreen::oracle
