#include "fracgreen/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracgreen/errors.hpp"

namespace fracgreen::oracle {

void FDGrid::validate() const {
  if (Nx < 4) throw InvalidParam("FDGrid: Nx must be at least 4");
  if (Ny < 4) throw InvalidParam("FDGrid: Ny must be at least 4");
}

namespace {

// Discrete Caputo derivative at level k as sum_m w[m] u^m + cst * tau_2.
struct Stencil {
  std::vector<double> w;
  double cst = 0.0;
};

// L1 formula, order g in (0, 1].
Stencil l1(double g, double h, int k) {
  Stencil s;
  s.w.assign(k + 1, 0.0);
  const double c0 = std::pow(h, -g) / std::tgamma(2.0 - g);
  for (int j = 0; j < k; ++j) {
    const double m = k - 1 - j;
    const double bm = std::pow(m + 1.0, 1.0 - g) - (m == 0 ? 0.0 : std::pow(m, 1.0 - g));
    s.w[j + 1] += c0 * bm;
    s.w[j] -= c0 * bm;
  }
  return s;
}

// Order g in (1, 2): product integration of (t_k - s)^{1-g} against a cellwise
// value of u'' taken at the cell midpoint from second differences.
Stencil l2(double g, double h, int k) {
  Stencil s;
  s.w.assign(k + 2, 0.0);
  const double c0 = std::pow(h, 2.0 - g) / std::tgamma(3.0 - g);
  const double ih2 = 1.0 / (h * h);
  // Adds f * D_j, D_j the centred second difference at t_j (j >= 1).
  auto addD = [&](int j, double f) {
    s.w[j + 1] += f * ih2;
    s.w[j] -= 2.0 * f * ih2;
    s.w[j - 1] += f * ih2;
  };
  // One-sided value near t = h/3 using u'(0) = tau_2.
  auto addD0 = [&](double f) {
    s.w[1] += 2.0 * f * ih2;
    s.w[0] -= 2.0 * f * ih2;
    s.cst -= 2.0 * f / h;
  };
  for (int j = 0; j < k; ++j) {
    const double m = k - 1 - j;
    const double a = c0 * (std::pow(m + 1.0, 2.0 - g) - std::pow(m, 2.0 - g));
    if (j == 0) {
      if (k == 1) {
        addD0(a);
      } else {
        addD0(0.75 * a);
        addD(1, 0.25 * a);
      }
    } else if (j + 1 < k) {
      addD(j, 0.5 * a);
      addD(j + 1, 0.5 * a);
    } else if (j >= 2) {
      addD(j, 1.5 * a);
      addD(j - 1, -0.5 * a);
    } else {
      addD(j, a);
    }
  }
  s.w.resize(k + 1);
  return s;
}

Stencil caputo_stencil(double g, double h, int k) { return g <= 1.0 ? l1(g, h, k) : l2(g, h, k); }

}  // namespace

SolutionField fd_solve_full(const solver::ProblemData& data, const FDGrid& grid) {
  data.validate();
  grid.validate();
  const auto& p = data.params;
  const int Nx = grid.Nx, Ny = grid.Ny;
  const double hx = grid.hx(p), hy = grid.hy(p);
  const int n = p.n();

  SolutionField out;
  out.x.resize(Nx + 1);
  out.y.resize(Ny + 1);
  for (int i = 0; i <= Nx; ++i) out.x[i] = p.a1 + i * hx;
  out.x[Nx] = p.a2;
  for (int k = 0; k <= Ny; ++k) out.y[k] = k * hy;
  out.y[Ny] = p.T;
  out.values.assign(static_cast<std::size_t>(Nx + 1) * (Ny + 1), 0.0);
  auto U = [&](int i, int k) -> double& { return out.values[static_cast<std::size_t>(k) * (Nx + 1) + i]; };

  std::vector<double> tau2(Nx + 1, 0.0);
  for (int i = 0; i <= Nx; ++i) {
    U(i, 0) = data.tau[0](out.x[i]);
    if (n == 2) tau2[i] = data.tau[1](out.x[i]);
  }

  const double ihx2 = 1.0 / (hx * hx);
  std::vector<double> diag(Nx + 1), rhs(Nx + 1), cp(Nx + 1), dp(Nx + 1);
  for (int k = 1; k <= Ny; ++k) {
    const double y = out.y[k];
    Stencil sa = caputo_stencil(p.alpha, hy, k);
    if (p.b != 0.0) {
      const Stencil sb = caputo_stencil(p.beta(), hy, k);
      for (int m = 0; m <= k; ++m) sa.w[m] += p.b * sb.w[m];
      sa.cst += p.b * sb.cst;
    }
    U(0, k) = data.phi1(y);
    U(Nx, k) = data.phi2(y);
    // Rows i = 1..Nx-1: (w_k + 2/hx^2 + c) u_i - (u_{i-1} + u_{i+1})/hx^2 = f - history.
    for (int i = 1; i < Nx; ++i) {
      double hist = sa.cst * tau2[i];
      for (int m = 0; m < k; ++m) hist += sa.w[m] * U(i, m);
      diag[i] = sa.w[k] + 2.0 * ihx2 + p.c;
      rhs[i] = data.f(out.x[i], y) - hist;
    }
    rhs[1] += ihx2 * U(0, k);
    rhs[Nx - 1] += ihx2 * U(Nx, k);
    // Thomas algorithm with off-diagonals -1/hx^2.
    const double off = -ihx2;
    for (int i = 1; i < Nx; ++i) {
      const double den = diag[i] - (i > 1 ? off * cp[i - 1] : 0.0);
      if (!(std::abs(den) > 1e-300) || !std::isfinite(den)) {
        std::ostringstream os;
        os << "fd_solve: zero pivot at row " << i << ", level " << k;
        throw SingularSystem(os.str());
      }
      cp[i] = off / den;
      dp[i] = (rhs[i] - (i > 1 ? off * dp[i - 1] : 0.0)) / den;
    }
    U(Nx - 1, k) = dp[Nx - 1];
    for (int i = Nx - 2; i >= 1; --i) U(i, k) = dp[i] - cp[i] * U(i + 1, k);
  }

  out.meta["method"] = "fd";
  out.meta["Nx"] = std::to_string(Nx);
  out.meta["Ny"] = std::to_string(Ny);
  if (std::pow(hy, std::min(p.alpha, 1.0)) > 0.1)
    out.meta["warning"] = "time step coarse relative to hy^min(alpha,1); refine Ny";
  return out;
}

SolutionField fd_solve(const solver::ProblemData& data, const FDGrid& grid) {
  const SolutionField full = fd_solve_full(data, grid);
  const int Nx = grid.Nx, Ny = grid.Ny;
  SolutionField out;
  out.x.assign(full.x.begin() + 1, full.x.end() - 1);
  out.y.assign(full.y.begin() + 1, full.y.end());
  out.values.reserve(out.x.size() * out.y.size());
  for (int k = 1; k <= Ny; ++k)
    for (int i = 1; i < Nx; ++i) out.values.push_back(full.values[static_cast<std::size_t>(k) * (Nx + 1) + i]);
  out.meta = full.meta;
  return out;
}

double interpolate(const SolutionField& full, double x, double y) {
  const auto& X = full.x;
  const auto& Y = full.y;
  if (x < X.front() || x > X.back() || y < Y.front() || y > Y.back())
    throw DomainError("interpolate: point outside the grid");
  auto cell = [](const std::vector<double>& v, double s) {
    std::size_t i = std::upper_bound(v.begin(), v.end(), s) - v.begin();
    return std::min(i == 0 ? 0 : i - 1, v.size() - 2);
  };
  const std::size_t i = cell(X, x), k = cell(Y, y);
  const double tx = (x - X[i]) / (X[i + 1] - X[i]), ty = (y - Y[k]) / (Y[k + 1] - Y[k]);
  const std::size_t nx = X.size();
  auto v = [&](std::size_t a, std::size_t b) { return full.values[b * nx + a]; };
  return (1 - ty) * ((1 - tx) * v(i, k) + tx * v(i + 1, k)) +
         ty * ((1 - tx) * v(i, k + 1) + tx * v(i + 1, k + 1));
}

std::vector<std::pair<double, double>> default_probes(const ProblemParams& p) {
  std::vector<std::pair<double, double>> pr;
  for (int j = 1; j <= 3; ++j)
    for (int i = 1; i <= 3; ++i) pr.emplace_back(p.a1 + p.length() * i / 4.0, p.T * j / 3.0);
  return pr;
}

CrossReport cross_validate(const solver::ProblemData& data, const FDGrid& fd,
                           std::shared_ptr<const greenfn::GreenFunction> G,
                           const std::vector<std::pair<double, double>>& probes,
                           const solver::SolveOptions& opt) {
  CrossReport rep;
  rep.probes = probes;
  if (probes.empty()) return rep;
  const SolutionField fine = fd_solve_full(data, fd);
  FDGrid half{std::max(4, fd.Nx / 2), std::max(4, fd.Ny / 2)};
  const SolutionField coarse = fd_solve_full(data, half);
  solver::SolveOptions o = opt;
  o.error_estimate = true;
  const solver::Solver S(std::move(G), o);
  double sum = 0.0;
  for (const auto& [x, y] : probes) {
    const auto r = S.solve_point_detail(x, y, data);
    const double f = interpolate(fine, x, y);
    rep.green.push_back(r.value);
    rep.green_err.push_back(r.err_est);
    rep.fd.push_back(f);
    rep.fd_err.push_back(std::abs(f - interpolate(coarse, x, y)));
    const double d = std::abs(r.value - f);
    rep.diff.push_back(d);
    rep.max_abs = std::max(rep.max_abs, d);
    sum += d;
  }
  rep.mean_abs = sum / probes.size();
  return rep;
}

}  // namespace fracgreen::oracle
