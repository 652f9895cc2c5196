#include "fracgreen/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "fracgreen/errors.hpp"
#include "fracgreen/quadrature.hpp"

namespace fracgreen::solver {

void ProblemData::validate() const {
  params.validate();
  const int n = params.n();
  if (static_cast<int>(tau.size()) != n) {
    std::ostringstream os;
    os << "expected " << n << " initial trace(s) for alpha=" << params.alpha << ", got "
       << tau.size();
    throw InvalidParam(os.str());
  }
  for (const auto& t : tau)
    if (!t) throw InvalidParam("initial trace is empty");
  if (!phi1 || !phi2 || !f) throw InvalidParam("boundary trace or source is empty");
  if (!(compat_tol >= 0.0)) throw InvalidParam("compat_tol must be nonnegative");
  const double d1 = std::abs(phi1(0.0) - tau[0](params.a1));
  const double d2 = std::abs(phi2(0.0) - tau[0](params.a2));
  if (!(d1 <= compat_tol) || !(d2 <= compat_tol)) {
    std::ostringstream os;
    os << "corner compatibility violated: |phi1(0)-tau1(a1)|=" << d1
       << ", |phi2(0)-tau1(a2)|=" << d2 << " (tolerance " << compat_tol << ")";
    throw CompatibilityError(os.str());
  }
}

ProblemData ProblemData::zero(const ProblemParams& p) {
  ProblemData d;
  d.params = p;
  d.tau.assign(p.n(), [](double) { return 0.0; });
  d.phi1 = [](double) { return 0.0; };
  d.phi2 = [](double) { return 0.0; };
  d.f = [](double, double) { return 0.0; };
  return d;
}

std::string holder_probe(const ProblemData& data) {
  const auto& p = data.params;
  if (p.n() != 2) return {};
  const double q = (1.0 - p.beta()) / p.beta();
  const double L = p.length();
  auto slope = [&](double x, double h) { return (data.tau[0](x + h) - data.tau[0](x - h)) / (2 * h); };
  // Hoelder quotients of the derivative at shrinking separations; growth means q fails.
  double prev = 0.0;
  int growth = 0;
  for (int lev = 0; lev < 4; ++lev) {
    const double d = L * std::pow(0.5, 4 + 2 * lev);
    const double h = 0.1 * d;
    double worst = 0.0;
    for (int i = 1; i < 16; ++i) {
      const double x = p.a1 + L * i / 16.0;
      worst = std::max(worst, std::abs(slope(x + d, h) - slope(x, h)) / std::pow(d, q));
    }
    if (lev > 0 && worst > 1.25 * prev + 1e-12) ++growth;
    prev = worst;
  }
  if (growth >= 2) {
    std::ostringstream os;
    os << "tau_1 may not be C^{1," << q << "}: difference quotients grow under refinement";
    return os.str();
  }
  return {};
}

std::vector<double> grid_x(const ProblemParams& p, int nx) {
  if (nx < 1) throw InvalidParam("grid: nx must be positive");
  std::vector<double> x(nx);
  for (int i = 0; i < nx; ++i) x[i] = p.a1 + (i + 1) * p.length() / (nx + 1);
  return x;
}

std::vector<double> grid_y(const ProblemParams& p, int ny) {
  if (ny < 1) throw InvalidParam("grid: ny must be positive");
  std::vector<double> y(ny);
  for (int j = 0; j < ny; ++j) y[j] = p.T * (j + 1) / ny;
  return y;
}

Solver::Solver(std::shared_ptr<const greenfn::GreenFunction> G, SolveOptions opt)
    : G_(std::move(G)), opt_(opt) {
  if (!G_) throw InvalidParam("Solver: null Green function");
  const auto& q = opt_.quad;
  if (q.xi_points < 6 || q.t_points < 6 || q.t_panels < 1 || q.refine < 1 ||
      !(q.max_xi_panel > 0.0))
    throw InvalidParam("Solver: quadrature configuration out of range (points >= 6)");
}

namespace {

// Breakpoints on [a1, a2] that follow the slice's natural width ell around every
// image centre whose support reaches the interval.
std::vector<double> xi_breaks(double x, double a1, double a2, double ell, double reach,
                              double max_w) {
  const double L = a2 - a1;
  std::vector<double> b{a1, a2, x};
  const int mmax = static_cast<int>(std::ceil(reach / (2.0 * L))) + 1;
  const int J = static_cast<int>(std::ceil(reach / ell));
  for (int m = -mmax; m <= mmax; ++m) {
    for (double c : {x + 2.0 * m * L, 2.0 * a1 - x - 2.0 * m * L}) {
      if (c < a1 - reach || c > a2 + reach) continue;
      for (int j = -J; j <= J; ++j) {
        const double p = c + j * ell;
        if (p > a1 && p < a2) b.push_back(p);
      }
    }
  }
  std::sort(b.begin(), b.end());
  std::vector<double> out{b.front()};
  for (double p : b)
    if (p - out.back() > 1e-12 * L) out.push_back(p);
  if (out.back() != a2) out.back() = a2;
  std::vector<double> fine{out.front()};
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double w = out[i] - out[i - 1];
    const int k = std::max(1, static_cast<int>(std::ceil(w / max_w - 1e-9)));
    for (int j = 1; j < k; ++j) fine.push_back(out[i - 1] + w * j / k);
    fine.push_back(out[i]);
  }
  return fine;
}

template <class F>
double panel_sum(const std::vector<double>& breaks, int points, F&& f) {
  const auto& r = quad::gauss_legendre(points);
  double s = 0.0;
  for (std::size_t i = 1; i < breaks.size(); ++i) s += quad::apply(r, f, breaks[i - 1], breaks[i]);
  return s;
}

template <class F>
double tagged(const char* term, F&& f) {
  double v;
  try {
    v = f();
  } catch (const QuadratureFailure&) {
    throw;
  } catch (const Error& e) {
    throw QuadratureFailure(term, e.what());
  }
  if (!std::isfinite(v)) throw QuadratureFailure(term, "non-finite value");
  return v;
}

}  // namespace

PointResult Solver::evaluate(double x, double y, const ProblemData& data,
                             const QuadratureConfig& q) const {
  const auto& p = data.params;
  const auto& G = *G_;
  const auto& K = G.kernel();
  const double beta = p.beta();
  const double a1 = G.a1(), a2 = G.a2(), L = G.length();
  const double max_w = q.max_xi_panel * L / q.refine;
  PointResult r;

  // Initial-data term.
  r.u1 = tagged("u1", [&] {
    const auto s1 = K.slice(y, p.alpha - 1.0, 0);
    std::shared_ptr<const greenfn::GammaSlice> sb, s2;
    if (p.b != 0.0) sb = K.slice(y, beta - 1.0, 0);
    if (p.n() == 2) s2 = K.slice(y, p.alpha - 2.0, 0);
    double reach = s1->support();
    if (sb) reach = std::max(reach, sb->support());
    if (s2) reach = std::max(reach, s2->support());
    const double ell = std::pow(y, beta) / q.refine;
    const auto br = xi_breaks(x, a1, a2, ell, reach, max_w);
    return panel_sum(br, q.xi_points, [&](double xi) {
      double v = G.image_sum(x, xi, 1.0, -1.0, *s1);
      if (sb) v += p.b * G.image_sum(x, xi, 1.0, -1.0, *sb);
      v *= data.tau[0](xi);
      if (s2) v += data.tau[1](xi) * G.image_sum(x, xi, 1.0, -1.0, *s2);
      return v;
    });
  });

  // Boundary term, in t = s^beta with s = y - eta, panels halving toward t = 0.
  r.u2 = tagged("u2", [&] {
    const double zsup = K.support_z(0.0, 1);
    const double tmax = std::pow(y, beta);
    const auto& rule = quad::gauss_legendre(q.t_points);
    double total = 0.0;
    for (int side = 0; side < 2; ++side) {
      const double wall = side == 0 ? a1 : a2;
      const auto& phi = side == 0 ? data.phi1 : data.phi2;
      const double d = std::abs(x - wall);
      double hi = tmax, acc = 0.0;
      while (hi * zsup > d) {
        const double lo = 0.5 * hi;
        for (int k = 0; k < q.refine; ++k) {
          const double l = lo + (hi - lo) * k / q.refine, h = lo + (hi - lo) * (k + 1) / q.refine;
          acc += quad::apply(rule, [&](double t) {
            const double s = std::pow(t, 1.0 / beta);
            const auto sl = K.slice(s, 0.0, 1);
            const double gxi = G.image_sum(x, wall, -1.0, -1.0, *sl);
            return gxi * phi(y - s) * std::pow(t, 1.0 / beta - 1.0) / beta;
          }, l, h);
        }
        hi = lo;
      }
      total += side == 0 ? acc : -acc;
    }
    return total;
  });

  // Source term, in t = s^beta on uniform panels; the first one is halved
  // repeatedly until the kernel no longer reaches the nearer wall.
  r.u3 = tagged("u3", [&] {
    const double tmax = std::pow(y, beta);
    const int panels = q.t_panels * q.refine;
    std::vector<double> tb;
    for (int k = panels; k >= 1; --k) tb.push_back(tmax * k / panels);
    const double reach = std::min(x - a1, a2 - x) / K.support_z(0.0, 0);
    while (tb.back() > reach) tb.push_back(0.5 * tb.back());
    tb.push_back(0.0);
    const auto& rule = quad::gauss_legendre(q.t_points);
    double total = 0.0;
    for (std::size_t k = tb.size() - 1; k-- > 0;) {
      total += quad::apply(rule, [&](double t) {
        const double s = std::pow(t, 1.0 / beta);
        const double eta = y - s;
        const auto sl = K.slice(s, 0.0, 0);
        const auto br = xi_breaks(x, a1, a2, t / q.refine, sl->support(), max_w);
        const double inner = panel_sum(br, q.xi_points, [&](double xi) {
          return data.f(xi, eta) * G.image_sum(x, xi, 1.0, -1.0, *sl);
        });
        return inner * std::pow(t, 1.0 / beta - 1.0) / beta;
      }, tb[k + 1], tb[k]);
    }
    return total;
  });

  r.value = r.u1 + r.u2 + r.u3;
  return r;
}

PointResult Solver::solve_point_detail(double x, double y, const ProblemData& data) const {
  const auto& G = *G_;
  if (!(x > G.a1() && x < G.a2())) throw DomainError("solve_point: need a1 < x < a2");
  if (!(y > 0.0 && y <= data.params.T)) throw DomainError("solve_point: need 0 < y <= T");
  PointResult r = evaluate(x, y, data, opt_.quad);
  if (opt_.error_estimate) {
    QuadratureConfig coarse = opt_.quad;
    coarse.xi_points -= 4;
    coarse.t_points -= 4;
    r.err_est = std::abs(r.value - evaluate(x, y, data, coarse).value);
  }
  return r;
}

SolutionField Solver::solve_at(const ProblemData& data, const std::vector<double>& xs,
                               const std::vector<double>& ys) const {
  data.validate();
  SolutionField out;
  out.x = xs;
  out.y = ys;
  const std::size_t total = xs.size() * ys.size();
  out.values.assign(total, 0.0);
  if (opt_.error_estimate) out.err_est.assign(total, 0.0);

  std::vector<std::string> failures(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < total;) {
      const std::size_t i = k % xs.size(), j = k / xs.size();
      try {
        const PointResult r = solve_point_detail(xs[i], ys[j], data);
        out.values[k] = r.value;
        if (opt_.error_estimate) out.err_est[k] = r.err_est;
      } catch (const Error& e) {
        std::ostringstream os;
        os << "(x=" << xs[i] << ", y=" << ys[j] << "): " << e.what();
        failures[k] = os.str();
      }
    }
  };
  const int nt = std::max(1, std::min<int>(opt_.threads, static_cast<int>(total)));
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::ostringstream agg;
  int nfail = 0;
  for (const auto& f : failures)
    if (!f.empty()) {
      if (nfail < 5) agg << (nfail ? "; " : "") << f;
      ++nfail;
    }
  if (nfail) {
    if (nfail > 5) agg << "; ... " << nfail << " points failed";
    throw QuadratureFailure("grid", agg.str());
  }

  const auto& q = opt_.quad;
  out.meta["method"] = "green";
  out.meta["xi_points"] = std::to_string(q.xi_points);
  out.meta["t_points"] = std::to_string(q.t_points);
  out.meta["t_panels"] = std::to_string(q.t_panels);
  out.meta["refine"] = std::to_string(q.refine);
  out.meta["image_tol"] = format_double(G_->image_tol());
  out.meta["kernel_tol"] = format_double(G_->kernel().tol());
  if (opt_.error_estimate) {
    double m = 0.0;
    for (double e : out.err_est) m = std::max(m, e);
    out.meta["max_err_est"] = format_double(m);
  }
  const std::string w = holder_probe(data);
  if (!w.empty()) out.meta["warning"] = w;
  return out;
}

SolutionField Solver::solve_grid(const ProblemData& data, const GridSpec& grid) const {
  return solve_at(data, grid_x(data.params, grid.nx), grid_y(data.params, grid.ny));
}

double solve_point(double x, double y, const ProblemData& data,
                   std::shared_ptr<const greenfn::GreenFunction> G) {
  data.validate();
  return Solver(std::move(G)).solve_point(x, y, data);
}

SolutionField solve_grid(const ProblemData& data, const GridSpec& grid,
                         std::shared_ptr<const greenfn::GreenFunction> G,
                         const SolveOptions& opt) {
  return Solver(std::move(G), opt).solve_grid(data, grid);
}

}  // namespace fracgreen::solver
