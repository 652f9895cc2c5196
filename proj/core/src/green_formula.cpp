#include <algorithm>
#include <cmath>
#include <limits>

#include "fracgreen/errors.hpp"
#include "fracgreen/fraccalc.hpp"
#include "fracgreen/quadrature.hpp"
#include "fraccalc_detail.hpp"

namespace fracgreen::fraccalc {

namespace {

constexpr int kPoints = 20;
constexpr int kJacobi = 40;

// int_{y_e}^{y} g(tau) (tau - eta)^p dtau where g ~ (y - tau)^lam at tau = y.
double end_weighted_integral(const std::function<double(double)>& g, double lam, double p,
                             double y_e, double y, double eta) {
  const double eps = y - y_e, d = y_e - eta;
  if (d < 0.0) throw DomainError("need eta <= y - eps");
  auto greg = [&](double tau) { return lam == 0.0 ? g(tau) : g(tau) * std::pow(y - tau, -lam); };
  if (d == 0.0) {
    if (!(p > -1.0)) throw DomainError("integral diverges at eta = y - eps");
    const auto& r = jacobi_rule(kJacobi, lam, p);
    double s = 0.0;
    for (std::size_t j = 0; j < r.x.size(); ++j) s += r.w[j] * greg(y_e + 0.5 * eps * (1.0 + r.x[j]));
    return s * std::pow(0.5 * eps, 1.0 + lam + p);
  }
  // Panels in rho = tau - eta doubling away from rho = d, then an end panel
  // carrying the (y - tau)^lam weight.
  const double mid = d + 0.5 * eps;
  double total = 0.0;
  for (double lo = d; lo < mid;) {
    const double hi = std::min(2.0 * lo, mid);
    total += quad::gauss([&](double rho) { return std::pow(rho, p) * g(eta + rho); }, lo, hi, kPoints);
    lo = hi;
  }
  const double h = d + eps - mid;
  const auto& r = jacobi_rule(kJacobi, lam, 0.0);
  double s = 0.0;
  for (std::size_t j = 0; j < r.x.size(); ++j) {
    const double rho = mid + 0.5 * h * (1.0 + r.x[j]);
    s += r.w[j] * std::pow(rho, p) * greg(eta + rho);
  }
  return total + s * std::pow(0.5 * h, 1.0 + lam);
}

int order_n(double alpha) { return FracOrder(alpha).n; }

// Grading that keeps piecewise-linear interpolation of s^lam second order near 0.
double grading_for(double lam) { return std::clamp(2.0 / (1.0 + std::min(lam, 0.0)), 2.0, 8.0); }

}  // namespace

double rl_of_s_operator_explicit(const std::function<double(double)>& g, double g_exponent,
                                 double alpha, int k, double y_e, double y, double eta) {
  const int n = order_n(alpha);
  if (!(alpha > 0.0)) throw InvalidParam("alpha must be positive");
  if (k < 0 || k > n) throw InvalidParam("k must lie in 0..n");
  if (!(y_e < y)) throw DomainError("need y_e < y");
  const double sign = (n - k) % 2 == 0 ? 1.0 : -1.0;
  const double Q = end_weighted_integral(g, g_exponent, k - 1.0 - alpha, y_e, y, eta);
  return sign * std::tgamma(alpha - k + 1.0) / M_PI * Q;
}

double rl_of_s_operator(const std::function<double(double)>& g, double g_exponent, double alpha,
                        int k, double y_e, double y, double eta, int cells) {
  const int n = order_n(alpha);
  if (!(alpha > 0.0) || alpha == std::floor(alpha))
    throw InvalidParam("rl_of_s_operator: alpha must be a positive non-integer");
  if (k < 0 || k > n) throw InvalidParam("k must lie in 0..n");
  if (!(eta < y_e && y_e < y)) throw DomainError("need eta < y_e < y");

  const int M = std::max(64, cells / 4);
  SampledFunction gs;
  gs.nodes.resize(M + 1);
  gs.values.resize(M + 1);
  const double rg = grading_for(g_exponent);
  for (int i = 0; i <= M; ++i)
    gs.nodes[i] = y - (y - y_e) * std::pow(1.0 - static_cast<double>(i) / M, rg);
  gs.nodes.front() = y_e;
  gs.nodes.back() = y;
  for (int i = 0; i < M; ++i) gs.values[i] = g(gs.nodes[i]);
  gs.values[M] = g_exponent != 0.0 ? std::numeric_limits<double>::infinity() : g(y);
  gs.right_exponent = g_exponent;

  SampledFunction w;
  w.nodes = graded_nodes(0.0, y_e - eta, cells, grading_for(alpha - n));
  w.values.resize(w.nodes.size());
  w.values[0] = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 1; i < w.nodes.size(); ++i)
    w.values[i] = s_operator_offset(n - alpha, gs, w.nodes[i]);
  w.left_exponent = alpha - n;
  return rl(w, alpha - k, y_e - eta);
}

double s_operator_bound(double C, double gamma, double alpha, int k, double y_e, double y,
                        double eta) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidParam("gamma must lie in (0, 1)");
  return C * std::tgamma(alpha - k + 1.0) / (M_PI * gamma) * std::pow(y_e - eta, k - 1.0 - alpha) *
         std::pow(y - y_e, gamma);
}

GreenFormulaParts green_formula_caputo(const SampledFunction& u,
                                       const std::function<double(double)>& v, double v_exponent,
                                       double alpha, double eps, double y, int cells) {
  if (!(alpha > 0.0)) throw InvalidParam("alpha must be positive");
  if (!(eps > 0.0 && eps < y)) throw DomainError("need 0 < eps < y");
  u.validate();
  const double tol = 1e-12 * y;
  if (std::abs(u.a()) > tol) throw DomainError("u must be sampled from 0");
  const double y_e = y - eps;
  if (u.b() < y_e - tol) throw DomainError("u must be sampled up to y - eps");
  const int n = order_n(alpha);

  // v(y; .) reflected about y: w(sigma) = v(y - sigma).
  SampledFunction w;
  w.nodes = graded_nodes(0.0, y, cells, grading_for(v_exponent));
  w.values.resize(w.nodes.size());
  w.left_exponent = v_exponent;
  w.values[0] = v_exponent != 0.0 ? std::numeric_limits<double>::quiet_NaN() : v(y);
  // Nodes too close to y to be resolved in eta follow the end model.
  std::size_t ref = 1;
  while (ref + 1 < w.nodes.size() && w.nodes[ref] < 1e-10 * y) ++ref;
  for (std::size_t i = ref; i < w.nodes.size(); ++i) w.values[i] = v(y - w.nodes[i]);
  for (std::size_t i = 1; i < ref; ++i)
    w.values[i] = w.values[ref] * std::pow(w.nodes[i] / w.nodes[ref], v_exponent);
  auto Dv = [&](double nu, double eta) { return rl(w, nu, y - eta); };

  GreenFormulaParts out;
  // Left side by the trapezoid rule on u's nodes.
  std::vector<double> eta;
  for (double x : u.nodes)
    if (x < y_e - tol) eta.push_back(x);
  eta.push_back(y_e);
  const FracOrder ord(alpha);
  auto F = [&](double e) { return v(e) * caputo_derivative(u, ord, e) - u(e) * Dv(alpha, e); };
  double prev = F(eta[0]);
  for (std::size_t i = 1; i < eta.size(); ++i) {
    const double cur = F(eta[i]);
    out.lhs += 0.5 * (prev + cur) * (eta[i] - eta[i - 1]);
    prev = cur;
  }

  auto u_deriv_at_0 = [&](int j) {
    if (static_cast<int>(u.derivs_at_a.size()) > j) return u.derivs_at_a[j];
    return derivative_at(u, j, u.a());
  };
  for (int k = 1; k <= n; ++k) {
    out.top += derivative_at(u, k - 1, y_e) * Dv(alpha - k, y_e);
    out.bottom += u_deriv_at_0(k - 1) * Dv(alpha - k, 0.0);
  }

  const double gam = std::sin(M_PI * (alpha - n));
  if (gam != 0.0) {
    // Moved onto u^{(n)} by fractional integration by parts; panels halve toward y_e.
    double c = 0.0, lo = 0.0;
    for (int j = 1; j <= 48; ++j) {
      const double hi = y_e * (1.0 - std::ldexp(1.0, -j));
      c += quad::gauss([&](double e) {
        return derivative_at(u, n, e) * rl_of_s_operator_explicit(v, v_exponent, alpha, n, y_e, y, e);
      }, lo, hi, kPoints);
      lo = hi;
    }
    c += quad::gauss([&](double e) {
      return derivative_at(u, n, e) * rl_of_s_operator_explicit(v, v_exponent, alpha, n, y_e, y, e);
    }, lo, y_e, kPoints);
    out.correction = gam * c;
  }
  out.rhs = out.top - out.bottom + out.correction;
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

double check_green_formula_caputo(const SampledFunction& u,
                                  const std::function<double(double)>& v, double v_exponent,
                                  double alpha, double eps, double y, int cells) {
  return green_formula_caputo(u, v, v_exponent, alpha, eps, y, cells).residual;
}

}  // namespace fracgreen::fraccalc
