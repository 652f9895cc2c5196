#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace fracgreen::fraccalc {

/// A function known at ascending nodes on [a, b], a = nodes[0].
///
/// Between nodes the function is linear, except that a nonzero end exponent
/// lam models the end cell as C |s - end|^lam with C fitted at the neighbouring
/// node; the end value itself is then ignored and may be infinite.
struct SampledFunction {
  std::vector<double> nodes;
  std::vector<double> values;
  std::vector<double> derivs_at_a;  ///< optional f^{(k)}(a), k = 0..n-1
  double left_exponent = 0.0;
  double right_exponent = 0.0;

  SampledFunction() = default;
  SampledFunction(std::vector<double> nodes, std::vector<double> values,
                  std::vector<double> derivs_at_a = {});

  /// f on a + (b - a) (i / cells)^grading, i = 0..cells.
  static SampledFunction sample(const std::function<double(double)>& f, double a, double b,
                                int cells, double grading = 1.0,
                                std::vector<double> derivs_at_a = {});

  double a() const { return nodes.front(); }
  double b() const { return nodes.back(); }
  std::size_t size() const { return nodes.size(); }
  /// Throws GridError when the invariants fail.
  void validate() const;
  /// Interpolated value; GridError outside [a, b].
  double operator()(double s) const;
};

std::vector<double> graded_nodes(double a, double b, int cells, double grading);

/// g(s) = f(a + b - s): turns right-sided operators into left-sided ones.
SampledFunction reflect(const SampledFunction& f);

/// Order nu with n - 1 < nu <= n (n = 0 for nu <= 0).
struct FracOrder {
  double nu;
  int n;
  explicit FracOrder(double nu);
};

/// Gamma(mu) / Gamma(mu - alpha) |y - a|^{mu - alpha - 1}.
double power_rule(double mu, double alpha, double y, double a);

/// D^{order}_{ay} f(y) for order < 0 (order = 0 interpolates), by product
/// integration exact on the piecewise-linear interpolant.
double rl_integral(const SampledFunction& f, double order, double y);

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// n-th derivative of D^{nu-n} f by a finite-difference stencil on the nearest
/// n + 2 nodes; the error compares with an n + 3 point stencil.
Estimate rl_derivative_estimate(const SampledFunction& f, FracOrder order, double y);
/// Throws AccuracyWarning when the estimate exceeds warn_tol.
double rl_derivative(const SampledFunction& f, FracOrder order, double y,
                     double warn_tol = std::numeric_limits<double>::infinity());

/// D^nu f(y) for any real nu.
double rl(const SampledFunction& f, double nu, double y);

/// D^nu f at every node. Node 0 is extrapolated for positive orders.
SampledFunction rl_on_grid(const SampledFunction& f, double nu);

/// Caputo derivative: D^nu applied to f minus its Taylor polynomial of degree
/// n - 1 at a. The Taylor data come from derivs_at_a or one-sided differences.
double caputo_derivative(const SampledFunction& f, FracOrder order, double y);

/// Finite-difference weights for the derivative of the given order at x0.
std::vector<double> fornberg_weights(double x0, const double* x, int npts, int order);
/// d^order f/ds^order at s from the nearest order + 2 nodes.
double derivative_at(const SampledFunction& f, int order, double s);

/// (1/pi) int_s^y g(tau) / (tau - xi) ((tau - s) / (s - xi))^delta dtau, xi < s < y.
double s_operator(double delta, double s, double y, const SampledFunction& g, double xi);

/// |D^delta D^nu f(y) - D^{delta+nu} f(y) + sum_k |y-a|^{-delta-k} / Gamma(1-delta-k)
///  lim_{s->a} D^{nu-k} f(s)|, the limits extrapolated from the first nodes.
double check_newton_leibniz(const SampledFunction& f, double delta, double nu, double y);

/// Pieces of the Caputo Green formula on [0, y - eps]:
///   lhs        = int_0^{y_e} (v d^alpha u - u D^alpha_{y eta} v) d eta
///   top        = sum_k u^{(k-1)}(y_e) D^{alpha-k}_{y eta} v |_{eta = y_e}
///   bottom     = sum_k u^{(k-1)}(0) D^{alpha-k}_{y eta} v |_{eta = 0}
///   correction = sin(pi (alpha - n)) int_0^{y_e} d^alpha u S^{n-alpha}_{y_e y} v d eta
/// with rhs = top - bottom + correction.
struct GreenFormulaParts {
  double lhs = 0.0, top = 0.0, bottom = 0.0, correction = 0.0, rhs = 0.0, residual = 0.0;
};

/// u sampled on [0, y_e] or beyond; v(eta) = v(y; eta) for the fixed y, with
/// v ~ (y - eta)^{v_exponent} as eta -> y.
GreenFormulaParts green_formula_caputo(const SampledFunction& u,
                                       const std::function<double(double)>& v, double v_exponent,
                                       double alpha, double eps, double y, int cells = 2048);
double check_green_formula_caputo(const SampledFunction& u,
                                  const std::function<double(double)>& v, double v_exponent,
                                  double alpha, double eps, double y, int cells = 2048);

/// D^{alpha-k}_{y_e eta} S^{n-alpha}_{y_e y} g (eta) assembled numerically from
/// sampled S values; g ~ (y - tau)^{g_exponent} near y. alpha must not be an integer.
double rl_of_s_operator(const std::function<double(double)>& g, double g_exponent, double alpha,
                        int k, double y_e, double y, double eta, int cells = 2048);

/// (-1)^{n-k} Gamma(alpha-k+1)/pi int_{y_e}^y g(tau) (tau - eta)^{k-1-alpha} dtau.
double rl_of_s_operator_explicit(const std::function<double(double)>& g, double g_exponent,
                                 double alpha, int k, double y_e, double y, double eta);

/// C Gamma(alpha-k+1) / (pi gamma) (y_e - eta)^{k-1-alpha} (y - y_e)^gamma for
/// |g| <= C (y - tau)^{gamma-1}.
double s_operator_bound(double C, double gamma, double alpha, int k, double y_e, double y,
                        double eta);

}  // namespace fracgreen::fraccalc
