#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace fracgreen::quad {

/// Nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Gauss-Legendre rule with n points; cached and safe to call concurrently.
const Rule& gauss_legendre(int n);

/// Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b, a, b > -1.
Rule gauss_jacobi(int n, double a, double b);

/// Fixed rule mapped onto [lo, hi].
template <class F>
double apply(const Rule& r, F&& f, double lo, double hi) {
  const double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
  double s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(c + h * r.x[i]);
  return h * s;
}

template <class F>
double gauss(F&& f, double lo, double hi, int n) {
  return apply(gauss_legendre(n), f, lo, hi);
}

struct Result {
  double value = 0.0;
  double error = 0.0;
  int evals = 0;
  bool converged = true;
};

namespace detail {
extern const double kXgk[8];
extern const double kWgk[8];
extern const double kWg[4];

template <class F>
void gk15(F& f, double lo, double hi, double& value, double& err) {
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  const double fc = f(c);
  double rk = fc * kWgk[7];
  double rg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    rk += kWgk[j] * s;
    if (j % 2 == 1) rg += kWg[j / 2] * s;
  }
  value = rk * h;
  err = std::abs((rk - rg) * h);
}

template <class F>
void gk_recurse(F& f, double lo, double hi, double whole, double err, double tol,
                int depth, Result& out) {
  if (err <= tol || depth <= 0) {
    out.value += whole;
    out.error += err;
    if (err > tol) out.converged = false;
    return;
  }
  const double mid = 0.5 * (lo + hi);
  double v1, e1, v2, e2;
  gk15(f, lo, mid, v1, e1);
  gk15(f, mid, hi, v2, e2);
  out.evals += 30;
  gk_recurse(f, lo, mid, v1, e1, 0.5 * tol, depth - 1, out);
  gk_recurse(f, mid, hi, v2, e2, 0.5 * tol, depth - 1, out);
}
}  // namespace detail

/// Adaptive Gauss-Kronrod (7/15) with absolute tolerance `tol` on [lo, hi].
template <class F>
Result kronrod(F&& f, double lo, double hi, double tol, int max_depth = 30) {
  Result out;
  if (hi == lo) return out;
  double v, e;
  detail::gk15(f, lo, hi, v, e);
  out.evals = 15;
  detail::gk_recurse(f, lo, hi, v, e, tol, max_depth, out);
  return out;
}

/// Piecewise Chebyshev interpolant on [lo, lo + panels * width].
class PiecewiseChebyshev {
 public:
  PiecewiseChebyshev() = default;

  template <class F>
  PiecewiseChebyshev(F&& f, double lo, double width, int panels, int degree)
      : lo_(lo), width_(width), panels_(panels), deg_(degree),
        coef_(static_cast<std::size_t>(panels) * (degree + 1)) {
    std::vector<double> vals(degree + 1);
    for (int p = 0; p < panels; ++p) {
      const double c = lo + (p + 0.5) * width, h = 0.5 * width;
      for (int j = 0; j <= degree; ++j)
        vals[j] = f(c + h * std::cos(M_PI * (j + 0.5) / (degree + 1)));
      fit_panel(p, vals);
    }
  }

  /// Builds from precomputed values at the Chebyshev points of each panel,
  /// ordered panel-major as returned by nodes().
  static PiecewiseChebyshev from_values(const std::vector<double>& values, double lo,
                                        double width, int panels, int degree);
  static std::vector<double> nodes(double lo, double width, int panels, int degree);

  double operator()(double z) const;
  double lo() const { return lo_; }
  double hi() const { return lo_ + width_ * panels_; }
  bool empty() const { return panels_ == 0; }

 private:
  void fit_panel(int p, const std::vector<double>& vals);

  double lo_ = 0.0, width_ = 1.0;
  int panels_ = 0, deg_ = 0;
  std::vector<double> coef_;
};

}  // namespace fracgreen::quad
