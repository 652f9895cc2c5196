#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "fracgreen/kernel_poly.hpp"
#include "fracgreen/params.hpp"
#include "fracgreen/quadrature.hpp"
#include "fracgreen/specfun.hpp"

namespace fracgreen::greenfn {

/// How the time-derivative of order nu > 0 is moved off g.
enum class Route {
  ByParts,  ///< integrate by parts k = ceil(nu / beta) times, adding boundary terms
  Direct,  ///< differentiate g directly (k = 0)
};

/// X -> d^m/dx^m D^nu Gamma(X, s) for one (s, nu, m), tabulated in z = |X| s^{-beta}.
class GammaSlice {
 public:
  GammaSlice(quad::PiecewiseChebyshev table, double s, double beta, int m, double z_support);
  double operator()(double X) const;
  /// Values vanish for |X| >= support().
  double support() const { return support_; }
  double s() const { return s_; }

 private:
  quad::PiecewiseChebyshev table_;
  double s_, inv_scale_, support_, z_support_;
  int m_;
};

/// Fundamental solution Gamma(x, y) = 1/2 int_{|x|}^inf h0(x, tau) g(y, tau) dtau
/// and its derivatives d^m/dx^m D^nu_{0y}.
class GammaKernel {
 public:
  explicit GammaKernel(const ProblemParams& params, double tol = 1e-12, double theta_default = 0.0,
                       double h0_scale = 0.25);

  double eval(double x, double y, double nu, int m, Route route = Route::ByParts) const;
  /// Smallest z = |x| y^{-beta} beyond which eval returns exactly zero.
  double support_z(double nu, int m) const;
  /// Number of integrations by parts used for order nu.
  int parts_k(double nu) const;

  /// Cached tabulation of X -> eval(X, s, nu, m).
  std::shared_ptr<const GammaSlice> slice(double s, double nu, int m) const;

  const ProblemParams& params() const { return params_; }
  const specfun::KernelParams& kernel() const { return kp_; }
  double tol() const { return tol_; }
  double theta_default() const { return theta_; }

 private:
  struct Boundary {
    specfun::HExpr q;
    int shift;  // order of g is nu + beta * shift
    std::shared_ptr<const specfun::WrightTable> table;
  };
  struct Plan {
    double nu;
    int m, k;
    double rho0;
    specfun::HExpr integrand;
    std::shared_ptr<const specfun::WrightTable> table;
    std::vector<Boundary> boundary;
    double z_support;
  };

  const Plan& plan(double nu, int m, Route route) const;
  double integrate(const Plan& p, double X, double y) const;

  ProblemParams params_;
  specfun::KernelParams kp_;
  double tol_, theta_;

  mutable std::mutex mu_;
  mutable std::map<std::tuple<long long, int, int>, std::unique_ptr<Plan>> plans_;
  mutable std::map<std::tuple<double, long long, int>, std::shared_ptr<const GammaSlice>> slices_;
};

double gamma_eval(double x, double y, double nu, int m, const GammaKernel& k);

/// |D^alpha Gamma + b D^beta Gamma - Gamma_xx + c Gamma| at (x, y), x != 0.
double residual_L_gamma(double x, double y, const GammaKernel& k);

/// Rectangle Green function by images:
///   G = sum_m Gamma(2mL + x - xi, y - eta) - Gamma(2mL + x + xi - 2 a1, y - eta).
class GreenFunction {
 public:
  GreenFunction(std::shared_ptr<const GammaKernel> kernel, double a1, double a2,
                double image_tol = 1e-14, int m_max = 1000);

  /// d^m/dx^m D^nu_{y} G(x, y; xi, eta), m in {0, 1}.
  double eval(double x, double y, double xi, double eta, double nu, int m) const;
  /// d/dxi G(x, y; xi, eta).
  double eval_dxi(double x, double y, double xi, double eta) const;

  /// Generic image sum with per-family weights w1 (X1 images) and w2 (X2 images)
  /// applied to an evaluator of d^m D^nu Gamma(., s).
  double image_sum(double x, double xi, double w1, double w2,
                   const std::function<double(double)>& f) const;
  /// Image sum over a tabulated slice.
  double image_sum(double x, double xi, double w1, double w2, const GammaSlice& f) const;

  const GammaKernel& kernel() const { return *kernel_; }
  std::shared_ptr<const GammaKernel> kernel_ptr() const { return kernel_; }
  double a1() const { return a1_; }
  double a2() const { return a2_; }
  double length() const { return len_; }
  double image_tol() const { return image_tol_; }
  int m_max() const { return m_max_; }

 private:
  std::shared_ptr<const GammaKernel> kernel_;
  double a1_, a2_, len_, image_tol_;
  int m_max_;
};

double green_eval(double x, double y, double xi, double eta, double nu, int m,
                  const GreenFunction& G);

/// int_{x1}^{x2} q(xi) D^{alpha-1} Gamma(x - xi, h) dxi; tends to q(x) as h -> 0.
double delta_limit_check(const std::function<double(double)>& q, double x, double h,
                         const GammaKernel& k, double x1, double x2);

/// int_delta^y p(eta) d/dx Gamma(x - xi, y - eta) deta with x - xi = side * offset.
/// The limit offset -> 0 is -side * p(y) / 2.
double jump_check(const std::function<double(double)>& p, double x, int side, double offset,
                  double y, double delta, const GammaKernel& k);

}  // namespace fracgreen::greenfn
