#pragma once

#include <memory>
#include <vector>

#include "fracgreen/params.hpp"

namespace fracgreen::specfun {

/// 1/Gamma(x); exactly zero at 0, -1, -2, ...
double rgamma(double x);

/// Arguments of phi(delta, mu; z) = sum_k z^k / (k! Gamma(delta k + mu)).
struct WrightArg {
  double delta;
  double mu;
  double z;
};

struct SeriesValue {
  double value = 0.0;
  double error = 0.0;  ///< rounding estimate: max term * eps * sqrt(terms)
  int terms = 0;
};

/// Hard cap on summed terms of the Wright series.
inline constexpr int kWrightMaxTerms = 400;

/// Raw series with its rounding estimate; never throws on cancellation.
SeriesValue wright_series(const WrightArg& arg);

/// Wright function; throws NonConvergent when the rounding estimate exceeds
/// tol * max(1, |value|), InvalidParam if delta is outside (-1, 0].
double wright_phi(const WrightArg& arg, double tol = 1e-13);

/// Confluent hypergeometric limit function 0F1(; nu; z) by direct series.
double hyp0f1(double nu, double z, double tol = 1e-12);

/// F_j(w) = 0F1(; j + 1; w) / j! for j = 0..jmax, written to out[0..jmax].
/// Uses the series for small |w| and normalised backward Bessel recurrence otherwise.
void hyp0f1_ladder(int jmax, double w, double* out);

/// Kernel constants b1 = -b/2, a = b1^2 - c, beta = alpha/2.
/// h0 is evaluated at w = w_scale * a * (tau^2 - x^2); the default 1/4 makes
/// h0 = I0(sqrt(a (tau^2 - x^2))), the kernel annihilated by the operator.
struct KernelParams {
  double b1;
  double a;
  double beta;
  double w_scale = 0.25;

  KernelParams(double b1, double a, double beta, double w_scale = 0.25);
  static KernelParams from(const ProblemParams& p, double w_scale = 0.25);
  /// Coefficient multiplying (tau^2 - x^2) inside 0F1.
  double aw() const { return w_scale * a; }
};

/// d^m/dx^m L1^k h0(x, tau) with L1 = d/dtau + b1 and h0 = 0F1(; 1; w).
double kernel_h0(double x, double tau, const KernelParams& kp, int m, int k);

/// D^nu_{0y} g(y, tau) = exp(b1 tau) y^{-nu-1} phi(-beta, -nu; -tau y^{-beta}).
double kernel_g_dnu(double y, double tau, double nu, const KernelParams& kp);

/// Piecewise Chebyshev table of z -> phi(-beta, mu; -z) for z >= 0, marched until
/// the values fall below a relative floor of the running peak. Zero beyond z_cap().
class WrightTable {
 public:
  static std::shared_ptr<const WrightTable> get(double beta, double mu);
  WrightTable(double beta, double mu);

  double operator()(double z) const;
  double beta() const { return beta_; }
  double mu() const { return mu_; }
  double z_cap() const { return z_cap_; }
  double peak() const { return peak_; }
  /// Upper bound of |phi| on [z, z_cap]; at z_cap it bounds the discarded tail.
  double bound(double z) const;
  /// Bound on int_{z_cap}^inf |phi| dz from the decay rate at the cap.
  double tail_integral() const { return tail_integral_; }
  /// True when marching stopped on the cancellation guard rather than the floor.
  bool guard_limited() const { return guard_limited_; }

  static constexpr double kPanelWidth = 0.5;
  static constexpr int kDegree = 20;
  static constexpr double kFloor = 1e-18;

 private:
  double beta_, mu_;
  double z_cap_ = 0.0;
  double peak_ = 0.0;
  bool guard_limited_ = false;
  double tail_integral_ = 0.0;
  std::vector<double> coef_;       // panel-major Chebyshev coefficients
  std::vector<double> suffix_max_; // max |phi| over panels p..end
};

}  // namespace fracgreen::specfun
