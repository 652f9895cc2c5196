#pragma once

namespace fracgreen {

/// Coefficients and domain of
///   d^alpha u + b d^beta u - u_xx + c u = f   on (a1, a2) x (0, T],  beta = alpha / 2,
/// with Caputo time derivatives.
struct ProblemParams {
  double alpha = 0.8;
  double b = 0.0;
  double c = 0.0;
  double a1 = 0.0;
  double a2 = 1.0;
  double T = 1.0;

  double beta() const noexcept { return alpha / 2.0; }
  double b1() const noexcept { return -b / 2.0; }
  double a() const noexcept { return b1() * b1() - c; }
  double length() const noexcept { return a2 - a1; }
  /// Smallest integer n with n - 1 < alpha <= n.
  int n() const noexcept { return alpha <= 1.0 ? 1 : 2; }

  /// Throws InvalidParam naming the first violated bound.
  void validate() const;
};

}  // namespace fracgreen
