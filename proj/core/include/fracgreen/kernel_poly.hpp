#pragma once

#include <vector>

namespace fracgreen::specfun {

/// Symbolic sums of coef * x^px * tau^pt * F_j(w), w = a (tau^2 - x^2),
/// F_j = 0F1(; j+1; w) / j!, closed under d/dx and d/dtau since F_j' = F_{j+1}.
struct HExpr {
  struct Mono {
    int j;
    int px;
    int pt;
    double coef;
  };
  std::vector<Mono> terms;

  static HExpr h0();

  HExpr dx(double a) const;
  HExpr dtau(double a) const;
  /// (d/dtau + b1)
  HExpr l1(double a, double b1) const;
  /// (d/dx + d/dtau + b1): derivative along the diagonal tau = x, plus b1.
  HExpr diag_step(double a, double b1) const;

  HExpr operator+(const HExpr& o) const;
  HExpr scaled(double s) const;

  int max_j() const;
  /// Evaluate with F_0..F_max_j supplied.
  double eval(double x, double tau, const double* F) const;
  /// Evaluate on tau = x where w = 0 and F_j = 1/j!.
  double eval_diag(double x) const;

 private:
  void add(int j, int px, int pt, double c);
};

}  // namespace fracgreen::specfun
