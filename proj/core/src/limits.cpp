#include <algorithm>
#include <cmath>

#include "fracgreen/errors.hpp"
#include "fracgreen/greenfn.hpp"

namespace fracgreen::greenfn {

namespace {
constexpr int kPanelPoints = 20;
}

double delta_limit_check(const std::function<double(double)>& q, double x, double h,
                         const GammaKernel& k, double x1, double x2) {
  if (!(x1 < x && x < x2)) throw DomainError("delta_limit_check: need x1 < x < x2");
  if (!(h > 0.0)) throw DomainError("delta_limit_check: need h > 0");
  const double nu = k.params().alpha - 1.0;
  const auto sl = k.slice(h, nu, 0);
  const double ell = std::pow(h, k.params().beta());
  const double reach = sl->support();
  auto side = [&](double lo, double hi, bool toward_hi) {
    // Panels of width ell grow away from x.
    double s = 0.0;
    const double span = std::min(hi - lo, reach);
    const int panels = std::max(1, static_cast<int>(std::ceil(span / ell)));
    const double w = span / panels;
    for (int i = 0; i < panels; ++i) {
      const double a = toward_hi ? lo + i * w : hi - (i + 1) * w;
      const double b = a + w;
      s += quad::gauss([&](double xi) { return q(xi) * (*sl)(x - xi); }, a, b, kPanelPoints);
    }
    return s;
  };
  return side(x, x2, true) + side(x1, x, false);
}

double jump_check(const std::function<double(double)>& p, double x, int side, double offset,
                  double y, double delta, const GammaKernel& k) {
  if (side != 1 && side != -1) throw InvalidParam("jump_check: side must be +1 or -1");
  if (!(offset > 0.0)) throw DomainError("jump_check: offset must be positive");
  if (!(y > 0.0) || !(delta >= 0.0 && delta < y)) throw DomainError("jump_check: need 0 <= delta < y");
  (void)x;  // translation invariance: only x - xi enters
  const double X = side * offset;
  const double beta = k.params().beta();
  const double s_max = y - delta;
  const double s_cut = std::pow(offset / k.support_z(0.0, 1), 1.0 / beta);
  if (s_cut >= s_max) return 0.0;
  double total = 0.0;
  double lo = s_cut;
  while (lo < s_max) {
    const double hi = std::min(2.0 * lo, s_max);
    total += quad::gauss([&](double s) { return p(y - s) * k.eval(X, s, 0.0, 1); }, lo, hi,
                         kPanelPoints);
    lo = hi;
  }
  return total;
}

}  // namespace fracgreen::greenfn
