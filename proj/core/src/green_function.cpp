#include <cmath>
#include <sstream>

#include "fracgreen/errors.hpp"
#include "fracgreen/greenfn.hpp"

namespace fracgreen::greenfn {

GreenFunction::GreenFunction(std::shared_ptr<const GammaKernel> kernel, double a1, double a2,
                             double image_tol, int m_max)
    : kernel_(std::move(kernel)), a1_(a1), a2_(a2), len_(a2 - a1), image_tol_(image_tol),
      m_max_(m_max) {
  if (!kernel_) throw InvalidParam("GreenFunction: null kernel");
  if (!(a1 < a2)) throw InvalidParam("GreenFunction: need a1 < a2");
  if (!(image_tol > 0.0)) throw InvalidParam("GreenFunction: image_tol must be positive");
  if (m_max < 1) throw InvalidParam("GreenFunction: m_max must be positive");
}

namespace {

// Symmetric shells m = 0, +-1, +-2, ... of w1 f(X1m) + w2 f(X2m). Each image pair
// is summed before accumulation so that coincident X1m = X2m cancel exactly.
template <class F>
double shells(double x, double xi, double a1, double L, double w1, double w2, double tol,
              int m_max, F&& f) {
  const double d1 = x - xi;
  const double d2 = (x - a1) + (xi - a1);
  double total = w1 * f(d1) + w2 * f(d2);
  double prev_abs = std::abs(total);
  for (int j = 1; j <= m_max; ++j) {
    const double shift = 2.0 * j * L;
    const double p1 = w1 * f(d1 + shift) + w2 * f(d2 + shift);
    const double p2 = w1 * f(d1 - shift) + w2 * f(d2 - shift);
    total += p1 + p2;
    const double shell_abs = std::abs(p1) + std::abs(p2);
    if (shell_abs <= tol && prev_abs <= tol) return total;
    prev_abs = shell_abs;
  }
  std::ostringstream os;
  os << "image series did not settle within m_max=" << m_max << " shells";
  throw NonConverged(os.str());
}

}  // namespace

double GreenFunction::image_sum(double x, double xi, double w1, double w2,
                                const std::function<double(double)>& f) const {
  return shells(x, xi, a1_, len_, w1, w2, image_tol_, m_max_, f);
}

double GreenFunction::image_sum(double x, double xi, double w1, double w2,
                                const GammaSlice& f) const {
  return shells(x, xi, a1_, len_, w1, w2, image_tol_, m_max_, f);
}

namespace {
void check_inside(double a1, double a2, double x, double xi) {
  if (x < a1 || x > a2 || xi < a1 || xi > a2)
    throw DomainError("green_eval: x and xi must lie in [a1, a2]");
}
}  // namespace

double GreenFunction::eval(double x, double y, double xi, double eta, double nu, int m) const {
  if (m < 0 || m > 1) throw InvalidParam("green_eval: m must be 0 or 1");
  if (!(eta < y)) throw DomainError("green_eval: requires eta < y");
  check_inside(a1_, a2_, x, xi);
  const double s = y - eta;
  const GammaKernel& k = *kernel_;
  return image_sum(x, xi, 1.0, -1.0, [&](double X) { return k.eval(X, s, nu, m); });
}

double GreenFunction::eval_dxi(double x, double y, double xi, double eta) const {
  if (!(eta < y)) throw DomainError("green_eval: requires eta < y");
  check_inside(a1_, a2_, x, xi);
  const double s = y - eta;
  const GammaKernel& k = *kernel_;
  return image_sum(x, xi, -1.0, -1.0, [&](double X) { return k.eval(X, s, 0.0, 1); });
}

double green_eval(double x, double y, double xi, double eta, double nu, int m,
                  const GreenFunction& G) {
  return G.eval(x, y, xi, eta, nu, m);
}

}  // namespace fracgreen::greenfn
