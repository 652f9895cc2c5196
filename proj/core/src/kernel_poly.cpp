#include "fracgreen/kernel_poly.hpp"

#include <algorithm>
#include <cmath>

namespace fracgreen::specfun {

namespace {
double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}
}  // namespace

HExpr HExpr::h0() {
  HExpr e;
  e.terms.push_back({0, 0, 0, 1.0});
  return e;
}

void HExpr::add(int j, int px, int pt, double c) {
  if (c == 0.0) return;
  for (auto& t : terms) {
    if (t.j == j && t.px == px && t.pt == pt) {
      t.coef += c;
      return;
    }
  }
  terms.push_back({j, px, pt, c});
}

HExpr HExpr::dx(double a) const {
  HExpr r;
  for (const auto& t : terms) {
    if (t.px > 0) r.add(t.j, t.px - 1, t.pt, t.coef * t.px);
    r.add(t.j + 1, t.px + 1, t.pt, -2.0 * a * t.coef);
  }
  return r;
}

HExpr HExpr::dtau(double a) const {
  HExpr r;
  for (const auto& t : terms) {
    if (t.pt > 0) r.add(t.j, t.px, t.pt - 1, t.coef * t.pt);
    r.add(t.j + 1, t.px, t.pt + 1, 2.0 * a * t.coef);
  }
  return r;
}

HExpr HExpr::l1(double a, double b1) const { return dtau(a) + scaled(b1); }

HExpr HExpr::diag_step(double a, double b1) const { return dx(a) + dtau(a) + scaled(b1); }

HExpr HExpr::operator+(const HExpr& o) const {
  HExpr r = *this;
  for (const auto& t : o.terms) r.add(t.j, t.px, t.pt, t.coef);
  return r;
}

HExpr HExpr::scaled(double s) const {
  HExpr r;
  for (const auto& t : terms) r.add(t.j, t.px, t.pt, t.coef * s);
  return r;
}

int HExpr::max_j() const {
  int m = 0;
  for (const auto& t : terms) m = std::max(m, t.j);
  return m;
}

double HExpr::eval(double x, double tau, const double* F) const {
  double s = 0.0;
  for (const auto& t : terms) s += t.coef * ipow(x, t.px) * ipow(tau, t.pt) * F[t.j];
  return s;
}

double HExpr::eval_diag(double x) const {
  double s = 0.0;
  for (const auto& t : terms) s += t.coef * ipow(x, t.px + t.pt) / std::tgamma(t.j + 1.0);
  return s;
}

}  // namespace fracgreen::specfun
