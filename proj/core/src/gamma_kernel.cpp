#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracgreen/errors.hpp"
#include "fracgreen/greenfn.hpp"

namespace fracgreen::greenfn {

using specfun::HExpr;
using specfun::WrightTable;

namespace {

constexpr double kSliceWidth = 1.0;
constexpr int kSliceDegree = 20;
constexpr double kTailRatio = 1e-6;

long long order_key(double nu) { return std::llround(nu * 1e12); }

// Merge boundary terms that share a g-order.
void add_boundary(std::vector<std::pair<HExpr, int>>& terms, const HExpr& q, int shift) {
  for (auto& t : terms) {
    if (t.second == shift) {
      t.first = t.first + q;
      return;
    }
  }
  terms.emplace_back(q, shift);
}

}  // namespace

GammaSlice::GammaSlice(quad::PiecewiseChebyshev table, double s, double beta, int m,
                       double z_support)
    : table_(std::move(table)), s_(s), z_support_(z_support), m_(m) {
  const double scale = std::pow(s, beta);
  inv_scale_ = 1.0 / scale;
  support_ = z_support * scale;
}

double GammaSlice::operator()(double X) const {
  const double z = std::abs(X) * inv_scale_;
  if (z >= z_support_) return 0.0;
  if (X == 0.0 && m_ % 2 == 1) return 0.0;
  const double v = table_(z);
  return (X < 0.0 && m_ % 2 == 1) ? -v : v;
}

GammaKernel::GammaKernel(const ProblemParams& params, double tol, double theta_default,
                         double h0_scale)
    : params_(params), kp_(specfun::KernelParams::from((params.validate(), params), h0_scale)),
      tol_(tol), theta_(theta_default) {
  if (!(tol > 0.0)) throw InvalidParam("GammaKernel: tol must be positive");
  if (!(theta_default >= 0.0)) throw InvalidParam("GammaKernel: theta must be >= 0");
}

int GammaKernel::parts_k(double nu) const {
  if (nu <= 0.0) return 0;
  return static_cast<int>(std::ceil(nu / kp_.beta - 1e-12));
}

const GammaKernel::Plan& GammaKernel::plan(double nu, int m, Route route) const {
  const int k = route == Route::ByParts ? parts_k(nu) : 0;
  const auto key = std::make_tuple(order_key(nu), m, k);
  std::lock_guard<std::mutex> lock(mu_);
  auto it = plans_.find(key);
  if (it != plans_.end()) return *it->second;

  const double a = kp_.aw(), b1 = kp_.b1, beta = kp_.beta;
  auto p = std::make_unique<Plan>();
  p->nu = nu;
  p->m = m;
  p->k = k;
  p->rho0 = nu - beta * k;

  std::vector<HExpr> lk(1, HExpr::h0());  // L1^i h0
  for (int i = 0; i < k; ++i) lk.push_back(lk.back().l1(a, b1));
  std::vector<std::pair<HExpr, int>> bnd;
  for (int i = 1; i <= k; ++i) add_boundary(bnd, lk[i - 1], -i);

  HExpr integrand = lk[k];
  for (int r = 1; r <= m; ++r) {
    std::vector<std::pair<HExpr, int>> next;
    for (const auto& [q, s] : bnd) {
      add_boundary(next, q.diag_step(a, b1), s);
      add_boundary(next, q.scaled(-1.0), s + 1);
    }
    add_boundary(next, integrand.scaled(-1.0), -k);
    integrand = integrand.dx(a);
    bnd = std::move(next);
  }
  p->integrand = integrand;
  p->table = WrightTable::get(beta, -p->rho0);
  p->z_support = p->table->z_cap();
  for (const auto& [q, s] : bnd) {
    if (q.terms.empty()) continue;
    auto tab = WrightTable::get(beta, -(nu + beta * s));
    p->z_support = std::max(p->z_support, tab->z_cap());
    p->boundary.push_back({q, s, std::move(tab)});
  }
  auto& ref = *p;
  plans_.emplace(key, std::move(p));
  return ref;
}

double GammaKernel::support_z(double nu, int m) const {
  return std::max(plan(nu, m, Route::ByParts).z_support, plan(nu, m, Route::Direct).z_support);
}

double GammaKernel::integrate(const Plan& p, double X, double y) const {
  const double beta = kp_.beta, a = kp_.aw(), b1 = kp_.b1;
  const double ys = std::pow(y, beta);
  const double z0 = X / ys;
  const WrightTable& T = *p.table;
  const double zc = T.z_cap();
  if (z0 >= zc) return 0.0;

  const int jmax = p.integrand.max_j();
  std::vector<double> F(jmax + 1);
  const bool flat = (a == 0.0);
  if (flat)
    for (int j = 0; j <= jmax; ++j) F[j] = 1.0 / std::tgamma(j + 1.0);
  auto P = [&](double tau) {
    if (!flat) specfun::hyp0f1_ladder(jmax, a * (tau - X) * (tau + X), F.data());
    return p.integrand.eval(X, tau, F.data());
  };
  auto f = [&](double z) {
    const double tau = z * ys;
    return P(tau) * std::exp(b1 * tau) * T(z);
  };

  std::vector<double> cuts{z0};
  double first = std::min(z0 + 0.25, zc);
  cuts.push_back(first);
  for (double z = std::floor(first) + 1.0; z < zc; z += 1.0) cuts.push_back(z);
  if (cuts.back() < zc) cuts.push_back(zc);

  double total = 0.0, abs_total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    double v, e;
    quad::detail::gk15(f, cuts[i], cuts[i + 1], v, e);
    if (e > tol_ * std::max(std::abs(v), 1e-3 * abs_total)) {
      auto r = quad::kronrod(f, cuts[i], cuts[i + 1],
                             tol_ * std::max(std::abs(v), 1e-3 * abs_total), 12);
      v = r.value;
    }
    total += v;
    abs_total += std::abs(v);
  }

  if (abs_total > 0.0) {
    const double tau_c = zc * ys;
    const double tail = std::abs(P(tau_c)) * std::exp(b1 * tau_c) * T.tail_integral();
    // Scale by the kernel's own magnitude so near-cap evaluations are not penalised.
    const double tau0 = z0 * ys;
    const double scale = abs_total + std::abs(P(tau0)) * std::exp(b1 * tau0) * T.peak();
    if (tail > kTailRatio * scale) {
      std::ostringstream os;
      os << "Gamma tau-integral: tail " << tail << " at z=" << zc
         << " not negligible against " << abs_total << " (nu=" << p.nu << ", y=" << y << ")";
      throw TruncationFailure(os.str());
    }
  }
  return std::pow(y, beta - p.rho0 - 1.0) * total;
}

double GammaKernel::eval(double x, double y, double nu, int m, Route route) const {
  if (!(y > 0.0)) throw DomainError("gamma_eval: requires y > 0");
  if (m < 0 || m > 2) throw InvalidParam("gamma_eval: m must be 0, 1 or 2");
  if (x == 0.0 && m > 0) throw DomainError("gamma_eval: x-derivatives are undefined at x = 0");
  const Plan& p = plan(nu, m, route);
  const double X = std::abs(x);
  double v = integrate(p, X, y);
  if (!p.boundary.empty()) {
    const double z0 = X * std::pow(y, -kp_.beta);
    const double e = std::exp(kp_.b1 * X);
    for (const auto& b : p.boundary) {
      const double phi = (*b.table)(z0);
      if (phi == 0.0) continue;
      const double rho = nu + kp_.beta * b.shift;
      v += b.q.eval_diag(X) * e * std::pow(y, -rho - 1.0) * phi;
    }
  }
  v *= 0.5;
  return (x < 0.0 && m % 2 == 1) ? -v : v;
}

std::shared_ptr<const GammaSlice> GammaKernel::slice(double s, double nu, int m) const {
  const auto key = std::make_tuple(s, order_key(nu), m);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = slices_.find(key);
    if (it != slices_.end()) return it->second;
  }
  const double zs = support_z(nu, m);
  const int panels = std::max(1, static_cast<int>(std::ceil(zs / kSliceWidth)));
  const double scale = std::pow(s, kp_.beta);
  auto z = quad::PiecewiseChebyshev::nodes(0.0, kSliceWidth, panels, kSliceDegree);
  std::vector<double> vals(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) vals[i] = eval(z[i] * scale, s, nu, m);
  auto table = quad::PiecewiseChebyshev::from_values(vals, 0.0, kSliceWidth, panels, kSliceDegree);
  auto sl = std::make_shared<const GammaSlice>(std::move(table), s, kp_.beta, m, zs);
  std::lock_guard<std::mutex> lock(mu_);
  return slices_.emplace(key, std::move(sl)).first->second;
}

double gamma_eval(double x, double y, double nu, int m, const GammaKernel& k) {
  return k.eval(x, y, nu, m);
}

double residual_L_gamma(double x, double y, const GammaKernel& k) {
  if (x == 0.0) throw DomainError("residual_L_gamma: requires x != 0");
  const auto& p = k.params();
  const double da = k.eval(x, y, p.alpha, 0);
  const double db = k.eval(x, y, p.beta(), 0);
  const double dxx = k.eval(x, y, 0.0, 2);
  const double g = k.eval(x, y, 0.0, 0);
  return std::abs(da + p.b * db - dxx + p.c * g);
}

}  // namespace fracgreen::greenfn
