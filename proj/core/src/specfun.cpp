#include "fracgreen/specfun.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "fracgreen/errors.hpp"
#include "fracgreen/kernel_poly.hpp"
#include "wide.hpp"

namespace fracgreen {

void ProblemParams::validate() const {
  auto fail = [](const std::string& m) { throw InvalidParam(m); };
  if (!std::isfinite(alpha) || !(alpha > 0.0 && alpha < 2.0))
    fail("alpha must lie in (0, 2), got " + std::to_string(alpha));
  if (!std::isfinite(b)) fail("b must be finite");
  if (!std::isfinite(c)) fail("c must be finite");
  if (!std::isfinite(a1) || !std::isfinite(a2) || !(a1 < a2))
    fail("need a1 < a2, got a1=" + std::to_string(a1) + " a2=" + std::to_string(a2));
  if (!std::isfinite(T) || !(T > 0.0)) fail("T must be positive, got " + std::to_string(T));
}

namespace specfun {

double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x >= 1.0) {
    if (x > 171.0) return std::exp(-std::lgamma(x));
    return 1.0 / std::tgamma(x);
  }
  if (x > 0.0) return 1.0 / std::tgamma(x);
  // Reflection with the sine argument reduced mod 2.
  const double r = x - 2.0 * std::floor(0.5 * x);
  return std::sin(M_PI * r) * std::exp(std::lgamma(1.0 - x)) / M_PI;
}

SeriesValue wright_series(const WrightArg& arg) {
  if (!(arg.delta > -1.0 && arg.delta <= 0.0))
    throw InvalidParam("wright_phi: delta must lie in (-1, 0]");
  if (arg.z == 0.0) return {rgamma(arg.mu), 0.0, 1};
  const wide::WrightCoeffs co(arg.delta, arg.mu, kWrightMaxTerms);
  const auto s = wide::sum_series(co, static_cast<wide::W>(arg.z));
  SeriesValue out;
  out.value = static_cast<double>(s.value);
  out.terms = s.terms;
  out.error = s.converged ? static_cast<double>(s.max_env) * wide::kEps * std::sqrt(s.terms)
                          : std::numeric_limits<double>::infinity();
  return out;
}

double wright_phi(const WrightArg& arg, double tol) {
  if (!(tol > 0.0)) throw InvalidParam("wright_phi: tol must be positive");
  const SeriesValue s = wright_series(arg);
  if (!std::isfinite(s.value) || !(s.error <= tol * std::max(1.0, std::abs(s.value)))) {
    std::ostringstream os;
    os << "wright_phi(" << arg.delta << ", " << arg.mu << "; " << arg.z
       << "): cancellation estimate " << s.error << " exceeds tolerance";
    throw NonConvergent(os.str());
  }
  return s.value;
}

double hyp0f1(double nu, double z, double tol) {
  if (nu <= 0.0 && nu == std::floor(nu))
    throw InvalidParam("hyp0f1: nu must not be a nonpositive integer");
  long double s = 1.0L, comp = 0.0L, t = 1.0L, tmax = 1.0L;
  int k = 1;
  for (; k < 2000; ++k) {
    t *= static_cast<long double>(z) / (k * (nu + k - 1.0L));
    const long double y = t - comp;
    const long double u = s + y;
    comp = (u - s) - y;
    s = u;
    tmax = std::max(tmax, std::fabs(t));
    if (k > std::abs(z) && std::fabs(t) <= 1e-21L * std::fabs(s)) break;
    if (t == 0.0L) break;
  }
  const double err = static_cast<double>(tmax) * 1.0842e-19 * std::sqrt(static_cast<double>(k));
  if (k >= 2000 || err > tol * std::max(1.0, static_cast<double>(std::fabs(s))))
    throw NonConvergent("hyp0f1: cancellation exceeds working precision");
  return static_cast<double>(s);
}

namespace {

constexpr double kLadderSeriesLimit = 25.0;

// Bessel J_k(r) or I_k(r), k = 0..jmax, by Miller's backward recurrence.
void bessel_ladder(bool modified, int jmax, double r, std::vector<double>& out) {
  int N = jmax + static_cast<int>(r + 12.0 * std::sqrt(r)) + 40;
  N += N % 2;
  std::vector<double> b(N + 2, 0.0);
  b[N + 1] = 0.0;
  b[N] = 1e-280;
  double sum = 0.0;
  for (int k = N; k >= 1; --k) {
    const double prev = (2.0 * k / r) * b[k] + (modified ? b[k + 1] : -b[k + 1]);
    b[k - 1] = prev;
    if (std::abs(prev) > 1e250) {
      for (int i = k - 1; i <= N; ++i) b[i] *= 1e-250;
    }
  }
  if (modified) {
    sum = b[0];
    for (int k = 1; k <= N; ++k) sum += 2.0 * b[k];
  } else {
    sum = b[0];
    for (int k = 2; k <= N; k += 2) sum += 2.0 * b[k];
  }
  out.assign(jmax + 1, 0.0);
  for (int j = 0; j <= jmax; ++j) {
    if (modified) {
      const double ratio = b[j] / sum;
      out[j] = ratio > 0.0 ? std::exp(r + std::log(ratio)) : 0.0;
    } else {
      out[j] = b[j] / sum;
    }
  }
}

}  // namespace

void hyp0f1_ladder(int jmax, double w, double* out) {
  if (std::abs(w) <= kLadderSeriesLimit) {
    long double inv_fact = 1.0L;
    for (int j = 0; j <= jmax; ++j) {
      if (j > 0) inv_fact /= j;
      long double t = inv_fact, s = t;
      for (int k = 1; k < 200; ++k) {
        t *= static_cast<long double>(w) / (static_cast<long double>(k) * (j + k));
        s += t;
        if (std::fabs(t) <= 1e-21L * std::fabs(s)) break;
      }
      out[j] = static_cast<double>(s);
    }
    return;
  }
  const double r = 2.0 * std::sqrt(std::abs(w));
  std::vector<double> b;
  bessel_ladder(w > 0.0, jmax, r, b);
  const double half = 0.5 * r;
  double scale = 1.0;
  for (int j = 0; j <= jmax; ++j) {
    out[j] = b[j] / scale;
    scale *= half;
  }
}

KernelParams::KernelParams(double b1_, double a_, double beta_, double w_scale_)
    : b1(b1_), a(a_), beta(beta_), w_scale(w_scale_) {
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidParam("KernelParams: beta must lie in (0, 1)");
  if (!std::isfinite(b1) || !std::isfinite(a) || !std::isfinite(w_scale))
    throw InvalidParam("KernelParams: non-finite b1/a/w_scale");
}

KernelParams KernelParams::from(const ProblemParams& p, double w_scale) {
  KernelParams kp(p.b1(), p.a(), p.beta(), w_scale);
  if (kp.b1 != -p.b / 2.0 || kp.a != kp.b1 * kp.b1 - p.c)
    throw InvalidParam("KernelParams inconsistent with problem parameters");
  return kp;
}

double kernel_h0(double x, double tau, const KernelParams& kp, int m, int k) {
  if (tau < std::abs(x)) throw DomainError("kernel_h0: requires tau >= |x|");
  if (m < 0 || m > 4 || k < 0) throw InvalidParam("kernel_h0: need 0 <= m <= 4 and k >= 0");
  HExpr e = HExpr::h0();
  const double aw = kp.aw();
  for (int i = 0; i < k; ++i) e = e.l1(aw, kp.b1);
  for (int i = 0; i < m; ++i) e = e.dx(aw);
  std::vector<double> F(e.max_j() + 1);
  hyp0f1_ladder(e.max_j(), aw * (tau * tau - x * x), F.data());
  return e.eval(x, tau, F.data());
}

double kernel_g_dnu(double y, double tau, double nu, const KernelParams& kp) {
  if (!(y > 0.0)) throw DomainError("kernel_g_dnu: requires y > 0");
  if (tau < 0.0) throw DomainError("kernel_g_dnu: requires tau >= 0");
  const double z = tau * std::pow(y, -kp.beta);
  return std::exp(kp.b1 * tau) * std::pow(y, -nu - 1.0) * wright_phi({-kp.beta, -nu, -z});
}

}  // namespace specfun
}  // namespace fracgreen
