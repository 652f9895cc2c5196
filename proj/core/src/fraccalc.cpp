#include "fracgreen/fraccalc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "fracgreen/errors.hpp"
#include "fracgreen/quadrature.hpp"
#include "fracgreen/specfun.hpp"
#include "fraccalc_detail.hpp"

namespace fracgreen::fraccalc {

const quad::Rule& jacobi_rule(int n, double a, double b) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, double>, quad::Rule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(n, a, b);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, quad::gauss_jacobi(n, a, b)).first;
  return it->second;
}

SampledFunction::SampledFunction(std::vector<double> n, std::vector<double> v,
                                 std::vector<double> d)
    : nodes(std::move(n)), values(std::move(v)), derivs_at_a(std::move(d)) {
  validate();
}

SampledFunction SampledFunction::sample(const std::function<double(double)>& f, double a,
                                        double b, int cells, double grading,
                                        std::vector<double> derivs) {
  auto x = graded_nodes(a, b, cells, grading);
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = f(x[i]);
  return SampledFunction(std::move(x), std::move(v), std::move(derivs));
}

void SampledFunction::validate() const {
  if (nodes.size() < 2) throw GridError("sampled function needs at least two nodes");
  if (values.size() != nodes.size()) throw GridError("nodes and values differ in length");
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i] > nodes[i - 1])) throw GridError("nodes must be strictly increasing");
  if (!(left_exponent > -1.0) || !(right_exponent > -1.0))
    throw GridError("end exponents must exceed -1");
  if (left_exponent != 0.0 && right_exponent != 0.0 && nodes.size() < 3)
    throw GridError("two singular ends need at least two cells");
}

double SampledFunction::operator()(double s) const {
  const double tol = 1e-12 * (b() - a());
  if (s < a() - tol || s > b() + tol) {
    std::ostringstream os;
    os << "point " << s << " outside sampled range [" << a() << ", " << b() << "]";
    throw GridError(os.str());
  }
  s = std::clamp(s, a(), b());
  const std::size_t N = nodes.size();
  std::size_t i = std::upper_bound(nodes.begin(), nodes.end(), s) - nodes.begin();
  i = i == 0 ? 0 : i - 1;
  if (i >= N - 1) {
    if (right_exponent != 0.0) return std::numeric_limits<double>::infinity();
    return values[N - 1];
  }
  if (i == 0 && left_exponent != 0.0)
    return values[1] * std::pow((s - nodes[0]) / (nodes[1] - nodes[0]), left_exponent);
  if (i == N - 2 && right_exponent != 0.0)
    return values[N - 2] *
           std::pow((nodes[N - 1] - s) / (nodes[N - 1] - nodes[N - 2]), right_exponent);
  const double t = (s - nodes[i]) / (nodes[i + 1] - nodes[i]);
  return values[i] + (values[i + 1] - values[i]) * t;
}

std::vector<double> graded_nodes(double a, double b, int cells, double grading) {
  if (cells < 1) throw GridError("need at least one cell");
  if (!(b > a)) throw GridError("need a < b");
  if (!(grading >= 1.0)) throw GridError("grading must be >= 1");
  std::vector<double> x(cells + 1);
  for (int i = 0; i <= cells; ++i)
    x[i] = a + (b - a) * std::pow(static_cast<double>(i) / cells, grading);
  x[cells] = b;
  return x;
}

SampledFunction reflect(const SampledFunction& f) {
  SampledFunction g;
  const std::size_t N = f.size();
  g.nodes.resize(N);
  g.values.resize(N);
  const double a = f.a(), b = f.b();
  for (std::size_t i = 0; i < N; ++i) {
    g.nodes[i] = a + (b - f.nodes[N - 1 - i]);
    g.values[i] = f.values[N - 1 - i];
  }
  g.nodes.front() = a;
  g.nodes.back() = b;
  g.left_exponent = f.right_exponent;
  g.right_exponent = f.left_exponent;
  return g;
}

FracOrder::FracOrder(double v) : nu(v), n(v > 0.0 ? static_cast<int>(std::ceil(v)) : 0) {
  if (!std::isfinite(v)) throw InvalidParam("fractional order must be finite");
}

double power_rule(double mu, double alpha, double y, double a) {
  if (!(mu > 0.0)) throw InvalidParam("power_rule: mu must be positive");
  const double r = specfun::rgamma(mu - alpha);
  if (r == 0.0) return 0.0;
  return std::tgamma(mu) * r * std::pow(std::abs(y - a), mu - alpha - 1.0);
}

namespace {

void check_range(const SampledFunction& f, double y) {
  const double tol = 1e-12 * (f.b() - f.a());
  if (y < f.a() - tol || y > f.b() + tol) {
    std::ostringstream os;
    os << "evaluation point " << y << " outside grid [" << f.a() << ", " << f.b() << "]";
    throw GridError(os.str());
  }
}

constexpr int kJacobiPoints = 24;

// I0 = int (y-s)^{p-1} ds and I1 = int (y-s)^{p-1} (s-l) ds over [l, l+h], A = y - l.
// Short cells far from y use the series in x = h / A to avoid cancellation.
void cell_moments(double A, double h, double p, double& I0, double& I1) {
  const double x = h / A;
  const double Ap = std::pow(A, p);
  if (x < 0.125) {
    double a = 1.0, xp = x, s0 = 0.0, s1 = 0.0;
    for (int j = 0; j < 40; ++j) {
      const double t0 = a * xp / (j + 1), t1 = a * xp * x / (j + 2);
      s0 += t0;
      s1 += t1;
      if (std::abs(t0) <= 1e-17 * std::abs(s0)) break;
      a *= (j + 1.0 - p) / (j + 1.0);
      xp *= x;
    }
    I0 = Ap * s0;
    I1 = Ap * A * s1;
    return;
  }
  const double q = x >= 1.0 ? 0.0 : std::pow(1.0 - x, p);
  I0 = Ap * (1.0 - q) / p;
  I1 = Ap * A * ((1.0 - q) / p - q * x) / (p + 1.0);
}

}  // namespace

double rl_integral(const SampledFunction& f, double order, double y) {
  if (order > 0.0) throw InvalidParam("rl_integral: order must be <= 0");
  check_range(f, y);
  y = std::clamp(y, f.a(), f.b());
  if (order == 0.0) return f(y);
  const std::size_t N = f.size();
  if (f.right_exponent != 0.0 && y > f.nodes[N - 2])
    throw GridError("rl_integral: singular right end cannot be integrated to");
  const double p = -order;
  const auto& x = f.nodes;
  const auto& v = f.values;
  double sum = 0.0;
  std::size_t i = 0;
  if (f.left_exponent != 0.0) {
    const double lam = f.left_exponent;
    const double h = x[1] - x[0];
    const double C = v[1] / std::pow(h, lam);
    if (y <= x[1]) {
      const double B = std::exp(std::lgamma(lam + 1.0) + std::lgamma(p) - std::lgamma(lam + 1.0 + p));
      return C * B * std::pow(y - x[0], p + lam) / std::tgamma(p);
    }
    const auto& r = jacobi_rule(kJacobiPoints, 0.0, lam);
    double s = 0.0;
    for (std::size_t j = 0; j < r.x.size(); ++j)
      s += r.w[j] * std::pow(y - (x[0] + 0.5 * h * (1.0 + r.x[j])), p - 1.0);
    sum += C * std::pow(0.5 * h, lam + 1.0) * s;
    i = 1;
  }
  for (; i + 1 < N && x[i] < y; ++i) {
    const double l = x[i];
    double r = x[i + 1], fl = v[i], fr = v[i + 1];
    if (r > y) {
      fr = fl + (fr - fl) * (y - l) / (r - l);
      r = y;
    }
    const double A = y - l, h = r - l;
    double I0, I1;
    cell_moments(A, h, p, I0, I1);
    sum += fl * I0 + (fr - fl) / h * I1;
  }
  return sum / std::tgamma(p);
}

std::vector<double> fornberg_weights(double x0, const double* x, int npts, int order) {
  // Fornberg's recursion for finite-difference weights on arbitrary nodes.
  std::vector<double> c(static_cast<std::size_t>(npts) * (order + 1), 0.0);
  auto C = [&](int i, int k) -> double& { return c[static_cast<std::size_t>(i) * (order + 1) + k]; };
  double c1 = 1.0, c4 = x[0] - x0;
  C(0, 0) = 1.0;
  for (int i = 1; i < npts; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) C(i, k) = c1 * (k * C(i - 1, k - 1) - c5 * C(i - 1, k)) / c2;
        C(i, 0) = -c1 * c5 * C(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k) C(j, k) = (c4 * C(j, k) - k * C(j, k - 1)) / c3;
      C(j, 0) = c4 * C(j, 0) / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(npts);
  for (int i = 0; i < npts; ++i) w[i] = C(i, order);
  return w;
}

namespace {

// First index of an npts-point stencil centred on s, avoiding singular end nodes.
int stencil_start(const SampledFunction& f, double s, int npts) {
  const int N = static_cast<int>(f.size());
  const int lo = f.left_exponent != 0.0 ? 1 : 0;
  const int hi = N - (f.right_exponent != 0.0 ? 1 : 0);  // one past the last usable node
  if (hi - lo < npts) throw GridError("grid too small for the finite-difference stencil");
  int k = static_cast<int>(std::lower_bound(f.nodes.begin(), f.nodes.end(), s) - f.nodes.begin());
  if (k > 0 && (k == N || s - f.nodes[k - 1] < f.nodes[k] - s)) --k;
  return std::clamp(k - npts / 2, lo, hi - npts);
}

}  // namespace

double derivative_at(const SampledFunction& f, int order, double s) {
  if (order < 0) throw InvalidParam("derivative order must be nonnegative");
  check_range(f, s);
  if (order == 0) return f(s);
  const int npts = order + 2;
  const int i0 = stencil_start(f, s, npts);
  const auto w = fornberg_weights(s, f.nodes.data() + i0, npts, order);
  double d = 0.0;
  for (int j = 0; j < npts; ++j) d += w[j] * f.values[i0 + j];
  return d;
}

Estimate rl_derivative_estimate(const SampledFunction& f, FracOrder order, double y) {
  if (!(order.nu > 0.0)) throw InvalidParam("rl_derivative: order must be positive");
  check_range(f, y);
  const int n = order.n;
  const double q = order.nu - n;
  auto J = [&](int i) { return q == 0.0 ? f.values[i] : rl_integral(f, q, f.nodes[i]); };
  auto apply = [&](int npts) {
    const int i0 = stencil_start(f, y, npts);
    const auto w = fornberg_weights(y, f.nodes.data() + i0, npts, n);
    double d = 0.0;
    for (int j = 0; j < npts; ++j) d += w[j] * J(i0 + j);
    return d;
  };
  Estimate e;
  e.value = apply(n + 2);
  e.error = std::abs(e.value - apply(n + 3));
  return e;
}

double rl_derivative(const SampledFunction& f, FracOrder order, double y, double warn_tol) {
  const Estimate e = rl_derivative_estimate(f, order, y);
  if (e.error > warn_tol) {
    std::ostringstream os;
    os << "rl_derivative: estimated error " << e.error << " exceeds " << warn_tol
       << "; refine the grid";
    throw AccuracyWarning(os.str());
  }
  return e.value;
}

double rl(const SampledFunction& f, double nu, double y) {
  if (nu <= 0.0) return rl_integral(f, nu, y);
  return rl_derivative_estimate(f, FracOrder(nu), y).value;
}

SampledFunction rl_on_grid(const SampledFunction& f, double nu) {
  SampledFunction g;
  g.nodes = f.nodes;
  g.values.resize(f.size());
  if (f.left_exponent != 0.0) g.left_exponent = f.left_exponent - nu;
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (f.right_exponent != 0.0 && i == f.size() - 1) {
      g.values[i] = std::numeric_limits<double>::infinity();
      g.right_exponent = f.right_exponent;
      continue;
    }
    g.values[i] = rl(f, nu, f.nodes[i]);
  }
  if (g.left_exponent != 0.0) {
    g.values[0] = std::numeric_limits<double>::quiet_NaN();
  } else if (nu < 0.0) {
    g.values[0] = 0.0;
  } else if (nu == 0.0) {
    g.values[0] = f.values[0];
  } else {
    const double x0 = g.nodes[0], x1 = g.nodes[1], x2 = g.nodes[2];
    g.values[0] = g.values[1] - (g.values[2] - g.values[1]) / (x2 - x1) * (x1 - x0);
  }
  return g;
}

namespace {

double taylor_coefficient(const SampledFunction& f, int k) {
  if (static_cast<int>(f.derivs_at_a.size()) > k) return f.derivs_at_a[k];
  if (f.left_exponent != 0.0) throw MissingData("Taylor data at a unavailable: singular end");
  if (k == 0) return f.values[0];
  if (static_cast<int>(f.size()) < k + 3) throw MissingData("too few nodes to estimate f^(k)(a)");
  const auto w = fornberg_weights(f.a(), f.nodes.data(), k + 3, k);
  double d = 0.0;
  for (int j = 0; j < k + 3; ++j) d += w[j] * f.values[j];
  return d;
}

}  // namespace

double caputo_derivative(const SampledFunction& f, FracOrder order, double y) {
  if (!(order.nu > 0.0)) throw InvalidParam("caputo_derivative: order must be positive");
  const int n = order.n;
  std::vector<double> c(n);
  double fact = 1.0;
  for (int k = 0; k < n; ++k) {
    if (k > 0) fact *= k;
    c[k] = taylor_coefficient(f, k) / fact;
  }
  SampledFunction g;
  g.nodes = f.nodes;
  g.values.resize(f.size());
  g.right_exponent = f.right_exponent;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double t = f.nodes[i] - f.a();
    double head = 0.0, tp = 1.0;
    for (int k = 0; k < n; ++k, tp *= t) head += c[k] * tp;
    g.values[i] = f.values[i] - head;
  }
  return rl_derivative_estimate(g, order, y).value;
}

namespace {
constexpr int kPanelPoints = 16;
constexpr int kEndPoints = 20;
}  // namespace

double s_operator_offset(double delta, const SampledFunction& g, double d) {
  if (!(d > 0.0)) throw DomainError("s_operator: need xi < s");
  const double s = g.a(), L = g.b() - g.a();
  const double scale = std::pow(d, -delta);
  const std::size_t N = g.size();

  // Breakpoints in rho = tau - s: the nodes of g plus d 2^j.
  std::vector<double> br(N);
  for (std::size_t i = 0; i < N; ++i) br[i] = g.nodes[i] - s;
  br.front() = 0.0;
  br.back() = L;
  for (double p = d; p < L; p *= 2.0) br.push_back(p);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end(),
                       [](double u, double v) { return v - u <= 1e-13 * v; }),
           br.end());
  if (br.back() != L) br.back() = L;

  const double lamL = g.left_exponent, lamR = g.right_exponent;
  const double CL = lamL != 0.0 ? g.values[1] / std::pow(g.nodes[1] - g.nodes[0], lamL) : 0.0;
  const double CR = lamR != 0.0 ? g.values[N - 2] / std::pow(g.nodes[N - 1] - g.nodes[N - 2], lamR) : 0.0;
  const double first_cell = g.nodes[1] - s;
  auto gval = [&](double rho) {
    if (lamL != 0.0 && rho < first_cell) return CL * std::pow(rho, lamL);
    return g(s + rho);
  };

  double total = 0.0;
  const std::size_t P = br.size() - 1;
  for (std::size_t k = 0; k < P; ++k) {
    const double l = br[k], r = br[k + 1], h = r - l;
    const bool first = k == 0, last = k + 1 == P;
    const double wa = last ? lamR : 0.0;           // exponent at r
    const double wb = first ? delta + lamL : 0.0;  // exponent at l
    if (wa == 0.0 && wb == 0.0) {
      total += quad::gauss(
          [&](double rho) { return gval(rho) * std::pow(rho, delta) / (rho + d); }, l, r, kPanelPoints);
      continue;
    }
    const auto& rule = jacobi_rule(kEndPoints, wa, wb);
    double acc = 0.0;
    for (std::size_t j = 0; j < rule.x.size(); ++j) {
      const double rho = l + 0.5 * h * (1.0 + rule.x[j]);
      double gv;
      if (first && lamL != 0.0) gv = CL;
      else if (last && lamR != 0.0) gv = CR;
      else gv = gval(rho);
      // Weight (r - rho)^wa (rho - l)^wb is carried by the rule; restore the rest.
      double rest = gv / (rho + d);
      if (!first) rest *= std::pow(rho, delta);
      acc += rule.w[j] * rest;
    }
    total += acc * std::pow(0.5 * h, 1.0 + wa + wb);
  }
  return total * scale / M_PI;
}

double s_operator(double delta, double s, double y, const SampledFunction& g, double xi) {
  if (!(s < y)) throw DomainError("s_operator: need s < y");
  if (xi >= s && xi <= y) throw DomainError("s_operator: xi must lie outside [s, y]");
  if (xi > y) throw DomainError("s_operator: need xi < s");
  const double tol = 1e-12 * (y - s);
  if (std::abs(g.a() - s) > tol || std::abs(g.b() - y) > tol)
    throw GridError("s_operator: g must be sampled on [s, y]");
  return s_operator_offset(delta, g, s - xi);
}

double check_newton_leibniz(const SampledFunction& f, double delta, double nu, double y) {
  if (!(nu > 0.0)) throw InvalidParam("check_newton_leibniz: nu must be positive");
  check_range(f, y);
  const int n = FracOrder(nu).n;
  // D^0 is the identity; avoid re-interpolating the inner derivative.
  const double lhs = delta == 0.0 ? rl(f, nu, y) : rl(rl_on_grid(f, nu), delta, y);
  double rhs = rl(f, delta + nu, y);
  for (int k = 1; k <= n; ++k) {
    const double coef = specfun::rgamma(1.0 - delta - k);
    if (coef == 0.0) continue;
    double lim;
    const double ord = nu - k;
    if (ord == 0.0) {
      lim = f.derivs_at_a.empty() ? f.values[0] : f.derivs_at_a[0];
    } else {
      const double x0 = f.a(), x1 = f.nodes[1], x2 = f.nodes[2];
      const double v1 = rl(f, ord, x1), v2 = rl(f, ord, x2);
      lim = v1 - (v2 - v1) / (x2 - x1) * (x1 - x0);
    }
    rhs -= std::pow(y - f.a(), -delta - k) * coef * lim;
  }
  return std::abs(lhs - rhs);
}

}  // namespace fracgreen::fraccalc
