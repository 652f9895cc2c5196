#include "fracgreen/quadrature.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace fracgreen::quad {

namespace detail {
const double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
const double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
}  // namespace detail

namespace {

Rule build_legendre(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

// Implicit QL on a symmetric tridiagonal matrix; z tracks the first row of
// the eigenvector matrix.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-17 * dd) break;
      }
      if (m != l) {
        if (++iter > 60) throw std::runtime_error("gauss_jacobi: QL did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          f = z[i + 1];
          z[i + 1] = s * z[i] + c * f;
          z[i] = c * z[i] - s * f;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 1 || n > 256) throw std::invalid_argument("gauss_legendre: n out of range");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Rule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Rule>(build_legendre(n));
  return *slot;
}

Rule gauss_jacobi(int n, double a, double b) {
  if (n < 1 || a <= -1.0 || b <= -1.0)
    throw std::invalid_argument("gauss_jacobi: need n >= 1 and a, b > -1");
  std::vector<double> d(n), e(n, 0.0), z(n, 0.0);
  const double ab = a + b;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * k + ab;
    d[k] = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (t * (t + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double t = 2.0 * k + ab;
    double beta;
    if (k == 1)
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    else
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
    e[k - 1] = std::sqrt(beta);
  }
  z[0] = 1.0;
  tridiagonal_ql(d, e, z);
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return d[i] < d[j]; });
  Rule r;
  for (int i : idx) {
    r.x.push_back(d[i]);
    r.w.push_back(mu0 * z[i] * z[i]);
  }
  return r;
}

std::vector<double> PiecewiseChebyshev::nodes(double lo, double width, int panels, int degree) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(panels) * (degree + 1));
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * width, h = 0.5 * width;
    for (int j = 0; j <= degree; ++j)
      out.push_back(c + h * std::cos(M_PI * (j + 0.5) / (degree + 1)));
  }
  return out;
}

PiecewiseChebyshev PiecewiseChebyshev::from_values(const std::vector<double>& values, double lo,
                                                   double width, int panels, int degree) {
  PiecewiseChebyshev pc;
  pc.lo_ = lo;
  pc.width_ = width;
  pc.panels_ = panels;
  pc.deg_ = degree;
  pc.coef_.assign(static_cast<std::size_t>(panels) * (degree + 1), 0.0);
  std::vector<double> vals(degree + 1);
  for (int p = 0; p < panels; ++p) {
    std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(p) * (degree + 1), degree + 1,
                vals.begin());
    pc.fit_panel(p, vals);
  }
  return pc;
}

void PiecewiseChebyshev::fit_panel(int p, const std::vector<double>& vals) {
  const int n = deg_ + 1;
  double* c = coef_.data() + static_cast<std::size_t>(p) * n;
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += vals[j] * std::cos(M_PI * k * (j + 0.5) / n);
    c[k] = s * 2.0 / n;
  }
  c[0] *= 0.5;
}

double PiecewiseChebyshev::operator()(double z) const {
  if (panels_ == 0) return 0.0;
  double u = (z - lo_) / width_;
  int p = static_cast<int>(std::floor(u));
  p = std::clamp(p, 0, panels_ - 1);
  const double t = 2.0 * (u - p) - 1.0;
  const double* c = coef_.data() + static_cast<std::size_t>(p) * (deg_ + 1);
  double b1 = 0.0, b2 = 0.0;
  for (int k = deg_; k >= 1; --k) {
    const double b0 = 2.0 * t * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + c[0];
}

}  // namespace fracgreen::quad
