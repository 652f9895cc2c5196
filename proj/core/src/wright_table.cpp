#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "fracgreen/errors.hpp"
#include "fracgreen/quadrature.hpp"
#include "fracgreen/specfun.hpp"
#include "wide.hpp"

namespace fracgreen::specfun {

namespace {
constexpr int kMaxPanels = 600;
constexpr double kGuard = 1e-18;  // allowed rounding relative to the peak
}  // namespace

WrightTable::WrightTable(double beta, double mu) : beta_(beta), mu_(mu) {
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidParam("WrightTable: beta must lie in (0, 1)");
  const wide::WrightCoeffs co(-beta, mu, kWrightMaxTerms);
  const int n = kDegree + 1;
  std::vector<double> vals(n);
  std::vector<double> all;
  std::vector<double> panel_max;
  int panels = 0;
  for (int p = 0; p < kMaxPanels; ++p) {
    const auto z = quad::PiecewiseChebyshev::nodes(p * kPanelWidth, kPanelWidth, 1, kDegree);
    double vmax = 0.0, emax = 0.0;
    for (int j = 0; j < n; ++j) {
      const auto s = wide::sum_series(co, -static_cast<wide::W>(z[j]));
      vals[j] = static_cast<double>(s.value);
      const double err = s.converged
                             ? static_cast<double>(s.max_env) * wide::kEps * std::sqrt(s.terms)
                             : INFINITY;
      vmax = std::max(vmax, std::abs(vals[j]));
      emax = std::max(emax, err);
    }
    const double peak = std::max(peak_, vmax);
    if (p > 0 && emax > kGuard * peak) {
      guard_limited_ = true;
      break;
    }
    peak_ = peak;
    all.insert(all.end(), vals.begin(), vals.end());
    panel_max.push_back(vmax);
    ++panels;
    if (p > 0 && vmax < kFloor * peak_) break;
  }
  if (panels == kMaxPanels) guard_limited_ = true;
  z_cap_ = panels * kPanelWidth;
  coef_.resize(static_cast<std::size_t>(panels) * n);
  for (int p = 0; p < panels; ++p) {
    std::vector<double> v(all.begin() + static_cast<std::ptrdiff_t>(p) * n,
                          all.begin() + static_cast<std::ptrdiff_t>(p + 1) * n);
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += v[j] * std::cos(M_PI * k * (j + 0.5) / n);
      coef_[static_cast<std::size_t>(p) * n + k] = s * (k == 0 ? 1.0 : 2.0) / n;
    }
  }
  suffix_max_.assign(panels + 1, 0.0);
  suffix_max_[panels] = 0.0;
  for (int p = panels - 1; p >= 0; --p)
    suffix_max_[p] = std::max(suffix_max_[p + 1], 1.25 * panel_max[p]);
  // The discarded tail is bounded by the value at the cap since phi decays there.
  if (panels > 0) {
    const double at_cap = std::abs((*this)(std::nextafter(z_cap_, 0.0)));
    suffix_max_[panels] = 1.25 * at_cap;
    const double before = std::abs((*this)(std::max(0.0, z_cap_ - kPanelWidth)));
    double len = kPanelWidth;
    if (before > at_cap && at_cap > 0.0) len = std::min(len, kPanelWidth / std::log(before / at_cap));
    tail_integral_ = 2.0 * at_cap * len;
  }
}

double WrightTable::operator()(double z) const {
  if (z >= z_cap_) return 0.0;
  if (z < 0.0) throw DomainError("WrightTable: negative argument");
  const double u = z / kPanelWidth;
  const int p = std::min(static_cast<int>(u), static_cast<int>(suffix_max_.size()) - 2);
  const double t = 2.0 * (u - p) - 1.0;
  const double* c = coef_.data() + static_cast<std::size_t>(p) * (kDegree + 1);
  double b1 = 0.0, b2 = 0.0;
  for (int k = kDegree; k >= 1; --k) {
    const double b0 = 2.0 * t * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + c[0];
}

double WrightTable::bound(double z) const {
  const int last = static_cast<int>(suffix_max_.size()) - 1;
  if (z >= z_cap_) return suffix_max_[last];
  const int p = std::clamp(static_cast<int>(z / kPanelWidth), 0, last);
  return suffix_max_[p];
}

std::shared_ptr<const WrightTable> WrightTable::get(double beta, double mu) {
  static std::mutex mu_lock;
  static std::map<std::pair<long long, long long>, std::shared_ptr<const WrightTable>> cache;
  const auto key = std::make_pair(std::llround(beta * 1e12), std::llround(mu * 1e12));
  std::lock_guard<std::mutex> lock(mu_lock);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto t = std::make_shared<const WrightTable>(beta, mu);
  cache.emplace(key, t);
  return t;
}

}  // namespace fracgreen::specfun
