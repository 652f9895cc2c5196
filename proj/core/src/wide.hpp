#pragma once

// Wide working type for the alternating Wright series.

#if defined(FRACGREEN_HAVE_QUADMATH)
#include <quadmath.h>

namespace fracgreen::wide {
using W = __float128;
inline constexpr double kEps = 1.92592994438723585305597794258492732e-34;
inline W lgam(W x) { return lgammaq(x); }
inline W exp(W x) { return expq(x); }
inline W log(W x) { return logq(x); }
inline W sin(W x) { return sinq(x); }
inline W floor(W x) { return floorq(x); }
inline W abs(W x) { return fabsq(x); }
inline const W kPi = M_PIq;
}  // namespace fracgreen::wide

#else
#include <cmath>

namespace fracgreen::wide {
using W = long double;
inline constexpr double kEps = 1.0842021724855044340e-19;
inline W lgam(W x) { return std::lgamma(x); }
inline W exp(W x) { return std::exp(x); }
inline W log(W x) { return std::log(x); }
inline W sin(W x) { return std::sin(x); }
inline W floor(W x) { return std::floor(x); }
inline W abs(W x) { return std::fabs(x); }
inline const W kPi = 3.141592653589793238462643383279502884L;
}  // namespace fracgreen::wide
#endif

#include <vector>

namespace fracgreen::wide {

/// c_k = 1/(k! Gamma(delta k + mu)) and an envelope |c_k| <= env_k that ignores
/// the oscillating reflection factor.
/// Coefficients 1/(k! Gamma(delta k + mu)) and their magnitude envelopes,
/// generated on first use up to kmax.
class WrightCoeffs {
 public:
  WrightCoeffs(double delta, double mu, int kmax) : delta_(delta), mu_(mu), kmax_(kmax) {
    c_.reserve(kmax);
    env_.reserve(kmax);
  }

  int kmax() const { return kmax_; }
  W c(int k) const {
    extend(k);
    return c_[k];
  }
  W env(int k) const {
    extend(k);
    return env_[k];
  }

 private:
  void extend(int k) const {
    while (static_cast<int>(c_.size()) <= k) {
      const int j = static_cast<int>(c_.size());
      if (j > 0) lfact_ += log(static_cast<W>(j));
      const W x = static_cast<W>(delta_) * j + static_cast<W>(mu_);
      W cj = 0, ej;
      if (x >= 1) {
        cj = exp(-lgam(x) - lfact_);
        ej = cj;
      } else {
        // |1/Gamma(x)| <= Gamma(1 - x) / pi for x < 1
        ej = exp(lgam(1 - x) - log(kPi) - lfact_);
        if (x > 0) {
          cj = exp(-lgam(x) - lfact_);
        } else if (x != floor(x)) {
          const W r = x - 2 * floor(x / 2);  // x mod 2 in [0, 2)
          cj = sin(kPi * r) * ej;
        }
      }
      c_.push_back(cj);
      env_.push_back(ej);
    }
  }

  double delta_, mu_;
  int kmax_;
  mutable std::vector<W> c_, env_;
  mutable W lfact_ = 0;
};

struct SeriesSum {
  W value;
  W max_env;
  int terms;
  bool converged;
};

/// Sum c_k z^k with Kahan compensation; stops once the envelope has passed its peak
/// and fallen far below the largest term.
inline SeriesSum sum_series(const WrightCoeffs& co, W z) {
  const int kmax = co.kmax();
  W s = co.c(0), comp = 0;
  W zk = 1;
  const W az = abs(z);
  W azk = 1;
  W max_env = co.env(0);
  W prev_env = co.env(0);
  const W stop = static_cast<W>(kEps) * static_cast<W>(1e-3);
  for (int k = 1; k < kmax; ++k) {
    zk *= z;
    azk *= az;
    const W e = co.env(k) * azk;
    if (e > max_env) max_env = e;
    const W t = co.c(k) * zk - comp;
    const W u = s + t;
    comp = (u - s) - t;
    s = u;
    if (e <= prev_env && e <= stop * max_env) return {s, max_env, k + 1, true};
    prev_env = e;
  }
  return {s, max_env, kmax, false};
}

}  // namespace fracgreen::wide
