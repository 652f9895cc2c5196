#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "fracgreen/errors.hpp"
#include "fracgreen/fraccalc.hpp"
#include "fracgreen/greenfn.hpp"
#include "prop.hpp"

using namespace fracgreen;
using namespace fracgreen::greenfn;

namespace {

ProblemParams params(double alpha, double b, double c, double a1 = 0.0, double a2 = 1.0) {
  ProblemParams p;
  p.alpha = alpha;
  p.b = b;
  p.c = c;
  p.a1 = a1;
  p.a2 = a2;
  return p;
}

std::shared_ptr<const GammaKernel> kernel(double alpha, double b, double c) {
  return std::make_shared<GammaKernel>(params(alpha, b, c));
}

}  // namespace

TEST(GammaKernel, HeatKernelAtOrigin) {
  const auto K = kernel(1.0, 0.0, 0.0);
  EXPECT_NEAR(gamma_eval(0.0, 1.0, 0.0, 0, *K), 0.5 / std::sqrt(M_PI), 1e-10);
}

TEST(GammaKernel, HeatKernelGrid) {
  const auto K = kernel(1.0, 0.0, 0.0);
  for (double y : {0.05, 0.3, 1.0, 2.0})
    for (double x : {0.0, 0.2, 0.7, 1.5}) {
      const double ref = std::exp(-x * x / (4 * y)) / std::sqrt(4 * M_PI * y);
      EXPECT_NEAR(gamma_eval(x, y, 0.0, 0, *K), ref, 1e-9 * std::max(ref, 1e-3)) << x << ' ' << y;
    }
}

TEST(GammaKernel, HeatOperatorResidual) {
  const auto K = kernel(1.0, 0.0, 0.0);
  EXPECT_LT(residual_L_gamma(0.4, 0.3, *K), 1e-8);
}

TEST(GammaKernel, OriginValueWithoutLowerOrderTerms) {
  // With b = c = 0, D^nu Gamma(0, y) = y^{beta - 1 - nu} / (2 Gamma(beta - nu)).
  for (double alpha : {0.5, 0.8, 1.3}) {
    const auto K = kernel(alpha, 0.0, 0.0);
    const double beta = alpha / 2;
    for (double nu : {0.0, -0.5, alpha - 1.0})
      for (double y : {0.1, 0.7}) {
        const double ref = std::pow(y, beta - 1 - nu) / (2 * std::tgamma(beta - nu));
        EXPECT_NEAR(gamma_eval(0.0, y, nu, 0, *K) / ref, 1.0, 1e-8) << alpha << ' ' << nu << ' ' << y;
      }
  }
}

TEST(GammaKernel, SmallTimeScaling) {
  // r(y) = y^{1 - beta} Gamma(0, y) = C + D y^beta + ..., with C = 1 / (2 Gamma(beta)).
  const double beta = 0.4, q = std::pow(0.5, beta);
  const auto K = kernel(0.8, 1.0, 0.5);
  auto r = [&](double y) { return gamma_eval(0.0, y, 0.0, 0, *K) * std::pow(y, 1.0 - beta); };
  std::vector<double> C;
  for (int j = 8; j <= 12; ++j) {
    const double y = std::ldexp(1.0, -j);
    C.push_back((r(y / 2) - q * r(y)) / (1.0 - q));
  }
  for (std::size_t i = 1; i < C.size(); ++i) EXPECT_LT(std::abs(C[i] - C[i - 1]), 2e-3);
  EXPECT_NEAR(C.back(), 1.0 / (2 * std::tgamma(beta)), 2e-3);
}

TEST(GammaKernel, RejectsBadArguments) {
  const auto K = kernel(0.8, 1.0, 1.0);
  EXPECT_THROW(gamma_eval(0.3, 0.0, 0.0, 0, *K), DomainError);
  EXPECT_THROW(gamma_eval(0.3, -1.0, 0.0, 0, *K), DomainError);
  EXPECT_THROW(gamma_eval(0.0, 1.0, 0.0, 1, *K), DomainError);
  EXPECT_THROW(residual_L_gamma(0.0, 0.5, *K), DomainError);
}

TEST(GammaKernel, LargeBetaExceedsTabulation) {
  const auto K = kernel(1.8, 0.0, 0.0);
  EXPECT_THROW(gamma_eval(0.3, 0.5, 0.0, 0, *K), TruncationFailure);
}

TEST(GammaKernel, StableUnderTighterTolerance) {
  const auto p = params(0.8, 1.0, 0.5);
  const GammaKernel K12(p, 1e-12), K13(p, 1e-13);
  const double v = gamma_eval(0.5, 0.2, 0.0, 0, K12);
  EXPECT_GT(v, 0.0);
  EXPECT_NEAR(v, gamma_eval(0.5, 0.2, 0.0, 0, K13), 1e-11);
}

TEST(GammaKernel, AnnihilationExamples) {
  EXPECT_LT(residual_L_gamma(0.5, 0.5, *kernel(0.8, 1.0, 1.0)), 1e-4);
  EXPECT_LT(residual_L_gamma(1.0, 0.25, *kernel(1.4, 0.5, 0.0)), 1e-4);
}

TEST(GammaKernel, ByPartsRouteMatchesDirect) {
  for (auto [alpha, b, c] : {std::tuple{0.8, 1.0, 1.0}, std::tuple{1.4, 0.5, 0.0}}) {
    const auto K = kernel(alpha, b, c);
    for (double nu : {alpha, alpha / 2, alpha - 1.0})
      for (int m : {0, 1})
        for (auto [x, y] : {std::pair{0.3, 0.4}, std::pair{-0.8, 0.9}}) {
          const double a = K->eval(x, y, nu, m, Route::ByParts);
          const double d = K->eval(x, y, nu, m, Route::Direct);
          // The direct route is the weaker one at nu = alpha > 1 (about 3e-7).
          EXPECT_NEAR(a, d, 1e-6 * std::max(1.0, std::abs(a)))
              << "alpha " << alpha << " nu " << nu << " m " << m << " x " << x;
        }
  }
}

TEST(GammaKernel, IndependentResidual) {
  // D^alpha and D^beta taken by product integration of sampled Gamma(x, .),
  // Gamma_xx by central differences; nothing shared with residual_L_gamma.
  for (auto [alpha, b, c] : {std::tuple{0.8, 1.0, 1.0}, std::tuple{1.4, 0.5, 0.0}}) {
    const auto K = kernel(alpha, b, c);
    const double x = 0.5, y = 0.5, hx = 1e-3;
    const auto col = fraccalc::SampledFunction::sample(
        [&](double s) { return s == 0.0 ? 0.0 : gamma_eval(x, s, 0.0, 0, *K); }, 0.0, y, 4096, 2.0);
    const double g = gamma_eval(x, y, 0.0, 0, *K);
    const double gxx = (gamma_eval(x + hx, y, 0.0, 0, *K) - 2 * g + gamma_eval(x - hx, y, 0.0, 0, *K)) / (hx * hx);
    const double r = fraccalc::rl(col, alpha, y) + b * fraccalc::rl(col, alpha / 2, y) - gxx + c * g;
    EXPECT_LT(std::abs(r), 1e-3) << "alpha " << alpha;
  }
}

TEST(GammaProperty, Evenness) {
  const auto K = kernel(0.8, 1.0, 1.0);
  fgtest::for_all(40, 31, [&](std::mt19937& rng) {
    const double x = fgtest::uniform(rng, 0.01, 2.0), y = fgtest::uniform(rng, 0.05, 1.5);
    const double nu = fgtest::uniform(rng, -1.0, 0.8);
    for (int m : {0, 1}) {
      const double sgn = m == 0 ? 1.0 : -1.0;
      EXPECT_EQ(gamma_eval(x, y, nu, m, *K), sgn * gamma_eval(-x, y, nu, m, *K));
    }
  });
}

TEST(GreenFunction, BoundaryVanishes) {
  const auto G = std::make_shared<GreenFunction>(kernel(0.8, 1.0, 1.0), 0.0, 1.0);
  fgtest::for_all(40, 32, [&](std::mt19937& rng) {
    const double x = fgtest::uniform(rng, 0.0, 1.0), y = fgtest::uniform(rng, 0.05, 2.0);
    const double eta = fgtest::uniform(rng, 0.0, 0.9 * y);
    const double nu = fgtest::uniform(rng, -1.0, 0.8);
    EXPECT_LE(std::abs(green_eval(x, y, 0.0, eta, nu, 0, *G)), 1e-12);
    EXPECT_LE(std::abs(green_eval(x, y, 1.0, eta, nu, 0, *G)), 1e-12);
  });
}

TEST(GreenFunction, Translation) {
  const auto G = std::make_shared<GreenFunction>(kernel(1.4, 0.5, 0.0), -0.5, 1.5);
  fgtest::for_all(40, 33, [&](std::mt19937& rng) {
    const double x = fgtest::uniform(rng, -0.5, 1.5), xi = fgtest::uniform(rng, -0.5, 1.5);
    const double eta = fgtest::uniform(rng, 0.0, 1.0), y = eta + fgtest::uniform(rng, 0.05, 1.0);
    const double nu = fgtest::uniform(rng, -0.7, 0.7);
    EXPECT_EQ(green_eval(x, y, xi, eta, nu, 0, *G), green_eval(x, y - eta, xi, 0.0, nu, 0, *G));
  });
}

TEST(GreenFunction, WideDomainIsSingleTerm) {
  const auto K = kernel(0.8, 1.0, 1.0);
  const GreenFunction G(K, 0.0, 20.0);
  for (auto [x, xi, y] : {std::tuple{10.0, 10.3, 0.5}, std::tuple{9.0, 10.0, 0.2}, std::tuple{10.0, 10.0, 1.0}})
    EXPECT_NEAR(green_eval(x, y, xi, 0.0, 0.0, 0, G), gamma_eval(x - xi, y, 0.0, 0, *K), 1e-8);
}

TEST(GreenFunction, ImageTailStable) {
  const auto K = kernel(0.8, 1.0, 1.0);
  const GreenFunction G(K, 0.0, 0.5, 1e-14), G2(K, 0.0, 0.5, 1e-14, 2 * G.m_max());
  for (double y : {0.3, 1.0, 3.0})
    EXPECT_LT(std::abs(G.eval(0.1, y, 0.4, 0.0, 0.0, 0) - G2.eval(0.1, y, 0.4, 0.0, 0.0, 0)), 2e-14);
}

TEST(GreenFunction, ImageCapRaisesNonConverged) {
  const GreenFunction G(kernel(1.0, 0.0, 0.0), 0.0, 0.05, 1e-14, 1);
  EXPECT_THROW(G.eval(0.01, 2.0, 0.02, 0.0, 0.0, 0), NonConverged);
}

TEST(GreenFunction, RejectsOutsidePoints) {
  const GreenFunction G(kernel(0.8, 1.0, 1.0), 0.0, 1.0);
  EXPECT_THROW(G.eval(1.5, 0.5, 0.5, 0.0, 0.0, 0), DomainError);
  EXPECT_THROW(G.eval(0.5, 0.5, 0.5, 0.6, 0.0, 0), DomainError);
}

TEST(GreenFunction, AdjointAnnihilation) {
  // (D^alpha_{y eta} + b D^beta_{y eta} - d^2/dxi^2 + c) G(x, y; xi, eta) in the source variables.
  const double alpha = 0.8, b = 1.0, c = 1.0;
  const auto G = std::make_shared<GreenFunction>(kernel(alpha, b, c), 0.0, 1.0);
  const double x = 0.3, y = 0.6, h = 1e-3;
  for (auto [xi, eta] : {std::pair{0.6, 0.1}, std::pair{0.5, 0.3}, std::pair{0.1, 0.0}}) {
    // Right-sided in eta on (eta, y) equals left-sided in s = y - eta.
    const double s_end = y - eta;
    const auto col = fraccalc::SampledFunction::sample(
        [&](double s) { return s == 0.0 ? 0.0 : green_eval(x, s, xi, 0.0, 0.0, 0, *G); }, 0.0, s_end,
        4096, 2.0);
    const double g = green_eval(x, y, xi, eta, 0.0, 0, *G);
    const double gxx = (green_eval(x, y, xi + h, eta, 0.0, 0, *G) - 2 * g +
                        green_eval(x, y, xi - h, eta, 0.0, 0, *G)) / (h * h);
    const double r = fraccalc::rl(col, alpha, s_end) + b * fraccalc::rl(col, alpha / 2, s_end) - gxx + c * g;
    EXPECT_LT(std::abs(r), 1e-3) << "xi " << xi << " eta " << eta;
  }
}

TEST(Limits, DeltaSequenceAgainstSeries) {
  // For q = 1 on a wide interval the value is sum_k (-1)^k sum_j C(k, j) b^j c^{k-j}
  // h^{j beta + (k-j) alpha} / Gamma(1 + j beta + (k-j) alpha), tabulated to 6 digits.
  const auto K = kernel(0.8, 1.0, 1.0);
  const double hs[4] = {0.1, 0.05, 0.025, 0.0125};
  const double ref[4] = {0.592017, 0.679292, 0.751274, 0.808796};
  for (int j = 0; j < 4; ++j)
    EXPECT_NEAR(delta_limit_check([](double) { return 1.0; }, 0.5, hs[j], *K, -4.5, 5.5), ref[j], 2e-6)
        << "h " << hs[j];
}

TEST(Limits, DeltaSequenceOfZero) {
  const auto K = kernel(0.8, 1.0, 1.0);
  EXPECT_EQ(delta_limit_check([](double) { return 0.0; }, 0.5, 0.1, *K, 0.0, 1.0), 0.0);
}

TEST(Limits, JumpOfZero) {
  const auto K = kernel(0.8, 1.0, 1.0);
  EXPECT_EQ(jump_check([](double) { return 0.0; }, 0.5, 1, 0.01, 1.0, 0.0, *K), 0.0);
}

TEST(Limits, JumpSides) {
  const auto K = kernel(1.4, 0.5, 0.0);
  const double a = jump_check([](double) { return 1.0; }, 0.5, 1, 1e-3, 1.0, 0.0, *K);
  const double b = jump_check([](double) { return 1.0; }, 0.5, -1, 1e-3, 1.0, 0.0, *K);
  EXPECT_NEAR(a, -b, 1e-12);
  EXPECT_NEAR(a, -0.5, 2e-2);
}
