#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "fracgreen/errors.hpp"
#include "fracgreen/oracle.hpp"
#include "prop.hpp"

using namespace fracgreen;
using namespace fracgreen::oracle;
using solver::ProblemData;

namespace {

ProblemParams params(double alpha, double b, double c) {
  ProblemParams p;
  p.alpha = alpha;
  p.b = b;
  p.c = c;
  return p;
}

ProblemData manufactured(const ProblemParams& p) {
  auto d = ProblemData::zero(p);
  d.phi1 = d.phi2 = [](double y) { return y * y; };
  const double a = p.alpha, be = p.beta(), b = p.b, c = p.c;
  d.f = [=](double, double y) {
    return 2 * std::pow(y, 2 - a) / std::tgamma(3 - a) + 2 * b * std::pow(y, 2 - be) / std::tgamma(3 - be) +
           c * y * y;
  };
  return d;
}

double max_error_vs_square(const SolutionField& f) {
  double e = 0.0;
  for (std::size_t j = 0; j < f.ny(); ++j)
    for (std::size_t i = 0; i < f.nx(); ++i) e = std::max(e, std::abs(f.at(i, j) - f.y[j] * f.y[j]));
  return e;
}

ProblemData heat_data(const ProblemParams& p) {
  auto d = ProblemData::zero(p);
  d.tau[0] = [](double x) { return std::sin(M_PI * x); };
  return d;
}

}  // namespace

TEST(FDGrid, Validation) {
  EXPECT_THROW((FDGrid{3, 10}).validate(), InvalidParam);
  EXPECT_THROW((FDGrid{10, 3}).validate(), InvalidParam);
  EXPECT_NO_THROW((FDGrid{4, 4}).validate());
  const auto p = params(0.8, 0, 0);
  EXPECT_THROW(fd_solve(ProblemData::zero(p), {2, 8}), InvalidParam);
}

TEST(FDSolve, ZeroData) {
  for (double a : {0.6, 1.0, 1.5}) {
    const auto f = fd_solve(ProblemData::zero(params(a, 1.0, 1.0)), {8, 8});
    for (double v : f.values) EXPECT_EQ(v, 0.0);
  }
}

TEST(FDSolve, ReproducesConstants) {
  for (auto [a, b, c] : {std::tuple{0.8, 1.0, 1.0}, std::tuple{1.4, 0.5, 1.0}, std::tuple{1.0, 0.0, 0.0},
                         std::tuple{0.3, 2.0, 0.0}}) {
    const auto p = params(a, b, c);
    auto d = ProblemData::zero(p);
    d.tau[0] = [](double) { return 1.0; };
    d.phi1 = d.phi2 = [](double) { return 1.0; };
    d.f = [c = c](double, double) { return c; };
    const auto f = fd_solve(d, {16, 20});
    for (double v : f.values) EXPECT_NEAR(v, 1.0, 1e-12) << "alpha " << a;
  }
}

TEST(FDSolve, InteriorNodesMatchSolverGrid) {
  const auto p = params(0.8, 1.0, 1.0);
  const auto f = fd_solve(ProblemData::zero(p), {8, 6});
  const auto xs = solver::grid_x(p, 7), ys = solver::grid_y(p, 6);
  ASSERT_EQ(f.x.size(), xs.size());
  ASSERT_EQ(f.y.size(), ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(f.x[i], xs[i], 1e-15);
  for (std::size_t j = 0; j < ys.size(); ++j) EXPECT_NEAR(f.y[j], ys[j], 1e-15);
  EXPECT_EQ(f.meta.at("method"), "fd");
}

TEST(FDSolve, CoarseStepWarning) {
  const auto p = params(0.2, 0.0, 0.0);
  EXPECT_EQ(fd_solve(ProblemData::zero(p), {4, 4}).meta.count("warning"), 1u);
  EXPECT_EQ(fd_solve(ProblemData::zero(params(1.0, 0, 0)), {4, 64}).meta.count("warning"), 0u);
}

TEST(FDSolve, InterpolateIsExactOnBilinear) {
  const auto p = params(0.8, 0.0, 0.0);
  auto full = fd_solve_full(ProblemData::zero(p), {8, 8});
  for (std::size_t j = 0; j < full.ny(); ++j)
    for (std::size_t i = 0; i < full.nx(); ++i)
      full.at(i, j) = 1.0 + 2.0 * full.x[i] - full.y[j] + 0.5 * full.x[i] * full.y[j];
  for (auto [x, y] : {std::pair{0.33, 0.71}, std::pair{0.0, 0.0}, std::pair{1.0, 1.0}, std::pair{0.5, 0.05}})
    EXPECT_NEAR(interpolate(full, x, y), 1.0 + 2.0 * x - y + 0.5 * x * y, 1e-14);
}

TEST(FDSolve, HeatClosedForm) {
  const auto p = params(1.0, 0.0, 0.0);
  const auto f = fd_solve(heat_data(p), {64, 256});
  double worst = 0.0;
  for (std::size_t j = 0; j < f.ny(); ++j)
    for (std::size_t i = 0; i < f.nx(); ++i)
      worst = std::max(worst, std::abs(f.at(i, j) - std::exp(-M_PI * M_PI * f.y[j]) * std::sin(M_PI * f.x[i])));
  EXPECT_LE(worst, 1e-2);
}

TEST(FDSolve, ManufacturedConvergenceOrder) {
  // Temporal order min(2 - a or 3 - a, 2 - beta) for the L1 / second-difference pair;
  // u = y^2 has no spatial error.
  for (auto [a, b, c] : {std::tuple{0.8, 1.0, 1.0}, std::tuple{1.4, 0.5, 1.0}, std::tuple{0.4, 2.0, 3.0}}) {
    const auto p = params(a, b, c);
    const double main = a <= 1.0 ? 2.0 - a : 3.0 - a;
    const double theory = b != 0.0 ? std::min(main, 2.0 - p.beta()) : main;
    const auto d = manufactured(p);
    std::vector<double> err;
    for (int Ny : {32, 64, 128}) err.push_back(max_error_vs_square(fd_solve(d, {8, Ny})));
    EXPECT_LT(err[1], err[0]);
    EXPECT_LT(err[2], err[1]);
    const double order = std::log2(err[1] / err[2]);
    EXPECT_NEAR(order, theory, 0.3 * theory) << "alpha " << a << " errors " << err[0] << ' ' << err[1]
                                              << ' ' << err[2];
  }
}

TEST(FDSolveProperty, MaximumPrinciple) {
  // Only for alpha <= 1: diffusion-wave modes E_alpha(-lambda y^alpha) change sign for alpha > 1.
  fgtest::for_all(12, 51, [](std::mt19937& rng) {
    const double a = fgtest::uniform(rng, 0.2, 1.0);
    const auto p = params(a, fgtest::uniform(rng, 0.0, 2.0), fgtest::uniform(rng, 0.0, 3.0));
    const double q = fgtest::uniform(rng, 0.0, 1.0), r = fgtest::uniform(rng, 0.0, 1.0);
    const double s1 = fgtest::uniform(rng, 0.0, 1.0), s2 = fgtest::uniform(rng, 0.0, 1.0);
    auto d = ProblemData::zero(p);
    d.tau[0] = [=](double x) { return q + (1 - q) * r * std::sin(M_PI * x); };
    d.phi1 = [=](double y) { return q + (s1 - q) * (1 - std::exp(-3 * y)); };
    d.phi2 = [=](double y) { return q + (s2 - q) * (1 - std::exp(-3 * y)); };
    const auto f = fd_solve(d, {fgtest::uniform_int(rng, 4, 24), fgtest::uniform_int(rng, 4, 64)});
    for (double v : f.values) {
      EXPECT_GE(v, -1e-6);
      EXPECT_LE(v, 1.0 + 1e-6);
    }
  });
}

TEST(CrossValidate, ZeroData) {
  const auto p = params(0.8, 1.0, 1.0);
  auto K = std::make_shared<greenfn::GammaKernel>(p);
  auto G = std::make_shared<greenfn::GreenFunction>(K, p.a1, p.a2);
  const auto rep = cross_validate(ProblemData::zero(p), {8, 8}, G, default_probes(p));
  EXPECT_EQ(rep.probes.size(), 9u);
  EXPECT_EQ(rep.max_abs, 0.0);
  EXPECT_EQ(rep.mean_abs, 0.0);
}

TEST(CrossValidate, HeatBothMatchClosedForm) {
  const auto p = params(1.0, 0.0, 0.0);
  auto K = std::make_shared<greenfn::GammaKernel>(p);
  auto G = std::make_shared<greenfn::GreenFunction>(K, p.a1, p.a2);
  const auto rep = cross_validate(heat_data(p), {64, 256}, G, default_probes(p));
  for (std::size_t i = 0; i < rep.probes.size(); ++i) {
    const auto [x, y] = rep.probes[i];
    const double exact = std::exp(-M_PI * M_PI * y) * std::sin(M_PI * x);
    EXPECT_NEAR(rep.green[i], exact, 1e-2);
    EXPECT_NEAR(rep.fd[i], exact, 1e-2);
  }
  EXPECT_LE(rep.max_abs, 1e-2);
}

TEST(CrossValidate, ManufacturedAgreement) {
  const auto p = params(1.4, 0.5, 1.0);
  auto K = std::make_shared<greenfn::GammaKernel>(p);
  auto G = std::make_shared<greenfn::GreenFunction>(K, p.a1, p.a2);
  const auto rep = cross_validate(manufactured(p), {32, 128}, G, default_probes(p));
  EXPECT_EQ(rep.probes.size(), 9u);
  EXPECT_LE(rep.max_abs, 1e-2);
  for (std::size_t i = 0; i < rep.probes.size(); ++i) {
    const double y = rep.probes[i].second;
    EXPECT_NEAR(rep.green[i], y * y, 5e-3);
    EXPECT_NEAR(rep.fd[i], y * y, 1e-2);
    EXPECT_GE(rep.fd_err[i], 0.0);
  }
}
