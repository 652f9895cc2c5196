#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "fracgreen/fraccalc.hpp"
#include "fracgreen/greenfn.hpp"
#include "fracgreen/oracle.hpp"
#include "fracgreen/solver.hpp"
#include "fracgreen/specfun.hpp"

using namespace fracgreen;

namespace {

ProblemParams params(double alpha, double b, double c) {
  ProblemParams p;
  p.alpha = alpha;
  p.b = b;
  p.c = c;
  return p;
}

std::shared_ptr<const greenfn::GreenFunction> green(const ProblemParams& p) {
  auto K = std::make_shared<greenfn::GammaKernel>(p);
  return std::make_shared<greenfn::GreenFunction>(K, p.a1, p.a2);
}

solver::ProblemData mixed(const ProblemParams& p) {
  auto d = solver::ProblemData::zero(p);
  d.tau[0] = [](double x) { return 1.0 + std::sin(M_PI * x); };
  d.phi1 = [](double y) { return 1.0 + y; };
  d.phi2 = [](double) { return 1.0; };
  d.f = [](double x, double y) { return x * y; };
  return d;
}

}  // namespace

static void BM_WrightSeries(benchmark::State& st) {
  const double z = -static_cast<double>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(specfun::wright_phi({-0.4, 0.3, z}));
}
BENCHMARK(BM_WrightSeries)->Arg(1)->Arg(5)->Arg(15);

static void BM_WrightTable(benchmark::State& st) {
  const auto t = specfun::WrightTable::get(0.4, 0.0);
  double z = 0.0;
  for (auto _ : st) {
    z = z > 10.0 ? 0.0 : z + 0.013;
    benchmark::DoNotOptimize((*t)(z));
  }
}
BENCHMARK(BM_WrightTable);

static void BM_Hyp0f1Ladder(benchmark::State& st) {
  double out[6];
  const double w = static_cast<double>(st.range(0));
  for (auto _ : st) {
    specfun::hyp0f1_ladder(5, w, out);
    benchmark::DoNotOptimize(out[5]);
  }
}
BENCHMARK(BM_Hyp0f1Ladder)->Arg(1)->Arg(40);

static void BM_RlOnGrid(benchmark::State& st) {
  const auto f = fraccalc::SampledFunction::sample([](double s) { return std::exp(s); }, 0.0, 1.0,
                                                   static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(fraccalc::rl_on_grid(f, -0.4).values.back());
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_RlOnGrid)->RangeMultiplier(2)->Range(256, 2048)->Complexity();

static void BM_GammaEval(benchmark::State& st) {
  const greenfn::GammaKernel K(params(0.8, 1.0, 1.0));
  greenfn::gamma_eval(0.3, 0.5, 0.0, 0, K);
  double x = 0.0;
  for (auto _ : st) {
    x = x > 1.0 ? 0.01 : x + 0.001;
    benchmark::DoNotOptimize(greenfn::gamma_eval(x, 0.5, 0.0, 0, K));
  }
}
BENCHMARK(BM_GammaEval);

static void BM_GreenEval(benchmark::State& st) {
  const auto G = green(params(0.8, 1.0, 1.0));
  double xi = 0.0;
  for (auto _ : st) {
    xi = xi > 1.0 ? 0.0 : xi + 0.001;
    benchmark::DoNotOptimize(G->eval(0.4, 0.5, xi, 0.0, 0.0, 0));
  }
}
BENCHMARK(BM_GreenEval);

static void BM_SolvePoint(benchmark::State& st) {
  const auto p = params(1.4, 0.5, 1.0);
  const solver::Solver S(green(p));
  const auto d = mixed(p);
  S.solve_point(0.3, 0.6, d);  // tabulate slices outside the timed loop
  for (auto _ : st) benchmark::DoNotOptimize(S.solve_point(0.3, 0.6, d));
}
BENCHMARK(BM_SolvePoint)->Unit(benchmark::kMillisecond);

static void BM_FdSolve(benchmark::State& st) {
  const auto p = params(0.8, 1.0, 1.0);
  const auto d = mixed(p);
  const int N = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(oracle::fd_solve(d, {N, N}).values.back());
  st.SetComplexityN(N);
}
BENCHMARK(BM_FdSolve)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK_MAIN();
