#include <algorithm>
#include <cmath>
#include <limits>

#include "fracgreen/errors.hpp"
#include "fracgreen/fraccalc.hpp"
#include "fracgreen/solver.hpp"

namespace fracgreen::solver {

namespace {

// Value and slope at s0 of the quadratic through three points.
void quadratic_at(double s0, const double* s, const double* v, double& value, double& slope) {
  const auto w0 = fraccalc::fornberg_weights(s0, s, 3, 0);
  const auto w1 = fraccalc::fornberg_weights(s0, s, 3, 1);
  value = w0[0] * v[0] + w0[1] * v[1] + w0[2] * v[2];
  slope = w1[0] * v[0] + w1[1] * v[1] + w1[2] * v[2];
}

void track(double& worst, double e) {
  if (std::isnan(e)) worst = std::numeric_limits<double>::quiet_NaN();
  else if (!std::isnan(worst)) worst = std::max(worst, std::abs(e));
}

}  // namespace

VerifyReport verify_solution(const SolutionField& field, const ProblemData& data) {
  VerifyReport rep;
  const auto& p = data.params;
  const std::size_t nx = field.nx(), ny = field.ny();
  const int n = p.n();
  if (n == 1) rep.ic_rate_error = std::numeric_limits<double>::quiet_NaN();
  for (double v : field.values)
    if (!std::isfinite(v)) rep.has_nan = true;
  if (nx < 3 || ny < 3 || field.values.size() != nx * ny) {
    rep.ic_error = rep.bc_error_a1 = rep.bc_error_a2 = rep.residual =
        std::numeric_limits<double>::quiet_NaN();
    rep.has_nan = true;
    return rep;
  }

  double v[3], s[3], val, slope;
  for (std::size_t i = 0; i < nx; ++i) {
    for (int k = 0; k < 3; ++k) {
      s[k] = field.y[k];
      v[k] = field.at(i, k);
    }
    quadratic_at(0.0, s, v, val, slope);
    const double x = field.x[i];
    track(rep.ic_error, val - data.tau[0](x));
    if (n == 2) track(rep.ic_rate_error, slope - data.tau[1](x));
  }
  for (std::size_t j = 0; j < ny; ++j) {
    const double y = field.y[j];
    for (int k = 0; k < 3; ++k) {
      s[k] = field.x[k];
      v[k] = field.at(k, j);
    }
    quadratic_at(p.a1, s, v, val, slope);
    track(rep.bc_error_a1, val - data.phi1(y));
    for (int k = 0; k < 3; ++k) {
      s[k] = field.x[nx - 3 + k];
      v[k] = field.at(nx - 3 + k, j);
    }
    quadratic_at(p.a2, s, v, val, slope);
    track(rep.bc_error_a2, val - data.phi2(y));
  }

  // Interior residual: Caputo derivatives along each column, with the known
  // initial traces as the value at y = 0; u_xx over neighbours, walls included.
  const double beta = p.beta();
  for (std::size_t i = 0; i < nx; ++i) {
    const double x = field.x[i];
    fraccalc::SampledFunction col;
    col.nodes.push_back(0.0);
    col.values.push_back(data.tau[0](x));
    for (std::size_t j = 0; j < ny; ++j) {
      col.nodes.push_back(field.y[j]);
      col.values.push_back(field.at(i, j));
    }
    for (int k = 0; k < n; ++k) col.derivs_at_a.push_back(data.tau[k](x));
    for (std::size_t j = 1; j < ny; ++j) {
      const double y = field.y[j];
      double xs[3], us[3];
      xs[0] = i == 0 ? p.a1 : field.x[i - 1];
      us[0] = i == 0 ? data.phi1(y) : field.at(i - 1, j);
      xs[1] = x;
      us[1] = field.at(i, j);
      xs[2] = i + 1 == nx ? p.a2 : field.x[i + 1];
      us[2] = i + 1 == nx ? data.phi2(y) : field.at(i + 1, j);
      const auto w = fraccalc::fornberg_weights(x, xs, 3, 2);
      const double uxx = w[0] * us[0] + w[1] * us[1] + w[2] * us[2];
      double Lu;
      try {
        Lu = fraccalc::caputo_derivative(col, fraccalc::FracOrder(p.alpha), y) - uxx + p.c * us[1];
        if (p.b != 0.0) Lu += p.b * fraccalc::caputo_derivative(col, fraccalc::FracOrder(beta), y);
      } catch (const Error&) {
        Lu = std::numeric_limits<double>::quiet_NaN();
      }
      track(rep.residual, Lu - data.f(x, y));
    }
  }
  if (std::isnan(rep.ic_error) || std::isnan(rep.bc_error_a1) || std::isnan(rep.bc_error_a2) ||
      std::isnan(rep.residual) || (n == 2 && std::isnan(rep.ic_rate_error)))
    rep.has_nan = true;
  return rep;
}

}  // namespace fracgreen::solver
