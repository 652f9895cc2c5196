#pragma once

#include "fracgreen/fraccalc.hpp"
#include "fracgreen/quadrature.hpp"

namespace fracgreen::fraccalc {

/// Shared Gauss-Jacobi rules for the weight (1-x)^a (1+x)^b.
const quad::Rule& jacobi_rule(int n, double a, double b);

/// S-operator with xi given through its distance d = s - xi > 0 from the lower
/// limit, so that xi arbitrarily close to s keeps full precision.
double s_operator_offset(double delta, const SampledFunction& g, double d);

}  // namespace fracgreen::fraccalc
