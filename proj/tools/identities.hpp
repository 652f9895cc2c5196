#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fracgreen/greenfn.hpp"
#include "fracgreen/params.hpp"

namespace fracgreen::identities {

struct Check {
  std::string name;
  double measured = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string detail;
};

/// Limit of v(h) = L + sum_j c_j h^{p_j} from len(exps) + 1 samples.
double richardson(const std::vector<double>& h, const std::vector<double>& v,
                  const std::vector<double>& exps);

/// Max relative error of phi(-1/2, 1/2; -z) against exp(-z^2/4)/sqrt(pi), z in [0, 5].
Check wright_closed_form(double tol = 1e-8);
/// 0F1(;1;z) against I0(2 sqrt z) and J0(2 sqrt(-z)) for |z| <= 50.
Check hyp0f1_bessel(double tol = 1e-10);
/// g(., tau) derivative in closed form against numerical RL differentiation.
Check g_derivative(const ProblemParams& p, double tol = 1e-3);
/// Composition D^{nu1} D^{nu2} g = D^{nu1+nu2} g with the outer operator numerical.
Check g_composition(const ProblemParams& p, double tol = 1e-3);

/// Worst observed order (first to last of four halvings) and worst final
/// relative error of grid RL operators on s^{mu-1}.
struct PowerRuleStudy {
  double min_order = 0.0;
  double max_final_error = 0.0;
  std::string table;
};
PowerRuleStudy power_rule_study();

Check newton_leibniz(double tol = 1e-3);
Check integration_by_parts(double tol = 1e-4);
Check semigroup(double tol = 1e-4);

/// Residual of the Caputo Green formula for u = eta^2, v = (1 - eta)^{alpha/2 - 1}, y = 1.
Check green_formula(double alpha, double eps, double tol = 1e-3);
/// Numerical against explicit S-operator reduction, g = (1 - tau)^{-1/2}.
Check s_operator_reduction(double alpha, int k, double tol = 1e-4);
/// |explicit reduction| against its a priori bound for the same family.
Check s_operator_bound(double alpha, int k);

Check annihilation(const greenfn::GammaKernel& K, double tol = 1e-3);
/// alpha = 1, b = c = 0 against the Gaussian heat kernel on a 9 x 5 grid.
Check heat_kernel(double tol = 1e-6);
Check evenness(const greenfn::GammaKernel& K);
Check green_boundary(const greenfn::GreenFunction& G, double tol = 1e-12);
/// Change of G under doubling m_max, against 2 image_tol.
Check image_tail(const greenfn::GreenFunction& G);
Check translation(const greenfn::GreenFunction& G);

/// Delta sequence at x = 0.5 on (x - 5, x + 5) over h = 0.1 / 2^j, j = 0..3.
Check delta_limit(const greenfn::GammaKernel& K, const std::function<double(double)>& q,
                  const std::string& label, double tol = 1e-2);
/// Jump limit at offsets 0.01 / 2^j, j = 0..3, p = 1.
Check jump_limit(const greenfn::GammaKernel& K, int side, double tol = 1e-2);

/// Whole battery for one parameter set.
std::vector<Check> run_all(const ProblemParams& p, double kernel_tol = 1e-12,
                           double image_tol = 1e-14);

}  // namespace fracgreen::identities
