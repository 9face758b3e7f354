#pragma once

#include "vecopt/core.hpp"

namespace vecopt {

struct LineSearchParams {
  double rho = 1e-4;
  double sigma = 0.1;
  double mu = 0.2;
  double alpha_init = 1.0;
  double expand_factor = 2.0;
  int max_trials = 100;

  // Throws InputError unless 0 < rho < sigma < 1, mu >= 0, alpha_init > 0,
  // expand_factor > 1 and max_trials >= 1.
  void validate() const;
};

struct WolfeFlags {
  bool armijo = false;
  bool lower_curvature = false;
  bool upper_curvature = false;

  bool all() const { return armijo && lower_curvature && upper_curvature; }
};

struct LineSearchOutcome {
  double alpha = 0.0;
  int trials = 0;
  Vector point;
  Vector obj_at_step;
  // Jacobian at the accepted point; the solver reuses it for the next
  // steepest-direction subproblem.
  Matrix jac_at_step;
  double lambda_at_step = 0.0;
  WolfeFlags satisfied;
};

// Evaluates the generalized Wolfe trio for a candidate step:
//   Phi(x + a d) <=_E Phi(x) + rho a lam0 xi,
//   sigma lam0 <= lam_step <= -mu lam0.
// `slack` loosens every inequality by the same absolute amount.
WolfeFlags check_wolfe(const Vector& phi_x, const Vector& phi_step, double lam0, double lam_step,
                       double alpha, const OrderingSpec& ordering, const LineSearchParams& params,
                       double slack = 0.0);

// Expansion from alpha_init until the Armijo test fails or the curvature
// pair holds, then bisection on the bracket. `phi_x` is Phi(x), already
// known to the caller. Throws PreconditionError if lam0 >= 0 and
// LineSearchFailure when trials run out, the bracket collapses, or an
// evaluation is not finite.
LineSearchOutcome generalized_wolfe(Evaluator& eval, const Vector& x, const Vector& phi_x,
                                    const Vector& d, double lam0, const OrderingSpec& ordering,
                                    const LineSearchParams& params);

// generalized_wolfe with mu := sigma, i.e. |lam_step| <= sigma |lam0|.
LineSearchOutcome strong_wolfe(Evaluator& eval, const Vector& x, const Vector& phi_x,
                               const Vector& d, double lam0, const OrderingSpec& ordering,
                               LineSearchParams params);

// Smallest alpha in (0, alpha_max] with lambda(x + alpha d, d) = 0 (to 1e-10),
// found by doubling from min(1e-3, alpha_max) and bisecting the first sign
// change. Throws PreconditionError if lambda(x, d) >= 0 and NoRootError if
// no sign change occurs up to alpha_max.
double exact_line_search(Evaluator& eval, const Vector& x, const Vector& d,
                         const OrderingSpec& ordering, double alpha_max);

}  // namespace vecopt
