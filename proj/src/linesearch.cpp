#include "vecopt/linesearch.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "vecopt/scalarize.hpp"

namespace vecopt {

void LineSearchParams::validate() const {
  if (!(0.0 < rho && rho < sigma && sigma < 1.0)) {
    throw InputError(fmt::format("line search: need 0 < rho < sigma < 1 (rho={}, sigma={})",
                                 rho, sigma));
  }
  if (!(mu >= 0.0)) throw InputError("line search: mu must be nonnegative");
  if (!(alpha_init > 0.0)) throw InputError("line search: alpha_init must be positive");
  if (!(expand_factor > 1.0)) throw InputError("line search: expand_factor must exceed 1");
  if (max_trials < 1) throw InputError("line search: max_trials must be positive");
}

WolfeFlags check_wolfe(const Vector& phi_x, const Vector& phi_step, double lam0, double lam_step,
                       double alpha, const OrderingSpec& ordering, const LineSearchParams& params,
                       double slack) {
  WolfeFlags flags;
  const Vector bound = phi_x + (params.rho * alpha * lam0) * ordering.xi();
  flags.armijo = ordering.precedes(phi_step, bound, slack);
  flags.lower_curvature = lam_step >= params.sigma * lam0 - slack;
  flags.upper_curvature = lam_step <= -params.mu * lam0 + slack;
  return flags;
}

LineSearchOutcome generalized_wolfe(Evaluator& eval, const Vector& x, const Vector& phi_x,
                                    const Vector& d, double lam0, const OrderingSpec& ordering,
                                    const LineSearchParams& params) {
  params.validate();
  if (!(lam0 < 0.0)) {
    throw PreconditionError(fmt::format("line search: lambda(x, d) = {} is not negative", lam0));
  }

  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  double alpha = params.alpha_init;
  LineSearchOutcome out;
  for (int trial = 1; trial <= params.max_trials; ++trial) {
    out.trials = trial;
    out.alpha = alpha;
    out.point = x + alpha * d;
    out.obj_at_step = eval.objectives(out.point);
    if (!out.obj_at_step.allFinite()) {
      throw LineSearchFailure(fmt::format("non-finite objective at alpha={}", alpha), trial);
    }
    out.satisfied = check_wolfe(phi_x, out.obj_at_step, lam0, 0.0, alpha, ordering, params);
    if (!out.satisfied.armijo) {
      out.satisfied.lower_curvature = out.satisfied.upper_curvature = false;
      hi = alpha;
    } else {
      out.jac_at_step = eval.jacobian(out.point);
      if (!out.jac_at_step.allFinite()) {
        throw LineSearchFailure(fmt::format("non-finite Jacobian at alpha={}", alpha), trial);
      }
      out.lambda_at_step = lambda(out.jac_at_step, d, ordering);
      out.satisfied.lower_curvature = out.lambda_at_step >= params.sigma * lam0;
      out.satisfied.upper_curvature = out.lambda_at_step <= -params.mu * lam0;
      if (out.satisfied.all()) return out;
      if (!out.satisfied.lower_curvature) {
        lo = alpha;
      } else {
        hi = alpha;
      }
    }
    if (std::isinf(hi)) {
      alpha *= params.expand_factor;
    } else {
      if (hi - lo < 1e-16) {
        throw LineSearchFailure(fmt::format("bracket [{}, {}] collapsed", lo, hi), trial);
      }
      alpha = 0.5 * (lo + hi);
    }
  }
  throw LineSearchFailure(fmt::format("no acceptable step in {} trials", params.max_trials),
                          params.max_trials);
}

LineSearchOutcome strong_wolfe(Evaluator& eval, const Vector& x, const Vector& phi_x,
                               const Vector& d, double lam0, const OrderingSpec& ordering,
                               LineSearchParams params) {
  params.mu = params.sigma;
  return generalized_wolfe(eval, x, phi_x, d, lam0, ordering, params);
}

double exact_line_search(Evaluator& eval, const Vector& x, const Vector& d,
                         const OrderingSpec& ordering, double alpha_max) {
  if (!(alpha_max > 0.0)) throw InputError("exact_line_search: alpha_max must be positive");
  auto slope = [&](double alpha) {
    return lambda(eval.jacobian(x + alpha * d), d, ordering);
  };
  const double lam0 = slope(0.0);
  if (!(lam0 < 0.0)) {
    throw PreconditionError(fmt::format("exact_line_search: lambda(x, d) = {} is not negative",
                                        lam0));
  }

  constexpr double kRootTol = 1e-10;
  double lo = 0.0;
  double hi = std::min(1e-3, alpha_max);
  double lam_hi = slope(hi);
  while (lam_hi < 0.0) {
    if (hi >= alpha_max) {
      throw NoRootError(fmt::format("exact_line_search: no sign change up to {}", alpha_max));
    }
    lo = hi;
    hi = std::min(2.0 * hi, alpha_max);
    lam_hi = slope(hi);
  }
  if (std::abs(lam_hi) <= kRootTol) return hi;

  double best = hi;
  double best_abs = std::abs(lam_hi);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double lam_mid = slope(mid);
    if (std::abs(lam_mid) < best_abs) {
      best = mid;
      best_abs = std::abs(lam_mid);
    }
    if (best_abs <= kRootTol) break;
    if (lam_mid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return best;
}

}  // namespace vecopt
