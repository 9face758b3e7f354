#include "vecopt/solver.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>

#include <fmt/format.h>

#include "vecopt/directions.hpp"
#include "vecopt/scalarize.hpp"

namespace vecopt {
namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

IterationRecord make_record(int k, const Vector& x, const Vector& phi, const SteepestResult& sd,
                            const Evaluator& eval) {
  IterationRecord rec;
  rec.k = k;
  rec.x = x;
  rec.objectives = phi;
  rec.theta = sd.theta;
  rec.steepest = sd.direction;
  rec.lambda_steepest = sd.lambda;
  rec.counters = eval.counters();
  return rec;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kTtPrp: return "TT-PRP";
    case Method::kTtPrp1: return "TT-PRP1";
    case Method::kPrpPlus: return "PRP+";
    case Method::kSd: return "SD";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  const std::string key = upper(name);
  if (key == "TT-PRP" || key == "TTPRP") return Method::kTtPrp;
  if (key == "TT-PRP1" || key == "TTPRP1") return Method::kTtPrp1;
  if (key == "PRP+" || key == "PRPPLUS" || key == "PRP-PLUS") return Method::kPrpPlus;
  if (key == "SD") return Method::kSd;
  throw LookupError(fmt::format("unknown method '{}' (expected TT-PRP, TT-PRP1, PRP+ or SD)",
                                name));
}

LineSearchKind linesearch_for(Method method) {
  return method == Method::kTtPrp ? LineSearchKind::kGeneralizedWolfe
                                  : LineSearchKind::kStrongWolfe;
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kConverged: return "converged";
    case RunStatus::kIterationCap: return "iteration_cap";
    case RunStatus::kLineSearchFailure: return "linesearch_failure";
    case RunStatus::kSubproblemFailure: return "subproblem_failure";
  }
  return "?";
}

RunStatus parse_status(std::string_view name) {
  for (RunStatus s : {RunStatus::kConverged, RunStatus::kIterationCap,
                      RunStatus::kLineSearchFailure, RunStatus::kSubproblemFailure}) {
    if (to_string(s) == name) return s;
  }
  throw LookupError(fmt::format("unknown run status '{}'", name));
}

void SolverConfig::validate() const {
  ls.validate();
  if (max_iters < 0) throw InputError("solver: max_iters must be nonnegative");
  if (!(stop_tol > 0.0)) throw InputError("solver: stop_tol must be positive");
  if (!(qp_tol > 0.0)) throw InputError("solver: qp_tol must be positive");
  if (qp_max_iters < 1) throw InputError("solver: qp_max_iters must be positive");
}

LineSearchParams SolverConfig::effective_ls() const {
  LineSearchParams p = ls;
  if (linesearch_for(method) == LineSearchKind::kStrongWolfe) p.mu = p.sigma;
  return p;
}

RunResult solve(const Problem& problem, const Vector& x0, const SolverConfig& config,
                const OrderingSpec& ordering) {
  config.validate();
  if (x0.size() != problem.n || !x0.allFinite()) {
    throw InputError(fmt::format("solve: x0 must be a finite vector of size {}", problem.n));
  }
  if (ordering.dim() != problem.m) {
    throw InputError(fmt::format("solve: ordering dimension {} but problem has {} objectives",
                                 ordering.dim(), problem.m));
  }

  const auto started = std::chrono::steady_clock::now();
  Evaluator eval(problem);
  RunResult run;
  run.config = config;
  run.initial_point = x0;
  SimplexQpOptions qp;
  qp.tol = config.qp_tol;
  qp.max_iters = config.qp_max_iters;

  Vector x = x0;
  Vector phi;
  double theta_now = 0.0;
  auto finish = [&](RunStatus status, std::string message) {
    run.status = status;
    run.message = std::move(message);
    run.final_point = x;
    run.final_objectives = phi;
    run.final_theta = theta_now;
    run.counters = eval.counters();
    run.steps = run.trace.empty() ? 0 : static_cast<int>(run.trace.size()) - 1;
    run.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return run;
  };

  try {
    phi = eval.objectives(x);
    run.initial_objectives = phi;
    if (!phi.allFinite()) {
      return finish(RunStatus::kLineSearchFailure, "non-finite objective at x0");
    }
    Matrix jac = eval.jacobian(x);
    SteepestResult sd = steepest_from_jacobian(jac, ordering, qp);
    eval.count_subproblem();
    theta_now = sd.theta;
    run.trace.push_back(make_record(0, x, phi, sd, eval));
    if (sd.theta >= -config.stop_tol) return finish(RunStatus::kConverged, "");
    if (config.max_iters == 0) return finish(RunStatus::kIterationCap, "");

    Vector d = sd.direction;
    double beta = 0.0;
    for (int k = 1;; ++k) {
      IterationRecord& current = run.trace.back();
      current.has_direction = true;
      current.direction = d;
      current.beta = beta;
      const double lam0 = lambda(jac, d, ordering);
      current.lambda_dir = lam0;
      if (!(lam0 < 0.0)) {
        return finish(RunStatus::kLineSearchFailure,
                      fmt::format("direction at iteration {} is not a descent direction "
                                  "(lambda = {:.6g})",
                                  k - 1, lam0));
      }

      const LineSearchOutcome step =
          linesearch_for(config.method) == LineSearchKind::kGeneralizedWolfe
              ? generalized_wolfe(eval, x, phi, d, lam0, ordering, config.ls)
              : strong_wolfe(eval, x, phi, d, lam0, ordering, config.ls);
      current.step = step.alpha;
      current.ls_trials = step.trials;

      DirectionState state{d, sd.lambda, x, jac};
      x = step.point;
      phi = step.obj_at_step;
      jac = step.jac_at_step;
      sd = steepest_from_jacobian(jac, ordering, qp);
      eval.count_subproblem();
      theta_now = sd.theta;
      run.trace.push_back(make_record(k, x, phi, sd, eval));
      if (sd.theta >= -config.stop_tol) return finish(RunStatus::kConverged, "");
      if (k >= config.max_iters) return finish(RunStatus::kIterationCap, "");

      switch (config.method) {
        case Method::kSd:
          beta = 0.0;
          d = sd_direction(sd.direction);
          break;
        case Method::kPrpPlus:
          beta = prp_beta(sd.direction, sd.lambda, state, ordering);
          d = prp_plus_direction(sd.direction, beta, state.prev_direction);
          break;
        case Method::kTtPrp:
        case Method::kTtPrp1: {
          beta = prp_beta(sd.direction, sd.lambda, state, ordering);
          const double lam_prev = lambda(jac, state.prev_direction, ordering);
          d = ttprp_direction(sd.direction, sd.lambda, lam_prev, beta, state.prev_direction);
          break;
        }
      }
    }
  } catch (const SubproblemFailure& e) {
    return finish(RunStatus::kSubproblemFailure, e.what());
  } catch (const LineSearchFailure& e) {
    return finish(RunStatus::kLineSearchFailure, e.what());
  }
}

std::vector<InvariantViolation> solve_traced_invariant_check(const RunResult& run,
                                                             const Problem& problem,
                                                             const OrderingSpec& ordering,
                                                             double slack) {
  std::vector<InvariantViolation> out;
  if (run.trace.empty()) return out;
  const LineSearchParams ls = run.config.effective_ls();
  SimplexQpOptions qp;
  qp.tol = run.config.qp_tol;
  qp.max_iters = run.config.qp_max_iters;

  const Vector phi0 = problem.eval_objectives(run.trace.front().x);
  for (std::size_t i = 0; i < run.trace.size(); ++i) {
    const IterationRecord& rec = run.trace[i];
    const int k = rec.k;
    const Vector phi = problem.eval_objectives(rec.x);
    if (!ordering.precedes(phi, phi0, slack)) {
      out.push_back({k, "level_set", "Phi(x^k) is not below Phi(x^0)"});
    }
    if (!rec.has_direction) continue;

    const Matrix jac = problem.eval_jacobian(rec.x);
    const SteepestResult sd = steepest_from_jacobian(jac, ordering, qp);
    const double lam_dir = lambda(jac, rec.direction, ordering);
    const bool promises_descent = run.config.method != Method::kPrpPlus;
    if (promises_descent && lam_dir > sd.lambda + slack * std::max(1.0, std::abs(sd.lambda))) {
      out.push_back({k, "sufficient_descent",
                     fmt::format("lambda(x,d) = {:.17g} > lambda(x,steepest) = {:.17g}", lam_dir,
                                 sd.lambda)});
    }

    if (i + 1 >= run.trace.size()) continue;
    const IterationRecord& next = run.trace[i + 1];
    const Vector phi_next = problem.eval_objectives(next.x);
    const double lam_next = lambda(problem.eval_jacobian(next.x), rec.direction, ordering);
    const WolfeFlags flags =
        check_wolfe(phi, phi_next, lam_dir, lam_next, rec.step, ordering, ls, slack);
    if (!flags.armijo) {
      out.push_back({k, "armijo", fmt::format("step {:.17g} violates the Armijo decrease",
                                              rec.step)});
    }
    if (!flags.lower_curvature) {
      out.push_back({k, "curvature_lower",
                     fmt::format("lambda(x+,d) = {:.17g} < sigma*lambda(x,d) = {:.17g}",
                                 lam_next, ls.sigma * lam_dir)});
    }
    if (!flags.upper_curvature) {
      out.push_back({k, "curvature_upper",
                     fmt::format("lambda(x+,d) = {:.17g} > -mu*lambda(x,d) = {:.17g}", lam_next,
                                 -ls.mu * lam_dir)});
    }
  }
  return out;
}

}  // namespace vecopt
