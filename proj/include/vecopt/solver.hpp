#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "vecopt/core.hpp"
#include "vecopt/linesearch.hpp"

namespace vecopt {

enum class Method { kTtPrp, kTtPrp1, kPrpPlus, kSd };

inline constexpr Method kAllMethods[] = {Method::kTtPrp, Method::kTtPrp1, Method::kPrpPlus,
                                         Method::kSd};

std::string_view to_string(Method method);
// Accepts "TT-PRP", "TT-PRP1", "PRP+", "SD" (case-insensitive).
Method parse_method(std::string_view name);

enum class LineSearchKind { kGeneralizedWolfe, kStrongWolfe };

// TT-PRP pairs with generalized Wolfe, every other method with strong Wolfe.
LineSearchKind linesearch_for(Method method);

inline const double kDefaultStopTol = 5.0 * std::sqrt(std::numeric_limits<double>::epsilon());

struct SolverConfig {
  Method method = Method::kTtPrp;
  LineSearchParams ls;
  int max_iters = 3000;
  // Convergence is declared once theta(x) >= -stop_tol.
  double stop_tol = kDefaultStopTol;
  double qp_tol = 1e-12;
  int qp_max_iters = 10000;

  void validate() const;
  // Line-search parameters as actually applied (mu = sigma for strong Wolfe).
  LineSearchParams effective_ls() const;
};

enum class RunStatus { kConverged, kIterationCap, kLineSearchFailure, kSubproblemFailure };

std::string_view to_string(RunStatus status);
RunStatus parse_status(std::string_view name);

struct RunResult {
  RunStatus status = RunStatus::kIterationCap;
  std::string message;
  SolverConfig config;
  Vector initial_point;
  Vector initial_objectives;
  Vector final_point;
  Vector final_objectives;
  double final_theta = 0.0;
  std::vector<IterationRecord> trace;
  EvalCounters counters;
  double wall_time = 0.0;
  // Accepted steps taken; kept separately since traces may be dropped.
  int steps = 0;

  int iterations() const { return steps; }
  bool converged() const { return status == RunStatus::kConverged; }
};

// Runs the conjugate-gradient iteration from x0:
//   1. steepest direction at x0, stop if theta >= -stop_tol, d0 = steepest;
//   2. step along d with the method's Wolfe search;
//   3. steepest direction at the new point, stop test;
//   4. beta and the method's direction update;
//   5. repeat.
// Failures are reported through RunResult::status, never thrown, except for
// invalid inputs.
RunResult solve(const Problem& problem, const Vector& x0, const SolverConfig& config,
                const OrderingSpec& ordering);

struct InvariantViolation {
  int k = 0;
  std::string condition;
  std::string detail;
};

// Re-derives from scratch, for every traced iteration, sufficient descent of
// the stored direction, the Armijo decrease and both curvature bounds of the
// stored step, and Phi(x^k) <=_E Phi(x^0). Empty iff all hold within `slack`
// (sufficient descent is measured relative to max(1, |lambda|) and skipped for
// PRP+, which does not promise it).
std::vector<InvariantViolation> solve_traced_invariant_check(const RunResult& run,
                                                             const Problem& problem,
                                                             const OrderingSpec& ordering,
                                                             double slack = 1e-9);

}  // namespace vecopt
