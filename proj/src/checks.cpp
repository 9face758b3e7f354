#include "vecopt/checks.hpp"

#include <cmath>
#include <random>

#include <fmt/format.h>

#include "vecopt/directions.hpp"
#include "vecopt/oracle.hpp"
#include "vecopt/problems.hpp"
#include "vecopt/scalarize.hpp"

namespace vecopt {
namespace {

bool selected(const CheckOptions& options, const std::string& name) {
  return name.rfind(options.filter, 0) == 0;
}

CheckResult jacobian_check(const Problem& problem, const CheckOptions& options) {
  CheckResult out{"jacobian/" + problem.name, true, ""};
  for (int i = 0; i < options.jacobian_points; ++i) {
    const Vector x = sample_initial_point(problem, options.seed + i);
    const auto bad = check_jacobian(problem, x);
    if (!bad.empty()) {
      const auto& b = bad.front();
      out.passed = false;
      out.detail = fmt::format("point {}: d f{} / d x{} analytic {:.10g} vs numeric {:.10g} (+-{:.1e})",
                               i, b.row + 1, b.col + 1, b.analytic, b.numeric, b.numeric_error);
      return out;
    }
  }
  out.detail = fmt::format("{} points", options.jacobian_points);
  return out;
}

CheckResult convexity_check(const Problem& problem, const CheckOptions& options) {
  CheckResult out{"convexity/" + problem.name, true, ""};
  for (int i = 0; i < options.convexity_pairs; ++i) {
    const Vector x = sample_initial_point(problem, options.seed + 2 * i);
    const Vector y = sample_initial_point(problem, options.seed + 2 * i + 1);
    const Vector mid = problem.eval_objectives(0.5 * (x + y));
    const Vector avg = 0.5 * (problem.eval_objectives(x) + problem.eval_objectives(y));
    for (Eigen::Index j = 0; j < mid.size(); ++j) {
      if (mid[j] > avg[j] + 1e-9 * std::max(1.0, std::abs(avg[j]))) {
        out.passed = false;
        out.detail = fmt::format("pair {}: objective {} midpoint {:.10g} > average {:.10g}", i,
                                 j + 1, mid[j], avg[j]);
        return out;
      }
    }
  }
  out.detail = fmt::format("{} pairs", options.convexity_pairs);
  return out;
}

Matrix draw_qp_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 3);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int m = dim(rng);
  const int n = dim(rng);
  Matrix J(m, n);
  for (Eigen::Index i = 0; i < J.size(); ++i) J.data()[i] = normal(rng);
  return J;
}

CheckResult qp_check(int index, const Matrix& J) {
  const auto m = static_cast<int>(J.rows());
  const auto n = static_cast<int>(J.cols());
  const OrderingSpec ordering = OrderingSpec::canonical(m);
  const SteepestResult sd = steepest_from_jacobian(J, ordering);
  const OracleMinimum grid = grid_steepest(J, ordering);
  const OracleMinimum exact = active_set_steepest(J, ordering);
  const double dir_err = (sd.direction - grid.point).lpNorm<Eigen::Infinity>();
  const double theta_err = std::abs(sd.theta - grid.value);
  const double exact_err = (sd.direction - exact.point).lpNorm<Eigen::Infinity>();
  const double kkt_err = std::abs(sd.lambda + sd.direction.squaredNorm());
  CheckResult out{fmt::format("qp/instance-{}", index), true,
                  fmt::format("m={} n={} grid dir err {:.2e} theta err {:.2e} active-set dir err "
                              "{:.2e} kkt {:.2e}",
                              m, n, dir_err, theta_err, exact_err, kkt_err)};
  out.passed = dir_err <= 1e-3 && theta_err <= 1e-6 && exact_err <= 1e-6 && kkt_err <= 1e-7;
  return out;
}

std::vector<CheckResult> example_checks() {
  // Reference values for the worked example at its second iterate.
  const Problem ex1 = make_ex1();
  const OrderingSpec ordering = OrderingSpec::canonical(2);
  Vector x0(2), x1(2);
  x0 << 1.5, 0.9;
  x1 << -0.0835, 0.5833;
  const Matrix J0 = ex1.eval_jacobian(x0);
  const Matrix J1 = ex1.eval_jacobian(x1);
  const SteepestResult s0 = steepest_from_jacobian(J0, ordering);
  const SteepestResult s1 = steepest_from_jacobian(J1, ordering);
  const DirectionState state{s0.direction, s0.lambda, x0, J0};
  const double beta = prp_beta(s1.direction, s1.lambda, state, ordering);
  const Vector d1 = prp_plus_direction(s1.direction, beta, s0.direction);
  const double lam_d1 = lambda(J1, d1, ordering);

  auto close = [](const Vector& got, double a, double b, double tol) {
    return std::abs(got[0] - a) <= tol && std::abs(got[1] - b) <= tol;
  };
  std::vector<CheckResult> out;
  out.push_back({"example/steepest-x0", close(s0.direction, -0.5, -0.1, 5e-4),
                 fmt::format("({:.6f}, {:.6f})", s0.direction[0], s0.direction[1])});
  out.push_back({"example/steepest-x1", close(s1.direction, 0.0835, -0.4173, 5e-4),
                 fmt::format("({:.6f}, {:.6f})", s1.direction[0], s1.direction[1])});
  out.push_back({"example/beta", std::abs(beta - 0.6966) <= 1e-3, fmt::format("{:.6f}", beta)});
  out.push_back({"example/prp-plus-direction", close(d1, -0.2649, -0.4870, 5e-4),
                 fmt::format("({:.6f}, {:.6f})", d1[0], d1[1])});
  out.push_back({"example/prp-plus-not-descent", std::abs(lam_d1 - 0.0840) <= 5e-4 && lam_d1 > 0,
                 fmt::format("lambda = {:.6f}", lam_d1)});
  const double lam_prev = lambda(J1, s0.direction, ordering);
  const Vector d_tt = ttprp_direction(s1.direction, s1.lambda, lam_prev, beta, s0.direction);
  const double lam_tt = lambda(J1, d_tt, ordering);
  out.push_back({"example/three-term-descent", lam_tt <= s1.lambda,
                 fmt::format("lambda(d) = {:.6f} <= lambda(steepest) = {:.6f}", lam_tt,
                             s1.lambda)});
  return out;
}

}  // namespace

std::vector<CheckResult> run_checks(const std::vector<Problem>& problems,
                                    const CheckOptions& options) {
  std::vector<CheckResult> out;
  for (const Problem& p : problems) {
    if (!options.include_slow && p.n >= 1000) continue;
    if (selected(options, "jacobian/" + p.name)) out.push_back(jacobian_check(p, options));
  }
  for (const Problem& p : problems) {
    if (!p.convex || (!options.include_slow && p.n >= 1000)) continue;
    if (selected(options, "convexity/" + p.name)) out.push_back(convexity_check(p, options));
  }
  std::mt19937_64 rng(options.seed);
  for (int i = 0; i < options.qp_instances; ++i) {
    // Draw regardless of the filter so instance i is the same either way.
    const Matrix J = draw_qp_instance(rng);
    if (selected(options, fmt::format("qp/instance-{}", i))) out.push_back(qp_check(i, J));
  }
  for (CheckResult& r : example_checks()) {
    if (selected(options, r.name)) out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckResult> run_checks(const CheckOptions& options) {
  std::vector<Problem> problems;
  for (const std::string& name : problem_names()) problems.push_back(get_problem(name));
  return run_checks(problems, options);
}

}  // namespace vecopt
