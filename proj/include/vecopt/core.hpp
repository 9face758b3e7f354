#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vecopt/errors.hpp"

namespace vecopt {

// An m-objective function on R^n with a hand-coded Jacobian and a sampling
// box for initial points. Evaluators must be free of shared mutable state.
struct Problem {
  std::string name;
  int n = 0;
  int m = 0;
  std::function<Vector(const Vector&)> eval_objectives;
  std::function<Matrix(const Vector&)> eval_jacobian;
  Vector lo;
  Vector hi;
  bool convex = false;
};

// Throws InputError unless lo < hi component-wise and sizes agree with n.
void validate_problem(const Problem& problem);

// Finite generator set V of the dual cone (stored as columns) together with
// the vector xi used in the Armijo condition, 0 < <xi, v> <= 1 for v in V.
class OrderingSpec {
 public:
  OrderingSpec(Matrix generators, Vector xi);

  // Nonnegative orthant: V = standard basis, xi = (1, ..., 1).
  static OrderingSpec canonical(int m);

  const Matrix& generators() const { return generators_; }
  const Vector& xi() const { return xi_; }
  int dim() const { return static_cast<int>(generators_.rows()); }
  int size() const { return static_cast<int>(generators_.cols()); }
  bool is_canonical() const { return canonical_; }

  // True when b - a lies in the cone up to `slack`, i.e. <b - a, v> >= -slack
  // for every generator.
  bool precedes(const Vector& a, const Vector& b, double slack = 0.0) const;

 private:
  Matrix generators_;
  Vector xi_;
  bool canonical_ = false;
};

struct EvalCounters {
  std::int64_t obj_evals = 0;
  std::int64_t jac_evals = 0;
  std::int64_t subproblem_solves = 0;
};

// Counting front-end for a Problem. One instance per run.
class Evaluator {
 public:
  explicit Evaluator(const Problem& problem) : problem_(&problem) {}

  Vector objectives(const Vector& x);
  Matrix jacobian(const Vector& x);
  void count_subproblem() { ++counters_.subproblem_solves; }

  const Problem& problem() const { return *problem_; }
  const EvalCounters& counters() const { return counters_; }

 private:
  const Problem* problem_;
  EvalCounters counters_;
};

struct IterationRecord {
  int k = 0;
  Vector x;
  Vector objectives;
  double theta = 0.0;
  Vector steepest;
  double beta = 0.0;
  // Absent on the terminal record: the run stopped before forming d^k.
  bool has_direction = false;
  Vector direction;
  // Step accepted along `direction`; 0 until the next point is produced.
  double step = 0.0;
  int ls_trials = 0;
  double lambda_dir = 0.0;
  double lambda_steepest = 0.0;
  EvalCounters counters;
};

// Uniform independent per-coordinate draw in [lo, hi]; deterministic in seed.
Vector sample_initial_point(const Problem& problem, std::uint64_t seed);

struct JacobianMismatch {
  int row = 0;
  int col = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  double numeric_error = 0.0;
};

// Compares the analytic Jacobian with extrapolated central differences
// (Ridders) at x. An entry passes when
//   |analytic - numeric| <= rel_tol * max(|analytic|, |numeric|) + max(abs_floor, err)
// where err is the extrapolation's own error estimate. err stays far below
// the relative term except when roundoff in f swamps a tiny partial.
std::vector<JacobianMismatch> check_jacobian(const Problem& problem,
                                             const Vector& x,
                                             double rel_tol = 1e-5,
                                             double abs_floor = 1e-7);

}  // namespace vecopt
