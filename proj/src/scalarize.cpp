#include "vecopt/scalarize.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace vecopt {
namespace {

void check_dims(const Matrix& jacobian, const Vector& d, const OrderingSpec& ordering) {
  if (jacobian.cols() != d.size() || jacobian.rows() != ordering.dim()) {
    throw InputError(fmt::format("lambda: Jacobian {}x{}, direction {}, ordering dimension {}",
                                 jacobian.rows(), jacobian.cols(), d.size(), ordering.dim()));
  }
}

Vector generator_values(const Matrix& jacobian, const Vector& d, const OrderingSpec& ordering) {
  Vector jd = jacobian * d;
  if (ordering.is_canonical()) return jd;
  return ordering.generators().transpose() * jd;
}

}  // namespace

double lambda(const Matrix& jacobian, const Vector& d, const OrderingSpec& ordering) {
  check_dims(jacobian, d, ordering);
  return generator_values(jacobian, d, ordering).maxCoeff();
}

int lambda_argmax(const Matrix& jacobian, const Vector& d, const OrderingSpec& ordering) {
  check_dims(jacobian, d, ordering);
  const Vector values = generator_values(jacobian, d, ordering);
  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < values.size(); ++j) {
    if (values[j] > values[best]) best = j;
  }
  return static_cast<int>(best);
}

SteepestResult steepest_from_jacobian(const Matrix& jacobian, const OrderingSpec& ordering,
                                      const SimplexQpOptions& qp) {
  if (jacobian.rows() != ordering.dim()) {
    throw InputError(fmt::format("steepest: Jacobian has {} rows, ordering dimension {}",
                                 jacobian.rows(), ordering.dim()));
  }
  if (!jacobian.allFinite()) throw InputError("steepest: non-finite Jacobian");

  // Columns a_j = J^T v_j.
  const Matrix a = ordering.is_canonical() ? Matrix(jacobian.transpose())
                                           : Matrix(jacobian.transpose() * ordering.generators());
  const int p = static_cast<int>(a.cols());
  SteepestResult out;
  if (a.isZero(0.0)) {
    out.direction = Vector::Zero(jacobian.cols());
    out.dual_weights = Vector::Constant(p, 1.0 / p);
    return out;
  }

  const SimplexQpResult sol = solve_simplex_qp_points(a, qp);
  out.dual_weights = sol.weights;
  out.kkt_residual = sol.residual;
  out.qp_iterations = sol.iterations;
  out.direction = -(a * sol.weights);
  out.lambda = lambda(jacobian, out.direction, ordering);
  // Exact arithmetic gives theta <= -|d|^2/2; rounding can leave a positive
  // residue of order eps*|J||d| when d is tiny.
  out.theta = std::min(0.0, out.lambda + 0.5 * out.direction.squaredNorm());
  return out;
}

SteepestResult steepest_direction(const Problem& problem, const Vector& x,
                                  const OrderingSpec& ordering, double tol) {
  if (!(tol > 0.0)) throw InputError("steepest_direction: tol must be positive");
  if (x.size() != problem.n || !x.allFinite()) {
    throw InputError("steepest_direction: x must be finite with problem dimension");
  }
  SimplexQpOptions qp;
  qp.tol = tol;
  return steepest_from_jacobian(problem.eval_jacobian(x), ordering, qp);
}

double theta(const Problem& problem, const Vector& x, const OrderingSpec& ordering) {
  return steepest_direction(problem, x, ordering).theta;
}

}  // namespace vecopt
