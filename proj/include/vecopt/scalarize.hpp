#pragma once

#include "vecopt/core.hpp"
#include "vecopt/simplex_qp.hpp"

namespace vecopt {

// max over generators v of <J d, v>: the worst-case directional derivative.
double lambda(const Matrix& jacobian, const Vector& d, const OrderingSpec& ordering);

// Index of the generator attaining lambda (first index wins on ties).
int lambda_argmax(const Matrix& jacobian, const Vector& d, const OrderingSpec& ordering);

struct SteepestResult {
  Vector direction;
  double theta = 0.0;
  // lambda(u, direction), kept since every caller needs it.
  double lambda = 0.0;
  Vector dual_weights;
  double kkt_residual = 0.0;
  int qp_iterations = 0;
};

// Steepest E-descent direction from an already evaluated Jacobian.
//
// Solves the dual of  min_d lambda(u, d) + |d|^2 / 2,  namely
//   min_w 0.5 |sum_j w_j a_j|^2  over the unit simplex,  a_j = J^T v_j,
// and returns direction = -sum_j w_j a_j. An all-zero Jacobian yields the
// zero direction with uniform weights.
SteepestResult steepest_from_jacobian(const Matrix& jacobian, const OrderingSpec& ordering,
                                      const SimplexQpOptions& qp = {});

SteepestResult steepest_direction(const Problem& problem, const Vector& x,
                                  const OrderingSpec& ordering, double tol = 1e-12);

double theta(const Problem& problem, const Vector& x, const OrderingSpec& ordering);

}  // namespace vecopt
