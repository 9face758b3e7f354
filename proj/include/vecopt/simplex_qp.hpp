#pragma once

#include "vecopt/errors.hpp"

namespace vecopt {

// Euclidean projection onto the unit simplex {w >= 0, sum w = 1}
// (sort-based, O(p log p)).
Vector project_to_simplex(const Vector& v);

struct SimplexQpOptions {
  double tol = 1e-12;
  int max_iters = 10000;
  // Every `polish_every` projected-gradient steps the current support is
  // tried as the active set of an exact equality-constrained solve.
  int polish_every = 10;
};

struct SimplexQpResult {
  Vector weights;
  double residual = 0.0;
  int iterations = 0;
};

// Fixed-point residual of projected gradient with step 1/L:
// ||w - P(w - G w / L)||_inf. Zero exactly at a minimiser.
double simplex_qp_residual(const Matrix& gram, const Vector& w, double lipschitz);

// Relative duality gap (w^T G w - min_j (G w)_j) / w^T G w, each term first
// reduced by its roundoff allowance. Zero exactly at a minimiser.
double simplex_qp_kkt_violation(const Matrix& gram, const Vector& w);

// Minimises 0.5 w^T G w over the unit simplex for a symmetric positive
// semidefinite G. A solution is accepted once the fixed-point residual is
// below tol and the relative KKT gap below 1e-10. Throws SubproblemFailure
// when max_iters is exhausted.
SimplexQpResult solve_simplex_qp(const Matrix& gram, const SimplexQpOptions& options = {});

// Same problem given the points a_j as columns (G = A^T A). Works on the
// points directly and falls back to solve_simplex_qp(A^T A).
SimplexQpResult solve_simplex_qp_points(const Matrix& points, const SimplexQpOptions& options = {});
double simplex_qp_kkt_violation_points(const Matrix& points, const Vector& w);

}  // namespace vecopt
