#pragma once

#include "vecopt/core.hpp"

namespace vecopt {

struct OracleMinimum {
  Vector point;
  double value = 0.0;  // lambda(J, point) + |point|^2 / 2
};

// Grid refinement over the weight simplex: every grid point w gives the
// candidate d = -sum_j w_j J^T v_j, the best cell is re-centred and the box
// shrunk until cells are narrower than final_width. Candidates are scored on
// the primal objective. Meant for <= 3 generators.
OracleMinimum grid_steepest(const Matrix& jacobian, const OrderingSpec& ordering,
                            int points_per_dim = 21, double shrink = 0.5,
                            double final_width = 1e-13);

// Exact minimiser by enumerating active sets: for each subset S of
// generators, minus the min-norm point of the affine hull of {J^T v : v in S}.
// Subsets with negative affine weights are skipped. At most 12 generators.
OracleMinimum active_set_steepest(const Matrix& jacobian, const OrderingSpec& ordering);

}  // namespace vecopt
