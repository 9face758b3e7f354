#include "vecopt/directions.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "vecopt/scalarize.hpp"

namespace vecopt {

double prp_beta(const Vector& steepest_new, double lambda_steepest_new,
                const DirectionState& state, const OrderingSpec& ordering) {
  const double denominator = -state.prev_lambda_steepest;
  if (!(denominator > 1e-300)) {
    throw CriticalityError(
        fmt::format("prp_beta: lambda at previous steepest direction is {}",
                    state.prev_lambda_steepest));
  }
  if (!(lambda_steepest_new < 0.0)) {
    throw CriticalityError(
        fmt::format("prp_beta: lambda at new steepest direction is {}", lambda_steepest_new));
  }
  const double cross = lambda(state.prev_jacobian, steepest_new, ordering);
  return std::max(0.0, (-lambda_steepest_new + cross) / denominator);
}

Vector ttprp_direction(const Vector& steepest_new, double lambda_steepest_new,
                       double lambda_prevdir_at_new, double beta, const Vector& prev_direction) {
  if (!(lambda_steepest_new < 0.0)) {
    throw CriticalityError(
        fmt::format("ttprp_direction: lambda at steepest direction is {}", lambda_steepest_new));
  }
  if (!(beta >= 0.0)) throw InputError("ttprp_direction: beta must be nonnegative");
  if (steepest_new.size() != prev_direction.size()) {
    throw InputError("ttprp_direction: dimension mismatch");
  }
  // Nonnegative since lambda_steepest_new < 0.
  const double third = -beta * std::abs(lambda_prevdir_at_new) / lambda_steepest_new;
  return (1.0 + third) * steepest_new + beta * prev_direction;
}

Vector prp_plus_direction(const Vector& steepest_new, double beta, const Vector& prev_direction) {
  if (!(beta >= 0.0)) throw InputError("prp_plus_direction: beta must be nonnegative");
  if (steepest_new.size() != prev_direction.size()) {
    throw InputError("prp_plus_direction: dimension mismatch");
  }
  return steepest_new + beta * prev_direction;
}

}  // namespace vecopt
