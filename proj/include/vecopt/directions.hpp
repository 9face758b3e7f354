#pragma once

#include "vecopt/core.hpp"

namespace vecopt {

// What the direction rules remember from iteration k-1.
struct DirectionState {
  Vector prev_direction;
  // lambda(x^{k-1}, steepest(x^{k-1})); negative while the run is live.
  double prev_lambda_steepest = 0.0;
  Vector prev_point;
  // Jacobian at x^{k-1}, kept so beta costs no extra evaluations.
  Matrix prev_jacobian;
};

// Vector PRP parameter, clamped at zero:
//   max{0, (-lambda(x^k, s^k) + lambda(x^{k-1}, s^k)) / -lambda(x^{k-1}, s^{k-1})}
// with s the steepest direction. Note the second term evaluates the NEW
// steepest direction with the OLD Jacobian.
double prp_beta(const Vector& steepest_new, double lambda_steepest_new,
                const DirectionState& state, const OrderingSpec& ordering);

// Three-term direction
//   s + beta d_prev - beta (|lambda(x^k, d_prev)| / lambda(x^k, s)) s,
// which satisfies lambda(x^k, d) <= lambda(x^k, s) for any beta >= 0.
Vector ttprp_direction(const Vector& steepest_new, double lambda_steepest_new,
                       double lambda_prevdir_at_new, double beta, const Vector& prev_direction);

// Two-term s + beta d_prev. Not guaranteed to be a descent direction.
Vector prp_plus_direction(const Vector& steepest_new, double beta, const Vector& prev_direction);

inline Vector sd_direction(const Vector& steepest_new) { return steepest_new; }

}  // namespace vecopt
