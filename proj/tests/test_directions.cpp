#include <gtest/gtest.h>

#include "test_support.hpp"
#include "vecopt/directions.hpp"
#include "vecopt/problems.hpp"
#include "vecopt/scalarize.hpp"

namespace vecopt {
namespace {

using testing::vec;

struct ExampleStep {
  OrderingSpec ordering = OrderingSpec::canonical(2);
  Problem ex1 = make_ex1();
  Vector x0 = vec({1.5, 0.9});
  Vector x1 = vec({-0.0835, 0.5833});
  Vector d0 = vec({-0.5, -0.1});
  Matrix j0 = ex1.eval_jacobian(x0);
  Matrix j1 = ex1.eval_jacobian(x1);
  SteepestResult s0 = steepest_from_jacobian(j0, ordering);
  SteepestResult s1 = steepest_from_jacobian(j1, ordering);
  DirectionState state{d0, s0.lambda, x0, j0};
};

TEST(PrpBeta, ExampleValue) {
  const ExampleStep ex;
  const double beta = prp_beta(ex.s1.direction, ex.s1.lambda, ex.state, ex.ordering);
  EXPECT_NEAR(beta, 0.6966, 1e-3);
  EXPECT_NEAR(beta, 0.6967298689259506, 1e-8);
}

TEST(PrpBeta, ZeroStepGivesZero) {
  const ExampleStep ex;
  const DirectionState same{ex.d0, ex.s1.lambda, ex.x1, ex.j1};
  EXPECT_EQ(prp_beta(ex.s1.direction, ex.s1.lambda, same, ex.ordering), 0.0);
}

TEST(PrpBeta, NegativeRatioClampsToZero) {
  // lambda(old J, new s) = -10 dominates -lambda(new J, new s) = 1.
  const OrderingSpec o = OrderingSpec::canonical(1);
  const Matrix j_old = Matrix::Constant(1, 1, 10.0);
  const DirectionState state{vec({-1.0}), -1.0, vec({0.0}), j_old};
  EXPECT_EQ(prp_beta(vec({-1.0}), -1.0, state, o), 0.0);
}

TEST(PrpBeta, DeadStateThrows) {
  const ExampleStep ex;
  DirectionState dead = ex.state;
  dead.prev_lambda_steepest = 0.0;
  EXPECT_THROW(prp_beta(ex.s1.direction, ex.s1.lambda, dead, ex.ordering), CriticalityError);
}

TEST(ThreeTerm, ExampleDirection) {
  const ExampleStep ex;
  const double beta = prp_beta(ex.s1.direction, ex.s1.lambda, ex.state, ex.ordering);
  const double lam_prev = lambda(ex.j1, ex.d0, ex.ordering);
  EXPECT_NEAR(lam_prev, 0.5001, 1e-4);
  const Vector d = ttprp_direction(ex.s1.direction, ex.s1.lambda, lam_prev, beta, ex.d0);
  EXPECT_NEAR(d[0], -0.1042, 5e-4);
  EXPECT_NEAR(d[1], -1.2896, 5e-4);
  EXPECT_NEAR(d[0], -0.10424679, 1e-7);
  EXPECT_NEAR(d[1], -1.28975155, 1e-7);
  const double lam = lambda(ex.j1, d, ex.ordering);
  EXPECT_NEAR(lam, -0.4245, 5e-4);
  EXPECT_NEAR(lam, -0.424488078603697, 1e-7);
  EXPECT_LE(lam, ex.s1.lambda);
}

TEST(ThreeTerm, ZeroBetaRestartsToSteepest) {
  const Vector s = vec({0.3, -0.7});
  EXPECT_EQ(ttprp_direction(s, -0.5, 2.0, 0.0, vec({9.0, 9.0})), s);
}

TEST(ThreeTerm, ReducesToPrpPlusWhenPreviousDirectionIsFlat) {
  const Vector s = vec({0.3, -0.7});
  const Vector prev = vec({1.0, 2.0});
  EXPECT_EQ(ttprp_direction(s, -0.5, 0.0, 0.8, prev), prp_plus_direction(s, 0.8, prev));
}

TEST(ThreeTerm, Errors) {
  EXPECT_THROW(ttprp_direction(vec({1.0}), 0.0, 1.0, 0.5, vec({1.0})), CriticalityError);
  EXPECT_THROW(ttprp_direction(vec({1.0}), -1.0, 1.0, -0.5, vec({1.0})), InputError);
  EXPECT_THROW(ttprp_direction(vec({1.0}), -1.0, 1.0, 0.5, vec({1.0, 2.0})), InputError);
}

TEST(ThreeTerm, SufficientDescentFuzz) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> mdist(1, 5);
  std::uniform_int_distribution<int> ndist(1, 10);
  std::exponential_distribution<double> scale(1.0);
  int tested = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int m = mdist(rng);
    const int n = ndist(rng);
    const OrderingSpec o = OrderingSpec::canonical(m);
    const Matrix j_old = testing::random_matrix(rng, m, n);
    const Matrix j_new = testing::random_matrix(rng, m, n);
    const Vector d_prev = scale(rng) * testing::random_matrix(rng, n, 1);
    const SteepestResult s_old = steepest_from_jacobian(j_old, o);
    const SteepestResult s_new = steepest_from_jacobian(j_new, o);
    if (!(s_old.lambda < -1e-12) || !(s_new.lambda < -1e-12)) continue;
    const DirectionState state{d_prev, s_old.lambda, Vector::Zero(n), j_old};
    const double beta = prp_beta(s_new.direction, s_new.lambda, state, o);
    EXPECT_GE(beta, 0.0);
    const double lam_prev = lambda(j_new, d_prev, o);
    const Vector d = ttprp_direction(s_new.direction, s_new.lambda, lam_prev, beta, d_prev);
    const double lam = lambda(j_new, d, o);
    EXPECT_LE(lam, s_new.lambda + 1e-10 * std::max(1.0, std::abs(s_new.lambda)))
        << "trial " << trial;
    ++tested;
  }
  EXPECT_GT(tested, 5000);
}

TEST(PrpPlus, ExampleIsNotDescent) {
  const ExampleStep ex;
  const double beta = prp_beta(ex.s1.direction, ex.s1.lambda, ex.state, ex.ordering);
  const Vector d = prp_plus_direction(ex.s1.direction, beta, ex.d0);
  EXPECT_NEAR(d[0], -0.2649, 5e-4);
  EXPECT_NEAR(d[1], -0.4870, 5e-4);
  const double lam = lambda(ex.j1, d, ex.ordering);
  EXPECT_NEAR(lam, 0.0840, 5e-4);
  EXPECT_NEAR(lam, 0.08404917459400195, 1e-7);
  EXPECT_GT(lam, 0.0);
}

TEST(PrpPlus, ZeroBetaAndErrors) {
  const Vector s = vec({0.3, -0.7});
  EXPECT_EQ(prp_plus_direction(s, 0.0, vec({5.0, 5.0})), s);
  EXPECT_THROW(prp_plus_direction(s, -1.0, s), InputError);
  EXPECT_THROW(prp_plus_direction(s, 1.0, vec({1.0})), InputError);
}

TEST(SteepestDescent, Identity) {
  EXPECT_EQ(sd_direction(vec({-0.5, -0.1})), vec({-0.5, -0.1}));
  EXPECT_EQ(sd_direction(Vector::Zero(3)), Vector::Zero(3));
}

}  // namespace
}  // namespace vecopt
