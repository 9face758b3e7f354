#include "vecopt/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

namespace vecopt {

void validate_problem(const Problem& problem) {
  if (problem.n <= 0 || problem.m <= 0) {
    throw InputError(fmt::format("{}: dimensions must be positive", problem.name));
  }
  if (problem.lo.size() != problem.n || problem.hi.size() != problem.n) {
    throw InputError(fmt::format("{}: box has wrong size", problem.name));
  }
  for (int i = 0; i < problem.n; ++i) {
    if (!(problem.lo[i] < problem.hi[i])) {
      throw InputError(fmt::format("{}: box coordinate {} is empty", problem.name, i));
    }
  }
  if (!problem.eval_objectives || !problem.eval_jacobian) {
    throw InputError(fmt::format("{}: missing evaluator", problem.name));
  }
}

OrderingSpec::OrderingSpec(Matrix generators, Vector xi)
    : generators_(std::move(generators)), xi_(std::move(xi)) {
  if (generators_.cols() == 0 || generators_.rows() == 0) {
    throw InputError("ordering: generator set is empty");
  }
  if (xi_.size() != generators_.rows()) {
    throw InputError("ordering: xi has wrong dimension");
  }
  for (Eigen::Index j = 0; j < generators_.cols(); ++j) {
    const double norm = generators_.col(j).norm();
    if (std::abs(norm - 1.0) > 1e-12) {
      throw InputError(fmt::format("ordering: generator {} is not a unit vector", j));
    }
    const double inner = xi_.dot(generators_.col(j));
    if (!(inner > 0.0 && inner <= 1.0)) {
      throw InputError(fmt::format("ordering: <xi, v_{}> = {} not in (0, 1]", j, inner));
    }
  }
  canonical_ = generators_.rows() == generators_.cols() &&
               generators_.isIdentity(0.0);
}

OrderingSpec OrderingSpec::canonical(int m) {
  if (m <= 0) throw InputError("ordering: m must be positive");
  return OrderingSpec(Matrix::Identity(m, m), Vector::Ones(m));
}

bool OrderingSpec::precedes(const Vector& a, const Vector& b, double slack) const {
  if (a.size() != dim() || b.size() != dim()) {
    throw InputError("ordering: vector dimension mismatch");
  }
  if (canonical_) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (b[i] - a[i] < -slack) return false;
    }
    return true;
  }
  const Vector diff = b - a;
  for (Eigen::Index j = 0; j < generators_.cols(); ++j) {
    if (diff.dot(generators_.col(j)) < -slack) return false;
  }
  return true;
}

namespace {

void check_point(const Problem& problem, const Vector& x) {
  if (x.size() != problem.n) {
    throw InputError(fmt::format("{}: point has {} coordinates, expected {}", problem.name,
                                 x.size(), problem.n));
  }
}

}  // namespace

Vector Evaluator::objectives(const Vector& x) {
  check_point(*problem_, x);
  ++counters_.obj_evals;
  Vector f = problem_->eval_objectives(x);
  if (f.size() != problem_->m) {
    throw InputError(fmt::format("{}: objective returned {} values, expected {}",
                                 problem_->name, f.size(), problem_->m));
  }
  return f;
}

Matrix Evaluator::jacobian(const Vector& x) {
  check_point(*problem_, x);
  ++counters_.jac_evals;
  Matrix J = problem_->eval_jacobian(x);
  if (J.rows() != problem_->m || J.cols() != problem_->n) {
    throw InputError(fmt::format("{}: Jacobian is {}x{}, expected {}x{}", problem_->name,
                                 J.rows(), J.cols(), problem_->m, problem_->n));
  }
  return J;
}

Vector sample_initial_point(const Problem& problem, std::uint64_t seed) {
  if (problem.lo.size() != problem.hi.size()) {
    throw InputError("sample_initial_point: malformed box");
  }
  std::mt19937_64 rng(seed);
  Vector x(problem.lo.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double lo = problem.lo[i];
    const double hi = problem.hi[i];
    if (hi < lo) throw InputError("sample_initial_point: malformed box");
    const double u = std::generate_canonical<double, 53>(rng);
    x[i] = std::clamp(lo + (hi - lo) * u, lo, hi);
  }
  return x;
}

namespace {

struct RiddersColumn {
  Vector derivative;
  Vector error;
};

// Ridders' polynomial extrapolation of central differences for one column.
RiddersColumn ridders_column(const Problem& problem, const Vector& x, int j) {
  constexpr int kLevels = 10;
  constexpr double kShrink = 1.4;
  constexpr double kShrink2 = kShrink * kShrink;
  const int m = problem.m;
  std::vector<std::vector<Vector>> table(kLevels, std::vector<Vector>(kLevels));
  Vector xp = x;
  Vector xm = x;
  auto central = [&](double h) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    Vector d = (problem.eval_objectives(xp) - problem.eval_objectives(xm)) / (xp[j] - xm[j]);
    xp[j] = x[j];
    xm[j] = x[j];
    return d;
  };

  double h = 2e-2;
  const Vector f0 = problem.eval_objectives(x);
  RiddersColumn out{central(h), Vector::Constant(m, std::numeric_limits<double>::infinity())};
  Vector step = Vector::Constant(m, h);
  table[0][0] = out.derivative;
  for (int i = 1; i < kLevels; ++i) {
    h /= kShrink;
    table[0][i] = central(h);
    double fac = kShrink2;
    Vector level_err = Vector::Constant(m, std::numeric_limits<double>::infinity());
    for (int k = 1; k <= i; ++k) {
      table[k][i] = (table[k - 1][i] * fac - table[k - 1][i - 1]) / (fac - 1.0);
      fac *= kShrink2;
      for (int r = 0; r < m; ++r) {
        const double e = std::max(std::abs(table[k][i][r] - table[k - 1][i][r]),
                                  std::abs(table[k][i][r] - table[k - 1][i - 1][r]));
        if (e <= out.error[r]) {
          out.error[r] = e;
          out.derivative[r] = table[k][i][r];
          step[r] = h;
        }
      }
    }
    for (int r = 0; r < m; ++r) {
      level_err[r] = std::abs(table[i][i][r] - table[i - 1][i - 1][r]);
    }
    // stop once the highest-order estimate is clearly worse than the best
    if ((level_err.array() >= 2.0 * out.error.array()).all()) break;
  }
  // the estimate cannot be better than the roundoff in f at that step
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  for (int r = 0; r < m; ++r) {
    out.error[r] += 16.0 * kEps * std::max(1.0, std::abs(f0[r])) / step[r];
  }
  return out;
}

}  // namespace

std::vector<JacobianMismatch> check_jacobian(const Problem& problem, const Vector& x,
                                             double rel_tol, double abs_floor) {
  const Matrix J = problem.eval_jacobian(x);
  if (J.rows() != problem.m || J.cols() != problem.n) {
    return {JacobianMismatch{-1, -1, static_cast<double>(J.rows()),
                             static_cast<double>(J.cols())}};
  }
  std::vector<JacobianMismatch> bad;
  for (int j = 0; j < problem.n; ++j) {
    const RiddersColumn col = ridders_column(problem, x, j);
    for (int i = 0; i < problem.m; ++i) {
      const double numeric = col.derivative[i];
      const double analytic = J(i, j);
      const double diff = std::abs(numeric - analytic);
      const double scale = std::max(std::abs(numeric), std::abs(analytic));
      if (!(diff <= rel_tol * scale + std::max(abs_floor, col.error[i]))) {
        bad.push_back({i, j, analytic, numeric, col.error[i]});
      }
    }
  }
  return bad;
}

}  // namespace vecopt
