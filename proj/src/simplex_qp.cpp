#include "vecopt/simplex_qp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace vecopt {
namespace {
constexpr double kKktTol = 1e-10;
}  // namespace

Vector project_to_simplex(const Vector& v) {
  const Eigen::Index p = v.size();
  if (p == 0) throw InputError("project_to_simplex: empty vector");
  std::vector<double> u(v.data(), v.data() + p);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double tau = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    cumsum += u[j];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) tau = t;
  }
  return (v.array() - tau).cwiseMax(0.0).matrix();
}

double simplex_qp_residual(const Matrix& gram, const Vector& w, double lipschitz) {
  const Vector step = w - gram * w / lipschitz;
  return (w - project_to_simplex(step)).lpNorm<Eigen::Infinity>();
}

double simplex_qp_kkt_violation(const Matrix& gram, const Vector& w) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const Vector g = gram * w;
  const double norm2 = w.dot(g);
  const Vector r = gram.diagonal().cwiseMax(0.0).cwiseSqrt();
  const double wr = w.cwiseAbs().dot(r);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    // roundoff in g_j is about eps |a_j| sum_k w_k |a_k|
    worst = std::max(worst, norm2 - g[j] - 64.0 * kEps * r[j] * wr);
  }
  if (worst <= 0.0) return 0.0;
  return worst / std::max(norm2, std::numeric_limits<double>::min());
}

namespace {

// Solves min 0.5 w_S^T G_SS w_S s.t. sum w_S = 1 on the given support via
// the bordered KKT system. Returns false if the solution leaves the simplex.
bool solve_on_support(const Matrix& gram, const std::vector<Eigen::Index>& support,
                      Vector& out, bool allow_negative = false) {
  const auto s = static_cast<Eigen::Index>(support.size());
  Matrix kkt = Matrix::Zero(s + 1, s + 1);
  Vector rhs = Vector::Zero(s + 1);
  for (Eigen::Index a = 0; a < s; ++a) {
    for (Eigen::Index b = 0; b < s; ++b) kkt(a, b) = gram(support[a], support[b]);
    kkt(a, s) = 1.0;
    kkt(s, a) = 1.0;
  }
  rhs[s] = 1.0;
  const Vector sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  out = Vector::Zero(gram.rows());
  if (!sol.allFinite()) return false;
  if (allow_negative) {
    for (Eigen::Index a = 0; a < s; ++a) out[support[a]] = sol[a];
    return true;
  }
  double total = 0.0;
  for (Eigen::Index a = 0; a < s; ++a) {
    if (sol[a] < 0.0) return false;
    out[support[a]] = sol[a];
    total += sol[a];
  }
  if (!(total > 0.0)) return false;
  out /= total;
  return true;
}

// Wolfe's min-norm-point method on the points a_j, driven by the Gram matrix
// alone. Keeps an affinely independent corral S and its barycentric weights.
Vector min_norm_point(const Matrix& gram, int max_major) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const Eigen::Index p = gram.rows();
  const Vector r = gram.diagonal().cwiseMax(0.0).cwiseSqrt();
  Eigen::Index start = 0;
  gram.diagonal().minCoeff(&start);
  std::vector<Eigen::Index> corral{start};
  Vector w = Vector::Zero(p);
  w[start] = 1.0;

  for (int major = 0; major < max_major; ++major) {
    const Vector g = gram * w;
    const double norm2 = w.dot(g);
    const double wr = w.dot(r);
    Eigen::Index j = 0;
    (g - 16.0 * kEps * wr * r).minCoeff(&j);
    if (g[j] >= norm2 * (1.0 - 1e-13) - 16.0 * kEps * r[j] * wr) break;
    if (std::find(corral.begin(), corral.end(), j) != corral.end()) break;  // stalled
    corral.push_back(j);

    for (int minor = 0; minor <= static_cast<int>(p); ++minor) {
      Vector v;
      solve_on_support(gram, corral, v, /*allow_negative=*/true);
      bool interior = true;
      for (Eigen::Index i : corral) interior = interior && v[i] > 0.0;
      if (interior) {
        w = v;
        break;
      }
      double step = 1.0;
      for (Eigen::Index i : corral) {
        if (v[i] <= 0.0 && w[i] - v[i] > 0.0) step = std::min(step, w[i] / (w[i] - v[i]));
      }
      w += step * (v - w);
      std::vector<Eigen::Index> kept;
      for (Eigen::Index i : corral) {
        if (w[i] > 1e-15) {
          kept.push_back(i);
        } else {
          w[i] = 0.0;
        }
      }
      corral = std::move(kept);
      w /= w.sum();
    }
  }
  return w;
}

// Wolfe's method again, on the points themselves. The affine step is a least
// squares problem in the differences a_k - a_b, which keeps its accuracy when
// the |a_j| span many orders of magnitude.
Vector min_norm_point_on_points(const Matrix& points, int max_major) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const Eigen::Index p = points.cols();
  const Vector r = points.colwise().norm().transpose();
  Eigen::Index start = 0;
  r.minCoeff(&start);
  std::vector<Eigen::Index> corral{start};
  Vector w = Vector::Zero(p);
  w[start] = 1.0;

  auto affine_min = [&](const std::vector<Eigen::Index>& set) {
    Eigen::Index base = 0;
    for (std::size_t k = 1; k < set.size(); ++k) {
      if (r[set[k]] < r[set[base]]) base = static_cast<Eigen::Index>(k);
    }
    const Vector& anchor = points.col(set[base]);
    Matrix diff(points.rows(), static_cast<Eigen::Index>(set.size()) - 1);
    Eigen::Index c = 0;
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (static_cast<Eigen::Index>(k) != base) diff.col(c++) = points.col(set[k]) - anchor;
    }
    const Vector t = diff.completeOrthogonalDecomposition().solve(-anchor);
    Vector v = Vector::Zero(p);
    c = 0;
    double rest = 0.0;
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (static_cast<Eigen::Index>(k) == base) continue;
      v[set[k]] = t[c];
      rest += t[c++];
    }
    v[set[base]] = 1.0 - rest;
    return v;
  };

  for (int major = 0; major < max_major; ++major) {
    const Vector x = points * w;
    const Vector g = points.transpose() * x;
    const double norm2 = x.squaredNorm();
    const double wr = w.dot(r);
    Eigen::Index j = 0;
    (g - 16.0 * kEps * wr * r).minCoeff(&j);
    if (g[j] >= norm2 * (1.0 - 1e-13) - 16.0 * kEps * r[j] * wr) break;
    if (std::find(corral.begin(), corral.end(), j) != corral.end()) break;  // stalled
    corral.push_back(j);

    for (int minor = 0; minor <= static_cast<int>(p); ++minor) {
      const Vector v = affine_min(corral);
      if (!v.allFinite()) return w;
      bool interior = true;
      for (Eigen::Index i : corral) interior = interior && v[i] > 0.0;
      if (interior) {
        w = v;
        break;
      }
      double step = 1.0;
      Eigen::Index blocking = -1;
      for (Eigen::Index i : corral) {
        if (v[i] <= 0.0 && w[i] - v[i] > 0.0 && w[i] / (w[i] - v[i]) <= step) {
          step = w[i] / (w[i] - v[i]);
          blocking = i;
        }
      }
      w += step * (v - w);
      if (blocking >= 0) w[blocking] = 0.0;
      std::vector<Eigen::Index> kept;
      for (Eigen::Index i : corral) {
        if (w[i] > 0.0) {
          kept.push_back(i);
        } else {
          w[i] = 0.0;
        }
      }
      if (kept.empty()) return w;
      corral = std::move(kept);
      w /= w.sum();
    }
  }
  return w;
}

}  // namespace

double simplex_qp_kkt_violation_points(const Matrix& points, const Vector& w) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const Vector x = points * w;
  const Vector g = points.transpose() * x;
  const double norm2 = x.squaredNorm();
  const Vector r = points.colwise().norm().transpose();
  const double wr = w.cwiseAbs().dot(r);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    worst = std::max(worst, norm2 - g[j] - 64.0 * kEps * r[j] * wr);
  }
  if (worst <= 0.0) return 0.0;
  return worst / std::max(norm2, std::numeric_limits<double>::min());
}

SimplexQpResult solve_simplex_qp_points(const Matrix& points, const SimplexQpOptions& options) {
  const Eigen::Index p = points.cols();
  if (p == 0) throw InputError("solve_simplex_qp_points: no points");
  if (p == 1) return {Vector::Ones(1), 0.0, 0};
  const Matrix gram = points.transpose() * points;
  const double lipschitz =
      Eigen::SelfAdjointEigenSolver<Matrix>(gram, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
  if (lipschitz > 0.0) {
    Vector w = min_norm_point_on_points(points, 10 * static_cast<int>(p) + 10);
    w = w.cwiseMax(0.0);
    w /= w.sum();
    const double residual = simplex_qp_residual(gram, w, lipschitz);
    if (residual <= options.tol && simplex_qp_kkt_violation_points(points, w) <= kKktTol) {
      return {w, residual, 0};
    }
  }
  return solve_simplex_qp(gram, options);
}

SimplexQpResult solve_simplex_qp(const Matrix& gram, const SimplexQpOptions& options) {
  const Eigen::Index p = gram.rows();
  if (p == 0 || gram.cols() != p) throw InputError("solve_simplex_qp: Gram matrix must be square");
  if (p == 1) return {Vector::Ones(1), 0.0, 0};

  const double lipschitz =
      Eigen::SelfAdjointEigenSolver<Matrix>(gram, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
  if (!(lipschitz > 0.0)) {
    // Every generator maps to the zero vector: any weight is optimal.
    return {Vector::Constant(p, 1.0 / static_cast<double>(p)), 0.0, 0};
  }

  // <= 1 when both the fixed-point residual and the relative KKT gap pass
  auto merit = [&](const Vector& v, double res) {
    return std::max(res / options.tol, simplex_qp_kkt_violation(gram, v) / kKktTol);
  };
  Vector w = min_norm_point(gram, 10 * static_cast<int>(p) + 10);
  double residual = simplex_qp_residual(gram, w, lipschitz);
  if (merit(w, residual) <= 1.0) return {w, residual, 0};
  // projected gradient from the active-set answer
  w = project_to_simplex(w);
  residual = simplex_qp_residual(gram, w, lipschitz);
  Vector best = w;
  double best_residual = residual;
  double best_merit = merit(w, residual);

  auto consider = [&](const Vector& v, double res) {
    const double m = merit(v, res);
    if (m < best_merit) {
      best = v;
      best_residual = res;
      best_merit = m;
      return true;
    }
    return false;
  };
  auto try_polish = [&]() {
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < p; ++i) {
      if (w[i] > 0.0) support.push_back(i);
    }
    Vector candidate;
    if (!solve_on_support(gram, support, candidate)) return;
    const double r = simplex_qp_residual(gram, candidate, lipschitz);
    if (consider(candidate, r)) {
      w = candidate;
      residual = r;
    }
  };

  try_polish();
  int it = 0;
  while (best_merit > 1.0 && it < options.max_iters) {
    ++it;
    w = project_to_simplex(w - gram * w / lipschitz);
    residual = simplex_qp_residual(gram, w, lipschitz);
    consider(w, residual);
    if (best_merit > 1.0 && options.polish_every > 0 && it % options.polish_every == 0) {
      try_polish();
    }
  }
  if (best_merit > 1.0) {
    throw SubproblemFailure(
        fmt::format("simplex QP: residual {:.3e}, KKT gap {:.3e} after {} iterations",
                    best_residual, simplex_qp_kkt_violation(gram, best), it),
        best, best_residual);
  }
  return {best, best_residual, it};
}

}  // namespace vecopt
