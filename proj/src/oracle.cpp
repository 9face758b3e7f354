#include "vecopt/oracle.hpp"

#include <algorithm>

#include <Eigen/Dense>

#include "vecopt/scalarize.hpp"

namespace vecopt {

namespace {

double primal(const Matrix& jacobian, const OrderingSpec& ordering, const Vector& d) {
  return lambda(jacobian, d, ordering) + 0.5 * d.squaredNorm();
}

}  // namespace

OracleMinimum grid_steepest(const Matrix& jacobian, const OrderingSpec& ordering,
                            int points_per_dim, double shrink, double final_width) {
  const Matrix a = jacobian.transpose() * ordering.generators();
  const auto p = static_cast<int>(a.cols());
  if (p < 1 || p > 3) throw InputError("grid_steepest: need 1..3 generators");
  if (points_per_dim < 3) throw InputError("grid_steepest: need >= 3 points per dim");
  if (!(shrink > 0.0 && shrink < 1.0)) throw InputError("grid_steepest: shrink in (0, 1)");

  // free coordinates w_1..w_{p-1}; the last weight closes the simplex
  const int k = p - 1;
  Vector best_w = Vector::Constant(p, 1.0 / p);
  double best = 0.5 * (a * best_w).squaredNorm();
  if (k > 0) {
    Vector center = best_w.head(k);
    double radius = 1.0;
    std::vector<int> idx(k);
    Vector w(p);
    while (true) {
      const double h = 2.0 * radius / (points_per_dim - 1);
      std::fill(idx.begin(), idx.end(), 0);
      while (true) {
        double sum = 0.0;
        for (int i = 0; i < k; ++i) {
          w[i] = std::clamp(center[i] - radius + h * idx[i], 0.0, 1.0);
          sum += w[i];
        }
        if (sum <= 1.0) {
          w[k] = 1.0 - sum;
          const double v = 0.5 * (a * w).squaredNorm();
          if (v < best) {
            best = v;
            best_w = w;
          }
        }
        int i = 0;
        while (i < k && ++idx[i] == points_per_dim) idx[i++] = 0;
        if (i == k) break;
      }
      if (h < final_width) break;
      center = best_w.head(k);
      radius *= shrink;
    }
  }
  const Vector d = -a * best_w;
  return {d, primal(jacobian, ordering, d)};
}

OracleMinimum active_set_steepest(const Matrix& jacobian, const OrderingSpec& ordering) {
  const Matrix a = jacobian.transpose() * ordering.generators();
  const auto p = static_cast<int>(a.cols());
  if (p < 1 || p > 12) throw InputError("active_set_steepest: need 1..12 generators");
  const auto n = a.rows();

  OracleMinimum best{Vector::Zero(n), primal(jacobian, ordering, Vector::Zero(n))};
  for (unsigned mask = 1; mask < (1u << p); ++mask) {
    std::vector<int> cols;
    for (int j = 0; j < p; ++j) {
      if (mask & (1u << j)) cols.push_back(j);
    }
    const auto k = static_cast<Eigen::Index>(cols.size());
    Matrix as(n, k);
    for (Eigen::Index i = 0; i < k; ++i) as.col(i) = a.col(cols[i]);
    // [G 1; 1^T 0] [w; t] = [0; 1]
    Matrix kkt = Matrix::Zero(k + 1, k + 1);
    kkt.topLeftCorner(k, k) = as.transpose() * as;
    kkt.block(0, k, k, 1).setOnes();
    kkt.block(k, 0, 1, k).setOnes();
    Vector rhs = Vector::Zero(k + 1);
    rhs[k] = 1.0;
    const Vector w = kkt.completeOrthogonalDecomposition().solve(rhs).head(k);
    if (!w.allFinite() || w.minCoeff() < -1e-12 || std::abs(w.sum() - 1.0) > 1e-9) continue;
    const Vector d = -as * w;
    const double v = primal(jacobian, ordering, d);
    if (v < best.value) best = {d, v};
  }
  return best;
}

}  // namespace vecopt
