#include "vecopt/problems.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>
#include "json.hpp"

namespace vecopt {
namespace {

constexpr double kPi = std::numbers::pi;

Problem base(std::string name, int n, int m, const Vector& lo, const Vector& hi, bool convex) {
  Problem p;
  p.name = std::move(name);
  p.n = n;
  p.m = m;
  p.lo = lo;
  p.hi = hi;
  p.convex = convex;
  return p;
}

Problem cube(std::string name, int n, int m, double lo, double hi, bool convex) {
  return base(std::move(name), n, m, Vector::Constant(n, lo), Vector::Constant(n, hi), convex);
}

// exp(s * (-(x1 - c1)^2 - (x2 - c2)^2)) and its gradient.
struct Bump {
  double c1, c2, s, weight;
};

double bump_value(const Bump& b, const Vector& x) {
  return b.weight * std::exp(b.s * (-(x[0] - b.c1) * (x[0] - b.c1) - (x[1] - b.c2) * (x[1] - b.c2)));
}

void add_bump_gradient(const Bump& b, const Vector& x, Matrix& J, int i) {
  const double v = bump_value(b, x);
  J(i, 0) += v * b.s * (-2.0 * (x[0] - b.c1));
  J(i, 1) += v * b.s * (-2.0 * (x[1] - b.c2));
}

}  // namespace

// Worked two-objective example with a non-descent PRP+ direction:
//   f1 = (x1^2 + sin x2) / 2,  f2 = ((x1 - 1)^2 - (x2 - 1)^2) / 2.
Problem make_ex1() {
  Problem p = cube("EX1", 2, 2, -2.0, 2.0, false);
  p.eval_objectives = [](const Vector& x) {
    Vector f(2);
    f << (x[0] * x[0] + std::sin(x[1])) / 2.0,
        ((x[0] - 1.0) * (x[0] - 1.0) - (x[1] - 1.0) * (x[1] - 1.0)) / 2.0;
    return f;
  };
  p.eval_jacobian = [](const Vector& x) {
    Matrix J(2, 2);
    J << x[0], std::cos(x[1]) / 2.0,
        x[0] - 1.0, -(x[1] - 1.0);
    return J;
  };
  return p;
}

// AP3:
//   f1 = ((x1 - 1)^4 + 2 (x2 - 2)^4) / 4,  f2 = (x2 - x1^2)^2 + (1 - x1)^2.
Problem make_ap3() {
  Problem p = cube("AP3", 2, 2, -2.0, 2.0, false);
  p.eval_objectives = [](const Vector& x) {
    Vector f(2);
    f << 0.25 * (std::pow(x[0] - 1.0, 4) + 2.0 * std::pow(x[1] - 2.0, 4)),
        std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
    return f;
  };
  p.eval_jacobian = [](const Vector& x) {
    const double r = x[1] - x[0] * x[0];
    Matrix J(2, 2);
    J << std::pow(x[0] - 1.0, 3), 2.0 * std::pow(x[1] - 2.0, 3),
        -4.0 * x[0] * r - 2.0 * (1.0 - x[0]), 2.0 * r;
    return J;
  };
  return p;
}

// Far1, sums of Gaussian bumps:
//   f1 = -2 e^{15(-(x1-0.1)^2 - x2^2)} - e^{20(-(x1-0.6)^2 - (x2-0.6)^2)}
//        + e^{20(-(x1+0.6)^2 - (x2-0.6)^2)} + e^{20(-(x1-0.6)^2 - (x2+0.6)^2)}
//        + e^{20(-(x1+0.6)^2 - (x2+0.6)^2)},
//   f2 =  2 e^{20(-x1^2 - x2^2)} + e^{20(-(x1-0.4)^2 - (x2-0.6)^2)}
//        - e^{20(-(x1+0.5)^2 - (x2-0.7)^2)} - e^{20(-(x1-0.5)^2 - (x2+0.7)^2)}
//        + e^{20(-(x1+0.4)^2 - (x2+0.8)^2)}.
Problem make_far1() {
  static const std::vector<Bump> f1 = {{0.1, 0.0, 15.0, -2.0},
                                       {0.6, 0.6, 20.0, -1.0},
                                       {-0.6, 0.6, 20.0, 1.0},
                                       {0.6, -0.6, 20.0, 1.0},
                                       {-0.6, -0.6, 20.0, 1.0}};
  static const std::vector<Bump> f2 = {{0.0, 0.0, 20.0, 2.0},
                                       {0.4, 0.6, 20.0, 1.0},
                                       {-0.5, 0.7, 20.0, -1.0},
                                       {0.5, -0.7, 20.0, -1.0},
                                       {0.4, -0.8, 20.0, 1.0}};
  Problem p = cube("Far1", 2, 2, -1.0, 1.0, false);
  p.eval_objectives = [](const Vector& x) {
    Vector f = Vector::Zero(2);
    for (const Bump& b : f1) f[0] += bump_value(b, x);
    for (const Bump& b : f2) f[1] += bump_value(b, x);
    return f;
  };
  p.eval_jacobian = [](const Vector& x) {
    Matrix J = Matrix::Zero(2, 2);
    for (const Bump& b : f1) add_bump_gradient(b, x, J, 0);
    for (const Bump& b : f2) add_bump_gradient(b, x, J, 1);
    return J;
  };
  return p;
}

// FDS, convex, m = 3:
//   f1 = (1/n^2) sum_i i (x_i - i)^4
//   f2 = exp(sum_i x_i / n) + |x|^2
//   f3 = (1/(n(n+1))) sum_i i (n - i + 1) exp(-x_i)
// with 1-based i.
Problem make_fds(int n) {
  if (n < 1) throw InputError("FDS: n must be positive");
  Problem p = cube(fmt::format("FDS(n={})", n), n, 3, -2.0, 2.0, true);
  p.eval_objectives = [n](const Vector& x) {
    const double dn = n;
    double f1 = 0.0, f3 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double i = j + 1;
      f1 += i * std::pow(x[j] - i, 4);
      f3 += i * (dn - i + 1.0) * std::exp(-x[j]);
    }
    Vector f(3);
    f << f1 / (dn * dn), std::exp(x.sum() / dn) + x.squaredNorm(), f3 / (dn * (dn + 1.0));
    return f;
  };
  p.eval_jacobian = [n](const Vector& x) {
    const double dn = n;
    const double e = std::exp(x.sum() / dn) / dn;
    Matrix J(3, n);
    for (int j = 0; j < n; ++j) {
      const double i = j + 1;
      J(0, j) = 4.0 * i * std::pow(x[j] - i, 3) / (dn * dn);
      J(1, j) = e + 2.0 * x[j];
      J(2, j) = -i * (dn - i + 1.0) * std::exp(-x[j]) / (dn * (dn + 1.0));
    }
    return J;
  };
  return p;
}

// Hil1:
//   a = (2 pi / 360)(45 + 40 sin(2 pi x1) + 25 sin(2 pi x2)),
//   b = 1 + 0.5 cos(2 pi x1),
//   f1 = cos(a) b,  f2 = sin(a) b.
Problem make_hil1() {
  Problem p = cube("Hil1", 2, 2, 0.0, 1.0, false);
  p.eval_objectives = [](const Vector& x) {
    const double a =
        2.0 * kPi / 360.0 * (45.0 + 40.0 * std::sin(2.0 * kPi * x[0]) + 25.0 * std::sin(2.0 * kPi * x[1]));
    const double b = 1.0 + 0.5 * std::cos(2.0 * kPi * x[0]);
    Vector f(2);
    f << std::cos(a) * b, std::sin(a) * b;
    return f;
  };
  p.eval_jacobian = [](const Vector& x) {
    const double c = 2.0 * kPi / 360.0;
    const double a = c * (45.0 + 40.0 * std::sin(2.0 * kPi * x[0]) + 25.0 * std::sin(2.0 * kPi * x[1]));
    const double b = 1.0 + 0.5 * std::cos(2.0 * kPi * x[0]);
    const double da1 = c * 40.0 * 2.0 * kPi * std::cos(2.0 * kPi * x[0]);
    const double da2 = c * 25.0 * 2.0 * kPi * std::cos(2.0 * kPi * x[1]);
    const double db1 = -0.5 * 2.0 * kPi * std::sin(2.0 * kPi * x[0]);
    Matrix J(2, 2);
    J << -std::sin(a) * b * da1 + std::cos(a) * db1, -std::sin(a) * b * da2,
        std::cos(a) * b * da1 + std::sin(a) * db1, std::cos(a) * b * da2;
    return J;
  };
  return p;
}

// Lov3: f1 = x1^2 + x2^2,  f2 = (x1 - 6)^2 - (x2 + 0.3)^2.
Problem make_lov3() {
  Problem p = cube("Lov3", 2, 2, -100.0, 100.0, false);
  p.eval_objectives = [](const Vector& x) {
    Vector f(2);
    f << x[0] * x[0] + x[1] * x[1], (x[0] - 6.0) * (x[0] - 6.0) - (x[1] + 0.3) * (x[1] + 0.3);
    return f;
  };
  p.eval_jacobian = [](const Vector& x) {
    Matrix J(2, 2);
    J << 2.0 * x[0], 2.0 * x[1],
        2.0 * (x[0] - 6.0), -2.0 * (x[1] + 0.3);
    return J;
  };
  return p;
}

// Lov4:
//   f1 = x1^2 + x2^2 + 4 (exp(-(x1+2)^2 - x2^2) + exp(-(x1-2)^2 - x2^2)),
//   f2 = (x1 - 6)^2 + (x2 + 0.5)^2.
Problem make_lov4() {
  Problem p = cube("Lov4", 2, 2, -100.0, 100.0, false);
  p.eval_objectives = [](const Vector& x) {
    const double g1 = std::exp(-(x[0] + 2.0) * (x[0] + 2.0) - x[1] * x[1]);
    const double g2 = std::exp(-(x[0] - 2.0) * (x[0] - 2.0) - x[1] * x[1]);
    Vector f(2);
    f << x[0] * x[0] + x[1] * x[1] + 4.0 * (g1 + g2),
        (x[0] - 6.0) * (x[0] - 6.0) + (x[1] + 0.5) * (x[1] + 0.5);
    return f;
  };
  p.eval_jacobian = [](const Vector& x) {
    const double g1 = std::exp(-(x[0] + 2.0) * (x[0] + 2.0) - x[1] * x[1]);
    const double g2 = std::exp(-(x[0] - 2.0) * (x[0] - 2.0) - x[1] * x[1]);
    Matrix J(2, 2);
    J << 2.0 * x[0] - 8.0 * ((x[0] + 2.0) * g1 + (x[0] - 2.0) * g2),
        2.0 * x[1] - 8.0 * x[1] * (g1 + g2),
        2.0 * (x[0] - 6.0), 2.0 * (x[1] + 0.5);
    return J;
  };
  return p;
}

// Brown and Dennis function, one objective per
// residual pair: t_i = i / 5,
//   f_i = (x1 + t_i x2 - e^{t_i})^2 + (x3 + x4 sin t_i - cos t_i)^2.
Problem make_mgh16(int m) {
  if (m < 1) throw InputError("MGH16: m must be positive");
  Vector lo(4), hi(4);
  lo << -25.0, -5.0, -5.0, -1.0;
  hi << 25.0, 5.0, 5.0, 1.0;
  Problem p = base(fmt::format("MGH16(m={})", m), 4, m, lo, hi, false);
  p.eval_objectives = [m](const Vector& x) {
    Vector f(m);
    for (int i = 0; i < m; ++i) {
      const double t = (i + 1) / 5.0;
      const double r1 = x[0] + t * x[1] - std::exp(t);
      const double r2 = x[2] + x[3] * std::sin(t) - std::cos(t);
      f[i] = r1 * r1 + r2 * r2;
    }
    return f;
  };
  p.eval_jacobian = [m](const Vector& x) {
    Matrix J(m, 4);
    for (int i = 0; i < m; ++i) {
      const double t = (i + 1) / 5.0;
      const double r1 = x[0] + t * x[1] - std::exp(t);
      const double r2 = x[2] + x[3] * std::sin(t) - std::cos(t);
      J(i, 0) = 2.0 * r1;
      J(i, 1) = 2.0 * r1 * t;
      J(i, 2) = 2.0 * r2;
      J(i, 3) = 2.0 * r2 * std::sin(t);
    }
    return J;
  };
  return p;
}

// Trigonometric function, n = m = 4:
//   f_i = (n - sum_j cos x_j + i (1 - cos x_i) - sin x_i)^2.
Problem make_mgh26() {
  static constexpr int n = 4;
  Problem p = cube("MGH26", 4, 4, -1.0, 1.0, false);
  auto residuals = [](const Vector& x) {
    const double cos_sum = x.array().cos().sum();
    Vector r(n);
    for (int j = 0; j < n; ++j) {
      const double i = j + 1;
      r[j] = n - cos_sum + i * (1.0 - std::cos(x[j])) - std::sin(x[j]);
    }
    return r;
  };
  p.eval_objectives = [residuals](const Vector& x) {
    return Vector(residuals(x).array().square());
  };
  p.eval_jacobian = [residuals](const Vector& x) {
    const Vector r = residuals(x);
    Matrix J(n, n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        double dr = std::sin(x[b]);
        if (a == b) dr += (a + 1) * std::sin(x[a]) - std::cos(x[a]);
        J(a, b) = 2.0 * r[a] * dr;
      }
    }
    return J;
  };
  return p;
}

// MMR5, Rastrigin-type:
//   f1 = ((1/n) sum_i (x_i^2 - 10 cos(2 pi x_i) + 10))^{1/4},
//   f2 = ((1/n) sum_i ((x_i - 1.5)^2 - 10 cos(2 pi (x_i - 1.5)) + 10))^{1/4}.
// The gradient is unbounded at the two global minimisers x = 0 and x = 1.5.
Problem make_mmr5(int n, double half_width) {
  if (n < 1) throw InputError("MMR5: n must be positive");
  Problem p = cube(fmt::format("MMR5(n={})", n), n, 2, -half_width, half_width, false);
  auto inner = [n](const Vector& x, double shift) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      const double y = x[j] - shift;
      s += y * y - 10.0 * std::cos(2.0 * kPi * y) + 10.0;
    }
    return s / n;
  };
  p.eval_objectives = [inner](const Vector& x) {
    Vector f(2);
    f << std::pow(inner(x, 0.0), 0.25), std::pow(inner(x, 1.5), 0.25);
    return f;
  };
  p.eval_jacobian = [n, inner](const Vector& x) {
    Matrix J(2, n);
    for (int row = 0; row < 2; ++row) {
      const double shift = row == 0 ? 0.0 : 1.5;
      const double outer = 0.25 * std::pow(inner(x, shift), -0.75) / n;
      for (int j = 0; j < n; ++j) {
        const double y = x[j] - shift;
        J(row, j) = outer * (2.0 * y + 20.0 * kPi * std::sin(2.0 * kPi * y));
      }
    }
    return J;
  };
  return p;
}

// MOP5, r = x1^2 + x2^2:
//   f1 = r / 2 + sin r,
//   f2 = (3 x1 - 2 x2 + 4)^2 / 8 + (x1 - x2 + 1)^2 / 27 + 15,
//   f3 = 1 / (r + 1) - 1.1 exp(-r).
Problem make_mop5() {
  Problem p = cube("MOP5", 2, 3, -1.0, 1.0, false);
  p.eval_objectives = [](const Vector& x) {
    const double r = x.squaredNorm();
    const double u = 3.0 * x[0] - 2.0 * x[1] + 4.0;
    const double v = x[0] - x[1] + 1.0;
    Vector f(3);
    f << 0.5 * r + std::sin(r), u * u / 8.0 + v * v / 27.0 + 15.0,
        1.0 / (r + 1.0) - 1.1 * std::exp(-r);
    return f;
  };
  p.eval_jacobian = [](const Vector& x) {
    const double r = x.squaredNorm();
    const double u = 3.0 * x[0] - 2.0 * x[1] + 4.0;
    const double v = x[0] - x[1] + 1.0;
    const double g1 = 0.5 + std::cos(r);
    const double g3 = -1.0 / ((r + 1.0) * (r + 1.0)) + 1.1 * std::exp(-r);
    Matrix J(3, 2);
    J << 2.0 * x[0] * g1, 2.0 * x[1] * g1,
        0.75 * u + 2.0 * v / 27.0, -0.5 * u - 2.0 * v / 27.0,
        2.0 * x[0] * g3, 2.0 * x[1] * g3;
    return J;
  };
  return p;
}

// MOP7, convex quadratics:
//   f1 = (x1 - 2)^2 / 2 + (x2 + 1)^2 / 13 + 3,
//   f2 = (x1 + x2 - 3)^2 / 36 + (-x1 + x2 + 2)^2 / 8 - 17,
//   f3 = (x1 + 2 x2 - 1)^2 / 175 + (-x1 + 2 x2)^2 / 17 - 13.
Problem make_mop7() {
  Problem p = cube("MOP7", 2, 3, -400.0, 400.0, true);
  p.eval_objectives = [](const Vector& x) {
    const double a = x[0] + x[1] - 3.0, b = -x[0] + x[1] + 2.0;
    const double c = x[0] + 2.0 * x[1] - 1.0, e = -x[0] + 2.0 * x[1];
    Vector f(3);
    f << (x[0] - 2.0) * (x[0] - 2.0) / 2.0 + (x[1] + 1.0) * (x[1] + 1.0) / 13.0 + 3.0,
        a * a / 36.0 + b * b / 8.0 - 17.0, c * c / 175.0 + e * e / 17.0 - 13.0;
    return f;
  };
  p.eval_jacobian = [](const Vector& x) {
    const double a = x[0] + x[1] - 3.0, b = -x[0] + x[1] + 2.0;
    const double c = x[0] + 2.0 * x[1] - 1.0, e = -x[0] + 2.0 * x[1];
    Matrix J(3, 2);
    J << x[0] - 2.0, 2.0 * (x[1] + 1.0) / 13.0,
        a / 18.0 - b / 4.0, a / 18.0 + b / 4.0,
        2.0 * c / 175.0 - 2.0 * e / 17.0, 4.0 * c / 175.0 + 4.0 * e / 17.0;
    return J;
  };
  return p;
}

// SLC2, convex, m = 2:
//   f1 = (x1 - 1)^4 + sum_{i != 1} (x_i - 1)^2,
//   f2 = (x2 + 1)^4 + sum_{i != 2} (x_i + 1)^2.
Problem make_slc2(int n, double half_width) {
  if (n < 2) throw InputError("SLC2: n must be at least 2");
  Problem p = cube(fmt::format("SLC2(n={})", n), n, 2, -half_width, half_width, true);
  p.eval_objectives = [](const Vector& x) {
    const double q1 = std::pow(x[0] - 1.0, 4) - (x[0] - 1.0) * (x[0] - 1.0);
    const double q2 = std::pow(x[1] + 1.0, 4) - (x[1] + 1.0) * (x[1] + 1.0);
    Vector f(2);
    f << (x.array() - 1.0).square().sum() + q1, (x.array() + 1.0).square().sum() + q2;
    return f;
  };
  p.eval_jacobian = [n](const Vector& x) {
    Matrix J(2, n);
    J.row(0) = 2.0 * (x.array() - 1.0).matrix().transpose();
    J.row(1) = 2.0 * (x.array() + 1.0).matrix().transpose();
    J(0, 0) = 4.0 * std::pow(x[0] - 1.0, 3);
    J(1, 1) = 4.0 * std::pow(x[1] + 1.0, 3);
    return J;
  };
  return p;
}

namespace {

struct Entry {
  ProblemInfo info;
  Problem (*make)();
};

Problem named(Problem p, const std::string& name) {
  p.name = name;
  return p;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {{"EX1", "EX1", 2, 2, false, "[-2,2]^n", false}, [] { return make_ex1(); }},
      {{"AP3", "AP3", 2, 2, false, "[-2,2]^n", false}, [] { return make_ap3(); }},
      {{"Far1", "Far1", 2, 2, false, "[-1,1]^n", false}, [] { return make_far1(); }},
      {{"FDS-1", "FDS", 2, 3, true, "[-2,2]^n", false},
       [] { return named(make_fds(2), "FDS-1"); }},
      {{"FDS-2", "FDS", 100, 3, true, "[-2,2]^n", false},
       [] { return named(make_fds(100), "FDS-2"); }},
      {{"FDS-3", "FDS", 150, 3, true, "[-2,2]^n", false},
       [] { return named(make_fds(150), "FDS-3"); }},
      {{"Hil1", "Hil1", 2, 2, false, "[0,1]^n", false}, [] { return make_hil1(); }},
      {{"Lov3", "Lov3", 2, 2, false, "[-100,100]^n", false}, [] { return make_lov3(); }},
      {{"Lov4", "Lov4", 2, 2, false, "[-100,100]^n", false}, [] { return make_lov4(); }},
      {{"MGH16-1", "MGH16", 4, 50, false, "[-25,25]x[-5,5]x[-5,5]x[-1,1]", false},
       [] { return named(make_mgh16(50), "MGH16-1"); }},
      {{"MGH16-2", "MGH16", 4, 100, false, "[-25,25]x[-5,5]x[-5,5]x[-1,1]", false},
       [] { return named(make_mgh16(100), "MGH16-2"); }},
      {{"MGH26", "MGH26", 4, 4, false, "[-1,1]^n", false}, [] { return make_mgh26(); }},
      {{"MMR5-1", "MMR5", 1000, 2, false, "[-10,10]^n", true},
       [] { return named(make_mmr5(1000, 10.0), "MMR5-1"); }},
      {{"MMR5-2", "MMR5", 200, 2, false, "[-100,100]^n", false},
       [] { return named(make_mmr5(200, 100.0), "MMR5-2"); }},
      {{"MOP5", "MOP5", 2, 3, false, "[-1,1]^n", false}, [] { return make_mop5(); }},
      {{"MOP7", "MOP7", 2, 3, true, "[-400,400]^n", false}, [] { return make_mop7(); }},
      {{"SLC2-1", "SLC2", 1000, 2, true, "[-10,10]^n", true},
       [] { return named(make_slc2(1000, 10.0), "SLC2-1"); }},
      {{"SLC2-2", "SLC2", 200, 2, true, "[-100,100]^n", false},
       [] { return named(make_slc2(200, 100.0), "SLC2-2"); }},
      {{"SLC2-3", "SLC2", 1000, 2, true, "[-100,100]^n", true},
       [] { return named(make_slc2(1000, 100.0), "SLC2-3"); }},
  };
  return table;
}

}  // namespace

const std::vector<ProblemInfo>& problem_catalog() {
  static const std::vector<ProblemInfo> catalog = [] {
    std::vector<ProblemInfo> out;
    for (const Entry& e : entries()) out.push_back(e.info);
    return out;
  }();
  return catalog;
}

std::vector<std::string> problem_names() {
  std::vector<std::string> names;
  for (const ProblemInfo& info : problem_catalog()) names.push_back(info.name);
  return names;
}

std::vector<std::string> minimum_roster() {
  return {"EX1", "FDS-1", "FDS-2", "FDS-3", "Hil1", "MOP5", "MOP7", "SLC2-2"};
}

Problem get_problem(std::string_view name, const ProblemVariant& variant) {
  const bool has_variant = variant.n.has_value() || variant.m.has_value();
  if (!has_variant) {
    for (const Entry& e : entries()) {
      if (e.info.name == name) return e.make();
    }
  }
  // Family lookup. Sizes default to the first table instance of the family.
  if (name == "FDS") {
    if (variant.m && *variant.m != 3) throw InputError("FDS has m = 3");
    return make_fds(variant.n.value_or(2));
  }
  if (name == "MMR5") {
    if (variant.m && *variant.m != 2) throw InputError("MMR5 has m = 2");
    return make_mmr5(variant.n.value_or(1000), 10.0);
  }
  if (name == "SLC2") {
    if (variant.m && *variant.m != 2) throw InputError("SLC2 has m = 2");
    return make_slc2(variant.n.value_or(1000), 10.0);
  }
  if (name == "MGH16") {
    if (variant.n && *variant.n != 4) throw InputError("MGH16 has n = 4");
    return make_mgh16(variant.m.value_or(50));
  }
  std::string valid;
  for (const ProblemInfo& info : problem_catalog()) {
    valid += (valid.empty() ? "" : ", ") + info.name;
  }
  throw LookupError(fmt::format("unknown problem '{}'{}; valid problems: {} (families FDS, MMR5, "
                                "SLC2 take n; MGH16 takes m)",
                                name, has_variant ? " with size override" : "", valid));
}

std::string problem_manifest_json() {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const ProblemInfo& info : problem_catalog()) {
    out.push_back({{"name", info.name},
                   {"family", info.family},
                   {"n", info.n},
                   {"m", info.m},
                   {"convex", info.convex},
                   {"box", info.box},
                   {"slow", info.slow}});
  }
  return out.dump(2);
}

}  // namespace vecopt
