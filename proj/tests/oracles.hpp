#pragma once

// Test-side reference computations, written independently of the library.

#include "hyplap/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>

namespace oracle {

using Vec = Eigen::VectorXd;

inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                          double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  const double floor = 1e-15 * (std::abs(left) + std::abs(right));
  if (depth <= 0 || std::abs(diff) <= std::max(15.0 * tol, floor)) return left + right + diff / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-13,
                      int depth = 24) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// Adaptive Simpson after splitting [a, b] geometrically toward a.
inline double simpson_graded(const std::function<double(double)>& f, double a, double b, int pieces = 40,
                             double tol = 1e-14) {
  double sum = 0.0;
  double hi = b;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + (hi - a) * 0.5;
    sum += simpson(f, lo, hi, tol);
    hi = lo;
  }
  return sum + simpson(f, a, hi, tol);
}

/// Plain trapezoid-free midpoint sum with N cells, for smooth periodic checks.
inline double midpoint(const std::function<double(double)>& f, double a, double b, int cells) {
  const double h = (b - a) / cells;
  double s = 0.0;
  for (int i = 0; i < cells; ++i) s += f(a + (i + 0.5) * h);
  return s * h;
}

/// Central-difference gradient.
inline Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double h) {
  Vec g(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    Vec p = x;
    Vec m = x;
    p(k) += h;
    m(k) -= h;
    g(k) = (f(p) - f(m)) / (2.0 * h);
  }
  return g;
}

/// Uniform random point in the ball of radius r_max.
inline Vec random_ball(hyplap::Rng& rng, int n, double r_max) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal();
  v.normalize();
  return v * (r_max * std::pow(rng.uniform(), 1.0 / n));
}

inline Vec random_sphere(hyplap::Rng& rng, int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal();
  return v.normalized();
}

}  // namespace oracle
