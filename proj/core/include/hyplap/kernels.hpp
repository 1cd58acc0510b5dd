#pragma once

#include "hyplap/geometry.hpp"

#include <utility>
#include <vector>

namespace hyplap {

/// Closed form of g(r) = int_r^1 (1-t^2)^{n-2} / t^{n-1} dt for one dimension.
///
/// Small radii use the termwise-integrated binomial expansion (with a log
/// term when n is even). Radii above 1/2 use the substitution v = 1 - t^2,
/// g = 1/2 int_0^q v^{n-2} (1-v)^{-n/2} dv with q = 1 - r^2, which stays
/// accurate as r -> 1 where g = O((1-r)^{n-1}).
class GreenRadialTable {
 public:
  explicit GreenRadialTable(int n);

  [[nodiscard]] int dim() const { return n_; }
  /// Coefficient c_k of t^{2k-n+1} in the expansion, k = 0..n-2.
  [[nodiscard]] const std::vector<double>& coefficients() const { return coeff_; }

  /// g(r) for 0 < r < 1.
  [[nodiscard]] double value(double r) const;
  /// g(r) given both r and q = 1 - r^2 (q supplied accurately by the caller).
  [[nodiscard]] double value(double r, double q) const;
  /// g'(r) = -(1-r^2)^{n-2} / r^{n-1}.
  [[nodiscard]] double derivative(double r) const;

 private:
  int n_;
  std::vector<double> coeff_;
  std::vector<double> gl_nodes_;
  std::vector<double> gl_weights_;
};

/// Shared immutable table for dimension n (built on first use).
const GreenRadialTable& green_table(int n);

/// g(r), the radial profile of the Green function.
double green_radial(int n, double r);

/// G_h(x,y) = g(|T_y x|) / n. The 1/n matches the gradient formulas and the
/// reproduction f(a) = -int G_h(a,.) Delta_h f d tau.
double green_function(const BallPoint& x, const BallPoint& y);

/// ((1-|x|^2) / |t-x|^2)^{n-1}.
double poisson_kernel_ball(const BallPoint& x, const SpherePoint& t);
Vector poisson_kernel_ball_gradient(const BallPoint& x, const SpherePoint& t);

/// Euclidean Poisson kernel (1-|x|^2) / |x-t|^n for normalized sigma.
double euclidean_poisson_kernel_ball(const BallPoint& x, const SpherePoint& t);
Vector euclidean_poisson_kernel_ball_gradient(const BallPoint& x, const SpherePoint& t);

/// ((D_k G_h)_1, (D_k G_h)_2) with 0-based coordinate index k.
std::pair<double, double> green_gradient_parts(const BallPoint& x, const BallPoint& y, int k);

/// Full x-gradient of green_function.
Vector green_gradient(const BallPoint& x, const BallPoint& y);

struct KernelParams {
  double alpha = 0.0;
  double beta = 1.0;
};

void validate(const KernelParams& p);

/// (1-|x|^2)^alpha / |x-y|^{2 beta}.
double kernel_alpha_beta(const BallPoint& x, const SpherePoint& y, const KernelParams& p);

/// Y with the two displayed groupings: beta (<y,v> - a0)/E - alpha a0/d, and
/// beta <y,v>/E - b0 with b0 = (beta/E + alpha/d) a0.
double kernel_alpha_beta_y_split(const BallPoint& x, const Vector& v, const SpherePoint& y,
                                 const KernelParams& p);
double kernel_alpha_beta_y_folded(const BallPoint& x, const Vector& v, const SpherePoint& y,
                                  const KernelParams& p);

/// <grad_x P_{alpha,beta}(x,y), v> = 2 P Y, using the folded form of Y.
double kernel_alpha_beta_directional(const BallPoint& x, const Vector& v, const SpherePoint& y,
                                     const KernelParams& p);

}  // namespace hyplap
