#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <utility>

namespace hyplap {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

Vector make_vector(std::initializer_list<double> coords);

/// Unit coordinate vector e_k (0-based k) in R^n.
Vector unit_vector(int n, int k);

/// Throws DomainError unless dim >= min_dim and every coordinate is finite.
void validate_vector(const Vector& v, int min_dim = 2);

/// A point of the open unit ball B^n.
class BallPoint {
 public:
  explicit BallPoint(Vector v);
  [[nodiscard]] const Vector& v() const { return v_; }
  [[nodiscard]] int dim() const { return static_cast<int>(v_.size()); }
  [[nodiscard]] double norm_sq() const { return v_.squaredNorm(); }
  /// 1 - |x|^2, the factor every hyperbolic weight is built from.
  [[nodiscard]] double defect() const { return 1.0 - v_.squaredNorm(); }

 private:
  Vector v_;
};

/// A point of S^{n-1}. Inputs within 1e-8 of the sphere are renormalized.
class SpherePoint {
 public:
  explicit SpherePoint(Vector v);
  /// Normalizes an arbitrary non-zero direction.
  static SpherePoint from_direction(const Vector& direction);
  [[nodiscard]] const Vector& v() const { return v_; }
  [[nodiscard]] int dim() const { return static_cast<int>(v_.size()); }

 private:
  Vector v_;
};

/// T_a for sign = +1, and the involution phi_a = -T_a for sign = -1.
struct MobiusMap {
  BallPoint center;
  int sign = 1;

  static MobiusMap T(const BallPoint& a) { return MobiusMap{a, 1}; }
  static MobiusMap phi(const BallPoint& a) { return MobiusMap{a, -1}; }

  [[nodiscard]] Vector operator()(const Vector& x) const;
};

/// Inversion in the unit sphere, a / |a|^2.
Vector inversion(const Vector& a);

/// Orthogonal projection onto span{x}: Q(x)_ij = x_i x_j / |x|^2.
Matrix projection_matrix(const Vector& x);

/// [x,a]^2 = 1 + |x|^2 |a|^2 - 2 x.a, evaluated as |x-a|^2 + (1-|x|^2)(1-|a|^2)
/// and clamped at zero.
double bracket_sq(const Vector& x, const Vector& a);
double bracket(const Vector& x, const Vector& a);

/// T_a x = [(1-|a|^2)(x-a) - |x-a|^2 a] / [x,a]^2, negated for sign -1.
Vector mobius_apply(const MobiusMap& m, const Vector& x);

/// |T_y'(x)| = (1-|y|^2) / [x,y]^2.
double conformal_factor(const BallPoint& y, const Vector& x);

/// 1 - |T_a x|^2 = (1-|a|^2)(1-|x|^2) / [x,a]^2.
double one_minus_image_sq(const BallPoint& a, const BallPoint& x);

/// |T_y x| = |x - y| / [x,y] (the pseudo-hyperbolic distance).
double pseudo_hyperbolic_distance(const Vector& x, const Vector& y);

/// d_h(a,b) = log((1+s)/(1-s)) with s = |phi_a(b)|.
double hyperbolic_distance(const BallPoint& a, const BallPoint& b);

/// (|x-y|/[x,y], |gx-gy|/[gx,gy]) for g = T_{gamma_param}.
std::pair<double, double> distance_ratio_invariance(const BallPoint& gamma_param, const BallPoint& x,
                                                    const BallPoint& y);

/// Orthogonal matrix whose last column is axis/|axis|.
Matrix orthonormal_frame(const Vector& axis);

}  // namespace hyplap
