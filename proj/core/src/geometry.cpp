#include "hyplap/geometry.hpp"

#include "hyplap/errors.hpp"

#include <cmath>
#include <string>

namespace hyplap {

Vector make_vector(std::initializer_list<double> coords) {
  Vector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v(i++) = c;
  return v;
}

Vector unit_vector(int n, int k) {
  Vector e = Vector::Zero(n);
  e(k) = 1.0;
  return e;
}

void validate_vector(const Vector& v, int min_dim) {
  if (v.size() < min_dim) {
    throw DomainError("vector dimension " + std::to_string(v.size()) + " below minimum " +
                      std::to_string(min_dim));
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i))) throw DomainError("non-finite coordinate at index " + std::to_string(i));
  }
}

BallPoint::BallPoint(Vector v) : v_(std::move(v)) {
  validate_vector(v_);
  if (v_.squaredNorm() >= 1.0) throw DomainError("point is not inside the open unit ball");
}

SpherePoint::SpherePoint(Vector v) : v_(std::move(v)) {
  validate_vector(v_);
  const double r = v_.norm();
  if (std::abs(r - 1.0) > 1e-8) throw DomainError("point is not on the unit sphere");
  v_ /= r;
}

SpherePoint SpherePoint::from_direction(const Vector& direction) {
  const double r = direction.norm();
  if (!(r > 0.0)) throw DomainError("zero direction");
  return SpherePoint(direction / r);
}

Vector MobiusMap::operator()(const Vector& x) const { return mobius_apply(*this, x); }

Vector inversion(const Vector& a) {
  const double a2 = a.squaredNorm();
  if (a2 == 0.0) throw DomainError("inversion of the origin (point at infinity)");
  return a / a2;
}

Matrix projection_matrix(const Vector& x) {
  const double x2 = x.squaredNorm();
  if (x2 == 0.0) throw DomainError("projection onto the zero vector");
  return (x * x.transpose()) / x2;
}

double bracket_sq(const Vector& x, const Vector& a) {
  const double v = (x - a).squaredNorm() + (1.0 - x.squaredNorm()) * (1.0 - a.squaredNorm());
  return v > 0.0 ? v : 0.0;
}

double bracket(const Vector& x, const Vector& a) { return std::sqrt(bracket_sq(x, a)); }

Vector mobius_apply(const MobiusMap& m, const Vector& x) {
  const Vector& a = m.center.v();
  if (x.size() != a.size()) throw DomainError("dimension mismatch in Mobius map");
  const double b2 = bracket_sq(x, a);
  if (!(b2 > 0.0)) throw SingularityError("Mobius map evaluated where [x,a] = 0");
  const Vector d = x - a;
  Vector out = ((1.0 - a.squaredNorm()) * d - d.squaredNorm() * a) / b2;
  if (m.sign < 0) out = -out;
  return out;
}

double conformal_factor(const BallPoint& y, const Vector& x) {
  const double b2 = bracket_sq(x, y.v());
  if (!(b2 > 0.0)) throw SingularityError("conformal factor evaluated where [x,y] = 0");
  return y.defect() / b2;
}

double one_minus_image_sq(const BallPoint& a, const BallPoint& x) {
  return a.defect() * x.defect() / bracket_sq(x.v(), a.v());
}

double pseudo_hyperbolic_distance(const Vector& x, const Vector& y) {
  const double b2 = bracket_sq(x, y);
  if (!(b2 > 0.0)) throw SingularityError("pseudo-hyperbolic distance with [x,y] = 0");
  return (x - y).norm() / std::sqrt(b2);
}

double hyperbolic_distance(const BallPoint& a, const BallPoint& b) {
  const double s = pseudo_hyperbolic_distance(a.v(), b.v());
  // 1 - s^2 from the exact identity avoids cancellation for far-apart points.
  const double q = one_minus_image_sq(a, b);
  return 2.0 * std::log1p(s) - std::log(q);
}

std::pair<double, double> distance_ratio_invariance(const BallPoint& gamma_param, const BallPoint& x,
                                                    const BallPoint& y) {
  const auto g = MobiusMap::T(gamma_param);
  const Vector gx = g(x.v());
  const Vector gy = g(y.v());
  return {pseudo_hyperbolic_distance(x.v(), y.v()), pseudo_hyperbolic_distance(gx, gy)};
}

Matrix orthonormal_frame(const Vector& axis) {
  const Eigen::Index n = axis.size();
  const double len = axis.norm();
  if (!(len > 0.0)) throw DomainError("frame axis must be non-zero");
  const Vector u = axis / len;
  // Householder reflection H with H e_n = u; columns of H are orthonormal.
  Vector w = u - unit_vector(static_cast<int>(n), static_cast<int>(n - 1));
  Matrix h = Matrix::Identity(n, n);
  const double w2 = w.squaredNorm();
  if (w2 > 1e-30) h -= 2.0 * (w * w.transpose()) / w2;
  return h;
}

}  // namespace hyplap
