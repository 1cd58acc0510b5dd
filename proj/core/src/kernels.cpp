#include "hyplap/kernels.hpp"

#include "hyplap/errors.hpp"
#include "hyplap/quadrature.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>

namespace hyplap {

namespace {

constexpr int kMaxTableDim = 64;
constexpr int kQNodes = 24;

void check_dims(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DomainError("dimension mismatch");
}

}  // namespace

GreenRadialTable::GreenRadialTable(int n) : n_(n) {
  if (n < 2) throw DomainError("Green table needs n >= 2");
  coeff_.resize(static_cast<std::size_t>(n - 1));
  double binom = 1.0;
  for (int k = 0; k <= n - 2; ++k) {
    coeff_[static_cast<std::size_t>(k)] = (k % 2 == 0 ? 1.0 : -1.0) * binom;
    binom = binom * (n - 2 - k) / (k + 1);
  }
  const LineRule gl = gauss_legendre(kQNodes);
  for (int i = 0; i < kQNodes; ++i) {
    gl_nodes_.push_back(0.5 * (gl.nodes[i] + 1.0));
    gl_weights_.push_back(0.5 * gl.weights[i]);
  }
}

double GreenRadialTable::value(double r) const {
  if (!(r > 0.0) || !(r < 1.0)) throw DomainError("green_radial needs 0 < r < 1");
  return value(r, (1.0 - r) * (1.0 + r));
}

double GreenRadialTable::value(double r, double q) const {
  if (!(r > 0.0)) throw SingularityError("Green profile is singular at r = 0");
  if (r >= 1.0 || q <= 0.0) return 0.0;
  if (r < 0.5) {
    double sum = 0.0;
    for (int k = 0; k <= n_ - 2; ++k) {
      const int e1 = 2 * k - n_ + 2;  // exponent + 1
      const double c = coeff_[static_cast<std::size_t>(k)];
      if (e1 == 0) {
        sum -= c * std::log(r);
      } else {
        sum += c * (1.0 - std::pow(r, e1)) / e1;
      }
    }
    return sum;
  }
  // 1/2 q^{n-1} int_0^1 u^{n-2} (1 - q u)^{-n/2} du
  double acc = 0.0;
  for (int i = 0; i < kQNodes; ++i) {
    const double u = gl_nodes_[static_cast<std::size_t>(i)];
    acc += gl_weights_[static_cast<std::size_t>(i)] * std::pow(u, n_ - 2) * std::pow(1.0 - q * u, -0.5 * n_);
  }
  return 0.5 * std::pow(q, n_ - 1) * acc;
}

double GreenRadialTable::derivative(double r) const {
  if (!(r > 0.0)) throw SingularityError("Green profile is singular at r = 0");
  return -std::pow((1.0 - r) * (1.0 + r), n_ - 2) / std::pow(r, n_ - 1);
}

const GreenRadialTable& green_table(int n) {
  if (n < 2 || n > kMaxTableDim) throw DomainError("unsupported dimension for Green table");
  static std::array<std::unique_ptr<GreenRadialTable>, kMaxTableDim + 1> tables;
  static std::array<std::once_flag, kMaxTableDim + 1> flags;
  std::call_once(flags[static_cast<std::size_t>(n)],
                 [n] { tables[static_cast<std::size_t>(n)] = std::make_unique<GreenRadialTable>(n); });
  return *tables[static_cast<std::size_t>(n)];
}

double green_radial(int n, double r) { return green_table(n).value(r); }

double green_function(const BallPoint& x, const BallPoint& y) {
  check_dims(x.v(), y.v());
  const double b2 = bracket_sq(x.v(), y.v());
  const double d2 = (x.v() - y.v()).squaredNorm();
  if (!(d2 > 0.0)) throw SingularityError("Green function evaluated at x = y");
  const double s = std::sqrt(d2 / b2);
  const double q = x.defect() * y.defect() / b2;
  const int n = x.dim();
  return green_table(n).value(s, q) / n;
}

double poisson_kernel_ball(const BallPoint& x, const SpherePoint& t) {
  check_dims(x.v(), t.v());
  const double e = (t.v() - x.v()).squaredNorm();
  return std::pow(x.defect() / e, x.dim() - 1);
}

Vector poisson_kernel_ball_gradient(const BallPoint& x, const SpherePoint& t) {
  check_dims(x.v(), t.v());
  const int n = x.dim();
  const double e = (t.v() - x.v()).squaredNorm();
  const double d = x.defect();
  const double pref = -2.0 * (n - 1) * std::pow(d / e, n - 2);
  return pref * (x.v() / e + d * (x.v() - t.v()) / (e * e));
}

double euclidean_poisson_kernel_ball(const BallPoint& x, const SpherePoint& t) {
  check_dims(x.v(), t.v());
  const double dist = (t.v() - x.v()).norm();
  return x.defect() / std::pow(dist, x.dim());
}

Vector euclidean_poisson_kernel_ball_gradient(const BallPoint& x, const SpherePoint& t) {
  check_dims(x.v(), t.v());
  const int n = x.dim();
  const double e = (t.v() - x.v()).squaredNorm();
  const double dist_n = std::pow(e, 0.5 * n);
  return -2.0 * x.v() / dist_n - n * x.defect() * (x.v() - t.v()) / (dist_n * e);
}

std::pair<double, double> green_gradient_parts(const BallPoint& x, const BallPoint& y, int k) {
  check_dims(x.v(), y.v());
  const int n = x.dim();
  if (k < 0 || k >= n) throw DomainError("coordinate index out of range");
  const double dist = (x.v() - y.v()).norm();
  if (!(dist > 0.0)) throw SingularityError("Green gradient evaluated at x = y");
  const double br = bracket(x.v(), y.v());
  const double dx = x.defect();
  const double dy = y.defect();
  const double common = std::pow(dy, n - 1) / (n * std::pow(br, n));
  const double part1 = -(x.v()(k) - y.v()(k)) * std::pow(dx, n - 1) * common / std::pow(dist, n);
  const double part2 = -x.v()(k) * std::pow(dx, n - 2) * common / std::pow(dist, n - 2);
  return {part1, part2};
}

Vector green_gradient(const BallPoint& x, const BallPoint& y) {
  Vector g(x.dim());
  for (int k = 0; k < x.dim(); ++k) {
    const auto [a, b] = green_gradient_parts(x, y, k);
    g(k) = a + b;
  }
  return g;
}

void validate(const KernelParams& p) {
  if (!(p.beta > 0.0) || !std::isfinite(p.alpha)) throw DomainError("kernel parameters need beta > 0");
}

double kernel_alpha_beta(const BallPoint& x, const SpherePoint& y, const KernelParams& p) {
  validate(p);
  check_dims(x.v(), y.v());
  const double e = (x.v() - y.v()).squaredNorm();
  return std::pow(x.defect(), p.alpha) / std::pow(e, p.beta);
}

double kernel_alpha_beta_y_split(const BallPoint& x, const Vector& v, const SpherePoint& y,
                                 const KernelParams& p) {
  validate(p);
  const double d = x.defect();
  const double e = (x.v() - y.v()).squaredNorm();
  const double a0 = x.v().dot(v);
  return p.beta * (y.v().dot(v) - a0) / e - p.alpha * a0 / d;
}

double kernel_alpha_beta_y_folded(const BallPoint& x, const Vector& v, const SpherePoint& y,
                                  const KernelParams& p) {
  validate(p);
  const double d = x.defect();
  const double e = (x.v() - y.v()).squaredNorm();
  const double a0 = x.v().dot(v);
  const double b0 = (p.beta / e + p.alpha / d) * a0;
  return p.beta * y.v().dot(v) / e - b0;
}

double kernel_alpha_beta_directional(const BallPoint& x, const Vector& v, const SpherePoint& y,
                                     const KernelParams& p) {
  if (v.size() != x.dim()) throw DomainError("direction dimension mismatch");
  if (std::abs(v.norm() - 1.0) > 1e-12) throw DomainError("direction must be a unit vector");
  return 2.0 * kernel_alpha_beta(x, y, p) * kernel_alpha_beta_y_folded(x, v, y, p);
}

}  // namespace hyplap
