#include "hyplap/halfspace.hpp"

#include "hyplap/csv.hpp"
#include "hyplap/errors.hpp"
#include "hyplap/quadrature.hpp"
#include "hyplap/rng.hpp"
#include "hyplap/summation.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>

namespace hyplap {

namespace {

constexpr int kMaxDim = 64;
constexpr double kPi = 3.14159265358979323846;

void require_dim(int n) {
  if (n < 2 || n > kMaxDim) throw DomainError("half-space dimension must lie in [2, 64]");
}

void require_height(double y) {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("half-space height must be positive and finite");
}

// Directions on S^{m-1} in R^m with weights summing to one.
struct Directions {
  Matrix nodes;
  std::vector<double> weights;
  double area = 0.0;
};

const Directions& directions(int m, int level) {
  static thread_local std::map<std::pair<int, int>, Directions> cache;
  auto it = cache.find({m, level});
  if (it != cache.end()) return it->second;
  Directions d;
  if (m == 1) {
    d.nodes.resize(1, 2);
    d.nodes << 1.0, -1.0;
    d.weights = {0.5, 0.5};
    d.area = 2.0;
  } else {
    QuadratureRule rule = sphere_rule(m, level);
    d.nodes = std::move(rule.nodes);
    d.weights = std::move(rule.weights);
    d.area = surface_area(m);
  }
  return cache.emplace(std::make_pair(m, level), std::move(d)).first->second;
}

double integrate_line(const std::vector<double>& breaks, int level, const std::function<double(double)>& f) {
  const LineRule rule = composite_gauss(breaks, level);
  CompensatedSum s;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]);
  return s.value();
}

std::vector<double> uniform_breaks(double a, double b, double max_width) {
  const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
  std::vector<double> out;
  for (int k = 0; k <= pieces; ++k) out.push_back(a + (b - a) * k / pieces);
  return out;
}

// Radial kernel profile in terms of s = |v|^2 + y^2.
double kernel_value(double s, double y, int n, PoissonKernelKind kind) {
  const int m = n - 1;
  if (kind == PoissonKernelKind::hyperbolic) return halfspace_constant(n) * std::pow(y / s, m);
  return euclidean_halfspace_constant(n) * y / std::pow(s, 0.5 * n);
}

double kernel_dy(double rho2, double y, int n, PoissonKernelKind kind) {
  const int m = n - 1;
  const double s = rho2 + y * y;
  if (kind == PoissonKernelKind::hyperbolic) {
    return halfspace_constant(n) * m * std::pow(y, m - 1) / std::pow(s, m) * (rho2 - y * y) / s;
  }
  return euclidean_halfspace_constant(n) * (s - n * y * y) / std::pow(s, 0.5 * n + 1.0);
}

// d/dv_i of the kernel at v, divided by v_i.
double kernel_dx_over_v(double s, double y, int n, PoissonKernelKind kind) {
  const int m = n - 1;
  if (kind == PoissonKernelKind::hyperbolic) return -2.0 * m * halfspace_constant(n) * std::pow(y, m) / std::pow(s, m + 1);
  return -n * euclidean_halfspace_constant(n) * y / std::pow(s, 0.5 * n + 1.0);
}

// Tail integrand after x = y u, rho = 1/u.
double tail_profile(double rho, int n, PoissonKernelKind kind) {
  const int m = n - 1;
  if (kind == PoissonKernelKind::hyperbolic) return std::pow(rho, m - 1) / std::pow(1.0 + rho * rho, m);
  return std::pow(1.0 + rho * rho, -0.5 * n);
}

double kind_constant(int n, PoissonKernelKind kind) {
  return kind == PoissonKernelKind::hyperbolic ? halfspace_constant(n) : euclidean_halfspace_constant(n);
}

double support_radius(const CompactC1Data& f, const Vector& x) {
  const int m = f.dim - 1;
  double r2 = 0.0;
  for (int k = 0; k < m; ++k) {
    const double d = std::max(std::abs(f.lo(k) - x(k)), std::abs(f.hi(k) - x(k)));
    r2 += d * d;
  }
  return std::max(std::sqrt(r2), 1e-8);
}

void check_data(const CompactC1Data& f, const HalfSpacePoint& z) {
  if (!f.f) throw DomainError("half-space data need an evaluator");
  if (z.dim() != f.dim) throw DomainError("point and data dimensions differ");
  require_dim(f.dim);
}

// area * sum_w int_0^R rho^{m-1} g(rho, omega) d rho, panels graded toward 0 at scale y.
double polar_about(double y, double radius, int n, const HalfSpaceOptions& opts,
                   const std::function<double(double, const Vector&)>& g) {
  const int m = n - 1;
  const Directions& dirs = directions(m, opts.sphere_level);
  const std::vector<double> breaks =
      graded_breaks(0.0, radius, 0.0, std::min(0.25 * y, 0.25 * radius), std::max(radius / 32.0, 1e-3));
  const LineRule rule = composite_gauss(breaks, opts.radial_level);
  CompensatedSum total;
  for (std::size_t d = 0; d < dirs.weights.size(); ++d) {
    const Vector w = dirs.nodes.col(static_cast<Eigen::Index>(d));
    CompensatedSum inner;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double rho = rule.nodes[i];
      inner += rule.weights[i] * std::pow(rho, m - 1) * g(rho, w);
    }
    total += dirs.weights[d] * inner.value();
  }
  const double v = dirs.area * total.value();
  if (!std::isfinite(v)) throw IntegrationError("non-finite half-space integral");
  return v;
}

// P[g](z) for a scalar g supported in the data box.
double poisson_of(const CompactC1Data& f, const ScalarField& g, const HalfSpacePoint& z, const HalfSpaceOptions& opts) {
  const int n = f.dim;
  const Vector& x = z.x();
  const double y = z.y();
  const double radius = support_radius(f, x);
  const double gx = g(x);
  const double body = polar_about(y, radius, n, opts, [&](double rho, const Vector& w) {
    return kernel_value(rho * rho + y * y, y, n, opts.kernel) * (g(Vector(x + rho * w)) - gx);
  });
  return gx * (1.0 - halfspace_kernel_tail(radius, y, n, opts.kernel)) + body;
}

double smooth_step(double r, double r1, double r2, double* derivative) {
  if (r <= r1) {
    if (derivative) *derivative = 0.0;
    return 1.0;
  }
  if (r >= r2) {
    if (derivative) *derivative = 0.0;
    return 0.0;
  }
  const double s = (r - r1) / (r2 - r1);
  if (derivative) *derivative = -30.0 * s * s * (1.0 - s) * (1.0 - s) / (r2 - r1);
  return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

CompactC1Data boxed(std::string name, int n, double half_width) {
  require_dim(n);
  CompactC1Data d;
  d.name = std::move(name);
  d.dim = n;
  d.lo = Vector::Constant(n - 1, -half_width);
  d.hi = Vector::Constant(n - 1, half_width);
  return d;
}

std::vector<double> steps_from_y(const std::vector<double>& y_grid) {
  std::vector<double> steps;
  for (std::size_t i = 0; i < y_grid.size(); ++i) {
    require_height(y_grid[i]);
    if (i > 0 && !(y_grid[i] < y_grid[i - 1])) throw DomainError("y grid must be strictly decreasing");
    steps.push_back(-std::log2(y_grid[i]));
  }
  return steps;
}

}  // namespace

HalfSpacePoint::HalfSpacePoint(Vector x, double y) : x_(std::move(x)), y_(y) {
  require_height(y);
  if (x_.size() < 1) throw DomainError("half-space point needs at least one tangential coordinate");
  if (!x_.allFinite()) throw DomainError("half-space point must be finite");
}

void validate(const CompactC1Data& data, std::uint64_t seed, int samples, double tol) {
  require_dim(data.dim);
  const int m = data.dim - 1;
  if (!data.f || !data.gradient) throw DomainError("half-space data need f and its gradient");
  if (data.lo.size() != m || data.hi.size() != m) throw DomainError("support box has the wrong dimension");
  for (int k = 0; k < m; ++k) {
    if (!(data.lo(k) < data.hi(k))) throw DomainError("support box is empty");
  }
  Rng rng(seed);
  const Vector mid = 0.5 * (data.lo + data.hi);
  const Vector half = 0.5 * (data.hi - data.lo);
  Vector t(m);
  for (int s = 0; s < samples; ++s) {
    for (int k = 0; k < m; ++k) t(k) = mid(k) + half(k) * rng.uniform(-2.0, 2.0);
    bool outside = false;
    for (int k = 0; k < m; ++k) outside = outside || t(k) < data.lo(k) || t(k) > data.hi(k);
    if (outside) {
      if (data.f(t) != 0.0 || data.gradient(t).norm() != 0.0) {
        throw DomainError("data '" + data.name + "' do not vanish outside the support box");
      }
      continue;
    }
    const Vector g = data.gradient(t);
    const double h = 1e-5 * half.maxCoeff();
    for (int k = 0; k < m; ++k) {
      Vector p = t;
      p(k) += h;
      const double fp = data.f(p);
      p(k) -= 2.0 * h;
      const double fm = data.f(p);
      const double fd = (fp - fm) / (2.0 * h);
      if (std::abs(fd - g(k)) > tol * std::max(1.0, std::abs(g(k)))) {
        throw DomainError("gradient of '" + data.name + "' disagrees with finite differences");
      }
    }
  }
}

double halfspace_constant(int n) {
  require_dim(n);
  static std::array<double, kMaxDim + 1> table{};
  static std::array<std::once_flag, kMaxDim + 1> flags;
  std::call_once(flags[static_cast<std::size_t>(n)], [n] {
    // With r = tan(theta): int_0^inf r^{n-2} / (1 + r^2)^{n-1} dr = int_0^{pi/2} (sin cos)^{n-2}.
    const double radial = integrate_line(uniform_breaks(0.0, 0.5 * kPi, kPi / 8.0), 32, [n](double th) {
      return std::pow(std::sin(th) * std::cos(th), n - 2);
    });
    const double area = n == 2 ? 2.0 : surface_area(n - 1);
    table[static_cast<std::size_t>(n)] = 1.0 / (area * radial);
  });
  return table[static_cast<std::size_t>(n)];
}

double halfspace_constant_ratio(int n) {
  const double omega = ball_volume(n);
  return halfspace_constant(n) / (2.0 / (n * omega));
}

double euclidean_halfspace_constant(int n) {
  require_dim(n);
  return std::tgamma(0.5 * n) / std::pow(kPi, 0.5 * n);
}

double poisson_kernel_halfspace(const Vector& x, double y, PoissonKernelKind kind) {
  require_height(y);
  const int n = static_cast<int>(x.size()) + 1;
  require_dim(n);
  return kernel_value(x.squaredNorm() + y * y, y, n, kind);
}

double poisson_kernel_halfspace_dy(const Vector& x, double y, PoissonKernelKind kind) {
  require_height(y);
  const int n = static_cast<int>(x.size()) + 1;
  require_dim(n);
  return kernel_dy(x.squaredNorm(), y, n, kind);
}

double poisson_kernel_halfspace_dx(const Vector& x, double y, int i, PoissonKernelKind kind) {
  require_height(y);
  const int n = static_cast<int>(x.size()) + 1;
  require_dim(n);
  if (i < 0 || i >= n - 1) throw DomainError("tangential index out of range");
  return kernel_dx_over_v(x.squaredNorm() + y * y, y, n, kind) * x(i);
}

double halfspace_kernel_tail(double radius, double y, int n, PoissonKernelKind kind) {
  require_height(y);
  require_dim(n);
  if (!(radius > 0.0)) throw DomainError("tail radius must be positive");
  const int m = n - 1;
  const double area = m == 1 ? 2.0 : surface_area(m);
  const double top = y / radius;
  const double v = integrate_line(uniform_breaks(0.0, top, 0.5), 24, [n, kind](double rho) { return tail_profile(rho, n, kind); });
  return kind_constant(n, kind) * area * v;
}

double halfspace_kernel_mass(double y, int n, PoissonKernelKind kind, int level) {
  require_height(y);
  require_dim(n);
  const int m = n - 1;
  const double area = m == 1 ? 2.0 : surface_area(m);
  const double cut = 4.0 * y;
  const double body = integrate_line(graded_breaks(0.0, cut, 0.0, 0.125 * y, 0.25 * y), level, [&](double r) {
    return std::pow(r, m - 1) * kernel_value(r * r + y * y, y, n, kind);
  });
  return area * body + halfspace_kernel_tail(cut, y, n, kind);
}

double poisson_integral_halfspace(const CompactC1Data& f, const HalfSpacePoint& z, const HalfSpaceOptions& opts) {
  check_data(f, z);
  return poisson_of(f, f.f, z, opts);
}

double tangential_derivative(const CompactC1Data& f, int i, const HalfSpacePoint& z, const HalfSpaceOptions& opts) {
  check_data(f, z);
  if (i < 0 || i >= f.dim - 1) throw DomainError("tangential index out of range");
  if (!f.gradient || !f.c1) throw DomainError("tangential_derivative needs C^1 data; use the kernel form");
  return poisson_of(f, [&](const Vector& t) { return f.gradient(t)(i); }, z, opts);
}

double tangential_derivative_kernel(const CompactC1Data& f, int i, const HalfSpacePoint& z,
                                    const HalfSpaceOptions& opts) {
  check_data(f, z);
  if (i < 0 || i >= f.dim - 1) throw DomainError("tangential index out of range");
  const int n = f.dim;
  const Vector& x = z.x();
  const double y = z.y();
  const double fx = f(x);
  // The exterior of the ball about x contributes nothing: the integrand is odd there.
  return polar_about(y, support_radius(f, x), n, opts, [&](double rho, const Vector& w) {
    return kernel_dx_over_v(rho * rho + y * y, y, n, opts.kernel) * (-rho * w(i)) * (f(Vector(x + rho * w)) - fx);
  });
}

double normal_derivative(const CompactC1Data& f, const HalfSpacePoint& z, const HalfSpaceOptions& opts) {
  check_data(f, z);
  const int n = f.dim;
  const Vector& x = z.x();
  const double y = z.y();
  const double fx = f(x);
  const double radius = support_radius(f, x);
  const double body = polar_about(y, radius, n, opts, [&](double rho, const Vector& w) {
    return kernel_dy(rho * rho, y, n, opts.kernel) * (f(Vector(x + rho * w)) - fx);
  });
  const int m = n - 1;
  const double area = m == 1 ? 2.0 : surface_area(m);
  const double tail_dy = kind_constant(n, opts.kernel) * area * tail_profile(y / radius, n, opts.kernel) / radius;
  return body - fx * tail_dy;
}

std::vector<double> geometric_y_grid(int j_min, int j_max) {
  if (j_max < j_min || j_min < -30 || j_max > 60) throw DomainError("invalid y grid bounds");
  std::vector<double> out;
  for (int j = j_min; j <= j_max; ++j) out.push_back(std::ldexp(1.0, -j));
  return out;
}

bool scan_vanishes(const BoundScan& scan, double ratio) {
  if (scan.scaled.empty()) return false;
  const double first = std::abs(scan.scaled.front());
  const double last = std::abs(scan.scaled.back());
  if (first == 0.0) return last == 0.0;
  return last <= ratio * first;
}

DampingScan derivative_damping_scan(const CompactC1Data& f, const std::vector<Vector>& x_sample,
                                    const std::vector<double>& y_grid, const HalfSpaceOptions& opts) {
  if (x_sample.empty()) throw DomainError("damping scan needs at least one sample point");
  const std::vector<double> steps = steps_from_y(y_grid);
  const std::string kind = opts.kernel == PoissonKernelKind::hyperbolic ? "hyperbolic" : "euclidean";
  DampingScan out;
  out.tangential.name = "damping_tangential[" + kind + "]";
  out.normal.name = "damping_normal[" + kind + "]";
  for (BoundScan* s : {&out.tangential, &out.normal}) {
    s->steps = steps;
    s->grid = y_grid;
    s->scaling_exponent = 1.0;
  }
  for (double y : y_grid) {
    double tan_sup = 0.0;
    double nor_sup = 0.0;
    for (const Vector& x : x_sample) {
      const HalfSpacePoint z(x, y);
      for (int i = 0; i < f.dim - 1; ++i) tan_sup = std::max(tan_sup, std::abs(tangential_derivative_kernel(f, i, z, opts)));
      nor_sup = std::max(nor_sup, std::abs(normal_derivative(f, z, opts)));
    }
    out.tangential.raw.push_back(tan_sup);
    out.tangential.scaled.push_back(y * tan_sup);
    out.normal.raw.push_back(nor_sup);
    out.normal.scaled.push_back(y * nor_sup);
  }
  finalize_scan(out.tangential);
  finalize_scan(out.normal);
  out.vanishes = scan_vanishes(out.tangential) && scan_vanishes(out.normal);
  return out;
}

BoundScan normal_derivative_scan(const CompactC1Data& f, const Vector& x0, const std::vector<double>& y_grid,
                                 const HalfSpaceOptions& opts) {
  BoundScan s;
  s.name = std::string("normal_derivative[") +
           (opts.kernel == PoissonKernelKind::hyperbolic ? "hyperbolic" : "euclidean") + "]";
  s.steps = steps_from_y(y_grid);
  s.grid = y_grid;
  for (double y : y_grid) {
    const double d = std::abs(normal_derivative(f, HalfSpacePoint(x0, y), opts));
    s.raw.push_back(d);
    s.scaled.push_back(d);
  }
  finalize_scan(s);
  return s;
}

double integral_I_s_alpha(double y, double s, double alpha, int n, int level) {
  require_height(y);
  require_dim(n);
  const int m = n - 1;
  if (!(s > m) || !(alpha > 0.0) || alpha > 1.0) throw DomainError("I_s^alpha needs s > n-1 and 0 < alpha <= 1");
  if (!(s > m + alpha)) throw IntegrationError("I_s^alpha diverges at infinity for s <= n-1+alpha");
  const double a = alpha + m - 1.0;
  const double cut = 4.0 * y;
  const double body = integrate_line(graded_breaks(0.0, cut, 0.0, 1e-12 * cut, 0.25 * cut), level, [&](double r) {
    return std::pow(r, a) / std::pow(r * r + y * y, 0.5 * s);
  });
  // r = 1/rho, then w = rho^{e+1}: the tail becomes a smooth integral in w.
  const double e = s - a - 2.0;
  const double w_top = std::pow(1.0 / cut, e + 1.0);
  const double tail =
      integrate_line(graded_breaks(0.0, w_top, 0.0, 1e-12 * w_top, 0.25 * w_top), level, [&](double w) {
        const double rho = std::pow(w, 1.0 / (e + 1.0));
        return std::pow(1.0 + y * y * rho * rho, -0.5 * s) / (e + 1.0);
      });
  const double area = m == 1 ? 2.0 : surface_area(m);
  return area * (body + tail);
}

double integral_I_s_alpha_closed(double y, double s, double alpha, int n) {
  require_height(y);
  require_dim(n);
  const int m = n - 1;
  if (!(s > m + alpha) || !(alpha > 0.0) || alpha > 1.0) throw DomainError("closed form needs s > n-1+alpha");
  const double a = alpha + m - 1.0;
  const double p = 0.5 * (a + 1.0);
  const double q = 0.5 * (s - a - 1.0);
  const double beta = std::exp(std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q));
  const double area = m == 1 ? 2.0 : surface_area(m);
  return area * std::pow(y, a + 1.0 - s) * 0.5 * beta;
}

BoundScan integral_I_s_alpha_scan(double s, double alpha, int n, const std::vector<double>& y_grid, int level) {
  BoundScan scan;
  scan.name = "I_s_alpha";
  scan.steps = steps_from_y(y_grid);
  scan.grid = y_grid;
  scan.scaling_exponent = s - n + 1.0 - alpha;
  for (double y : y_grid) {
    const double v = integral_I_s_alpha(y, s, alpha, n, level);
    scan.raw.push_back(v);
    scan.scaled.push_back(std::pow(y, scan.scaling_exponent) * v);
  }
  finalize_scan(scan);
  return scan;
}

double integral_J_delta(double y, double delta, int n, JForm form, int level) {
  require_height(y);
  require_dim(n);
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  const int m = n - 1;
  const double area = m == 1 ? 2.0 : surface_area(m);
  auto inverted_profile = [m](double rho) { return std::pow(rho, m - 1) / std::pow(1.0 + rho * rho, m); };
  switch (form) {
    case JForm::direct: {
      const double cut = 4.0 * std::max(delta, y);
      const double body = integrate_line(graded_breaks(delta, cut, delta, 0.125 * std::min(delta, y), 0.25 * cut), level,
                                         [&](double r) { return std::pow(r, m - 1) / std::pow(r * r + y * y, m); });
      const double tail = integrate_line(uniform_breaks(0.0, 1.0 / cut, 0.25 / cut), level, [&](double rho) {
        return std::pow(rho, m - 1) / std::pow(1.0 + y * y * rho * rho, m);
      });
      return area * (body + tail);
    }
    case JForm::rescaled: {
      const double lo = delta / y;
      const double cut = 4.0 * std::max(lo, 1.0);
      const double body = integrate_line(graded_breaks(lo, cut, lo, 0.125 * std::min(lo, 1.0), 0.25 * cut), level,
                                         [&](double u) { return std::pow(u, m - 1) / std::pow(1.0 + u * u, m); });
      const double tail = integrate_line(uniform_breaks(0.0, 1.0 / cut, 0.25 / cut), level, inverted_profile);
      return area * (body + tail) / std::pow(y, m);
    }
    case JForm::inverted: {
      const double top = y / delta;
      return area * integrate_line(uniform_breaks(0.0, top, 0.25), level, inverted_profile) / std::pow(y, m);
    }
  }
  return 0.0;
}

BoundScan integral_J_delta_scan(double delta, int n, const std::vector<double>& y_grid, int level) {
  BoundScan scan;
  scan.name = "J_delta";
  scan.steps = steps_from_y(y_grid);
  scan.grid = y_grid;
  for (double y : y_grid) {
    const double v = integral_J_delta(y, delta, n, JForm::inverted, level);
    scan.raw.push_back(v);
    scan.scaled.push_back(std::pow(delta, n - 1) * v);
  }
  finalize_scan(scan);
  return scan;
}

C1Report c1_extension_report(const CompactC1Data& f, const std::vector<Vector>& x_sample,
                             const std::vector<double>& y_grid, double tolerance, const HalfSpaceOptions& opts) {
  if (x_sample.empty()) throw DomainError("C^1 report needs sample points");
  if (!f.gradient) throw DomainError("C^1 report needs the data gradient");
  steps_from_y(y_grid);
  const int m = f.dim - 1;
  C1Report rep;
  rep.kernel = opts.kernel == PoissonKernelKind::hyperbolic ? "hyperbolic" : "euclidean";
  rep.y_grid = y_grid;
  rep.tolerance = tolerance;
  double scale = 1.0;
  for (const Vector& x : x_sample) scale = std::max(scale, f.gradient(x).cwiseAbs().maxCoeff());
  for (double y : y_grid) {
    double tan_err = 0.0;
    double nor = 0.0;
    for (std::size_t k = 0; k < x_sample.size(); ++k) {
      const HalfSpacePoint z(x_sample[k], y);
      C1Row row;
      row.x_index = k;
      row.y = y;
      row.du_dy = normal_derivative(f, z, opts);
      const Vector g = f.gradient(x_sample[k]);
      for (int i = 0; i < m; ++i) {
        const double d = f.c1 ? tangential_derivative(f, i, z, opts) : tangential_derivative_kernel(f, i, z, opts);
        row.du_dx.push_back(d);
        row.df_dx.push_back(g(i));
        tan_err = std::max(tan_err, std::abs(d - g(i)));
      }
      nor = std::max(nor, std::abs(row.du_dy));
      rep.rows.push_back(std::move(row));
    }
    rep.tangential_error.push_back(tan_err);
    rep.normal_max.push_back(nor);
  }
  auto settles = [](const std::vector<double>& v) {
    const std::size_t start = v.size() > 4 ? v.size() - 4 : 0;
    for (std::size_t i = start + 1; i < v.size(); ++i) {
      if (v[i] > v[i - 1] * (1.0 + 1e-9) + 1e-14) return false;
    }
    return true;
  };
  const double limit = tolerance * scale;
  rep.pass = rep.tangential_error.back() <= limit && rep.normal_max.back() <= limit && settles(rep.tangential_error) &&
             settles(rep.normal_max);
  return rep;
}

void write_c1_report_csv(std::ostream& os, const C1Report& report) {
  const std::size_t m = report.rows.empty() ? 0 : report.rows.front().du_dx.size();
  std::vector<std::string> header{"y", "x_index", "kernel", "du_dy"};
  for (std::size_t i = 1; i <= m; ++i) header.push_back("du_dx_" + std::to_string(i));
  for (std::size_t i = 1; i <= m; ++i) header.push_back("df_dx_" + std::to_string(i));
  header.push_back("verdict");
  CsvWriter csv(os, header);
  for (const C1Row& row : report.rows) {
    csv.field(row.y).field(static_cast<long long>(row.x_index)).field(report.kernel).field(row.du_dy);
    for (double v : row.du_dx) csv.field(v);
    for (double v : row.df_dx) csv.field(v);
    csv.field(std::string(report.pass ? "pass" : "fail"));
    csv.end_row();
  }
}

CompactC1Data halfspace_bump(int n, double radius, const Vector& center) {
  require_dim(n);
  if (!(radius > 0.0)) throw DomainError("bump radius must be positive");
  if (center.size() != n - 1) throw DomainError("bump centre has the wrong dimension");
  CompactC1Data d;
  d.name = "bump";
  d.dim = n;
  d.lo = center.array() - radius;
  d.hi = center.array() + radius;
  const double r2 = radius * radius;
  d.f = [center, r2](const Vector& t) {
    const double q = (t - center).squaredNorm() / r2;
    return q < 1.0 ? std::pow(1.0 - q, 3) : 0.0;
  };
  d.gradient = [center, r2](const Vector& t) {
    const double q = (t - center).squaredNorm() / r2;
    if (q >= 1.0) return Vector(Vector::Zero(t.size()));
    return Vector(-6.0 * (1.0 - q) * (1.0 - q) / r2 * (t - center));
  };
  return d;
}

CompactC1Data halfspace_linear_cutoff(const Vector& a, double r1, double r2) {
  if (!(r1 > 0.0) || !(r2 > r1)) throw DomainError("cutoff radii must satisfy 0 < r1 < r2");
  CompactC1Data d = boxed("linear-cutoff", static_cast<int>(a.size()) + 1, r2);
  d.f = [a, r1, r2](const Vector& t) { return a.dot(t) * smooth_step(t.norm(), r1, r2, nullptr); };
  d.gradient = [a, r1, r2](const Vector& t) {
    const double r = t.norm();
    double dchi = 0.0;
    const double chi = smooth_step(r, r1, r2, &dchi);
    Vector g = a * chi;
    if (r > 0.0) g += a.dot(t) * dchi * t / r;
    return g;
  };
  return d;
}

CompactC1Data halfspace_tent(int n) {
  CompactC1Data d = boxed("tent", n, 1.0);
  d.c1 = false;
  d.f = [](const Vector& t) { return std::max(0.0, 1.0 - t.norm()); };
  d.gradient = [](const Vector& t) {
    const double r = t.norm();
    if (r >= 1.0 || r == 0.0) return Vector(Vector::Zero(t.size()));
    return Vector(-t / r);
  };
  return d;
}

CompactC1Data halfspace_dini_example(int n) {
  CompactC1Data d = boxed("dini", n, 0.25);
  auto profile = [](double r, double* dr) {
    if (r <= 0.0 || r >= 0.25) {
      if (dr) *dr = 0.0;
      return 0.0;
    }
    const double l = std::log(1.0 / r);
    double dchi = 0.0;
    const double chi = smooth_step(r, 0.125, 0.25, &dchi);
    const double h = r / l;
    if (dr) *dr = (1.0 / l + 1.0 / (l * l)) * chi + h * dchi;
    return h * chi;
  };
  d.f = [profile](const Vector& t) { return profile(t.norm(), nullptr); };
  d.gradient = [profile](const Vector& t) {
    const double r = t.norm();
    double dr = 0.0;
    profile(r, &dr);
    if (r == 0.0) return Vector(Vector::Zero(t.size()));
    return Vector(dr * t / r);
  };
  return d;
}

CompactC1Data halfspace_odd_bump(int n) {
  CompactC1Data d = boxed("odd-bump", n, 1.0);
  d.f = [](const Vector& t) {
    const double q = t.squaredNorm();
    return q < 1.0 ? t(0) * std::pow(1.0 - q, 3) : 0.0;
  };
  d.gradient = [](const Vector& t) {
    const double q = t.squaredNorm();
    Vector g = Vector::Zero(t.size());
    if (q >= 1.0) return g;
    g = -6.0 * t(0) * (1.0 - q) * (1.0 - q) * t;
    g(0) += std::pow(1.0 - q, 3);
    return g;
  };
  return d;
}

CompactC1Data halfspace_zero(int n) {
  CompactC1Data d = boxed("zero", n, 1.0);
  d.f = [](const Vector&) { return 0.0; };
  d.gradient = [](const Vector& t) { return Vector(Vector::Zero(t.size())); };
  return d;
}

}  // namespace hyplap
