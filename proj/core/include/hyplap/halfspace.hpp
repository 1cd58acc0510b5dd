#pragma once

#include "hyplap/regularity.hpp"
#include "hyplap/solver.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace hyplap {

/// z = (x, y) in the upper half-space of R^n: x in R^{n-1}, y > 0.
class HalfSpacePoint {
 public:
  HalfSpacePoint(Vector x, double y);
  [[nodiscard]] const Vector& x() const { return x_; }
  [[nodiscard]] double y() const { return y_; }
  [[nodiscard]] int dim() const { return static_cast<int>(x_.size()) + 1; }

 private:
  Vector x_;
  double y_;
};

/// Boundary data on R^{n-1} with compact support in the box [lo, hi].
/// `c1` is false for data that are only Lipschitz; `gradient` is then an a.e.
/// gradient and is not used for boundary-limit claims.
struct CompactC1Data {
  std::string name;
  int dim = 0;  ///< n; the data live on R^{n-1}
  ScalarField f;
  std::function<Vector(const Vector&)> gradient;
  Vector lo;
  Vector hi;
  bool c1 = true;

  double operator()(const Vector& t) const { return f(t); }
};

/// Throws DomainError if the box is malformed or f, grad are nonzero outside
/// it, or if a central FD check of the gradient fails by more than `tol` at
/// `samples` seeded interior points.
void validate(const CompactC1Data& data, std::uint64_t seed = 1, int samples = 64, double tol = 1e-6);

/// c_n with int_{R^{n-1}} c_n (y/(|x|^2+y^2))^{n-1} dV(x) = 1, from the radial
/// reduction at y = 1 (cached per n).
double halfspace_constant(int n);
/// c_n / (2 / (n omega_n)) with omega_n the volume of the unit n-ball.
double halfspace_constant_ratio(int n);
/// Gamma(n/2) / pi^{n/2}, the Euclidean half-space Poisson constant.
double euclidean_halfspace_constant(int n);

double poisson_kernel_halfspace(const Vector& x, double y, PoissonKernelKind kind = PoissonKernelKind::hyperbolic);
double poisson_kernel_halfspace_dy(const Vector& x, double y, PoissonKernelKind kind = PoissonKernelKind::hyperbolic);
/// d/dx_i of the kernel (i 0-based).
double poisson_kernel_halfspace_dx(const Vector& x, double y, int i,
                                   PoissonKernelKind kind = PoissonKernelKind::hyperbolic);

/// int_{R^{n-1}} kernel(x, y) dV(x) by direct radial quadrature at height y
/// (panels on [0, 4y] and the inverted tail), without rescaling.
double halfspace_kernel_mass(double y, int n, PoissonKernelKind kind = PoissonKernelKind::hyperbolic, int level = 24);

/// Kernel mass outside the ball |x| <= R at height y.
double halfspace_kernel_tail(double radius, double y, int n, PoissonKernelKind kind = PoissonKernelKind::hyperbolic);

struct HalfSpaceOptions {
  int radial_level = 16;
  int sphere_level = 32;
  PoissonKernelKind kernel = PoissonKernelKind::hyperbolic;
};

double poisson_integral_halfspace(const CompactC1Data& f, const HalfSpacePoint& z, const HalfSpaceOptions& opts = {});
/// P_h[d f / d t_i](z), i 0-based. Requires C^1 data.
double tangential_derivative(const CompactC1Data& f, int i, const HalfSpacePoint& z,
                             const HalfSpaceOptions& opts = {});
/// d u / d x_i with the kernel derivative under the integral (continuous data suffice).
double tangential_derivative_kernel(const CompactC1Data& f, int i, const HalfSpacePoint& z,
                                    const HalfSpaceOptions& opts = {});
/// d u / d y with the kernel derivative under the integral.
double normal_derivative(const CompactC1Data& f, const HalfSpacePoint& z, const HalfSpaceOptions& opts = {});

/// y = 2^{-j}, j = j_min..j_max (decreasing).
std::vector<double> geometric_y_grid(int j_min = 0, int j_max = 14);

/// True when the last scaled value is at most `ratio` times the first.
bool scan_vanishes(const BoundScan& scan, double ratio = 1e-3);

struct DampingScan {
  BoundScan tangential;  ///< sup_x y |du/dx_i| (max over i)
  BoundScan normal;      ///< sup_x y |du/dy|
  bool vanishes = false;
};

DampingScan derivative_damping_scan(const CompactC1Data& f, const std::vector<Vector>& x_sample,
                                    const std::vector<double>& y_grid, const HalfSpaceOptions& opts = {});

/// |du/dy(x0, y)| along a decreasing y grid.
BoundScan normal_derivative_scan(const CompactC1Data& f, const Vector& x0, const std::vector<double>& y_grid,
                                 const HalfSpaceOptions& opts = {});

/// int_{R^{n-1}} |x|^alpha / (|x|^2 + y^2)^{s/2} dV(x) by direct radial
/// quadrature (no rescaling). DomainError unless s > n-1 and 0 < alpha <= 1;
/// IntegrationError when s <= n-1+alpha (divergent tail).
double integral_I_s_alpha(double y, double s, double alpha, int n, int level = 24);
/// Beta-function closed form of the same integral.
double integral_I_s_alpha_closed(double y, double s, double alpha, int n);
/// y^{s-n+1-alpha} I_s^alpha(y) over the grid.
BoundScan integral_I_s_alpha_scan(double s, double alpha, int n, const std::vector<double>& y_grid, int level = 24);

/// J_{delta,n}(y) = int_{|x| >= delta} dV / (|x|^2 + y^2)^{n-1} in three forms:
/// direct in x, after x = y t, and after the inversion rho = 1/r.
enum class JForm { direct, rescaled, inverted };
double integral_J_delta(double y, double delta, int n, JForm form = JForm::inverted, int level = 24);
/// delta^{n-1} J_{delta,n}(y) over the grid.
BoundScan integral_J_delta_scan(double delta, int n, const std::vector<double>& y_grid, int level = 24);

struct C1Row {
  std::size_t x_index = 0;
  double y = 0.0;
  double du_dy = 0.0;
  std::vector<double> du_dx;
  std::vector<double> df_dx;
};

struct C1Report {
  std::string kernel;
  std::vector<C1Row> rows;
  std::vector<double> y_grid;
  std::vector<double> tangential_error;  ///< per y: max over x, i of |du/dx_i - df/dx_i|
  std::vector<double> normal_max;        ///< per y: max over x of |du/dy|
  double tolerance = 1e-3;
  bool pass = false;
};

/// Tabulates all n partials over x_sample x y_grid. Passes when, at the
/// smallest y, tangential partials are within `tolerance` of the data
/// gradient and |du/dy| <= tolerance uniformly over the sample, and neither
/// sequence increases over the last four grid points.
C1Report c1_extension_report(const CompactC1Data& f, const std::vector<Vector>& x_sample,
                             const std::vector<double>& y_grid, double tolerance = 1e-3,
                             const HalfSpaceOptions& opts = {});
void write_c1_report_csv(std::ostream& os, const C1Report& report);

/// Data builders on R^{n-1}.
/// (1 - |t - c|^2 / R^2)^3 on |t - c| < R (C^2).
CompactC1Data halfspace_bump(int n, double radius, const Vector& center);
/// <a, t> chi(|t|), chi = 1 on |t| <= r1, a C^2 quintic step to 0 at r2.
CompactC1Data halfspace_linear_cutoff(const Vector& a, double r1, double r2);
/// max(0, 1 - |t|): Lipschitz, not C^1 at 0.
CompactC1Data halfspace_tent(int n);
/// |t| / log(1/|t|) chi(|t|) with chi stepping from 1 at 1/8 to 0 at 1/4:
/// C^1 with a gradient whose modulus of continuity is not Dini.
CompactC1Data halfspace_dini_example(int n);
/// An odd function of t_1: t_1 (1 - |t|^2)^3 on |t| < 1.
CompactC1Data halfspace_odd_bump(int n);
CompactC1Data halfspace_zero(int n);

}  // namespace hyplap
