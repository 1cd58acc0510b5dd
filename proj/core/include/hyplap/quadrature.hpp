#pragma once

#include "hyplap/geometry.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hyplap {

/// Nodes and weights of a one-dimensional rule.
struct LineRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with m nodes on [-1, 1].
LineRule gauss_legendre(int m);

/// Gauss-Jacobi rule with m nodes on [-1, 1] for the symmetric weight
/// (1 - z^2)^alpha, alpha > -1 (Golub-Welsch).
LineRule gauss_jacobi_symmetric(int m, double alpha);

/// Composite Gauss-Legendre rule with `level` nodes on each panel
/// [breaks[i], breaks[i+1]]. Breaks must be increasing.
LineRule composite_gauss(const std::vector<double>& breaks, int level);

/// Breakpoints on [a, b] clustering geometrically (ratio 2) at c in [a, b].
/// The innermost panels have width h; panels never exceed max_width.
std::vector<double> graded_breaks(double a, double b, double c, double h, double max_width = 0.25);

/// Sorted union of breakpoint sets, dropping points closer than tol * panel scale.
std::vector<double> merge_breaks(std::vector<double> breaks);

/// Surface area of S^{n-1} in R^n, 2 pi^{n/2} / Gamma(n/2).
double surface_area(int n);

/// Volume of the unit ball of R^n, pi^{n/2} / Gamma(n/2 + 1).
double ball_volume(int n);

/// Zonal reduction constant Gamma(n/2) / (sqrt(pi) Gamma((n-1)/2)).
double sigma_star(int n);

enum class RuleDomain { sphere, ball_tau, halfspace_slab };

std::string to_string(RuleDomain d);
RuleDomain rule_domain_from_string(const std::string& s);

/// Nodes are the columns of `nodes`. Sphere rules carry normalized sigma
/// weights; ball_tau rules carry d tau weights (nu(B^n) = 1).
struct QuadratureRule {
  RuleDomain domain = RuleDomain::sphere;
  int dim = 0;
  int level = 0;
  Matrix nodes;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const { return weights.size(); }
  [[nodiscard]] double total_weight() const;
};

/// Node budget above which sphere_rule switches to the quasi-Monte Carlo rule.
inline constexpr std::size_t kSphereNodeBudget = 400000;
/// Hard cap for any rule construction.
inline constexpr std::size_t kMaxRuleNodes = 20000000;

/// Iterated spherical coordinates: Gauss-Jacobi in each polar angle, uniform
/// trapezoid in the final azimuth. Exact for polynomials of degree <= level.
/// Falls back to qmc_sphere_rule above kSphereNodeBudget.
QuadratureRule sphere_rule(int n, int level);

/// Node count of the iterated rule, without building it.
std::size_t sphere_rule_size(int n, int level);

/// Equal-weight antipodally symmetric low-discrepancy directions (Halton
/// points through Box-Muller, normalized). `count` is rounded up to even.
QuadratureRule qmc_sphere_rule(int n, std::size_t count);

/// Sphere rule whose polar angle is measured from `axis`, with composite
/// Gauss panels graded toward the axis down to `polar_scale`. The remaining
/// S^{n-2} directions use sphere_rule(n-1, inner_level).
QuadratureRule sphere_rule_axial(int n, const Vector& axis, double polar_scale, int polar_level,
                                 int inner_level);
/// Same polar panels with a caller-supplied rule on the S^{n-2} fibre
/// (for instance qmc_sphere_rule(n - 1, count) when n is large).
QuadratureRule sphere_rule_axial(int n, const Vector& axis, double polar_scale, int polar_level,
                                 const QuadratureRule& fibre);

/// Product rule on B(r_max) for d tau: composite Gauss radial panels graded
/// toward r_max against n r^{n-1} / (1-r^2)^n, times sphere_rule(n, sphere_level).
QuadratureRule ball_tau_rule(int n, int radial_level, int sphere_level, double r_max);

/// Layout of a graded ball rule for integrands with a singular point at the
/// origin and a feature of width `scale` near r_peak along `axis`.
struct BallGrading {
  Vector axis;
  double r_peak = 0.0;
  double scale = 1.0;
  double r_top = 1.0;
  int radial_level = 8;
  int polar_level = 8;
  int inner_level = 4;
};

/// d tau product rule on B(r_top) (r_top = 1 integrates the whole open ball;
/// Gauss nodes never reach r = 1).
QuadratureRule ball_tau_rule_graded(int n, const BallGrading& grading);

/// Weighted sum with compensated summation in node order. Non-finite
/// integrand values raise IntegrationError naming the node.
double integrate(const std::function<double(const Vector&)>& f, const QuadratureRule& rule);

/// sigma_*(n) * integral_0^pi f(theta) sin^{n-2}(theta) d theta on graded panels.
class ZonalReduction {
 public:
  ZonalReduction(int n, int level);
  [[nodiscard]] int dim() const { return n_; }
  [[nodiscard]] int level() const { return level_; }
  [[nodiscard]] const std::vector<double>& angles() const { return angles_; }
  /// Weights include sigma_*(n) sin^{n-2}.
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }
  [[nodiscard]] double integrate(const std::function<double(double)>& f) const;

 private:
  int n_;
  int level_;
  std::vector<double> angles_;
  std::vector<double> weights_;
};

double integrate_zonal(const std::function<double(double)>& f, int n, int level = 12);

/// Envelope |f(t)| <= amplitude |t|^{-power} outside the tail radius.
struct TailEnvelope {
  double amplitude = 0.0;
  double power = 0.0;
};

struct SlabResult {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Tensor Gauss-Legendre over the box [lo, hi] in R^m plus the analytic tail
/// integral of the envelope beyond |t| = tail_radius.
SlabResult integrate_halfspace_slab(const std::function<double(const Vector&)>& f, const Vector& lo,
                                    const Vector& hi, double tail_radius, int level = 16,
                                    std::optional<TailEnvelope> tail = std::nullopt);

/// sigma_{n-1} * integral_0^R f(r) r^{n-1} dr.
double integrate_radial_volume(const std::function<double(double)>& f, double radius, int n,
                               int level = 32);

/// Columnar text format: '#' header lines (format tag, domain, dim, level,
/// count), then one node per line with coordinates followed by the weight.
void write_rule(std::ostream& os, const QuadratureRule& rule);
QuadratureRule read_rule(std::istream& is);

}  // namespace hyplap
