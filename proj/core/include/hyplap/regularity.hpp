#pragma once

#include "hyplap/solver.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace hyplap {

/// Criterion for "bounded as the grid approaches the boundary": the least
/// squares slope of the last `tail` running maxima of the scaled values
/// against the step index is at most `max_slope`, and the overall max is at
/// most `max_over_median` times the median running maximum.
struct BoundCriterion {
  std::size_t tail = 4;
  double max_slope = 0.02;
  double max_over_median = 10.0;
};

/// A scaled quantity measured along a grid approaching the boundary.
struct BoundScan {
  std::string name;
  /// Step index j (strictly increasing).
  std::vector<double> steps;
  /// Grid value at each step (r for ball scans, y for half-space scans).
  std::vector<double> grid;
  std::vector<double> raw;
  std::vector<double> scaled;
  double scaling_exponent = 0.0;

  double max = 0.0;
  double median = 0.0;
  double trend_slope = 0.0;
  bool bounded = false;

  [[nodiscard]] std::vector<double> cumulative_max() const;
};

/// Fills max, median, trend_slope and bounded. Throws DomainError for
/// non-increasing steps or non-finite values.
void finalize_scan(BoundScan& scan, const BoundCriterion& criterion = {});

/// Tail slope of values against steps (least squares over the last `tail` points).
double tail_slope(const std::vector<double>& steps, const std::vector<double>& values, std::size_t tail);

/// Columns grid_value, raw, scaled, cumulative_max.
void write_scan_csv(std::ostream& os, const BoundScan& scan);

/// r_j = 1 - 2^{-j}, j = j_min..j_max.
std::vector<double> geometric_r_grid(int j_min = 1, int j_max = 12);

/// Zonal evaluations (x = r e_n, sigma_*(n) sin^{n-2} reduction).
double integral_I_alpha(double r, double alpha, int n, int level = 16);
double integral_I_omega(double r, const std::function<double(double)>& omega, int n, int level = 16);
/// A(r, rho) = int d sigma / [x, rho xi]; B = int d sigma / [x, rho xi]^2.
double integral_A(double r, double rho, int n, int level = 16);
double integral_B(double r, double rho, int n, int level = 16);
/// I_m(r) = int d sigma / |r e_n - xi|^m.
double integral_I_m(double r, double m, int n, int level = 16);

struct RefinedIntegral {
  double value = 0.0;
  double refined = 0.0;
  double relative_change = 0.0;
  bool stable = false;
};

/// int_0^1 B(r, rho) d rho on rho panels graded toward 1, compared with a
/// doubled level; stable when the change is <= 10%.
RefinedIntegral integral_B_total(double r, int n, int level = 16);

/// J_3 = n M int_0^1 A d rho and J_4 = n M int_0^1 rho B d rho.
RefinedIntegral integral_J3(double r, double m_const, int n, int level = 16);
RefinedIntegral integral_J4(double r, double m_const, int n, int level = 16);

/// Scaled I_m in its three regimes: m < n-1 (raw), m = n-1 (divided by
/// log(1/(1-r))), m > n-1 (times (1-r)^{m-n+1}).
BoundScan integral_I_m_scan(double m, int n, const std::vector<double>& r_grid, int level = 16);
/// (1-r)^{1-alpha} I_alpha(r e_n).
BoundScan integral_I_alpha_scan(double alpha, int n, const std::vector<double>& r_grid, int level = 16);
/// I_omega delta_r / omega(delta_r), delta_r = 1 - r^2.
BoundScan integral_I_omega_scan(const std::function<double(double)>& omega, int n, const std::vector<double>& r_grid,
                                int level = 16);
/// sqrt(rho) A(r, rho) maximized over rho for each r.
BoundScan integral_A_scan(int n, const std::vector<double>& r_grid, int level = 16);
/// max over rho of B(r, rho) / (1 - log(1 - rho)) for each r.
BoundScan integral_B_scan(int n, const std::vector<double>& r_grid, int level = 16);

struct HolderScanOptions {
  PoissonOptions poisson{24, 6, PoissonKernelKind::hyperbolic};
};

/// (1-r)^{1-alpha} |grad P[phi](r x0)| with a fixed-rule FD gradient.
BoundScan holder_radial_scan(const BoundaryData& phi, double alpha, const SpherePoint& x0,
                             const std::vector<double>& r_grid, const HolderScanOptions& opts = {});

/// |d/dx_k G_h[psi](r e_n)| with a fixed-rule FD derivative (k 0-based).
BoundScan green_gradient_scan(const SourceDensity& psi, const std::vector<double>& r_grid, int k,
                              const GreenOptions& opts = {});

struct RieszOptions {
  double delta = 0.05;
  int radial_level = 16;
  int sphere_level = 12;
};

/// V(x) = int |x-y|^{n(mu-1)} f(y) d nu(y) over B^n, in polar coordinates about x.
double riesz_potential(const ScalarField& f, double mu, const BallPoint& x, const RieszOptions& opts = {});

enum class ConditionTag { h3, h3_1, h4, int_cond_mu };

std::string to_string(ConditionTag tag);
ConditionTag condition_tag_from_string(const std::string& s);

struct ConditionParams {
  double p = 0.0;      ///< L^p exponent for h3-1 / h4 (0 selects n + 1)
  double alpha = 1.0;  ///< exponent of (h4)
  std::uint64_t seed = 1;
  int shells = 24;
  int directions = 64;
};

struct ConditionReport {
  ConditionTag tag = ConditionTag::h3;
  std::map<std::string, double> params;
  double constant = 0.0;
  bool pass = false;
  std::string detail;
};

/// Sampled sup of |psi|/(1-|x|^2) on shells for (h3); shell-summed L^p
/// norms of (1-|x|^2)^{-2} psi for (h3-1), (1-|x|^2)^{-1-alpha} psi for (h4),
/// and int (1-|x|^2)^{n-1} psi d tau for intCondMu.
ConditionReport check_condition(const SourceDensity& psi, ConditionTag tag, const ConditionParams& params = {});

/// JSON object {"tag", "params", "constant", "pass", "detail"}.
std::string to_json(const ConditionReport& report);

using PointPair = std::pair<Vector, Vector>;

/// Seeded pairs in B(r_max): half far apart, half at separations down to 1e-4,
/// with points biased toward the boundary.
std::vector<PointPair> sample_pairs(int n, std::size_t count, std::uint64_t seed, double r_max = 0.999);

double lipschitz_estimate(const ScalarField& u, const std::vector<PointPair>& pairs);

struct HolderGreenResult {
  BoundScan scan;
  /// sup over grid pairs of |G(r_i x0) - G(r_j x0)| / |r_i - r_j|^alpha.
  double two_point_quotient = 0.0;
};

/// (1-r)^{1-alpha} |G_h[psi](r x0)| along the radius.
HolderGreenResult holder_radial_green(const SourceDensity& psi, double alpha, const SpherePoint& x0,
                                      const std::vector<double>& r_grid, const GreenOptions& opts = {});

}  // namespace hyplap
