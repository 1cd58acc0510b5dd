#pragma once

#include "hyplap/geometry.hpp"
#include "hyplap/quadrature.hpp"
#include "hyplap/rng.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hyplap {

using ScalarField = std::function<double(const Vector&)>;

struct HolderMeta {
  double alpha = 1.0;
  double constant = 1.0;
};

/// A function on S^{n-1} with declared regularity.
struct BoundaryData {
  std::string name;
  int dim = 0;
  ScalarField eval;
  std::optional<HolderMeta> holder;
  std::optional<double> lipschitz;

  double operator()(const Vector& t) const { return eval(t); }
};

/// Largest sampled |phi(a)-phi(b)| / |a-b|^alpha over random pairs. The
/// declared metadata holds when the result is <= 1.05 L.
double sampled_holder_quotient(const BoundaryData& phi, double alpha, std::size_t pairs, std::uint64_t seed);

/// A source density psi on B^n. `growth` is the declared M of
/// |psi(x)| <= M (1-|x|^2); absent when no such bound exists.
struct SourceDensity {
  std::string name;
  int dim = 0;
  ScalarField eval;
  std::optional<double> growth;
  bool radial = false;

  double operator()(const Vector& x) const { return eval(x); }
};

struct Atom {
  Vector point;
  double weight = 0.0;
};

/// Finite non-negative combination of point masses.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  explicit DiscreteMeasure(std::vector<Atom> atoms);

  [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
  [[nodiscard]] bool empty() const { return atoms_.empty(); }
  [[nodiscard]] int dim() const;
  /// sum_j w_j (1-|y_j|^2)^{n-1}, the integrability certificate.
  [[nodiscard]] double certificate() const;

 private:
  std::vector<Atom> atoms_;
};

using Source = std::variant<std::monostate, SourceDensity, DiscreteMeasure>;

enum class PoissonKernelKind { hyperbolic, euclidean };

struct PoissonOptions {
  int polar_level = 16;
  int inner_level = 12;
  PoissonKernelKind kernel = PoissonKernelKind::hyperbolic;
};

/// Sphere rule adapted to the kernel peak at x/|x| (polar panels graded down
/// to a quarter of 1-|x|).
QuadratureRule poisson_rule(const BallPoint& x, const PoissonOptions& opts = {});

double poisson_integral(const BoundaryData& phi, const BallPoint& x, const QuadratureRule& rule,
                        PoissonKernelKind kernel = PoissonKernelKind::hyperbolic);
double poisson_integral(const BoundaryData& phi, const BallPoint& x, const PoissonOptions& opts = {});

/// Gradient of the Poisson integral by differentiating the kernel under the integral.
Vector poisson_integral_gradient(const BoundaryData& phi, const BallPoint& x, const QuadratureRule& rule,
                                 PoissonKernelKind kernel = PoissonKernelKind::hyperbolic);

struct GreenOptions {
  int radial_level = 10;
  int polar_level = 10;
  /// Rule level on the S^{n-2} fibres; radial sources always use 0.
  int inner_level = 6;
};

/// d tau rule in the substituted variable w (y = phi_x(w)) for evaluation at x.
/// r_top < 1 truncates to B(r_top) in w.
QuadratureRule green_rule(const BallPoint& x, bool radial_source, const GreenOptions& opts = {},
                          double r_top = 1.0);

/// G_h[psi](x) = (1/n) int g(|w|) psi(phi_x(w)) d tau(w) on a rule from green_rule
/// (any evaluation point may reuse a rule built for a nearby point).
double green_potential(const ScalarField& psi, const BallPoint& x, const QuadratureRule& w_rule);
double green_potential(const SourceDensity& psi, const BallPoint& x, const QuadratureRule& w_rule);
double green_potential(const SourceDensity& psi, const BallPoint& x, const GreenOptions& opts = {});

/// sum_j w_j G_h(x, y_j).
double green_potential_measure(const DiscreteMeasure& mu, const BallPoint& x);

struct SolveOptions {
  PoissonOptions poisson;
  GreenOptions green;
};

/// u = P_h[phi](x) - G_h[source](x).
double solve_dirichlet(const BoundaryData& phi, const Source& source, const BallPoint& x,
                       const SolveOptions& opts = {});

/// Value of the representation and its two parts at one point.
struct SolutionValue {
  double u = 0.0;
  double poisson = 0.0;
  double green = 0.0;
};

/// u = P_h[phi] - G_h[source] evaluable anywhere in the ball. Rules are built
/// per evaluation point; `evaluate_with_rules` lets callers hold them fixed.
class SolutionField {
 public:
  SolutionField(BoundaryData phi, Source source, SolveOptions opts = {});

  [[nodiscard]] SolutionValue evaluate(const BallPoint& x) const;
  [[nodiscard]] double operator()(const Vector& x) const { return evaluate(BallPoint(x)).u; }

  /// Evaluation at y with the rules built for x (for finite differences about x).
  [[nodiscard]] SolutionValue evaluate_near(const BallPoint& x, const BallPoint& y) const;

  /// Delta_h u(x) - psi(x) with a fixed-rule FD stencil; zero for exact solutions.
  [[nodiscard]] double residual(const BallPoint& x) const;

  [[nodiscard]] const BoundaryData& boundary() const { return phi_; }
  [[nodiscard]] const Source& source() const { return source_; }
  [[nodiscard]] int dim() const { return phi_.dim; }

 private:
  BoundaryData phi_;
  Source source_;
  SolveOptions opts_;
};

/// Default FD step 1e-4 (1-|x|).
double default_fd_step(const BallPoint& x);

/// (1-|x|^2)^2 Delta_FD u + 2(n-2)(1-|x|^2) x . grad_FD u with central
/// differences. The step shrinks to keep the stencil inside the ball.
double hyperbolic_laplacian_fd(const ScalarField& u, const BallPoint& x, double h = 0.0);

/// Central-difference gradient with step min(h, (1-|x|)/4); h <= 0 selects the default.
Vector gradient_fd(const ScalarField& u, const BallPoint& x, double h = 0.0);

/// Compactly supported C^2 field with optional analytic hyperbolic Laplacian.
struct CompactField {
  ScalarField eval;
  std::optional<ScalarField> hyperbolic_laplacian;
  double support_radius = 0.5;
  bool radial = false;
};

/// C-infinity radial bump amplitude * exp(1 - 1/(1-(|x|/r0)^2)) on B(0, r0),
/// with its hyperbolic Laplacian in closed form.
CompactField radial_bump(int n, double r0, double amplitude = 1.0);

/// Finer default rule for compactly supported integrands; bump shoulders are steep.
inline constexpr GreenOptions kCompactGreenOptions{24, 24, 6};

/// (f(a), -int G_h(a,x) Delta_h f(x) d tau(x)).
std::pair<double, double> reproduce_from_green(const CompactField& f, const BallPoint& a,
                                               const GreenOptions& opts = kCompactGreenOptions);

/// (int rho d mu, -int G_mu Delta_h rho d tau) for compactly supported rho.
std::pair<double, double> weak_form_check(const DiscreteMeasure& mu, const CompactField& rho,
                                          const GreenOptions& opts = kCompactGreenOptions);

/// (|grad(u o phi_x)(0)|, |grad u(x)| (1-|x|^2)).
std::pair<double, double> mobius_gradient_relation(const ScalarField& u, const BallPoint& x);

struct SolutionRow {
  Vector point;
  SolutionValue value;
  double residual = 0.0;
};

/// RFC-4180 CSV with header x1..xn,u,Phi,Psi,residual and 17 significant digits.
void write_solution_csv(std::ostream& os, const std::vector<SolutionRow>& rows);

}  // namespace hyplap
