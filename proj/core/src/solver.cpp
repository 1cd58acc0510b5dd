#include "hyplap/solver.hpp"

#include "hyplap/csv.hpp"
#include "hyplap/errors.hpp"
#include "hyplap/kernels.hpp"
#include "hyplap/summation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace hyplap {

namespace {

Vector axis_of(const BallPoint& x) {
  const double r = x.v().norm();
  return r > 0.0 ? Vector(x.v() / r) : unit_vector(x.dim(), x.dim() - 1);
}

}  // namespace

double sampled_holder_quotient(const BoundaryData& phi, double alpha, std::size_t pairs, std::uint64_t seed) {
  Rng rng(seed);
  double best = 0.0;
  Vector a(phi.dim);
  Vector b(phi.dim);
  for (std::size_t i = 0; i < pairs; ++i) {
    for (int k = 0; k < phi.dim; ++k) a(k) = rng.normal();
    a.normalize();
    // Half of the pairs are close, to probe small separations.
    const double spread = (i % 2 == 0) ? 1.0 : std::pow(10.0, -rng.uniform(1.0, 6.0));
    for (int k = 0; k < phi.dim; ++k) b(k) = a(k) + spread * rng.normal();
    b.normalize();
    const double d = (a - b).norm();
    if (!(d > 0.0)) continue;
    best = std::max(best, std::abs(phi(a) - phi(b)) / std::pow(d, alpha));
  }
  return best;
}

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (const auto& a : atoms_) {
    BallPoint check(a.point);
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight)) throw DomainError("measure weights must be finite and >= 0");
    if (a.point.size() != atoms_.front().point.size()) throw DomainError("measure atoms differ in dimension");
  }
}

int DiscreteMeasure::dim() const { return atoms_.empty() ? 0 : static_cast<int>(atoms_.front().point.size()); }

double DiscreteMeasure::certificate() const {
  CompensatedSum s;
  for (const auto& a : atoms_) s += a.weight * std::pow(1.0 - a.point.squaredNorm(), dim() - 1);
  return s.value();
}

QuadratureRule poisson_rule(const BallPoint& x, const PoissonOptions& opts) {
  const double r = x.v().norm();
  return sphere_rule_axial(x.dim(), axis_of(x), 0.25 * (1.0 - r), opts.polar_level, opts.inner_level);
}

double poisson_integral(const BoundaryData& phi, const BallPoint& x, const QuadratureRule& rule,
                        PoissonKernelKind kernel) {
  if (rule.domain != RuleDomain::sphere || rule.dim != x.dim()) throw DomainError("Poisson integral needs a sphere rule");
  if (kernel == PoissonKernelKind::hyperbolic) {
    return integrate([&](const Vector& t) { return poisson_kernel_ball(x, SpherePoint(t)) * phi(t); }, rule);
  }
  return integrate([&](const Vector& t) { return euclidean_poisson_kernel_ball(x, SpherePoint(t)) * phi(t); }, rule);
}

double poisson_integral(const BoundaryData& phi, const BallPoint& x, const PoissonOptions& opts) {
  return poisson_integral(phi, x, poisson_rule(x, opts), opts.kernel);
}

Vector poisson_integral_gradient(const BoundaryData& phi, const BallPoint& x, const QuadratureRule& rule,
                                 PoissonKernelKind kernel) {
  const int n = x.dim();
  std::vector<CompensatedSum> acc(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const Vector t = rule.nodes.col(static_cast<Eigen::Index>(j));
    const SpherePoint tp(t);
    const Vector g = kernel == PoissonKernelKind::hyperbolic ? poisson_kernel_ball_gradient(x, tp)
                                                             : euclidean_poisson_kernel_ball_gradient(x, tp);
    const double w = rule.weights[j] * phi(t);
    for (int k = 0; k < n; ++k) acc[static_cast<std::size_t>(k)] += w * g(k);
  }
  Vector out(n);
  for (int k = 0; k < n; ++k) out(k) = acc[static_cast<std::size_t>(k)].value();
  if (!out.allFinite()) throw IntegrationError("non-finite Poisson gradient");
  return out;
}

QuadratureRule green_rule(const BallPoint& x, bool radial_source, const GreenOptions& opts, double r_top) {
  BallGrading g;
  g.axis = axis_of(x);
  g.r_peak = x.v().norm();
  g.scale = 1.0 - g.r_peak;
  g.r_top = r_top;
  g.radial_level = opts.radial_level;
  g.polar_level = opts.polar_level;
  g.inner_level = radial_source ? 0 : opts.inner_level;
  return ball_tau_rule_graded(x.dim(), g);
}

double green_potential(const ScalarField& psi, const BallPoint& x, const QuadratureRule& w_rule) {
  if (w_rule.domain != RuleDomain::ball_tau || w_rule.dim != x.dim()) {
    throw DomainError("Green potential needs a ball-tau rule");
  }
  const int n = x.dim();
  const GreenRadialTable& table = green_table(n);
  const auto phi_x = MobiusMap::phi(x);
  CompensatedSum s;
  Vector w(n);
  for (std::size_t j = 0; j < w_rule.size(); ++j) {
    w = w_rule.nodes.col(static_cast<Eigen::Index>(j));
    const double r = w.norm();
    const double pv = psi(phi_x(w));
    if (pv == 0.0) continue;
    const double v = table.value(r, (1.0 - r) * (1.0 + r)) * pv;
    if (!std::isfinite(v)) throw IntegrationError("non-finite Green integrand at node " + std::to_string(j));
    s += w_rule.weights[j] * v;
  }
  return s.value() / n;
}

double green_potential(const SourceDensity& psi, const BallPoint& x, const QuadratureRule& w_rule) {
  if (psi.dim != x.dim()) throw DomainError("source dimension mismatch");
  return green_potential(psi.eval, x, w_rule);
}

double green_potential(const SourceDensity& psi, const BallPoint& x, const GreenOptions& opts) {
  return green_potential(psi, x, green_rule(x, psi.radial, opts));
}

double green_potential_measure(const DiscreteMeasure& mu, const BallPoint& x) {
  CompensatedSum s;
  for (const auto& a : mu.atoms()) {
    if (a.point.size() != x.v().size()) throw DomainError("measure dimension mismatch");
    if ((a.point - x.v()).norm() == 0.0) throw SingularityError("Green potential evaluated at an atom");
    s += a.weight * green_function(x, BallPoint(a.point));
  }
  return s.value();
}

double solve_dirichlet(const BoundaryData& phi, const Source& source, const BallPoint& x, const SolveOptions& opts) {
  return SolutionField(phi, source, opts).evaluate(x).u;
}

SolutionField::SolutionField(BoundaryData phi, Source source, SolveOptions opts)
    : phi_(std::move(phi)), source_(std::move(source)), opts_(opts) {
  if (phi_.dim < 2 || !phi_.eval) throw DomainError("boundary data needs a dimension and an evaluator");
  if (const auto* d = std::get_if<SourceDensity>(&source_); d && d->dim != phi_.dim) {
    throw DomainError("source dimension mismatch");
  }
  if (const auto* m = std::get_if<DiscreteMeasure>(&source_); m && !m->empty() && m->dim() != phi_.dim) {
    throw DomainError("measure dimension mismatch");
  }
}

SolutionValue SolutionField::evaluate(const BallPoint& x) const { return evaluate_near(x, x); }

SolutionValue SolutionField::evaluate_near(const BallPoint& x, const BallPoint& y) const {
  SolutionValue out;
  out.poisson = poisson_integral(phi_, y, poisson_rule(x, opts_.poisson), opts_.poisson.kernel);
  if (const auto* d = std::get_if<SourceDensity>(&source_)) {
    out.green = green_potential(*d, y, green_rule(x, d->radial, opts_.green));
  } else if (const auto* m = std::get_if<DiscreteMeasure>(&source_)) {
    out.green = green_potential_measure(*m, y);
  }
  out.u = out.poisson - out.green;
  return out;
}

double SolutionField::residual(const BallPoint& x) const {
  const QuadratureRule prule = poisson_rule(x, opts_.poisson);
  std::optional<QuadratureRule> grule;
  const auto* density = std::get_if<SourceDensity>(&source_);
  const auto* measure = std::get_if<DiscreteMeasure>(&source_);
  if (density) grule = green_rule(x, density->radial, opts_.green);
  auto u = [&](const Vector& y) {
    const BallPoint p(y);
    double v = poisson_integral(phi_, p, prule, opts_.poisson.kernel);
    if (density) v -= green_potential(*density, p, *grule);
    if (measure) v -= green_potential_measure(*measure, p);
    return v;
  };
  const double lap = hyperbolic_laplacian_fd(u, x);
  return lap - (density ? (*density)(x.v()) : 0.0);
}

double default_fd_step(const BallPoint& x) { return 1e-4 * (1.0 - x.v().norm()); }

double hyperbolic_laplacian_fd(const ScalarField& u, const BallPoint& x, double h) {
  const double r = x.v().norm();
  if (h <= 0.0) h = default_fd_step(x);
  if (r + h >= 1.0) h = 0.25 * (1.0 - r);
  if (!(h > 1e-300) || r + h >= 1.0) throw DomainError("FD stencil cannot fit inside the ball");
  const int n = x.dim();
  const double u0 = u(x.v());
  double lap = 0.0;
  double radial = 0.0;
  Vector p = x.v();
  for (int k = 0; k < n; ++k) {
    p(k) = x.v()(k) + h;
    const double up = u(p);
    p(k) = x.v()(k) - h;
    const double um = u(p);
    p(k) = x.v()(k);
    lap += (up - 2.0 * u0 + um) / (h * h);
    radial += x.v()(k) * (up - um) / (2.0 * h);
  }
  const double d = x.defect();
  return d * d * lap + 2.0 * (n - 2) * d * radial;
}

Vector gradient_fd(const ScalarField& u, const BallPoint& x, double h) {
  const double r = x.v().norm();
  const double cap = 0.25 * (1.0 - r);
  h = h > 0.0 ? std::min(h, cap) : std::min(default_fd_step(x), cap);
  const int n = x.dim();
  Vector g(n);
  Vector p = x.v();
  for (int k = 0; k < n; ++k) {
    p(k) = x.v()(k) + h;
    const double up = u(p);
    p(k) = x.v()(k) - h;
    const double um = u(p);
    p(k) = x.v()(k);
    g(k) = (up - um) / (2.0 * h);
  }
  return g;
}

CompactField radial_bump(int n, double r0, double amplitude) {
  if (!(r0 > 0.0) || r0 >= 1.0) throw DomainError("bump support radius must lie in (0, 1)");
  CompactField f;
  f.support_radius = r0;
  f.radial = true;
  f.eval = [r0, amplitude](const Vector& x) {
    const double s2 = x.squaredNorm() / (r0 * r0);
    if (s2 >= 1.0) return 0.0;
    return amplitude * std::exp(1.0 - 1.0 / (1.0 - s2));
  };
  f.hyperbolic_laplacian = [n, r0, amplitude](const Vector& x) {
    const double r2 = x.squaredNorm();
    const double u = 1.0 - r2 / (r0 * r0);
    if (u <= 0.0) return 0.0;
    const double e = amplitude * std::exp(1.0 - 1.0 / u);
    const double c = -2.0 / (r0 * r0);
    // f' = E c r / u^2, f'' + (n-1) f'/r = E [c^2 r^2 (1/u^4 - 2/u^3) + n c / u^2].
    const double lap = e * (c * c * r2 * (1.0 / (u * u * u * u) - 2.0 / (u * u * u)) + n * c / (u * u));
    const double r_fp = e * c * r2 / (u * u);
    const double d = 1.0 - r2;
    return d * d * lap + 2.0 * (n - 2) * d * r_fp;
  };
  return f;
}

std::pair<double, double> reproduce_from_green(const CompactField& f, const BallPoint& a, const GreenOptions& opts) {
  if (!(f.support_radius > 0.0) || f.support_radius >= 1.0) {
    throw DomainError("field support must lie strictly inside the ball");
  }
  const double ra = a.v().norm();
  const double r0 = f.support_radius;
  // phi_a maps B(0, r0) into B(0, rho_w).
  const double rho_w = std::min((r0 + ra) / (1.0 + r0 * ra), 1.0 - 1e-15);
  ScalarField lap;
  if (f.hyperbolic_laplacian) {
    lap = *f.hyperbolic_laplacian;
  } else {
    lap = [&f](const Vector& x) {
      if (x.norm() >= f.support_radius) return 0.0;
      return hyperbolic_laplacian_fd(f.eval, BallPoint(x), 1e-4);
    };
  }
  const QuadratureRule rule = green_rule(a, f.radial, opts, rho_w);
  const double integral = green_potential(lap, a, rule);
  return {f.eval(a.v()), -integral};
}

std::pair<double, double> weak_form_check(const DiscreteMeasure& mu, const CompactField& rho, const GreenOptions& opts) {
  CompensatedSum lhs;
  CompensatedSum rhs;
  for (const auto& atom : mu.atoms()) {
    const auto [value, green] = reproduce_from_green(rho, BallPoint(atom.point), opts);
    lhs += atom.weight * value;
    rhs += atom.weight * green;
  }
  return {lhs.value(), rhs.value()};
}

std::pair<double, double> mobius_gradient_relation(const ScalarField& u, const BallPoint& x) {
  const int n = x.dim();
  const auto phi = MobiusMap::phi(x);
  const ScalarField composed = [&](const Vector& w) { return u(phi(w)); };
  const BallPoint origin(Vector::Zero(n));
  const Vector g0 = gradient_fd(composed, origin, 1e-5);
  const Vector gx = gradient_fd(u, x);
  return {g0.norm(), gx.norm() * x.defect()};
}

void write_solution_csv(std::ostream& os, const std::vector<SolutionRow>& rows) {
  const Eigen::Index n = rows.empty() ? 0 : rows.front().point.size();
  std::vector<std::string> header;
  for (Eigen::Index k = 0; k < n; ++k) header.push_back("x" + std::to_string(k + 1));
  for (const char* h : {"u", "Phi", "Psi", "residual"}) header.emplace_back(h);
  CsvWriter csv(os, header);
  for (const auto& row : rows) {
    if (row.point.size() != n) throw DomainError("CSV rows differ in dimension");
    for (Eigen::Index k = 0; k < n; ++k) csv.field(row.point(k));
    csv.field(row.value.u).field(row.value.poisson).field(row.value.green).field(row.residual);
    csv.end_row();
  }
}

}  // namespace hyplap
