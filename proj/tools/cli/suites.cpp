#include "suites.hpp"

#include "hyplap/catalog.hpp"
#include "hyplap/errors.hpp"
#include "hyplap/geometry.hpp"
#include "hyplap/halfspace.hpp"
#include "hyplap/kernels.hpp"
#include "hyplap/polynomial.hpp"
#include "hyplap/quadrature.hpp"
#include "hyplap/regularity.hpp"
#include "hyplap/rng.hpp"
#include "hyplap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

namespace hyplap::cli {

namespace {

std::string fmt(const char* pattern, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string tag(const std::string& base, int n) { return base + "[n=" + std::to_string(n) + "]"; }

std::string tag_alpha(const std::string& base, int n, double alpha) {
  return base + "[n=" + std::to_string(n) + fmt(",alpha=%g]", alpha);
}

Vector random_direction(Rng& rng, int n) {
  Vector v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = rng.normal();
  } while (v.norm() < 1e-12);
  return v.normalized();
}

/// Uniform in B(r_max).
Vector random_ball(Rng& rng, int n, double r_max) {
  return r_max * std::pow(rng.uniform(), 1.0 / n) * random_direction(rng, n);
}

std::vector<int> dims_or(const VerifyConfig& cfg, std::vector<int> fallback) {
  if (cfg.n) return {*cfg.n};
  return fallback;
}

int dim_or(const VerifyConfig& cfg, int fallback) { return cfg.n ? *cfg.n : fallback; }

std::vector<double> alphas(const VerifyConfig& cfg) {
  if (!cfg.alphas.empty()) return cfg.alphas;
  return {0.5, 1.0};
}

/// Largest relative change of the scaled values between two scans on the same grid.
double scan_change(const BoundScan& a, const BoundScan& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.scaled.size(); ++i) {
    const double scale = std::max(std::abs(a.scaled[i]), 1e-300);
    worst = std::max(worst, std::abs(a.scaled[i] - b.scaled[i]) / scale);
  }
  return worst;
}

void add_bounded(SuiteResult& out, const std::string& name, BoundScan scan, std::string kernel = "hyperbolic") {
  out.require(name + ".bounded", scan.bounded,
              fmt("trend_slope=%.17g", scan.trend_slope) + fmt(" max/median=%.17g", scan.max / scan.median));
  out.scans.push_back({std::move(kernel), "primary", std::move(scan)});
}

// ---------------------------------------------------------------- mobius

constexpr int kMobiusConfigs = 2000;

SuiteResult suite_mobius(const VerifyConfig& cfg) {
  SuiteResult out;
  out.name = "mobius";
  Rng rng(cfg.seed);
  for (int n : dims_or(cfg, {2, 3, 4, 5, 6})) {
    double mob1 = 0.0;
    double mob2 = 0.0;
    double invol = 0.0;
    double ratio = 0.0;
    double dist = 0.0;
    for (int i = 0; i < kMobiusConfigs; ++i) {
      const BallPoint a(random_ball(rng, n, 0.95));
      const BallPoint x(random_ball(rng, n, 0.95));
      const BallPoint y(random_ball(rng, n, 0.95));
      const Vector ta = MobiusMap::T(a)(x.v());
      const double direct = 1.0 - ta.squaredNorm();
      mob1 = std::max(mob1, std::abs(conformal_factor(a, x.v()) * x.defect() - direct) / std::max(1.0, direct));
      mob2 = std::max(mob2, std::abs(one_minus_image_sq(a, x) - direct));
      const auto phi = MobiusMap::phi(a);
      invol = std::max(invol, (phi(phi(x.v())) - x.v()).norm());
      const auto [r0, r1] = distance_ratio_invariance(a, x, y);
      ratio = std::max(ratio, std::abs(r0 - r1));
      const double d0 = hyperbolic_distance(x, y);
      const double d1 = hyperbolic_distance(BallPoint(MobiusMap::T(a)(x.v())), BallPoint(MobiusMap::T(a)(y.v())));
      dist = std::max(dist, std::abs(d1 - d0) / std::max(1.0, d0));
    }
    out.at_most(tag("ident_mob1", n), mob1, 1e-10, "|T_a'(x)|(1-|x|^2) against 1-|T_a x|^2");
    out.at_most(tag("ident_mob2", n), mob2, 1e-10, "closed form of 1-|T_a x|^2");
    out.at_most(tag("involution", n), invol, 1e-10, "|phi_a(phi_a(x)) - x|");
    out.at_most(tag("distance_ratio", n), ratio, 1e-10, "|x-y|/[x,y] under T_a");
    out.at_most(tag("hyperbolic_distance_invariance", n), dist, 1e-10, "relative to max(1, d_h)");
  }
  return out;
}

// ---------------------------------------------------------------- kernels

SuiteResult suite_kernels(const VerifyConfig& cfg) {
  SuiteResult out;
  out.name = "kernels";
  Rng rng(cfg.seed);
  for (int n : dims_or(cfg, {3, 4, 6})) {
    const bool qmc = n >= 6;
    double norm_err = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Vector x = random_ball(rng, n, 0.9);
      const BallPoint bx(x);
      const Vector axis = x.norm() > 0.0 ? x : unit_vector(n, n - 1);
      const double scale = 0.25 * (1.0 - x.norm());
      const QuadratureRule rule = qmc ? sphere_rule_axial(n, axis, scale, 16, qmc_sphere_rule(n - 1, 512))
                                      : sphere_rule_axial(n, axis, scale, 16, 16);
      const double v = integrate([&](const Vector& t) { return poisson_kernel_ball(bx, SpherePoint(t)); }, rule);
      norm_err = std::max(norm_err, std::abs(v - 1.0));
    }
    out.at_most(tag("poisson_normalization", n), norm_err, qmc ? 1e-4 : 1e-8,
                qmc ? "graded polar panels, quasi-Monte Carlo fibre" : "graded polar panels");

    double harm = 0.0;
    for (int i = 0; i < 10; ++i) {
      const SpherePoint t(random_direction(rng, n));
      const BallPoint x(random_ball(rng, n, 0.8));
      const ScalarField pk = [&t](const Vector& y) { return poisson_kernel_ball(BallPoint(y), t); };
      harm = std::max(harm, std::abs(hyperbolic_laplacian_fd(pk, x)));
    }
    out.at_most(tag("poisson_harmonic", n), harm, 1e-4, "FD hyperbolic Laplacian of P_h(., t)");

    const Polynomial p = Polynomial::random(n, 3, rng);
    const BallPoint a(random_ball(rng, n, 0.6));
    const auto phi = MobiusMap::phi(a);
    const ScalarField composed = [&](const Vector& y) { return p(phi(y)); };
    double inv = 0.0;
    for (int i = 0; i < 5; ++i) {
      const BallPoint x(random_ball(rng, n, 0.6));
      const double lhs = hyperbolic_laplacian_fd(composed, x, 1e-3);
      const double rhs = hyperbolic_laplacian_exact(p, phi(x.v()));
      inv = std::max(inv, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    out.at_most(tag("laplacian_invariance", n), inv, 1e-4, "Delta_h(p o phi_a) = (Delta_h p) o phi_a, degree 3");

    double sym = 0.0;
    double origin = 0.0;
    for (int i = 0; i < 20; ++i) {
      const BallPoint x(random_ball(rng, n, 0.9));
      const BallPoint y(random_ball(rng, n, 0.9));
      const double gxy = green_function(x, y);
      sym = std::max(sym, std::abs(gxy - green_function(y, x)) / std::max(1e-300, std::abs(gxy)));
      const double g0 = green_function(BallPoint(Vector::Zero(n)), y);
      origin = std::max(origin, std::abs(g0 - green_radial(n, y.v().norm()) / n) / g0);
    }
    out.at_most(tag("green_symmetry", n), sym, 1e-12);
    out.at_most(tag("green_origin", n), origin, 1e-12, "G_h(0, y) = g(|y|)/n");
  }
  return out;
}

// ---------------------------------------------------------------- dirichlet

SuiteResult suite_dirichlet(const VerifyConfig& cfg) {
  SuiteResult out;
  out.name = "dirichlet";
  const int n = dim_or(cfg, 3);
  Rng rng(cfg.seed);

  const BallPoint x0(0.5 * random_ball(rng, n, 1.0));
  out.at_most(tag("constant_data", n), std::abs(solve_dirichlet(boundary_constant(n, -1.25), std::monostate{}, x0) + 1.25),
              1e-10);

  Polynomial u0 = Polynomial::random(n, 4, rng);
  u0.add_term(Polynomial::Exponents(static_cast<std::size_t>(n), 0), 4.0);
  const SolutionField field(boundary_polynomial(u0), source_manufactured(u0));
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Vector x = random_ball(rng, n, 0.9);
    worst = std::max(worst, std::abs(field(x) - u0(x)) / std::abs(u0(x)));
  }
  out.at_most(tag("manufactured_solution", n), worst, 1e-3, "max relative error, degree 4, |x| <= 0.9");

  const CompactField bump = radial_bump(n, 0.5);
  double repro = 0.0;
  for (int i = 0; i < 3; ++i) {
    const BallPoint a(i == 0 ? Vector(Vector::Zero(n)) : random_ball(rng, n, 0.4));
    const auto [v, g] = reproduce_from_green(bump, a);
    repro = std::max(repro, std::abs(g - v) / std::abs(v));
  }
  out.at_most(tag("green_reproduction", n), repro, 1e-3, "radial bump on B(0, 1/2)");

  std::vector<Atom> atoms;
  const double weights[3] = {1.0, 0.5, 2.0};
  for (double w : weights) atoms.push_back(Atom{random_ball(rng, n, 0.3), w});
  const DiscreteMeasure mu(atoms);
  const auto [lhs, rhs] = weak_form_check(mu, bump);
  out.at_most(tag("weak_form_measure", n), std::abs(rhs - lhs) / std::abs(lhs), 1e-3, "three atoms");

  const DiscreteMeasure single({Atom{Vector::Zero(n), 0.75}});
  const BallPoint probe(random_ball(rng, n, 0.9));
  const double expect = 0.75 * green_radial(n, probe.v().norm()) / n;
  out.at_most(tag("single_atom_potential", n), std::abs(green_potential_measure(single, probe) - expect) / expect, 1e-14);
  return out;
}

// ---------------------------------------------------------------- holder

SuiteResult suite_holder(const VerifyConfig& cfg, bool negative) {
  SuiteResult out;
  out.name = "holder";
  const int n = dim_or(cfg, 3);
  const SpherePoint pole(unit_vector(n, n - 1));
  const auto grid = geometric_r_grid(1, 12);
  for (double a : alphas(cfg)) {
    const BoundaryData phi = boundary_holder_spike(n, a, pole.v());
    add_bounded(out, tag_alpha("holder_radial", n, a), holder_radial_scan(phi, a, pole, grid));

    const BoundScan ia = integral_I_alpha_scan(a, n, grid, 16);
    out.at_most(tag_alpha("I_alpha.refinement", n, a), scan_change(ia, integral_I_alpha_scan(a, n, grid, 32)), 0.02);
    add_bounded(out, tag_alpha("I_alpha", n, a), ia);

    const auto omega = [a](double t) { return std::pow(t, a); };
    const BoundScan io = integral_I_omega_scan(omega, n, grid, 16);
    out.at_most(tag_alpha("I_omega.refinement", n, a), scan_change(io, integral_I_omega_scan(omega, n, grid, 32)), 0.02);
    add_bounded(out, tag_alpha("I_omega", n, a), io);
  }
  if (negative) {
    HolderScanOptions eo;
    eo.poisson.kernel = PoissonKernelKind::euclidean;
    BoundScan euc = holder_radial_scan(boundary_holder_spike(n, 1.0, pole.v()), 1.0, pole, grid, eo);
    out.at_least(tag_alpha("holder_radial.euclidean_growth", n, 1.0), euc.trend_slope, 0.1,
                 "Euclidean Poisson kernel: the scan must grow");
    out.scans.push_back({"euclidean", "negative-control", std::move(euc)});
  }
  return out;
}

// ---------------------------------------------------------------- green-gradient

SuiteResult suite_green_gradient(const VerifyConfig& cfg) {
  SuiteResult out;
  out.name = "green-gradient";
  const int n = dim_or(cfg, 3);
  const SourceDensity psi = source_defect(n, 1.0);

  BoundScan grad = green_gradient_scan(psi, geometric_r_grid(1, 10), n - 1);
  const std::size_t last = grad.scaled.size() - 1;
  const double step = std::abs(grad.scaled[last] - grad.scaled[last - 1]) / grad.scaled[last];
  out.report(tag("green_gradient.final", n), grad.scaled.back(), "|dG_h[1-|x|^2]/dx_n| at r = 1 - 2^-10");
  out.require(tag("green_gradient.bounded", n), grad.bounded, fmt("trend_slope=%.17g", grad.trend_slope));
  out.at_most(tag("green_gradient.plateau", n), step, 0.01, "relative change over the last grid step");
  out.scans.push_back({"hyperbolic", "primary", std::move(grad)});

  const auto grid = geometric_r_grid(1, 12);
  {
    const BoundScan s = integral_A_scan(n, grid, 16);
    out.at_most(tag("A.refinement", n), scan_change(s, integral_A_scan(n, grid, 32)), 0.02);
    add_bounded(out, tag("A", n), s);
  }
  {
    const BoundScan s = integral_B_scan(n, grid, 16);
    out.at_most(tag("B.refinement", n), scan_change(s, integral_B_scan(n, grid, 32)), 0.02);
    add_bounded(out, tag("B", n), s);
  }
  for (double m : {n - 2.0, n - 1.0, static_cast<double>(n)}) {
    const BoundScan s = integral_I_m_scan(m, n, grid, 16);
    const std::string name = tag(fmt("I_m(m=%g)", m), n);
    out.at_most(name + ".refinement", scan_change(s, integral_I_m_scan(m, n, grid, 32)), 0.02);
    add_bounded(out, name, s);
  }
  {
    BoundScan bt;
    bt.name = "B_total";
    bool stable = true;
    for (int j = 1; j <= 12; ++j) {
      const double r = 1.0 - std::ldexp(1.0, -j);
      const RefinedIntegral v = integral_B_total(r, n);
      stable = stable && v.stable && v.relative_change <= 0.02;
      bt.steps.push_back(j);
      bt.grid.push_back(r);
      bt.raw.push_back(v.value);
      bt.scaled.push_back(v.value);
    }
    finalize_scan(bt);
    out.require(tag("B_total.refinement", n), stable, "level doubling changes every value by <= 2%");
    add_bounded(out, tag("B_total", n), std::move(bt));
  }
  for (double r : {0.5, 0.9, 0.99}) {
    const RefinedIntegral j3 = integral_J3(r, 1.0, n);
    const RefinedIntegral j4 = integral_J4(r, 1.0, n);
    out.require(tag(fmt("J3(r=%g)", r), n), std::isfinite(j3.value) && j3.stable,
                fmt("value=%.17g", j3.value) + fmt(" change=%.3g", j3.relative_change));
    out.require(tag(fmt("J4(r=%g)", r), n), std::isfinite(j4.value) && j4.stable,
                fmt("value=%.17g", j4.value) + fmt(" change=%.3g", j4.relative_change));
  }
  return out;
}

// ---------------------------------------------------------------- riesz

SuiteResult suite_riesz(const VerifyConfig& cfg) {
  SuiteResult out;
  out.name = "riesz";
  const int n = dim_or(cfg, 3);
  ConditionParams params;
  params.seed = cfg.seed;

  const ConditionReport h3 = check_condition(source_defect(n, 1.0), ConditionTag::h3, params);
  out.require(tag("h3.defect_passes", n), h3.pass, fmt("M=%.17g", h3.constant));
  const ConditionReport unit = check_condition(source_unit(n), ConditionTag::h3, params);
  out.require(tag("h3.unit_fails", n), !unit.pass, unit.detail);
  const ConditionReport h4 = check_condition(source_defect_power(n, 3.0), ConditionTag::h4, params);
  out.require(tag("h4.defect_cubed_passes", n), h4.pass, fmt("norm=%.17g", h4.constant));
  const ConditionReport mu_ok = check_condition(source_defect(n, 1.0), ConditionTag::int_cond_mu, params);
  out.require(tag("intCondMu.defect_passes", n), mu_ok.pass, fmt("integral=%.17g", mu_ok.constant));
  const ConditionReport mu_bad = check_condition(source_unit(n), ConditionTag::int_cond_mu, params);
  out.require(tag("intCondMu.unit_fails", n), !mu_bad.pass, mu_bad.detail);

  // (h3-1) sample psi = (1-|y|^2)^{1.8}: the Riesz density (1-|y|^2)^{-2} psi.
  const ConditionReport h31 = check_condition(source_defect_power(n, 1.8), ConditionTag::h3_1, params);
  out.require(tag("h3_1.sample_passes", n), h31.pass, fmt("norm=%.17g", h31.constant));
  const double mu = 2.0 / n;
  const ScalarField f = [](const Vector& y) { return std::pow(1.0 - y.squaredNorm(), -0.2); };
  BoundScan riesz;
  riesz.name = "riesz_potential[h3-1]";
  const SpherePoint e1(unit_vector(n, 0));
  for (int j = 1; j <= 10; ++j) {
    const double r = 1.0 - std::ldexp(1.0, -j);
    const double v = riesz_potential(f, mu, BallPoint(Vector(r * e1.v())));
    riesz.steps.push_back(j);
    riesz.grid.push_back(r);
    riesz.raw.push_back(v);
    riesz.scaled.push_back(v);
  }
  finalize_scan(riesz);
  add_bounded(out, tag("riesz_potential", n), std::move(riesz));

  const SpherePoint x0(unit_vector(n, n - 1));
  for (double a : alphas(cfg)) {
    HolderGreenResult res = holder_radial_green(source_defect_power(n, 3.0), a, x0, geometric_r_grid(1, 12));
    out.report(tag_alpha("holder_green.two_point_quotient", n, a), res.two_point_quotient);
    add_bounded(out, tag_alpha("holder_green", n, a), std::move(res.scan));
  }
  return out;
}

// ---------------------------------------------------------------- halfspace

SuiteResult suite_halfspace(const VerifyConfig& cfg, bool negative) {
  SuiteResult out;
  out.name = "halfspace";
  const int n = dim_or(cfg, 3);
  const int m = n - 1;
  Rng rng(cfg.seed);

  double lo = INFINITY;
  double hi = -INFINITY;
  // Non-dyadic heights, so node positions do not rescale exactly.
  for (int j = -2; j <= 8; ++j) {
    const double v = halfspace_kernel_mass(0.7 * std::pow(3.0, -j), n);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  out.at_most(tag("kernel_mass.unit", n), std::max(std::abs(lo - 1.0), std::abs(hi - 1.0)), 1e-6);
  out.at_most(tag("kernel_mass.y_independent", n), hi - lo, 1e-10, "y = 0.7 * 3^-j, j = -2..8");

  const CompactC1Data bump = halfspace_bump(n, 1.0, Vector::Zero(m));
  const auto deep = geometric_y_grid(0, 20);
  BoundScan normal = normal_derivative_scan(bump, Vector::Zero(m), deep);
  out.at_most(tag("normal_derivative.vanishes", n), normal.raw.back() / normal.raw.front(), 1e-3,
              "|du/dy| at y = 2^-20 over its value at y = 1");
  out.scans.push_back({"hyperbolic", "primary", std::move(normal)});

  std::vector<Vector> xs;
  for (int i = 0; i < 8; ++i) {
    Vector v(m);
    for (int k = 0; k < m; ++k) v(k) = rng.uniform(-0.6, 0.6);
    xs.push_back(v);
  }
  double tang = 0.0;
  for (const auto& x : xs) {
    for (int i = 0; i < m; ++i) {
      tang = std::max(tang, std::abs(tangential_derivative(bump, i, HalfSpacePoint(x, 1e-4)) - bump.gradient(x)(i)));
    }
  }
  out.at_most(tag("tangential_derivative.boundary_limit", n), tang, 1e-4, "y = 1e-4");

  const C1Report c1 = c1_extension_report(bump, xs, deep);
  out.require(tag("c1_extension.bump", n), c1.pass,
              fmt("tangential_error=%.3g", c1.tangential_error.back()) + fmt(" normal_max=%.3g", c1.normal_max.back()));

  const double s = n + 0.5;
  std::vector<double> ys;
  for (int j = 0; j <= 10; ++j) ys.push_back(0.7 * std::pow(3.0, -j));
  BoundScan is = integral_I_s_alpha_scan(s, 0.5, n, ys);
  const auto [mn, mx] = std::minmax_element(is.scaled.begin(), is.scaled.end());
  out.at_most(tag("I_s_alpha.y_independent", n), (*mx - *mn) / *mx, 1e-8, "s = n + 1/2, alpha = 1/2");
  out.scans.push_back({"hyperbolic", "primary", std::move(is)});

  if (negative) {
    const auto ys = geometric_y_grid(0, 14);
    const CompactC1Data dini = halfspace_dini_example(n);
    BoundScan hyp = normal_derivative_scan(dini, Vector::Zero(m), ys);
    HalfSpaceOptions eo;
    eo.kernel = PoissonKernelKind::euclidean;
    BoundScan euc = normal_derivative_scan(dini, Vector::Zero(m), ys, eo);
    bool hyp_down = true;
    bool euc_up = true;
    for (std::size_t i = ys.size() - 8; i < ys.size(); ++i) {
      hyp_down = hyp_down && hyp.raw[i] < hyp.raw[i - 1];
      euc_up = euc_up && euc.raw[i] > euc.raw[i - 1];
    }
    out.require(tag("dini.hyperbolic_decays", n), hyp_down && hyp.raw.back() < 0.5 * hyp.max);
    out.require(tag("dini.euclidean_grows", n), euc_up && !euc.bounded);
    hyp.name += "[dini]";
    euc.name += "[dini]";
    out.scans.push_back({"hyperbolic", "negative-control", std::move(hyp)});
    out.scans.push_back({"euclidean", "negative-control", std::move(euc)});
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"mobius", "kernels", "dirichlet", "holder",
                                              "green-gradient", "riesz", "halfspace"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

SuiteResult run_suite(const std::string& name, const VerifyConfig& config) {
  const bool negative = config.negative_control;
  if (name == "mobius") return suite_mobius(config);
  if (name == "kernels") return suite_kernels(config);
  if (name == "dirichlet") return suite_dirichlet(config);
  if (name == "holder") return suite_holder(config, negative);
  if (name == "green-gradient") return suite_green_gradient(config);
  if (name == "riesz") return suite_riesz(config);
  if (name == "halfspace") return suite_halfspace(config, negative);
  throw DomainError("unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_verify(const VerifyConfig& config) {
  std::vector<SuiteResult> out;
  if (config.suite == "all") {
    VerifyConfig all = config;
    all.negative_control = true;
    for (const auto& name : suite_names()) out.push_back(run_suite(name, all));
  } else {
    out.push_back(run_suite(config.suite, config));
  }
  return out;
}

}  // namespace hyplap::cli
