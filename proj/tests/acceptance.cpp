// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance <path-to-hyplap-cli> [scratch-dir]

#include "oracles.hpp"

#include "hyplap/catalog.hpp"
#include "hyplap/geometry.hpp"
#include "hyplap/halfspace.hpp"
#include "hyplap/kernels.hpp"
#include "hyplap/polynomial.hpp"
#include "hyplap/quadrature.hpp"
#include "hyplap/regularity.hpp"
#include "hyplap/rng.hpp"
#include "hyplap/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace hyplap;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok    " : "FAILED") + "  " + what);
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Test-side Mobius formulas.
double o_bracket_sq(const Vector& x, const Vector& a) { return 1.0 + x.squaredNorm() * a.squaredNorm() - 2.0 * x.dot(a); }

Vector o_mobius(const Vector& a, const Vector& x) {
  const Vector d = x - a;
  return ((1.0 - a.squaredNorm()) * d - d.squaredNorm() * a) / o_bracket_sq(x, a);
}

double o_pseudo(const Vector& x, const Vector& y) { return (x - y).norm() / std::sqrt(o_bracket_sq(x, y)); }

std::vector<double> scaled_change(const BoundScan& a, const BoundScan& b) {
  std::vector<double> out;
  for (std::size_t i = 0; i < a.scaled.size(); ++i) {
    out.push_back(std::abs(a.scaled[i] - b.scaled[i]) / std::max(std::abs(a.scaled[i]), 1e-300));
  }
  return out;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

void expect_bounded(Outcome& o, const BoundScan& s, const std::string& label) {
  o.expect(s.bounded, label + " bounded (slope " + num(s.trend_slope) + ", max/median " + num(s.max / s.median) + ")");
}

// ---------------------------------------------------------------- 1

Outcome criterion_mobius() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(101);
  for (int n = 2; n <= 6; ++n) {
    double e_map = 0, e1 = 0, e2 = 0, e_inv = 0, e_ratio = 0, e_dist = 0;
    for (int i = 0; i < 10000; ++i) {
      const Vector av = oracle::random_ball(rng, n, 0.95);
      const Vector xv = oracle::random_ball(rng, n, 0.95);
      const Vector yv = oracle::random_ball(rng, n, 0.95);
      const BallPoint a(av), x(xv), y(yv);
      const Vector tx = MobiusMap::T(a)(xv);
      const Vector ty = MobiusMap::T(a)(yv);
      e_map = std::max(e_map, (tx - o_mobius(av, xv)).norm());
      const double br = o_bracket_sq(xv, av);
      const double lambda = (1.0 - av.squaredNorm()) / br;
      const double one_minus = (1.0 - av.squaredNorm()) * (1.0 - xv.squaredNorm()) / br;
      e1 = std::max(e1, std::abs(conformal_factor(a, xv) - lambda) / lambda);
      e1 = std::max(e1, std::abs(conformal_factor(a, xv) * x.defect() - (1.0 - tx.squaredNorm())) /
                            (1.0 - tx.squaredNorm()));
      e2 = std::max(e2, std::abs(one_minus_image_sq(a, x) - one_minus));
      e2 = std::max(e2, std::abs(one_minus_image_sq(a, x) - (1.0 - tx.squaredNorm())));
      const auto phi = MobiusMap::phi(a);
      e_inv = std::max(e_inv, (phi(phi(xv)) - xv).norm());
      const auto [r0, r1] = distance_ratio_invariance(a, x, y);
      e_ratio = std::max(e_ratio, std::abs(r0 - o_pseudo(xv, yv)));
      e_ratio = std::max(e_ratio, std::abs(r1 - o_pseudo(tx, ty)));
      e_ratio = std::max(e_ratio, std::abs(r0 - r1));
      const double d0 = hyperbolic_distance(x, y);
      const double d1 = hyperbolic_distance(BallPoint(tx), BallPoint(ty));
      e_dist = std::max(e_dist, std::abs(d1 - d0) / std::max(1.0, d0));
    }
    const std::string tag = "n=" + std::to_string(n) + ": ";
    o.expect(e_map <= 1e-10, tag + "T_a against the closed form " + num(e_map));
    o.expect(e1 <= 1e-10, tag + "|T_a'(x)| identity " + num(e1));
    o.expect(e2 <= 1e-10, tag + "1-|T_a x|^2 identity " + num(e2));
    o.expect(e_inv <= 1e-10, tag + "phi_a involution " + num(e_inv));
    o.expect(e_ratio <= 1e-10, tag + "distance ratio invariance " + num(e_ratio));
    o.expect(e_dist <= 1e-10, tag + "d_h invariance (relative) " + num(e_dist));
  }
  const double t = seconds_since(t0);
  o.expect(t < 10.0, "runtime " + num(t) + " s < 10 s");
  return o;
}

// ---------------------------------------------------------------- 2

Outcome criterion_normalization() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(202);
  for (int n : {3, 4, 6}) {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Vector x = oracle::random_ball(rng, n, 0.9);
      const BallPoint bx(x);
      const double scale = 0.25 * (1.0 - x.norm());
      const QuadratureRule rule = n == 6 ? sphere_rule_axial(n, x, scale, 16, qmc_sphere_rule(n - 1, 512))
                                         : sphere_rule_axial(n, x, scale, 16, 16);
      worst = std::max(worst, std::abs(integrate([&](const Vector& t) { return poisson_kernel_ball(bx, SpherePoint(t)); },
                                                 rule) - 1.0));
    }
    const double tol = n == 6 ? 1e-4 : 1e-8;
    o.expect(worst <= tol, "n=" + std::to_string(n) + ": max |int P_h - 1| = " + num(worst) + " <= " + num(tol));
  }
  const double t = seconds_since(t0);
  o.expect(t < 60.0, "runtime " + num(t) + " s < 60 s");
  return o;
}

// ---------------------------------------------------------------- 3

Outcome criterion_harmonic() {
  Outcome o;
  Rng rng(303);
  for (int n : {3, 4}) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const SpherePoint t(oracle::random_sphere(rng, n));
      const BallPoint x(oracle::random_ball(rng, n, 0.8));
      const ScalarField pk = [&t](const Vector& y) { return poisson_kernel_ball(BallPoint(y), t); };
      worst = std::max(worst, std::abs(hyperbolic_laplacian_fd(pk, x)));
    }
    o.expect(worst <= 1e-4, "n=" + std::to_string(n) + ": max |Delta_h P_h(., t)| = " + num(worst));
    double inv = 0.0;
    for (int deg = 0; deg <= 3; ++deg) {
      for (int k = 0; k < 5; ++k) {
        const Polynomial p = Polynomial::random(n, deg, rng);
        const BallPoint a(oracle::random_ball(rng, n, 0.6));
        const auto phi = MobiusMap::phi(a);
        const ScalarField composed = [&](const Vector& y) { return p(phi(y)); };
        for (int i = 0; i < 4; ++i) {
          const BallPoint x(oracle::random_ball(rng, n, 0.6));
          inv = std::max(inv, std::abs(hyperbolic_laplacian_fd(composed, x, 1e-3) - hyperbolic_laplacian_exact(p, phi(x.v()))));
        }
      }
    }
    o.expect(inv <= 1e-4, "n=" + std::to_string(n) + ": invariance residual, degree <= 3: " + num(inv));
  }
  return o;
}

// ---------------------------------------------------------------- 4

Outcome criterion_reproduction() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const int n = 3;
  const CompactField f = radial_bump(n, 0.5);
  Rng rng(404);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const BallPoint a(i == 0 ? Vector(Vector::Zero(n)) : Vector(oracle::random_ball(rng, n, 0.4)));
    const auto [v, g] = reproduce_from_green(f, a);
    worst = std::max(worst, std::abs(g - v) / std::abs(v));
  }
  o.expect(worst <= 1e-3, "max relative error over 20 points |a| <= 0.4: " + num(worst));
  const double t = seconds_since(t0);
  o.expect(t < 120.0, "runtime " + num(t) + " s < 120 s");
  return o;
}

// ---------------------------------------------------------------- 5

Outcome criterion_manufactured() {
  Outcome o;
  const int n = 3;
  Rng rng(505);
  Polynomial u0 = Polynomial::random(n, 4, rng);
  u0.add_term({0, 0, 0}, 4.0);
  const SolutionField field(boundary_polynomial(u0), source_manufactured(u0));
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Vector x = i < 5 ? Vector(0.9 * oracle::random_sphere(rng, n)) : Vector(oracle::random_ball(rng, n, 0.9));
    worst = std::max(worst, std::abs(field(x) - u0(x)) / std::abs(u0(x)));
  }
  o.expect(worst <= 1e-3, "degree-4 solution, max relative error on |x| <= 0.9: " + num(worst));
  const DiscreteMeasure mu({Atom{make_vector({0.1, 0.0, 0.0}), 1.0}, Atom{make_vector({0.0, -0.2, 0.1}), 0.5},
                            Atom{make_vector({0.0, 0.0, 0.3}), 2.0}});
  const auto [lhs, rhs] = weak_form_check(mu, radial_bump(n, 0.5));
  o.expect(std::abs(rhs - lhs) <= 1e-3 * std::abs(lhs), "three-atom weak form: " + num(lhs) + " vs " + num(rhs));
  return o;
}

// ---------------------------------------------------------------- 6

Outcome criterion_holder() {
  Outcome o;
  const int n = 3;
  const SpherePoint pole(unit_vector(n, n - 1));
  const auto grid = geometric_r_grid(1, 12);
  for (double a : {0.5, 1.0}) {
    const BoundScan s = holder_radial_scan(boundary_holder_spike(n, a, pole.v()), a, pole, grid);
    o.expect(s.max <= 10.0 * s.median && s.trend_slope <= 0.02,
             "alpha=" + num(a) + ": max/median " + num(s.max / s.median) + ", slope " + num(s.trend_slope));
  }
  HolderScanOptions eo;
  eo.poisson.kernel = PoissonKernelKind::euclidean;
  const BoundScan e = holder_radial_scan(boundary_holder_spike(n, 1.0, pole.v()), 1.0, pole, grid, eo);
  o.expect(e.trend_slope >= 0.1, "Euclidean kernel, alpha=1: slope " + num(e.trend_slope) + " >= 0.1");
  return o;
}

// ---------------------------------------------------------------- 7

Outcome criterion_integral_scans() {
  Outcome o;
  const auto grid = geometric_r_grid(1, 12);
  for (int n : {3, 4, 5}) {
    const std::string tag = "n=" + std::to_string(n) + " ";
    auto both = [&](const std::string& label, const std::function<BoundScan(int)>& make) {
      const BoundScan s = make(16);
      const double change = max_of(scaled_change(s, make(32)));
      o.expect(change <= 0.02, tag + label + " level doubling change " + num(change));
      expect_bounded(o, s, tag + label);
    };
    for (double a : {0.5, 1.0}) {
      both("I_alpha(alpha=" + num(a) + ")", [&](int lv) { return integral_I_alpha_scan(a, n, grid, lv); });
      both("I_omega(omega=t^" + num(a) + ")", [&](int lv) {
        return integral_I_omega_scan([a](double t) { return std::pow(t, a); }, n, grid, lv);
      });
    }
    both("A", [&](int lv) { return integral_A_scan(n, grid, lv); });
    both("B", [&](int lv) { return integral_B_scan(n, grid, lv); });
    for (double m : {n - 2.0, n - 1.0, n + 0.0}) {
      both("I_m(m=" + num(m) + ")", [&](int lv) { return integral_I_m_scan(m, n, grid, lv); });
    }
    BoundScan bt;
    bt.name = "B_total";
    double change = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const RefinedIntegral v = integral_B_total(grid[j], n);
      change = std::max(change, v.relative_change);
      bt.steps.push_back(static_cast<double>(j + 1));
      bt.grid.push_back(grid[j]);
      bt.raw.push_back(v.value);
      bt.scaled.push_back(v.value);
    }
    finalize_scan(bt);
    o.expect(change <= 0.02, tag + "int_0^1 B d rho level doubling change " + num(change));
    expect_bounded(o, bt, tag + "int_0^1 B d rho");
    if (n == 4) o.expect(std::abs(bt.raw.back() - 1.0) <= 1e-8, tag + "int_0^1 B d rho = 1 (mean value property)");
  }
  return o;
}

// ---------------------------------------------------------------- 8

Outcome criterion_green_gradient() {
  Outcome o;
  const int n = 3;
  const BoundScan s = green_gradient_scan(source_defect(n, 1.0), geometric_r_grid(1, 10), n - 1);
  bool monotone = true;
  for (std::size_t i = 1; i < s.scaled.size(); ++i) monotone = monotone && s.scaled[i] >= s.scaled[i - 1];
  const double last_step = (s.scaled.back() - s.scaled[s.scaled.size() - 2]) / s.scaled.back();
  o.expect(s.bounded, "|grad G_h[1-|x|^2]| bounded to r = 1 - 2^-10 (slope " + num(s.trend_slope) + ")");
  o.expect(monotone && last_step <= 0.01 && s.scaled.back() < 0.5,
           "plateau: final " + num(s.scaled.back()) + ", last relative step " + num(last_step));
  for (int nn : {3, 4, 5}) {
    for (double r : {0.5, 0.9, 0.99}) {
      const RefinedIntegral j3 = integral_J3(r, 1.0, nn);
      const RefinedIntegral j4 = integral_J4(r, 1.0, nn);
      o.expect(std::isfinite(j3.value) && j3.stable && std::isfinite(j4.value) && j4.stable,
               "n=" + std::to_string(nn) + " r=" + num(r) + ": J3 " + num(j3.value) + " J4 " + num(j4.value) +
                   " (changes " + num(j3.relative_change) + ", " + num(j4.relative_change) + ")");
    }
  }
  // Mean value oracles with M = 1: J3 = 3 for n = 3, J4 = 2 for n = 4.
  o.expect(std::abs(integral_J3(0.9, 1.0, 3).value - 3.0) <= 1e-8, "J3 = 3M for n = 3");
  o.expect(std::abs(integral_J4(0.9, 1.0, 4).value - 2.0) <= 1e-8, "J4 = 2M for n = 4");
  return o;
}

// ---------------------------------------------------------------- 9

Outcome criterion_riesz() {
  Outcome o;
  const int n = 3;
  const ConditionReport h3 = check_condition(source_defect(n, 1.0), ConditionTag::h3);
  o.expect(h3.pass && std::abs(h3.constant - 1.0) <= 1e-8, "1-|x|^2 passes (h3) with M = " + num(h3.constant));
  const ConditionReport h4 = check_condition(source_defect_power(n, 3.0), ConditionTag::h4);
  o.expect(h4.pass, "(1-|x|^2)^3 passes (h4), alpha = 1");
  for (double p : {1.0, 2.0, 8.0}) {
    ConditionParams cp;
    cp.p = p;
    o.expect(check_condition(source_defect_power(n, 3.0), ConditionTag::h4, cp).pass, "  ... and with p = " + num(p));
  }
  const ConditionReport unit = check_condition(source_unit(n), ConditionTag::h3);
  o.expect(!unit.pass, "psi = 1 fails (h3): " + unit.detail);

  const ScalarField f = [](const Vector& y) { return std::pow(1.0 - y.squaredNorm(), -0.2); };
  const double mu = 2.0 / 3.0;
  const double v0 = riesz_potential(f, mu, BallPoint(Vector::Zero(n)));
  // V(0) = 3 int_0^1 r (1-r^2)^{-0.2} dr = 15/8.
  o.expect(std::abs(v0 - 15.0 / 8.0) <= 1e-8, "(h3-1) sample V(0) = " + num(v0) + " (15/8)");
  BoundScan rs;
  rs.name = "riesz";
  for (int j = 1; j <= 12; ++j) {
    const double r = 1.0 - std::ldexp(1.0, -j);
    const double v = riesz_potential(f, mu, BallPoint(Vector(r * unit_vector(n, 0))));
    rs.steps.push_back(j);
    rs.grid.push_back(r);
    rs.raw.push_back(v);
    rs.scaled.push_back(v);
  }
  finalize_scan(rs);
  expect_bounded(o, rs, "Riesz potential of the (h3-1) sample toward the boundary");
  const SpherePoint x0(unit_vector(n, n - 1));
  for (double a : {0.5, 1.0}) {
    const HolderGreenResult res = holder_radial_green(source_defect_power(n, 3.0), a, x0, geometric_r_grid(1, 12));
    expect_bounded(o, res.scan, "holder_radial_green alpha=" + num(a));
  }
  return o;
}

// ---------------------------------------------------------------- 10

/// sigma_{m-1} int_0^inf r^{a-1} (1+r^2)^{-s/2} dr = sigma_{m-1} B(a/2, (s-a)/2) / 2 with a = alpha + m.
double oracle_I_s(double s, double alpha, int n) {
  const int m = n - 1;
  const double area = m == 1 ? 2.0 : 2.0 * std::pow(M_PI, 0.5 * m) / std::tgamma(0.5 * m);
  const double a = alpha + m;
  return 0.5 * area * std::tgamma(0.5 * a) * std::tgamma(0.5 * (s - a)) / std::tgamma(0.5 * s);
}

Outcome criterion_halfspace() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const int n = 3;
  const int m = n - 1;
  double lo = INFINITY, hi = -INFINITY;
  for (int j = -3; j <= 10; ++j) {
    const double v = halfspace_kernel_mass(0.7 * std::pow(3.0, -j), n);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  o.expect(hi - lo <= 1e-10, "kernel mass spread over y = 0.7 * 3^-j: " + num(hi - lo));
  o.expect(std::max(std::abs(hi - 1.0), std::abs(lo - 1.0)) <= 1e-6, "kernel mass = 1: " + num(std::abs(hi - 1.0)));

  const CompactC1Data bump = halfspace_bump(n, 1.0, Vector::Zero(m));
  const auto deep = geometric_y_grid(0, 20);
  const BoundScan ns = normal_derivative_scan(bump, Vector::Zero(m), deep);
  o.expect(ns.raw.back() <= 1e-3 * ns.raw.front(),
           "normal derivative scan: final/initial = " + num(ns.raw.back() / ns.raw.front()) + " (y = 1 .. 2^-20)");

  Rng rng(1010);
  std::vector<Vector> xs;
  double tang = 0.0;
  for (int i = 0; i < 10; ++i) {
    Vector x(m);
    for (int k = 0; k < m; ++k) x(k) = rng.uniform(-0.6, 0.6);
    xs.push_back(x);
    for (int k = 0; k < m; ++k) {
      tang = std::max(tang, std::abs(tangential_derivative(bump, k, HalfSpacePoint(x, 1e-4)) - bump.gradient(x)(k)));
    }
  }
  o.expect(tang <= 1e-4, "tangential derivative at y = 1e-4 vs df/dx_i: " + num(tang));

  const C1Report c1 = c1_extension_report(bump, xs, deep);
  o.expect(c1.pass, "c1_extension_report passes for the smooth bump");

  std::vector<double> ys;
  for (int j = 0; j <= 12; ++j) ys.push_back(0.7 * std::pow(3.0, -j));
  for (double s : {3.0, 3.5, 5.0}) {
    const BoundScan is = integral_I_s_alpha_scan(s, 0.5, n, ys);
    double lo_s = INFINITY, hi_s = -INFINITY;
    for (double v : is.scaled) {
      lo_s = std::min(lo_s, v);
      hi_s = std::max(hi_s, v);
    }
    const double ref = oracle_I_s(s, 0.5, n);
    o.expect((hi_s - lo_s) <= 1e-8 * hi_s && std::abs(hi_s - ref) <= 1e-8 * ref,
             "y^{s-n+1-alpha} I_s^alpha, s=" + num(s) + ": spread " + num((hi_s - lo_s) / hi_s) + ", vs oracle " +
                 num(std::abs(hi_s - ref) / ref));
  }
  const double t = seconds_since(t0);
  o.expect(t < 180.0, "runtime " + num(t) + " s < 180 s");
  return o;
}

// ---------------------------------------------------------------- 11

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome criterion_determinism(const std::string& cli, const std::filesystem::path& scratch) {
  Outcome o;
  if (cli.empty()) {
    o.expect(false, "no CLI path given");
    return o;
  }
  std::filesystem::create_directories(scratch);
  const auto a = scratch / "verify_all_a.json";
  const auto b = scratch / "verify_all_b.json";
  for (const auto& p : {a, b}) {
    std::filesystem::remove(p);
    const std::string cmd = "\"" + cli + "\" verify all --seed 7 --out \"" + p.string() + "\"";
    const int rc = std::system(cmd.c_str());
    o.expect(rc == 0, "`verify all --seed 7` exit status " + std::to_string(rc));
  }
  const std::string ra = slurp(a);
  const std::string rb = slurp(b);
  o.expect(!ra.empty() && ra == rb, "reports byte-identical (" + std::to_string(ra.size()) + " bytes)");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::filesystem::path scratch =
      argc > 2 ? std::filesystem::path(argv[2]) : std::filesystem::temp_directory_path() / "hyplap_acceptance";

  struct Item {
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Item> items{
      {"Mobius identities, 10^4 configurations per n = 2..6", criterion_mobius},
      {"Poisson kernel normalization", criterion_normalization},
      {"hyperbolic harmonicity and Laplacian invariance", criterion_harmonic},
      {"Green reproduction of a radial bump", criterion_reproduction},
      {"manufactured Dirichlet solve and measure weak form", criterion_manufactured},
      {"radial Hoelder scan and Euclidean contrast", criterion_holder},
      {"zonal integral scans: stability and boundedness", criterion_integral_scans},
      {"Green potential gradient plateau and J integrals", criterion_green_gradient},
      {"growth conditions, Riesz potential, Hoelder Green scans", criterion_riesz},
      {"half-space suite", criterion_halfspace},
      {"determinism of verify all --seed 7", [&] { return criterion_determinism(cli, scratch); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    Outcome out;
    try {
      out = items[i].run();
    } catch (const std::exception& e) {
      out.expect(false, std::string("exception: ") + e.what());
    }
    for (const auto& note : out.notes) std::cout << "    " << note << "\n";
    std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << items[i].title << std::endl;
    failures += out.pass ? 0 : 1;
  }
  std::cout << (items.size() - failures) << "/" << items.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
