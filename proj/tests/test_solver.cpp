#include "doctest.h"
#include "oracles.hpp"

#include "hyplap/catalog.hpp"
#include "hyplap/errors.hpp"
#include "hyplap/kernels.hpp"
#include "hyplap/solver.hpp"

#include <cmath>
#include <sstream>

using namespace hyplap;

TEST_CASE("Poisson integral reproduces constants, means, and boundary values") {
  Rng rng(41);
  for (int n = 2; n <= 5; ++n) {
    const BoundaryData c = boundary_constant(n, 2.5);
    for (int i = 0; i < 5; ++i) {
      const BallPoint x(oracle::random_ball(rng, n, 0.95));
      CHECK(poisson_integral(c, x) == doctest::Approx(2.5).epsilon(1e-8));
    }
    const BoundaryData bump = boundary_zonal_bump(n, unit_vector(n, 0), 0.7);
    const BallPoint o(Vector::Zero(n));
    const double mean = integrate([&](const Vector& t) { return bump(t); }, sphere_rule(n, 30));
    CHECK(poisson_integral(bump, o, PoissonOptions{16, 30}) == doctest::Approx(mean).epsilon(1e-9));
  }
  // Radial limits at points of continuity, including a Hoelder spike away from its pole.
  const int n = 3;
  const BoundaryData spike = boundary_holder_spike(n, 0.5, unit_vector(n, 2));
  const Vector t = make_vector({0.6, 0.0, 0.8});
  double prev_err = 1e300;
  for (double r : {0.9, 0.99, 0.999, 0.9999}) {
    const double err = std::abs(poisson_integral(spike, BallPoint(r * t)) - spike(t));
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err < 1e-3);
}

TEST_CASE("maximum principle and linearity") {
  Rng rng(42);
  const int n = 3;
  const BoundaryData spike = boundary_holder_spike(n, 0.5, unit_vector(n, 2));
  for (int i = 0; i < 20; ++i) {
    const BallPoint x(oracle::random_ball(rng, n, 0.97));
    const double v = poisson_integral(spike, x);
    CHECK(v >= 0.0);
    CHECK(v <= std::sqrt(2.0) + 1e-12);
  }
  const Polynomial p = Polynomial::random(n, 3, rng);
  const BoundaryData a = boundary_polynomial(p);
  const BoundaryData b = boundary_zonal_bump(n, unit_vector(n, 1), 0.5);
  BoundaryData sum = a;
  sum.eval = [&](const Vector& t) { return 2.0 * a(t) - 3.0 * b(t); };
  const SourceDensity s1 = source_defect(n, 1.0);
  const SourceDensity s2 = source_defect_power(n, 2.0);
  SourceDensity s12 = s1;
  s12.eval = [&](const Vector& x) { return 2.0 * s1(x) - 3.0 * s2(x); };
  const BallPoint x(make_vector({0.2, -0.4, 0.5}));
  const double lhs = solve_dirichlet(sum, s12, x);
  const double rhs = 2.0 * solve_dirichlet(a, s1, x) - 3.0 * solve_dirichlet(b, s2, x);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("Green potential examples") {
  const int n = 3;
  const BallPoint o(Vector::Zero(n));
  SourceDensity zero = source_defect(n, 0.0);
  CHECK(green_potential(zero, o) == 0.0);
  // g = (1-r)^2 / r for n = 3, so int g (1-r^2) r^2 / (1-r^2)^3 dr = int r/(1+r)^2 = log 2 - 1/2.
  CHECK(green_potential(source_defect(n, 1.0), o) == doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-9));
  // General n against the 1-D radial integral with the library's profile.
  for (int m = 2; m <= 5; ++m) {
    auto f = [m](double r) {
      if (r <= 0.0 || r >= 1.0) return 0.0;
      return green_radial(m, r) * std::pow(r, m - 1) * std::pow(1.0 - r * r, 1 - m); };
    const double expect = oracle::simpson_graded(f, 0.0, 1.0 - 1e-12, 40, 1e-15) +
                          oracle::simpson(f, 1.0 - 1e-12, 1.0 - 1e-16, 1e-20);
    CHECK(green_potential(source_defect(m, 1.0), BallPoint(Vector::Zero(m))) ==
          doctest::Approx(expect).epsilon(1e-7));
  }
  // Positivity and decay toward the boundary.
  double prev = 1e300;
  for (double r : {0.5, 0.9, 0.99, 0.999, 0.9999}) {
    const double v = green_potential(source_defect(n), BallPoint(r * unit_vector(n, 0)));
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("Green potential of discrete measures") {
  const int n = 3;
  const DiscreteMeasure single({Atom{Vector::Zero(n), 1.0}});
  const BallPoint x(make_vector({0.3, 0.1, -0.2}));
  CHECK(green_potential_measure(single, x) == doctest::Approx(green_radial(n, x.v().norm()) / n).epsilon(1e-14));
  CHECK(green_potential_measure(DiscreteMeasure{}, x) == 0.0);
  const Vector p = make_vector({0.4, 0.0, 0.0});
  const DiscreteMeasure pair({Atom{p, 0.5}, Atom{-p, 0.5}});
  const BallPoint y(make_vector({0.1, 0.3, 0.2}));
  const BallPoint ry(make_vector({-0.1, 0.3, 0.2}));
  CHECK(green_potential_measure(pair, y) == doctest::Approx(green_potential_measure(pair, ry)).epsilon(1e-14));
  CHECK_THROWS_AS(green_potential_measure(pair, BallPoint(p)), SingularityError);
  CHECK(pair.certificate() == doctest::Approx((1.0 - 0.16) * (1.0 - 0.16)).epsilon(1e-14));
  CHECK_THROWS_AS(DiscreteMeasure({Atom{p, -1.0}}), DomainError);
}

TEST_CASE("solve_dirichlet constant data") {
  const int n = 4;
  const BallPoint x(make_vector({0.1, 0.2, 0.3, -0.4}));
  CHECK(solve_dirichlet(boundary_constant(n, -1.25), std::monostate{}, x) == doctest::Approx(-1.25).epsilon(1e-10));
}

TEST_CASE("manufactured polynomial solution") {
  Rng rng(43);
  const int n = 3;
  Polynomial u0 = Polynomial::random(n, 4, rng);
  u0.add_term({0, 0, 0}, 4.0);
  const SolutionField field(boundary_polynomial(u0), source_manufactured(u0));
  double worst = 0.0;
  for (int i = 0; i < 6; ++i) {
    const Vector x = oracle::random_ball(rng, n, 0.9);
    const double u = field(x);
    worst = std::max(worst, std::abs(u - u0(x)) / std::abs(u0(x)));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("hyperbolic Laplacian by finite differences") {
  Rng rng(44);
  for (int n = 3; n <= 4; ++n) {
    CHECK(hyperbolic_laplacian_fd([](const Vector&) { return 3.0; }, BallPoint(oracle::random_ball(rng, n, 0.8))) == 0.0);
    for (int i = 0; i < 10; ++i) {
      const SpherePoint t(oracle::random_sphere(rng, n));
      const BallPoint x(oracle::random_ball(rng, n, 0.8));
      const ScalarField pk = [&t](const Vector& y) { return poisson_kernel_ball(BallPoint(y), t); };
      const double lap = hyperbolic_laplacian_fd(pk, x, 1e-3 * (1.0 - x.v().norm()));
      CHECK(std::abs(lap) <= 1e-4 * std::max(1.0, pk(x.v())));
    }
    // Invariance under phi_a for polynomials.
    const Polynomial p = Polynomial::random(n, 3, rng);
    const BallPoint a(oracle::random_ball(rng, n, 0.6));
    const auto phi = MobiusMap::phi(a);
    const ScalarField composed = [&](const Vector& y) { return p(phi(y)); };
    for (int i = 0; i < 5; ++i) {
      const BallPoint x(oracle::random_ball(rng, n, 0.6));
      const double lhs = hyperbolic_laplacian_fd(composed, x, 1e-3);
      const double rhs = hyperbolic_laplacian_exact(p, phi(x.v()));
      CHECK(std::abs(lhs - rhs) <= 1e-4 * std::max(1.0, std::abs(rhs)));
    }
  }
  const BallPoint edge(0.999999 * unit_vector(3, 0));
  CHECK(std::isfinite(hyperbolic_laplacian_fd([](const Vector& y) { return y(0); }, edge, 0.5)));
}

TEST_CASE("gradient_fd") {
  const Vector c = make_vector({0.3, -1.0, 2.0});
  const BallPoint x(make_vector({0.2, 0.1, -0.5}));
  CHECK((gradient_fd([&c](const Vector& y) { return c.dot(y); }, x) - c).norm() < 1e-10);
  CHECK((gradient_fd([](const Vector& y) { return y.squaredNorm(); }, x) - 2.0 * x.v()).norm() < 1e-10);
  const SpherePoint t(make_vector({0.0, 0.6, 0.8}));
  const Vector an = poisson_kernel_ball_gradient(x, t);
  const Vector fd = gradient_fd([&t](const Vector& y) { return poisson_kernel_ball(BallPoint(y), t); }, x);
  CHECK((an - fd).norm() < 1e-6 * an.norm());
}

TEST_CASE("Green reproduction of a radial bump") {
  const int n = 3;
  const CompactField f = radial_bump(n, 0.5);
  // Analytic hyperbolic Laplacian against finite differences.
  for (double r : {0.0, 0.1, 0.25, 0.4, 0.48}) {
    const BallPoint x(r * make_vector({0.6, 0.0, 0.8}) + make_vector({0.0, 1e-3, 0.0}));
    const double fd = hyperbolic_laplacian_fd(f.eval, x, 2e-5);
    CHECK((*f.hyperbolic_laplacian)(x.v()) == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
  }
  const auto [v0, g0] = reproduce_from_green(f, BallPoint(Vector::Zero(n)));
  CHECK(g0 == doctest::Approx(v0).epsilon(1e-3));
  const auto [v1, g1] = reproduce_from_green(f, BallPoint(make_vector({0.2, -0.1, 0.15})));
  CHECK(g1 == doctest::Approx(v1).epsilon(1e-3));
  const auto [v2, g2] = reproduce_from_green(f, BallPoint(make_vector({0.0, 0.7, 0.0})));
  CHECK(v2 == 0.0);
  CHECK(std::abs(g2) < 2e-5);
  CompactField zero = f;
  zero.eval = [](const Vector&) { return 0.0; };
  zero.hyperbolic_laplacian = [](const Vector&) { return 0.0; };
  const auto [z0, z1] = reproduce_from_green(zero, BallPoint(Vector::Zero(n)));
  CHECK(z0 == 0.0);
  CHECK(z1 == 0.0);
  // Weak form for a three-atom measure against the bump.
  const DiscreteMeasure mu({Atom{make_vector({0.1, 0.0, 0.0}), 1.0}, Atom{make_vector({0.0, -0.2, 0.1}), 0.5},
                            Atom{make_vector({0.0, 0.0, 0.3}), 2.0}});
  const auto [lhs, rhs] = weak_form_check(mu, f);
  CHECK(rhs == doctest::Approx(lhs).epsilon(1e-3));
  CompactField bad = f;
  bad.support_radius = 1.0;
  CHECK_THROWS_AS(reproduce_from_green(bad, BallPoint(Vector::Zero(n))), DomainError);
}

TEST_CASE("SolutionField residual and CSV") {
  const int n = 3;
  Rng rng(45);
  Polynomial u0 = Polynomial::random(n, 2, rng);
  const SolutionField field(boundary_polynomial(u0), source_manufactured(u0));
  const BallPoint x(make_vector({0.1, 0.2, -0.3}));
  CHECK(std::abs(field.residual(x)) < 1e-3);
  const SolutionField harmonic(boundary_zonal_bump(n, unit_vector(n, 2), 0.6), std::monostate{});
  CHECK(std::abs(harmonic.residual(BallPoint(make_vector({0.3, 0.0, 0.5})))) < 1e-3);

  std::vector<SolutionRow> rows{{x.v(), field.evaluate(x), 0.0}};
  std::ostringstream os;
  write_solution_csv(os, rows);
  const std::string s = os.str();
  CHECK(s.rfind("x1,x2,x3,u,Phi,Psi,residual\r\n", 0) == 0);
  CHECK(s.find("0.10000000000000001,") != std::string::npos);
}

TEST_CASE("Mobius gradient relation") {
  Rng rng(46);
  const int n = 3;
  const Vector c = make_vector({1.0, -2.0, 0.5});
  const ScalarField lin = [&c](const Vector& y) { return c.dot(y); };
  const auto [a, b] = mobius_gradient_relation(lin, BallPoint(Vector::Zero(n)));
  CHECK(a == doctest::Approx(b).epsilon(1e-8));
  const auto [z0, z1] = mobius_gradient_relation([](const Vector&) { return 1.0; }, BallPoint(make_vector({0.5, 0, 0})));
  CHECK(z0 == 0.0);
  CHECK(z1 == 0.0);
  for (int i = 0; i < 100; ++i) {
    const Polynomial p = Polynomial::random(n, 3, rng);
    const ScalarField u = [&p](const Vector& y) { return p(y); };
    const BallPoint x(oracle::random_ball(rng, n, 0.95));
    const auto [g0, gx] = mobius_gradient_relation(u, x);
    if (gx < 1e-8) continue;
    CHECK(g0 / gx >= 0.5);
    CHECK(g0 / gx <= 2.0);
  }
}

TEST_CASE("catalog lookup") {
  CHECK(boundary_from_catalog("constant", 3, {{"c", 2.0}})(unit_vector(3, 0)) == 2.0);
  CHECK(boundary_from_catalog("linear", 3, {{"c1", 1.0}, {"c3", 0.0}})(unit_vector(3, 0)) == 1.0);
  CHECK(boundary_from_catalog("holder-spike", 3, {{"alpha", 0.5}}).holder->alpha == 0.5);
  CHECK_THROWS_AS(boundary_from_catalog("nope", 3, {}), DomainError);
  CHECK_THROWS_AS(boundary_from_catalog("constant", 3, {{"x", 1.0}}), DomainError);
  CHECK(source_from_catalog("defect", 3, {{"M", 2.0}}).growth.value() == 2.0);
  CHECK_FALSE(source_from_catalog("unit", 3, {}).growth.has_value());
  CHECK_THROWS_AS(source_from_catalog("defect-power", 3, {{"q", 1.0}}), DomainError);
  // Sampled Hoelder quotients stay under the declared constants.
  for (double alpha : {0.5, 1.0}) {
    const BoundaryData b = boundary_holder_spike(4, alpha, unit_vector(4, 3));
    CHECK(sampled_holder_quotient(b, alpha, 10000, 3) <= 1.05 * b.holder->constant);
  }
  const BoundaryData z = boundary_zonal_bump(3, unit_vector(3, 2), 0.4);
  CHECK(sampled_holder_quotient(z, 1.0, 10000, 4) <= 1.05 * *z.lipschitz);
}

TEST_CASE("polynomial algebra") {
  Polynomial p(2);
  p.add_term({2, 0}, 1.0).add_term({0, 2}, 1.0);
  CHECK(p.degree() == 2);
  CHECK(p.laplacian()(make_vector({0.3, 0.4})) == doctest::Approx(4.0));
  CHECK(p.euler()(make_vector({0.3, 0.4})) == doctest::Approx(2.0 * 0.25));
  // |x|^2 in n = 2: Delta_h = (1-r^2)^2 * 4.
  CHECK(hyperbolic_laplacian_exact(p, make_vector({0.3, 0.4})) == doctest::Approx(0.75 * 0.75 * 4.0));
  CHECK((p.gradient(make_vector({0.3, 0.4})) - make_vector({0.6, 0.8})).norm() < 1e-15);
}
