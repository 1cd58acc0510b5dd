#include "doctest.h"
#include "oracles.hpp"

#include "hyplap/errors.hpp"
#include "hyplap/kernels.hpp"
#include "hyplap/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace hyplap;

namespace {

constexpr double kPi = std::numbers::pi;

double wallis(int k) {
  return oracle::simpson([k](double t) { return std::pow(std::sin(t), k); }, 0.0, kPi, 1e-15);
}

}  // namespace

TEST_CASE("gauss rules integrate polynomials") {
  for (int m = 1; m <= 30; ++m) {
    const LineRule r = gauss_legendre(m);
    for (int d = 0; d <= 2 * m - 1; ++d) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) s += r.weights[i] * std::pow(r.nodes[i], d);
      const double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
      CHECK(std::abs(s - exact) < 1e-13);
    }
  }
  for (double alpha : {-0.5, 0.5, 1.0, 1.5, 2.5}) {
    const LineRule r = gauss_jacobi_symmetric(7, alpha);
    for (int d = 0; d <= 13; d += 2) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], d);
      // int z^d (1-z^2)^alpha = B((d+1)/2, alpha+1)
      const double exact = std::exp(std::lgamma(0.5 * (d + 1)) + std::lgamma(alpha + 1.0) -
                                    std::lgamma(0.5 * (d + 1) + alpha + 1.0));
      CHECK(s == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("sigma_star") {
  CHECK(sigma_star(3) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sigma_star(2) == doctest::Approx(1.0 / kPi).epsilon(1e-15));
  for (int n = 2; n <= 8; ++n) CHECK(sigma_star(n) * wallis(n - 2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("surface area and ball volume") {
  CHECK(surface_area(3) == doctest::Approx(4.0 * kPi));
  CHECK(surface_area(2) == doctest::Approx(2.0 * kPi));
  CHECK(ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0));
  for (int n = 2; n <= 8; ++n) CHECK(ball_volume(n) * n == doctest::Approx(surface_area(n)));
}

TEST_CASE("integrate_zonal examples") {
  for (int n = 2; n <= 8; ++n) {
    CHECK(integrate_zonal([](double) { return 1.0; }, n) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(integrate_zonal([](double t) { return std::cos(t); }, n)) < 1e-14);
  }
  CHECK(integrate_zonal([](double t) { return std::cos(t) * std::cos(t); }, 3) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK_THROWS_AS(integrate_zonal([](double) { return NAN; }, 3), IntegrationError);
}

TEST_CASE("sphere rule exactness") {
  for (int n = 2; n <= 5; ++n) {
    const QuadratureRule r = sphere_rule(n, 8);
    CHECK(r.total_weight() == doctest::Approx(1.0).epsilon(1e-14));
    for (double w : r.weights) CHECK(w > 0.0);
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(integrate([k](const Vector& t) { return t(k); }, r)) < 1e-15);
      CHECK(integrate([k](const Vector& t) { return t(k) * t(k); }, r) == doctest::Approx(1.0 / n).epsilon(1e-13));
    }
    // <t,u>^8 for a generic u: int = E[z^8] with z the first coordinate.
    Vector u = Vector::Ones(n).normalized();
    const double exact = integrate_zonal([](double t) { return std::pow(std::cos(t), 8); }, n, 20);
    CHECK(integrate([&u](const Vector& t) { return std::pow(t.dot(u), 8); }, r) ==
          doctest::Approx(exact).epsilon(1e-12));
  }
  CHECK(sphere_rule_size(3, 8) == 9 * 5);
}

TEST_CASE("sphere rule falls back to quasi-Monte Carlo") {
  const int n = 8;
  const QuadratureRule r = sphere_rule(n, 40);
  CHECK(r.size() <= kSphereNodeBudget + 2);
  CHECK(r.level == 40);
  CHECK(r.total_weight() == doctest::Approx(1.0));
  CHECK(std::abs(integrate([](const Vector& t) { return t(0) * t(1) * t(2); }, r)) < 1e-12);
  CHECK(integrate([](const Vector& t) { return t(3) * t(3); }, r) == doctest::Approx(1.0 / n).epsilon(1e-3));
}

TEST_CASE("Poisson kernel integrates to one on moderate rules") {
  Rng rng(21);
  for (int n = 3; n <= 4; ++n) {
    for (int i = 0; i < 5; ++i) {
      const Vector x = oracle::random_ball(rng, n, 0.9);
      const BallPoint bx(x);
      const QuadratureRule r = sphere_rule_axial(n, x, 0.25 * (1.0 - x.norm()), 16, 16);
      CHECK(integrate([&](const Vector& t) { return poisson_kernel_ball(bx, SpherePoint(t)); }, r) ==
            doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("integrate is linear and deterministic") {
  const QuadratureRule r = sphere_rule(4, 10);
  auto f = [](const Vector& t) { return std::exp(t(0)) * t(1); };
  auto g = [](const Vector& t) { return std::cos(t(2) + t(3)); };
  const double lhs = integrate([&](const Vector& t) { return 2.5 * f(t) - 0.75 * g(t); }, r);
  CHECK(std::abs(lhs - (2.5 * integrate(f, r) - 0.75 * integrate(g, r))) < 1e-14);
  CHECK(integrate(g, r) == integrate(g, sphere_rule(4, 10)));
  CHECK_THROWS_AS(integrate([](const Vector&) { return NAN; }, r), IntegrationError);
}

TEST_CASE("zonal reduction agrees with full sphere rules") {
  for (int n = 3; n <= 5; ++n) {
    auto zonal = [](double th) { return std::exp(std::cos(th)) * (1.0 + std::sin(th)); };
    const double z = integrate_zonal(zonal, n);
    const Vector axis = unit_vector(n, n - 1);
    const QuadratureRule r = sphere_rule_axial(n, axis, kPi / 4.0, 16, 2);
    const double full = integrate(
        [&](const Vector& t) { return zonal(std::acos(std::clamp(t.dot(axis), -1.0, 1.0))); }, r);
    CHECK(std::abs(z - full) < 1e-10);
    const QuadratureRule plain = sphere_rule(n, 24);
    const double smooth = integrate([&](const Vector& t) { return std::exp(t(n - 1)); }, plain);
    const double zs = integrate_zonal([](double th) { return std::exp(std::cos(th)); }, n);
    CHECK(std::abs(smooth - zs) < 1e-10);
  }
}

TEST_CASE("refinement changes smooth integrals negligibly") {
  auto f = [](const Vector& t) { return std::exp(t(0) - 0.5 * t(1) * t(2)); };
  for (int n = 3; n <= 4; ++n) {
    const double a = integrate(f, sphere_rule(n, 16));
    const double b = integrate(f, sphere_rule(n, 32));
    CHECK(std::abs(a - b) < 1e-9);
  }
}

TEST_CASE("ball tau rule") {
  for (int n = 2; n <= 5; ++n) {
    for (double rmax : {0.5, 0.9, 0.99}) {
      const QuadratureRule r = ball_tau_rule(n, 12, 4, rmax);
      const double v = integrate([n](const Vector& y) { return std::pow(1.0 - y.squaredNorm(), n); }, r);
      CHECK(v == doctest::Approx(std::pow(rmax, n)).epsilon(1e-12));
      CHECK(std::abs(integrate([](const Vector& y) { return y(0); }, r)) < 1e-9 * r.total_weight());
    }
  }
  // (1-|y|^2)^{n-1} d tau over B(r_max): matches the 1-D radial oracle and grows with r_max.
  const int n = 3;
  double prev = 0.0;
  for (double rmax : {0.9, 0.99, 0.999}) {
    const QuadratureRule r = ball_tau_rule(n, 12, 2, rmax);
    const double v = integrate([n](const Vector& y) { return std::pow(1.0 - y.squaredNorm(), n - 1); }, r);
    const double exact = oracle::simpson([n](double s) { return n * std::pow(s, n - 1) / (1.0 - s * s); }, 0.0, rmax,
                                         1e-13);
    CHECK(v == doctest::Approx(exact).epsilon(1e-9));
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(ball_tau_rule(3, 8, 4, 1.0), DomainError);
}

TEST_CASE("graded ball rule reaches the boundary") {
  for (int n = 2; n <= 5; ++n) {
    BallGrading g;
    g.axis = unit_vector(n, 0);
    g.r_peak = 0.9;
    g.scale = 0.1;
    g.radial_level = 10;
    const QuadratureRule r = ball_tau_rule_graded(n, g);
    const double v = integrate([n](const Vector& y) { return std::pow(1.0 - y.squaredNorm(), n); }, r);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    // (1-|y|^2)^{n-1} d tau over the whole ball diverges logarithmically; (1-|y|^2)^{n-1/2} does not.
    const double w = integrate([n](const Vector& y) { return std::pow(1.0 - y.squaredNorm(), n - 0.5); }, r);
    // s = sin(phi) removes the endpoint singularity.
    const double exact =
        oracle::simpson([n](double p) { return n * std::pow(std::sin(p), n - 1); }, 0.0, 0.5 * kPi, 1e-15);
    CHECK(w == doctest::Approx(exact).epsilon(1e-5));
  }
}

TEST_CASE("halfspace slab") {
  // Smooth bump with known mass: product of (1 - s^2)^4 on [-1, 1] has integral 256/315 per axis.
  const double axis_mass = 256.0 / 315.0;
  for (int m = 1; m <= 3; ++m) {
    Vector lo = Vector::Constant(m, -1.0);
    Vector hi = Vector::Constant(m, 1.0);
    auto bump = [axis_mass](const Vector& t) {
      double v = 1.0;
      for (Eigen::Index i = 0; i < t.size(); ++i) v *= std::pow(1.0 - t(i) * t(i), 4) / axis_mass;
      return v;
    };
    CHECK(integrate_halfspace_slab(bump, lo, hi, 2.0).value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(integrate_halfspace_slab([](const Vector& t) { return t(0) * std::exp(-t.squaredNorm()); }, lo,
                                            hi, 2.0)
                       .value) < 1e-15);
  }
  // Radial function: tensor box over the ball of radius R versus the radial reduction.
  const int m = 2;
  const double R = 1.5;
  auto radial = [R](double r) { return r < R ? std::pow(1.0 - (r / R) * (r / R), 3) : 0.0; };
  const double red = integrate_radial_volume(radial, R, m);
  Vector lo = Vector::Constant(m, -R);
  Vector hi = Vector::Constant(m, R);
  // Smooth except at the circle r = R (continuous to second order), converge loosely.
  const SlabResult slab = integrate_halfspace_slab([&](const Vector& t) { return radial(t.norm()); }, lo, hi, R, 24);
  CHECK(slab.value == doctest::Approx(red).epsilon(1e-5));
  const SlabResult tail = integrate_halfspace_slab([](const Vector&) { return 0.0; }, lo, hi, 2.0, 4,
                                                   TailEnvelope{1.0, 4.0});
  CHECK(tail.tail_bound == doctest::Approx(2.0 * kPi * std::pow(2.0, -2.0) / 2.0));
}

TEST_CASE("radial volume reduction") {
  for (int n = 2; n <= 6; ++n) {
    CHECK(integrate_radial_volume([](double) { return 1.0; }, 1.0, n) == doctest::Approx(ball_volume(n)).epsilon(1e-14));
  }
  CHECK(integrate_radial_volume([](double r) { return r; }, 1.0, 3) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(integrate_radial_volume([](double r) { return r; }, 0.0, 3) == 0.0);
}

TEST_CASE("rule serialization round trip") {
  const QuadratureRule r = sphere_rule(3, 5);
  std::stringstream ss;
  write_rule(ss, r);
  const QuadratureRule back = read_rule(ss);
  CHECK(back.domain == r.domain);
  CHECK(back.dim == 3);
  CHECK(back.level == 5);
  REQUIRE(back.size() == r.size());
  CHECK((back.nodes - r.nodes).norm() == 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(back.weights[i] == r.weights[i]);
  std::stringstream bad("garbage\n");
  CHECK_THROWS_AS(read_rule(bad), DomainError);
}
