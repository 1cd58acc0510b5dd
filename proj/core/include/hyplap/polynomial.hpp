#pragma once

#include "hyplap/geometry.hpp"
#include "hyplap/rng.hpp"

#include <map>
#include <vector>

namespace hyplap {

/// Multivariate polynomial with exact Laplacian and Euler operator, used as
/// the manufactured-solution family.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  explicit Polynomial(int dim);

  /// Adds c * x^e (exponents length must equal dim).
  Polynomial& add_term(const Exponents& e, double c);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int degree() const;
  [[nodiscard]] const std::map<Exponents, double>& terms() const { return terms_; }

  [[nodiscard]] double operator()(const Vector& x) const;
  [[nodiscard]] Vector gradient(const Vector& x) const;

  [[nodiscard]] Polynomial derivative(int k) const;
  [[nodiscard]] Polynomial laplacian() const;
  /// x . grad p: each homogeneous part scaled by its degree.
  [[nodiscard]] Polynomial euler() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator*=(double s);

  /// Random polynomial of total degree <= degree with coefficients in [-1, 1].
  static Polynomial random(int dim, int degree, Rng& rng);

 private:
  int dim_;
  std::map<Exponents, double> terms_;
};

/// (1-|x|^2)^2 Delta u + 2(n-2)(1-|x|^2) x . grad u, evaluated from the exact
/// derivative polynomials.
double hyperbolic_laplacian_exact(const Polynomial& u, const Vector& x);

/// Precomputed Delta u and x . grad u for repeated evaluation.
class HyperbolicLaplacianPoly {
 public:
  explicit HyperbolicLaplacianPoly(const Polynomial& u);
  [[nodiscard]] double operator()(const Vector& x) const;

 private:
  int n_;
  Polynomial lap_;
  Polynomial euler_;
};

}  // namespace hyplap
