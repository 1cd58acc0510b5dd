#include "hyplap/polynomial.hpp"

#include "hyplap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hyplap {

namespace {

double monomial(const Polynomial::Exponents& e, const Vector& x) {
  double v = 1.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (int p = 0; p < e[i]; ++p) v *= x(static_cast<Eigen::Index>(i));
  }
  return v;
}

void enumerate(int dim, int degree, Polynomial::Exponents& cur, int pos, int remaining,
               std::vector<Polynomial::Exponents>& out) {
  if (pos == dim) {
    out.push_back(cur);
    return;
  }
  for (int p = 0; p <= remaining; ++p) {
    cur[static_cast<std::size_t>(pos)] = p;
    enumerate(dim, degree, cur, pos + 1, remaining - p, out);
  }
  cur[static_cast<std::size_t>(pos)] = 0;
}

}  // namespace

Polynomial::Polynomial(int dim) : dim_(dim) {
  if (dim < 1) throw DomainError("polynomial dimension must be positive");
}

Polynomial& Polynomial::add_term(const Exponents& e, double c) {
  if (static_cast<int>(e.size()) != dim_) throw DomainError("exponent length mismatch");
  if (std::any_of(e.begin(), e.end(), [](int p) { return p < 0; })) throw DomainError("negative exponent");
  const double v = (terms_[e] += c);
  if (v == 0.0) terms_.erase(e);
  return *this;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

double Polynomial::operator()(const Vector& x) const {
  if (x.size() != dim_) throw DomainError("polynomial argument dimension mismatch");
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += c * monomial(e, x);
  return s;
}

Vector Polynomial::gradient(const Vector& x) const {
  Vector g(dim_);
  for (int k = 0; k < dim_; ++k) g(k) = derivative(k)(x);
  return g;
}

Polynomial Polynomial::derivative(int k) const {
  if (k < 0 || k >= dim_) throw DomainError("derivative index out of range");
  Polynomial d(dim_);
  for (const auto& [e, c] : terms_) {
    const int p = e[static_cast<std::size_t>(k)];
    if (p == 0) continue;
    Exponents f = e;
    f[static_cast<std::size_t>(k)] = p - 1;
    d.add_term(f, c * p);
  }
  return d;
}

Polynomial Polynomial::laplacian() const {
  Polynomial lap(dim_);
  for (int k = 0; k < dim_; ++k) lap += derivative(k).derivative(k);
  return lap;
}

Polynomial Polynomial::euler() const {
  Polynomial out(dim_);
  for (const auto& [e, c] : terms_) {
    const int deg = std::accumulate(e.begin(), e.end(), 0);
    if (deg > 0) out.add_term(e, c * deg);
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.dim_ != dim_) throw DomainError("polynomial dimension mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial Polynomial::random(int dim, int degree, Rng& rng) {
  Polynomial p(dim);
  std::vector<Exponents> all;
  Exponents cur(static_cast<std::size_t>(dim), 0);
  enumerate(dim, degree, cur, 0, degree, all);
  for (const auto& e : all) p.add_term(e, rng.uniform(-1.0, 1.0));
  return p;
}

double hyperbolic_laplacian_exact(const Polynomial& u, const Vector& x) {
  return HyperbolicLaplacianPoly(u)(x);
}

HyperbolicLaplacianPoly::HyperbolicLaplacianPoly(const Polynomial& u)
    : n_(u.dim()), lap_(u.laplacian()), euler_(u.euler()) {}

double HyperbolicLaplacianPoly::operator()(const Vector& x) const {
  const double d = 1.0 - x.squaredNorm();
  return d * d * lap_(x) + 2.0 * (n_ - 2) * d * euler_(x);
}

}  // namespace hyplap
