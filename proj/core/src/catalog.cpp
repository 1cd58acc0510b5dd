#include "hyplap/catalog.hpp"

#include "hyplap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hyplap {

namespace {

void check_keys(const std::string& entry, const CatalogParams& params, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : params) {
    if (!allowed.count(k)) throw DomainError("unknown parameter '" + k + "' for catalog entry '" + entry + "'");
    if (!std::isfinite(v)) throw DomainError("non-finite parameter '" + k + "'");
  }
}

double param(const CatalogParams& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

BoundaryData boundary_constant(int n, double c) {
  BoundaryData b;
  b.name = "constant";
  b.dim = n;
  b.eval = [c](const Vector&) { return c; };
  b.holder = HolderMeta{1.0, 0.0};
  b.lipschitz = 0.0;
  return b;
}

BoundaryData boundary_linear(const Vector& c) {
  BoundaryData b;
  b.name = "linear";
  b.dim = static_cast<int>(c.size());
  b.eval = [c](const Vector& t) { return c.dot(t); };
  b.holder = HolderMeta{1.0, c.norm()};
  b.lipschitz = c.norm();
  return b;
}

BoundaryData boundary_holder_spike(int n, double alpha, const Vector& pole) {
  if (!(alpha > 0.0) || alpha > 1.0) throw DomainError("Hoelder exponent must lie in (0, 1]");
  if (pole.size() != n) throw DomainError("pole dimension mismatch");
  BoundaryData b;
  b.name = "holder-spike";
  b.dim = n;
  b.eval = [alpha, pole](const Vector& t) { return std::pow((t - pole).norm(), alpha); };
  b.holder = HolderMeta{alpha, 1.0};
  if (alpha == 1.0) b.lipschitz = 1.0;
  return b;
}

BoundaryData boundary_zonal_bump(int n, const Vector& axis, double width, double amplitude) {
  if (!(width > 0.0)) throw DomainError("bump width must be positive");
  if (axis.size() != n) throw DomainError("axis dimension mismatch");
  const Vector a = axis.normalized();
  BoundaryData b;
  b.name = "zonal-bump";
  b.dim = n;
  b.eval = [a, width, amplitude](const Vector& t) { return amplitude * std::exp(-(t - a).squaredNorm() / (width * width)); };
  const double lip = std::abs(amplitude) * std::sqrt(2.0 / std::exp(1.0)) / width;
  b.holder = HolderMeta{1.0, lip};
  b.lipschitz = lip;
  return b;
}

BoundaryData boundary_polynomial(const Polynomial& p) {
  BoundaryData b;
  b.name = "polynomial";
  b.dim = p.dim();
  b.eval = [p](const Vector& t) { return p(t); };
  return b;
}

SourceDensity source_defect(int n, double m) {
  SourceDensity s;
  s.name = "defect";
  s.dim = n;
  s.eval = [m](const Vector& x) { return m * (1.0 - x.squaredNorm()); };
  s.growth = std::abs(m);
  s.radial = true;
  return s;
}

SourceDensity source_defect_power(int n, double p) {
  if (!(p > 0.0)) throw DomainError("defect power must be positive");
  SourceDensity s;
  s.name = "defect-power";
  s.dim = n;
  s.eval = [p](const Vector& x) { return std::pow(1.0 - x.squaredNorm(), p); };
  if (p >= 1.0) s.growth = 1.0;
  s.radial = true;
  return s;
}

SourceDensity source_unit(int n) {
  SourceDensity s;
  s.name = "unit";
  s.dim = n;
  s.eval = [](const Vector&) { return 1.0; };
  s.radial = true;
  return s;
}

SourceDensity source_manufactured(const Polynomial& u0) {
  const int n = u0.dim();
  const Polynomial lap = u0.laplacian();
  const Polynomial eul = u0.euler();
  SourceDensity s;
  s.name = "manufactured";
  s.dim = n;
  s.eval = [lap, eul, n](const Vector& x) {
    const double d = 1.0 - x.squaredNorm();
    return d * d * lap(x) + 2.0 * (n - 2) * d * eul(x);
  };
  // psi / (1-|x|^2) = (1-|x|^2) Delta u0 + 2(n-2) x.grad u0 is a polynomial; bound it on a grid of shells.
  Rng rng(0x5eed);
  double m = 0.0;
  Vector x(n);
  for (int i = 0; i < 4000; ++i) {
    for (int k = 0; k < n; ++k) x(k) = rng.normal();
    x *= std::sqrt(rng.uniform()) / x.norm();
    const double d = 1.0 - x.squaredNorm();
    m = std::max(m, std::abs(d * lap(x) + 2.0 * (n - 2) * eul(x)));
  }
  s.growth = 1.05 * m;
  return s;
}

std::vector<std::string> boundary_catalog_names() { return {"constant", "linear", "holder-spike", "zonal-bump"}; }

std::vector<std::string> source_catalog_names() { return {"defect", "defect-power", "unit"}; }

BoundaryData boundary_from_catalog(const std::string& name, int n, const CatalogParams& params) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  if (name == "constant") {
    check_keys(name, params, {"c"});
    return boundary_constant(n, param(params, "c", 1.0));
  }
  if (name == "linear") {
    std::set<std::string> keys;
    Vector c = Vector::Zero(n);
    for (int k = 0; k < n; ++k) {
      const std::string key = "c" + std::to_string(k + 1);
      keys.insert(key);
      c(k) = param(params, key, k == n - 1 ? 1.0 : 0.0);
    }
    check_keys(name, params, keys);
    return boundary_linear(c);
  }
  if (name == "holder-spike") {
    check_keys(name, params, {"alpha"});
    return boundary_holder_spike(n, param(params, "alpha", 1.0), unit_vector(n, n - 1));
  }
  if (name == "zonal-bump") {
    check_keys(name, params, {"width", "amplitude"});
    return boundary_zonal_bump(n, unit_vector(n, n - 1), param(params, "width", 0.5), param(params, "amplitude", 1.0));
  }
  throw DomainError("unknown boundary data '" + name + "'");
}

SourceDensity source_from_catalog(const std::string& name, int n, const CatalogParams& params) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  if (name == "defect") {
    check_keys(name, params, {"M"});
    return source_defect(n, param(params, "M", 1.0));
  }
  if (name == "defect-power") {
    check_keys(name, params, {"p"});
    return source_defect_power(n, param(params, "p", 3.0));
  }
  if (name == "unit") {
    check_keys(name, params, {});
    return source_unit(n);
  }
  throw DomainError("unknown source density '" + name + "'");
}

}  // namespace hyplap
