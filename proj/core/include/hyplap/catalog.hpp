#pragma once

#include "hyplap/polynomial.hpp"
#include "hyplap/solver.hpp"

#include <map>
#include <string>
#include <vector>

namespace hyplap {

/// Named numeric parameters for catalog entries.
using CatalogParams = std::map<std::string, double>;

BoundaryData boundary_constant(int n, double c);
/// t -> <c, t>.
BoundaryData boundary_linear(const Vector& c);
/// t -> |t - pole|^alpha, Hoelder with constant 1.
BoundaryData boundary_holder_spike(int n, double alpha, const Vector& pole);
/// t -> amplitude * exp(-|t - axis|^2 / width^2).
BoundaryData boundary_zonal_bump(int n, const Vector& axis, double width, double amplitude = 1.0);
/// Trace of a polynomial on the sphere.
BoundaryData boundary_polynomial(const Polynomial& p);

/// psi = M (1 - |x|^2).
SourceDensity source_defect(int n, double m = 1.0);
/// psi = (1 - |x|^2)^p; growth bound M = 1 when p >= 1.
SourceDensity source_defect_power(int n, double p);
/// psi = 1 (no growth bound).
SourceDensity source_unit(int n);
/// psi = Delta_h u0 for a manufactured polynomial solution; M sampled.
SourceDensity source_manufactured(const Polynomial& u0);

std::vector<std::string> boundary_catalog_names();
std::vector<std::string> source_catalog_names();

/// Catalog lookup by name. Boundary names: constant (c), linear (c1..cn),
/// holder-spike (alpha), zonal-bump (width, amplitude). Source names:
/// defect (M), defect-power (p), unit. Unknown names or parameters throw DomainError.
BoundaryData boundary_from_catalog(const std::string& name, int n, const CatalogParams& params);
SourceDensity source_from_catalog(const std::string& name, int n, const CatalogParams& params);

}  // namespace hyplap
