#pragma once

#include <stdexcept>
#include <string>

namespace hyplap {

/// Input outside the domain of an operation (point at infinity, |x| >= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation at a kernel singularity (x = y for the Green function, [x,a] = 0).
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite integrand values or unresolved quadrature.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested rule or grid exceeds the configured resource budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hyplap
