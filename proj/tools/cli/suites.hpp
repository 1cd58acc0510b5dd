#pragma once

#include "report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyplap::cli {

struct VerifyConfig {
  std::string suite = "all";
  /// Unset: each suite uses its own dimensions.
  std::optional<int> n;
  std::uint64_t seed = 1;
  /// Empty: {0.5, 1}.
  std::vector<double> alphas;
  bool negative_control = false;
};

/// mobius, kernels, dirichlet, holder, green-gradient, riesz, halfspace.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs one named suite. Numerical failures in the library propagate.
SuiteResult run_suite(const std::string& name, const VerifyConfig& config);

/// Expands "all" to every suite (negative controls on) in declared order.
std::vector<SuiteResult> run_verify(const VerifyConfig& config);

}  // namespace hyplap::cli
