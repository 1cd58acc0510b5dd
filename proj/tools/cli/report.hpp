#pragma once

#include "hyplap/regularity.hpp"

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hyplap::cli {

using Json = nlohmann::ordered_json;

enum class Verdict { pass, fail, report };

std::string to_string(Verdict v);

struct Check {
  std::string name;
  Verdict verdict = Verdict::report;
  double value = 0.0;
  /// Threshold the value was compared against; absent for report-only items.
  std::optional<double> tolerance;
  std::string detail;
};

/// A BoundScan together with the verdict the suite expects from it.
struct ScanRecord {
  std::string kernel = "hyperbolic";
  /// "primary" or "negative-control".
  std::string role = "primary";
  BoundScan scan;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  std::vector<ScanRecord> scans;

  [[nodiscard]] bool pass() const;

  /// value <= tolerance passes.
  Check& at_most(const std::string& check, double value, double tolerance, std::string detail = {});
  /// value >= threshold passes.
  Check& at_least(const std::string& check, double value, double threshold, std::string detail = {});
  Check& require(const std::string& check, bool ok, std::string detail = {});
  Check& report(const std::string& check, double value, std::string detail = {});
};

/// Finite doubles as numbers, others as "inf", "-inf" or "nan".
Json number(double v);

Json scan_to_json(const BoundScan& scan);
Json suite_to_json(const SuiteResult& suite);

/// Columns suite,scan,kernel,role,grid_value,raw,scaled,cumulative_max.
void write_scans_csv(std::ostream& os, const std::vector<SuiteResult>& suites);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace hyplap::cli
