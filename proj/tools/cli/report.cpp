#include "report.hpp"

#include "hyplap/csv.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

namespace hyplap::cli {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::report:
      break;
  }
  return "report";
}

bool SuiteResult::pass() const {
  for (const auto& c : checks) {
    if (c.verdict == Verdict::fail) return false;
  }
  return true;
}

Check& SuiteResult::at_most(const std::string& check, double value, double tolerance, std::string detail) {
  const bool ok = std::isfinite(value) && value <= tolerance;
  checks.push_back({check, ok ? Verdict::pass : Verdict::fail, value, tolerance, std::move(detail)});
  return checks.back();
}

Check& SuiteResult::at_least(const std::string& check, double value, double threshold, std::string detail) {
  const bool ok = std::isfinite(value) && value >= threshold;
  checks.push_back({check, ok ? Verdict::pass : Verdict::fail, value, threshold, std::move(detail)});
  return checks.back();
}

Check& SuiteResult::require(const std::string& check, bool ok, std::string detail) {
  checks.push_back({check, ok ? Verdict::pass : Verdict::fail, ok ? 1.0 : 0.0, std::nullopt, std::move(detail)});
  return checks.back();
}

Check& SuiteResult::report(const std::string& check, double value, std::string detail) {
  checks.push_back({check, Verdict::report, value, std::nullopt, std::move(detail)});
  return checks.back();
}

Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

namespace {

Json numbers(const std::vector<double>& values) {
  Json a = Json::array();
  for (double v : values) a.push_back(number(v));
  return a;
}

}  // namespace

Json scan_to_json(const BoundScan& scan) {
  Json j;
  j["name"] = scan.name;
  j["scaling_exponent"] = number(scan.scaling_exponent);
  j["max"] = number(scan.max);
  j["median"] = number(scan.median);
  j["trend_slope"] = number(scan.trend_slope);
  j["bounded"] = scan.bounded;
  j["steps"] = numbers(scan.steps);
  j["grid"] = numbers(scan.grid);
  j["raw"] = numbers(scan.raw);
  j["scaled"] = numbers(scan.scaled);
  j["cumulative_max"] = numbers(scan.cumulative_max());
  return j;
}

Json suite_to_json(const SuiteResult& suite) {
  Json j;
  j["name"] = suite.name;
  j["pass"] = suite.pass();
  Json checks = Json::array();
  for (const auto& c : suite.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["verdict"] = to_string(c.verdict);
    cj["value"] = number(c.value);
    cj["tolerance"] = c.tolerance ? number(*c.tolerance) : Json(nullptr);
    cj["detail"] = c.detail;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  Json scans = Json::array();
  for (const auto& s : suite.scans) {
    Json sj;
    sj["kernel"] = s.kernel;
    sj["role"] = s.role;
    sj["scan"] = scan_to_json(s.scan);
    scans.push_back(std::move(sj));
  }
  j["scans"] = std::move(scans);
  return j;
}

void write_scans_csv(std::ostream& os, const std::vector<SuiteResult>& suites) {
  CsvWriter w(os, {"suite", "scan", "kernel", "role", "grid_value", "raw", "scaled", "cumulative_max"});
  for (const auto& suite : suites) {
    for (const auto& rec : suite.scans) {
      const auto cm = rec.scan.cumulative_max();
      for (std::size_t i = 0; i < rec.scan.grid.size(); ++i) {
        w.field(suite.name).field(rec.scan.name).field(rec.kernel).field(rec.role);
        w.field(rec.scan.grid[i]).field(rec.scan.raw[i]).field(rec.scan.scaled[i]).field(cm[i]);
        w.end_row();
      }
    }
  }
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) {
      f.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw std::runtime_error("cannot rename onto " + target.string() + ": " + ec.message());
  }
}

}  // namespace hyplap::cli
