#include "hyplap/csv.hpp"

#include "hyplap/errors.hpp"

#include <cmath>
#include <cstdio>

namespace hyplap {

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os), columns_(header.size()) {
  for (const auto& h : header) field(h);
  end_row();
}

CsvWriter& CsvWriter::field(const std::string& s) {
  if (current_ > 0) os_ << ',';
  os_ << csv_escape(s);
  ++current_;
  return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(csv_number(v)); }

CsvWriter& CsvWriter::field(long long v) { return field(std::to_string(v)); }

void CsvWriter::end_row() {
  if (current_ != columns_) throw DomainError("CSV row has the wrong number of fields");
  os_ << "\r\n";
  current_ = 0;
}

}  // namespace hyplap
