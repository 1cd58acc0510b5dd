#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace hyplap {

/// Shortest round-trip-safe text for a double (17 significant digits, '.' decimal point).
std::string csv_number(double v);

/// RFC-4180 quoting when the field contains a comma, quote, CR or LF.
std::string csv_escape(const std::string& field);

/// Minimal RFC-4180 writer: CRLF line endings, header first.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header);

  CsvWriter& field(const std::string& s);
  CsvWriter& field(double v);
  CsvWriter& field(long long v);
  void end_row();

 private:
  std::ostream& os_;
  std::size_t columns_;
  std::size_t current_ = 0;
};

}  // namespace hyplap
