#pragma once

#include <ostream>
#include <string>
#include <string_view>

namespace ftla {

/// 17-significant-digit, locale-independent rendering ('.' decimal point).
std::string format_double(double x);

// Minimal RFC-4180 writer: CRLF row endings, quoting only when a field
// contains a comma, quote, or newline.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  CsvWriter& field(std::string_view s);
  CsvWriter& field(const char* s) { return field(std::string_view(s)); }
  CsvWriter& field(const std::string& s) { return field(std::string_view(s)); }
  CsvWriter& field(double x) { return raw(format_double(x)); }
  CsvWriter& field(int x) { return raw(std::to_string(x)); }
  CsvWriter& field(long long x) { return raw(std::to_string(x)); }
  CsvWriter& field(unsigned long long x) { return raw(std::to_string(x)); }
  void end_row();

 private:
  CsvWriter& raw(const std::string& s);

  std::ostream& out_;
  bool row_started_ = false;
};

}  // namespace ftla
