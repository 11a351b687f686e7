#include "ftl_arena/csv.hpp"

#include <cstdio>

namespace ftla {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

CsvWriter& CsvWriter::raw(const std::string& s) {
  if (row_started_) out_ << ',';
  row_started_ = true;
  out_ << s;
  return *this;
}

CsvWriter& CsvWriter::field(std::string_view s) {
  const bool needs_quote =
      s.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quote) return raw(std::string(s));
  std::string quoted = "\"";
  for (char c : s) {
    quoted += c;
    if (c == '"') quoted += '"';
  }
  quoted += '"';
  return raw(quoted);
}

void CsvWriter::end_row() {
  out_ << "\r\n";
  row_started_ = false;
}

}  // namespace ftla
