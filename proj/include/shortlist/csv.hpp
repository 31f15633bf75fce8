#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace shortlist {

/// Locale-independent fixed-point formatting (6 decimals, trailing zeros
/// kept so columns align and outputs are byte-stable).
inline std::string format_fixed(double v, int precision = 6) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed,
                                 precision);
  return std::string(buf, res.ptr);
}

/// Quotes a CSV field when needed (rule specs can contain commas).
inline std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace shortlist
