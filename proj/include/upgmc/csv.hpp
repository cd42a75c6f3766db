#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace upgmc {

/// Shortest decimal string that parses back to exactly `value`.
[[nodiscard]] std::string format_double(double value);

/// RFC 4180 field encoding: the field is quoted when it contains a comma,
/// quote, or line break, and embedded quotes are doubled.
[[nodiscard]] std::string csv_field(std::string_view field);

/// Splits one CSV line into fields (RFC 4180). Quoted fields may contain
/// commas and doubled quotes; line breaks inside fields are not supported.
/// Throws std::invalid_argument on an unterminated quote.
[[nodiscard]] std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace upgmc
