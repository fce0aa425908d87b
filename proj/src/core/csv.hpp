#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ranklab::csv {

// Splits text into lines, dropping a trailing '\r' per line (CRLF input)
// and a final empty line. Line numbers reported by callers are 1-based
// positions in this vector.
std::vector<std::string_view> split_lines(std::string_view text);

std::vector<std::string_view> split_fields(std::string_view line);

// Strict locale-independent decimal parse ('.' decimal point).
// Throws ParseError mentioning `line_no` on failure or non-finite values.
double parse_number(std::string_view field, std::size_t line_no);

// Shortest representation that round-trips the exact double value.
std::string format_double(double v);

}  // namespace ranklab::csv
