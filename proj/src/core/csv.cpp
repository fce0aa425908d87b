#include "core/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "core/errors.hpp"

namespace ranklab::csv {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t end = line.find(',', start);
        if (end == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, end - start));
        start = end + 1;
    }
    return fields;
}

double parse_number(std::string_view field, std::size_t line_no) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError("line " + std::to_string(line_no) + ": malformed number '" +
                         std::string(field) + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError("line " + std::to_string(line_no) + ": non-finite number '" +
                         std::string(field) + "'");
    }
    return value;
}

std::string format_double(double v) {
    char buf[40];
    // Try increasing precision until the value round-trips exactly.
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0.0;
        auto [ptr, ec] = std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
        (void)ptr;
        if (ec == std::errc() && back == v) break;
    }
    return buf;
}

}  // namespace ranklab::csv
