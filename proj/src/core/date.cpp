#include "core/date.hpp"

#include <cstdio>

#include "core/errors.hpp"

namespace ranklab {

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static const int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[month - 1];
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

// Days-from-civil / civil-from-days pair (Howard Hinnant's algorithms);
// exact for the proleptic Gregorian calendar.
long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

Date civil_from_days(long z) {
    z += 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long y = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

}  // namespace

Date Date::parse(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw ParseError("invalid date '" + std::string(text) + "' (expected YYYY-MM-DD)");
    }
    std::string_view ys = text.substr(0, 4);
    std::string_view ms = text.substr(5, 2);
    std::string_view ds = text.substr(8, 2);
    if (!all_digits(ys) || !all_digits(ms) || !all_digits(ds)) {
        throw ParseError("invalid date '" + std::string(text) + "' (expected YYYY-MM-DD)");
    }
    Date out;
    out.year = (ys[0] - '0') * 1000 + (ys[1] - '0') * 100 + (ys[2] - '0') * 10 + (ys[3] - '0');
    out.month = (ms[0] - '0') * 10 + (ms[1] - '0');
    out.day = (ds[0] - '0') * 10 + (ds[1] - '0');
    if (out.month < 1 || out.month > 12 || out.day < 1 ||
        out.day > days_in_month(out.year, out.month)) {
        throw ParseError("invalid calendar date '" + std::string(text) + "'");
    }
    return out;
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

long Date::serial() const {
    return days_from_civil(year, month, day);
}

Date add_days(const Date& d, int days) {
    return civil_from_days(d.serial() + days);
}

Date add_months_first(const Date& d, int months) {
    int total = d.year * 12 + (d.month - 1) + months;
    Date out;
    out.year = total / 12;
    out.month = total % 12 + 1;
    out.day = 1;
    return out;
}

}  // namespace ranklab
