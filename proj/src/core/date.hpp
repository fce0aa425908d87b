#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace ranklab {

// Calendar date with strict ISO-8601 (YYYY-MM-DD) text form.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;

    // Throws ParseError on anything that is not a valid YYYY-MM-DD date.
    static Date parse(std::string_view text);

    std::string to_string() const;

    // Serial day count (days since 1970-01-01); usable as a map key and
    // for evenly spaced axis placement.
    long serial() const;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);

Date add_days(const Date& d, int days);
// First day of the month `months` after d (used for synthetic monthly panels).
Date add_months_first(const Date& d, int months);

}  // namespace ranklab
