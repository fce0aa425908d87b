#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core/date.hpp"

namespace ranklab {

// Single dated value series (e.g. market returns). CSV form is a two-column
// file `date,<any name>`; values may be negative.
struct DatedSeries {
    std::string name;
    std::vector<Date> dates;   // strictly increasing
    std::vector<double> values;

    std::size_t size() const { return dates.size(); }
    // Throws DomainError naming the date when it is absent.
    double at(const Date& d) const;
    bool contains(const Date& d) const;
};

DatedSeries parse_series_csv(std::string_view text);
std::string emit_series_csv(const DatedSeries& series);

// Multi-column dated table, used to read emitted result CSVs back (report
// command). Column 0 of the file must be `date`.
struct DatedTable {
    std::vector<std::string> columns;  // excluding the date column
    std::vector<Date> dates;
    std::vector<std::vector<double>> values;  // per column, aligned to dates

    const std::vector<double>& column(std::string_view name) const;  // throws DomainError
    std::size_t size() const { return dates.size(); }
};

DatedTable parse_table_csv(std::string_view text);

}  // namespace ranklab
