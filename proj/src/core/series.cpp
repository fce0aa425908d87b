#include "core/series.hpp"

#include <algorithm>

#include "core/csv.hpp"
#include "core/errors.hpp"

namespace ranklab {

double DatedSeries::at(const Date& d) const {
    auto it = std::lower_bound(dates.begin(), dates.end(), d);
    if (it == dates.end() || *it != d) {
        throw DomainError("series '" + name + "' has no value for " + d.to_string());
    }
    return values[static_cast<std::size_t>(it - dates.begin())];
}

bool DatedSeries::contains(const Date& d) const {
    return std::binary_search(dates.begin(), dates.end(), d);
}

DatedSeries parse_series_csv(std::string_view text) {
    DatedTable table = parse_table_csv(text);
    if (table.columns.size() != 1) {
        throw ParseError("series CSV must have exactly one value column, got " +
                         std::to_string(table.columns.size()));
    }
    DatedSeries out;
    out.name = table.columns[0];
    out.dates = std::move(table.dates);
    out.values = std::move(table.values[0]);
    return out;
}

std::string emit_series_csv(const DatedSeries& series) {
    std::string out = "date," + series.name + "\n";
    for (std::size_t t = 0; t < series.size(); ++t) {
        out += series.dates[t].to_string();
        out += ',';
        out += csv::format_double(series.values[t]);
        out += '\n';
    }
    return out;
}

DatedTable parse_table_csv(std::string_view text) {
    auto lines = csv::split_lines(text);
    if (lines.empty()) throw ParseError("empty input");
    auto header = csv::split_fields(lines[0]);
    if (header.size() < 2 || header[0] != "date") {
        throw ParseError("line 1: expected header 'date,<column>,...'");
    }

    DatedTable table;
    for (std::size_t c = 1; c < header.size(); ++c) {
        if (header[c].empty()) throw ParseError("line 1: empty column name");
        table.columns.emplace_back(header[c]);
    }
    const std::size_t ncols = table.columns.size();
    table.values.resize(ncols);

    struct Row {
        Date date;
        std::vector<double> vals;
    };
    std::vector<Row> rows;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        auto fields = csv::split_fields(lines[li]);
        const std::size_t line_no = li + 1;
        if (fields.size() != ncols + 1) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(ncols + 1) + " fields, got " +
                             std::to_string(fields.size()));
        }
        Row row;
        try {
            row.date = Date::parse(fields[0]);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        for (std::size_t c = 0; c < ncols; ++c) {
            row.vals.push_back(csv::parse_number(fields[c + 1], line_no));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DomainError("series CSV has no data rows");

    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t t = 0; t + 1 < rows.size(); ++t) {
        if (rows[t].date == rows[t + 1].date) {
            throw DuplicateError("duplicate date " + rows[t].date.to_string());
        }
    }
    for (auto& row : rows) {
        table.dates.push_back(row.date);
        for (std::size_t c = 0; c < ncols; ++c) table.values[c].push_back(row.vals[c]);
    }
    return table;
}

const std::vector<double>& DatedTable::column(std::string_view name) const {
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c] == name) return values[c];
    }
    throw DomainError("CSV has no column '" + std::string(name) + "'");
}

}  // namespace ranklab
