#include "core/panel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "core/csv.hpp"
#include "core/errors.hpp"
#include "core/ranksde.hpp"

namespace ranklab {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

bool is_missing(double v) { return std::isnan(v); }

void check_price(double v, std::size_t line_no) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError("line " + std::to_string(line_no) + ": price must be positive, got " +
                          csv::format_double(v));
    }
}

RawPanel parse_long(const std::vector<std::string_view>& lines, Frequency frequency) {
    RawPanel raw;
    raw.frequency = frequency;

    std::map<Date, std::size_t> date_index;                      // sorted by date
    std::unordered_map<std::string, std::size_t> commodity_index;
    struct Cell {
        Date date;
        std::size_t commodity;
        double price;
    };
    std::vector<Cell> cells;
    std::unordered_set<std::string> seen_keys;

    for (std::size_t li = 1; li < lines.size(); ++li) {
        std::string_view line = lines[li];
        if (line.empty()) continue;
        auto fields = csv::split_fields(line);
        std::size_t line_no = li + 1;
        if (fields.size() != 3) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 3 fields, got " +
                             std::to_string(fields.size()));
        }
        Date date;
        try {
            date = Date::parse(fields[0]);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        std::string commodity(fields[1]);
        if (commodity.empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": empty commodity identifier");
        }
        double price = csv::parse_number(fields[2], line_no);
        check_price(price, line_no);

        std::string key = date.to_string() + "\x1f" + commodity;
        if (!seen_keys.insert(key).second) {
            throw DuplicateError("line " + std::to_string(line_no) + ": duplicate entry for (" +
                                 date.to_string() + ", " + commodity + ")");
        }
        date_index.emplace(date, 0);
        auto [it, inserted] = commodity_index.emplace(commodity, raw.commodities.size());
        if (inserted) raw.commodities.push_back(commodity);
        cells.push_back({date, it->second, price});
    }
    if (cells.empty()) throw ParseError("no data rows");

    std::size_t t = 0;
    for (auto& [date, idx] : date_index) {
        idx = t++;
        raw.dates.push_back(date);
    }
    raw.prices = Matrix(raw.dates.size(), raw.commodities.size(), kMissing);
    for (const auto& cell : cells) {
        raw.prices(date_index.at(cell.date), cell.commodity) = cell.price;
    }
    return raw;
}

RawPanel parse_wide(const std::vector<std::string_view>& lines, Frequency frequency) {
    auto header = csv::split_fields(lines[0]);
    if (header.size() < 2) throw ParseError("line 1: wide header needs at least one commodity column");

    RawPanel raw;
    raw.frequency = frequency;
    std::unordered_set<std::string_view> seen_ids;
    for (std::size_t c = 1; c < header.size(); ++c) {
        if (header[c].empty()) throw ParseError("line 1: empty commodity column name");
        if (!seen_ids.insert(header[c]).second) {
            throw DuplicateError("line 1: duplicate commodity column '" + std::string(header[c]) + "'");
        }
        raw.commodities.emplace_back(header[c]);
    }

    struct Row {
        Date date;
        std::vector<double> values;
        std::size_t line_no;
    };
    std::vector<Row> rows;
    std::unordered_set<long> seen_dates;
    const std::size_t n = raw.commodities.size();

    for (std::size_t li = 1; li < lines.size(); ++li) {
        std::string_view line = lines[li];
        if (line.empty()) continue;
        auto fields = csv::split_fields(line);
        std::size_t line_no = li + 1;
        if (fields.size() != n + 1) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(n + 1) + " fields, got " + std::to_string(fields.size()));
        }
        Row row;
        row.line_no = line_no;
        try {
            row.date = Date::parse(fields[0]);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!seen_dates.insert(row.date.serial()).second) {
            throw DuplicateError("line " + std::to_string(line_no) + ": duplicate date " +
                                 row.date.to_string());
        }
        row.values.reserve(n);
        for (std::size_t c = 0; c < n; ++c) {
            std::string_view field = fields[c + 1];
            if (field.empty()) {
                row.values.push_back(kMissing);
                continue;
            }
            double v = csv::parse_number(field, line_no);
            check_price(v, line_no);
            row.values.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no data rows");

    std::sort(rows.begin(), rows.end(),
              [](const Row& a, const Row& b) { return a.date < b.date; });
    raw.prices = Matrix(rows.size(), n);
    for (std::size_t t = 0; t < rows.size(); ++t) {
        raw.dates.push_back(rows[t].date);
        for (std::size_t c = 0; c < n; ++c) raw.prices(t, c) = rows[t].values[c];
    }
    return raw;
}

}  // namespace

std::size_t PricePanel::date_index(const Date& d) const {
    auto it = std::lower_bound(dates.begin(), dates.end(), d);
    if (it == dates.end() || *it != d) {
        throw DomainError("date " + d.to_string() + " not in panel");
    }
    return static_cast<std::size_t>(it - dates.begin());
}

RawPanel parse_csv(std::string_view text, Layout layout, Frequency frequency) {
    auto lines = csv::split_lines(text);
    if (lines.empty()) throw ParseError("empty input");
    if (layout == Layout::long_form) {
        auto header = csv::split_fields(lines[0]);
        if (header.size() != 3 || header[0] != "date" || header[1] != "commodity" ||
            header[2] != "price") {
            throw ParseError("line 1: long layout requires header 'date,commodity,price'");
        }
        return parse_long(lines, frequency);
    }
    auto header = csv::split_fields(lines[0]);
    if (header.empty() || header[0] != "date") {
        throw ParseError("line 1: wide layout requires first column 'date'");
    }
    return parse_wide(lines, frequency);
}

PricePanel clean(const RawPanel& raw, const CleaningPolicy& policy) {
    if (raw.dates.empty() || raw.commodities.empty()) {
        throw InsufficientDataError("empty panel");
    }
    const std::size_t t_in = raw.dates.size();
    const std::size_t n_in = raw.commodities.size();

    Matrix work = raw.prices;

    std::vector<bool> keep_commodity(n_in, true);
    if (policy.mode == CleaningPolicy::Mode::drop_incomplete_commodities) {
        for (std::size_t c = 0; c < n_in; ++c) {
            for (std::size_t t = 0; t < t_in; ++t) {
                if (is_missing(work(t, c))) {
                    keep_commodity[c] = false;
                    break;
                }
            }
        }
    } else if (policy.mode == CleaningPolicy::Mode::forward_fill) {
        if (policy.max_gap < 0 || static_cast<std::size_t>(policy.max_gap) > t_in) {
            throw DomainError("forward_fill max_gap must be in [0, panel length]");
        }
        for (std::size_t c = 0; c < n_in; ++c) {
            std::size_t t = 0;
            while (t < t_in) {
                if (!is_missing(work(t, c))) {
                    ++t;
                    continue;
                }
                std::size_t run_end = t;
                while (run_end < t_in && is_missing(work(run_end, c))) ++run_end;
                std::size_t run_len = run_end - t;
                bool has_prior = t > 0;
                if (has_prior && run_len <= static_cast<std::size_t>(policy.max_gap)) {
                    double fill = work(t - 1, c);
                    for (std::size_t s = t; s < run_end; ++s) work(s, c) = fill;
                }
                t = run_end;
            }
        }
    }

    // Any date still missing a kept cell is dropped (this is also the whole
    // of drop_incomplete_dates).
    std::vector<bool> keep_date(t_in, true);
    for (std::size_t t = 0; t < t_in; ++t) {
        for (std::size_t c = 0; c < n_in; ++c) {
            if (keep_commodity[c] && is_missing(work(t, c))) {
                keep_date[t] = false;
                break;
            }
        }
    }

    std::vector<std::size_t> date_ids, commodity_ids;
    for (std::size_t t = 0; t < t_in; ++t)
        if (keep_date[t]) date_ids.push_back(t);
    for (std::size_t c = 0; c < n_in; ++c)
        if (keep_commodity[c]) commodity_ids.push_back(c);

    if (commodity_ids.size() < 2) {
        throw InsufficientDataError("cleaning left fewer than 2 commodities");
    }
    if (date_ids.size() < 2) {
        throw InsufficientDataError("cleaning left fewer than 2 dates");
    }

    PricePanel out;
    out.frequency = raw.frequency;
    out.dates.reserve(date_ids.size());
    for (std::size_t t : date_ids) out.dates.push_back(raw.dates[t]);
    out.commodities.reserve(commodity_ids.size());
    for (std::size_t c : commodity_ids) out.commodities.push_back(raw.commodities[c]);
    out.prices = Matrix(date_ids.size(), commodity_ids.size());
    for (std::size_t t = 0; t < date_ids.size(); ++t) {
        for (std::size_t c = 0; c < commodity_ids.size(); ++c) {
            out.prices(t, c) = work(date_ids[t], commodity_ids[c]);
        }
    }
    return out;
}

PricePanel synthesize(const RankModelSpec& spec, std::uint64_t seed, Frequency frequency) {
    SimulatedPaths paths = simulate(spec, seed);

    PricePanel out;
    out.frequency = frequency;
    const std::size_t t_count = paths.log_prices.rows();
    const std::size_t n = paths.log_prices.cols();
    out.prices = Matrix(t_count, n);
    for (std::size_t t = 0; t < t_count; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            double p = std::exp(paths.log_prices(t, i));
            if (!std::isfinite(p) || p <= 0.0) {
                throw NumericError("synthesized price overflow at sample " + std::to_string(t));
            }
            out.prices(t, i) = p;
        }
    }
    Date start{2000, 1, 3};
    out.dates.reserve(t_count);
    for (std::size_t t = 0; t < t_count; ++t) {
        out.dates.push_back(frequency == Frequency::daily
                                ? add_days(start, static_cast<int>(t))
                                : add_months_first(start, static_cast<int>(t)));
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.commodities.push_back("sim" + std::to_string(i + 1));
    }
    return out;
}

std::string emit_csv(const PricePanel& panel) {
    std::string out = "date";
    for (const auto& id : panel.commodities) {
        out += ',';
        out += id;
    }
    out += '\n';
    for (std::size_t t = 0; t < panel.num_dates(); ++t) {
        out += panel.dates[t].to_string();
        for (std::size_t c = 0; c < panel.num_commodities(); ++c) {
            out += ',';
            out += csv::format_double(panel.prices(t, c));
        }
        out += '\n';
    }
    return out;
}

}  // namespace ranklab
