#include "core/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "core/csv.hpp"
#include "core/errors.hpp"
#include "core/series.hpp"
#include "core/svg.hpp"

namespace ranklab {

namespace {

// Evenly spaced date ticks over the sample index axis.
std::vector<svg::Tick> date_ticks(const std::vector<Date>& dates, int target = 6) {
    std::vector<svg::Tick> ticks;
    if (dates.empty()) return ticks;
    const std::size_t n = dates.size();
    const std::size_t step = std::max<std::size_t>(1, (n - 1) / std::max(1, target - 1));
    for (std::size_t i = 0; i < n; i += step) {
        ticks.push_back({static_cast<double>(i), dates[i].to_string()});
    }
    return ticks;
}

std::vector<double> index_axis(std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i);
    return x;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("error reading " + path.string());
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("error writing " + path.string());
}

std::vector<std::string> report_backtest_csv(const std::string& csv_text,
                                             const std::filesystem::path& out_dir) {
    DatedTable table = parse_table_csv(csv_text);
    const auto& cum_lmh = table.column("cum_lmh");
    const auto& low = table.column("low_logret");
    const auto& high = table.column("high_logret");

    auto x = index_axis(table.size());
    auto ticks = date_ticks(table.dates);

    svg::LineChart lmh_chart;
    lmh_chart.title = "Cumulative low-minus-high log excess return";
    lmh_chart.y_label = "cumulative log excess return";
    lmh_chart.x_ticks = ticks;
    lmh_chart.series.push_back({"LMH", x, cum_lmh});

    std::vector<double> cum_low(low.size()), cum_high(high.size());
    double a = 0.0, b = 0.0;
    for (std::size_t t = 0; t < low.size(); ++t) {
        a += low[t];
        b += high[t];
        cum_low[t] = a;
        cum_high[t] = b;
    }
    svg::LineChart legs_chart;
    legs_chart.title = "Cumulative log value of the low and high rank portfolios";
    legs_chart.y_label = "cumulative log return";
    legs_chart.x_ticks = ticks;
    legs_chart.series.push_back({"low ranks", x, cum_low});
    legs_chart.series.push_back({"high ranks", x, cum_high});

    write_text_file(out_dir / "cumulative_lmh.svg", svg::render_line_chart(lmh_chart));
    write_text_file(out_dir / "legs.svg", svg::render_line_chart(legs_chart));
    return {"cumulative_lmh.svg", "legs.svg"};
}

std::vector<std::string> report_panel(const PricePanel& panel,
                                      const std::filesystem::path& out_dir) {
    NormalizedPanel norm = normalize(panel, panel.dates.front());
    RelativePriceField field = relative_prices(norm);
    const std::size_t t_count = field.num_dates();
    const std::size_t n = field.num_commodities();

    auto x = index_axis(t_count);
    auto ticks = date_ticks(field.dates);

    svg::LineChart by_name;
    by_name.title = "Log relative prices";
    by_name.y_label = "log theta";
    by_name.x_ticks = ticks;
    by_name.legend = n <= 12;
    for (std::size_t i = 0; i < n; ++i) {
        svg::Series s;
        s.label = field.commodities[i];
        s.x = x;
        s.y.reserve(t_count);
        for (std::size_t t = 0; t < t_count; ++t) s.y.push_back(std::log(field.theta(t, i)));
        by_name.series.push_back(std::move(s));
    }

    svg::LineChart by_rank;
    by_rank.title = "Log ranked relative prices";
    by_rank.y_label = "log theta by rank";
    by_rank.x_ticks = ticks;
    by_rank.legend = n <= 12;
    std::vector<svg::Series> rank_series(n);
    for (std::size_t k = 0; k < n; ++k) {
        rank_series[k].label = "rank " + std::to_string(k + 1);
        rank_series[k].x = x;
        rank_series[k].y.reserve(t_count);
    }
    for (std::size_t t = 0; t < t_count; ++t) {
        auto order = rank_order(field.theta.row(t));
        for (std::size_t k = 0; k < n; ++k) {
            rank_series[k].y.push_back(std::log(field.theta(t, order[k])));
        }
    }
    by_rank.series = std::move(rank_series);

    write_text_file(out_dir / "relative_prices.svg", svg::render_line_chart(by_name));
    write_text_file(out_dir / "relative_prices_ranked.svg", svg::render_line_chart(by_rank));
    return {"relative_prices.svg", "relative_prices_ranked.svg"};
}

std::string emit_gap_report_csv(const GapReport& report) {
    std::string out = "k,theoretical_gap,empirical_gap,relative_deviation\n";
    for (std::size_t k = 0; k < report.theoretical.size(); ++k) {
        out += std::to_string(k + 1);
        out += ',';
        out += csv::format_double(report.theoretical[k]);
        out += ',';
        out += csv::format_double(report.empirical[k]);
        out += ',';
        out += csv::format_double(report.rel_deviation[k]);
        out += '\n';
    }
    return out;
}

std::string emit_rank_stats_csv(const RankStats& stats) {
    std::string out = "k,alpha,partial_alpha_sum,sigma,kappa,stationary_partial_sum\n";
    const std::size_t n = stats.alpha.size();
    for (std::size_t k = 0; k < n; ++k) {
        out += std::to_string(k + 1);
        out += ',';
        out += csv::format_double(stats.alpha[k]);
        if (k + 1 < n) {
            out += ',';
            out += csv::format_double(stats.partial_alpha_sums[k]);
            out += ',';
            out += csv::format_double(stats.sigma[k]);
            out += ',';
            out += csv::format_double(stats.kappa[k]);
            out += ',';
            out += stats.stationary_per_rank[k] ? "1" : "0";
        } else {
            out += ",,,,";
        }
        out += '\n';
    }
    return out;
}

}  // namespace ranklab
