#pragma once

#include <filesystem>
#include <string>

#include "core/backtest.hpp"
#include "core/panel.hpp"
#include "core/ranksde.hpp"

namespace ranklab {

std::string read_text_file(const std::filesystem::path& path);   // throws IoError
void write_text_file(const std::filesystem::path& path, std::string_view text);

// Plots from an emitted backtest CSV:
//   cumulative_lmh.svg  - running LMH log excess return
//   legs.svg            - cumulative log value of the low and high legs
// Returns the file names written.
std::vector<std::string> report_backtest_csv(const std::string& csv_text,
                                             const std::filesystem::path& out_dir);

// Fan plots of log relative prices from a panel:
//   relative_prices.svg         - log theta_i(t) per commodity
//   relative_prices_ranked.svg  - log theta_(k)(t) per rank
std::vector<std::string> report_panel(const PricePanel& panel,
                                      const std::filesystem::path& out_dir);

std::string emit_gap_report_csv(const GapReport& report);
std::string emit_rank_stats_csv(const RankStats& stats);

}  // namespace ranklab
