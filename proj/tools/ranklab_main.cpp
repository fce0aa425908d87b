// ranklab command-line interface. All domain work goes through the C API of
// libranklab; this file only parses flags, wires commands together and
// formats output.
//
// Exit codes: 0 success, 1 parse/validation failure (including gap checks
// above tolerance), 2 domain errors, 3 I/O errors.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ranklab/ranklab.h"

namespace {

int exit_code(rl_status status) {
    switch (status) {
        case RL_OK: return 0;
        case RL_ERR_PARSE: return 1;
        case RL_ERR_IO: return 3;
        case RL_ERR_DOMAIN:
        case RL_ERR_NUMERIC:
        case RL_ERR_ARGUMENT: return 2;
    }
    return 2;
}

// Prints the library error and returns the mapped exit code.
int report_failure(const char* command, rl_status status) {
    std::fprintf(stderr, "ranklab %s: %s: %s\n", command, rl_status_name(status), rl_last_error());
    return exit_code(status);
}

struct PanelDeleter {
    void operator()(rl_panel* p) const { rl_panel_free(p); }
};
struct ModelDeleter {
    void operator()(rl_model* m) const { rl_model_free(m); }
};
struct SeriesDeleter {
    void operator()(rl_series* s) const { rl_series_free(s); }
};
struct BacktestDeleter {
    void operator()(rl_backtest* b) const { rl_backtest_free(b); }
};
struct SweepDeleter {
    void operator()(rl_sweep* s) const { rl_sweep_free(s); }
};
struct StatsDeleter {
    void operator()(rl_stats* s) const { rl_stats_free(s); }
};
struct GapReportDeleter {
    void operator()(rl_gap_report* g) const { rl_gap_report_free(g); }
};

using PanelPtr = std::unique_ptr<rl_panel, PanelDeleter>;
using ModelPtr = std::unique_ptr<rl_model, ModelDeleter>;
using SeriesPtr = std::unique_ptr<rl_series, SeriesDeleter>;
using BacktestPtr = std::unique_ptr<rl_backtest, BacktestDeleter>;
using SweepPtr = std::unique_ptr<rl_sweep, SweepDeleter>;
using StatsPtr = std::unique_ptr<rl_stats, StatsDeleter>;
using GapReportPtr = std::unique_ptr<rl_gap_report, GapReportDeleter>;

struct CommonOptions {
    std::string input;
    std::string out_dir = ".";
    std::string frequency = "daily";
    std::string layout = "auto";
    std::string clean = "drop_dates";
    int max_gap = 1;
};

rl_frequency to_frequency(const std::string& f) {
    return f == "monthly" ? RL_FREQ_MONTHLY : RL_FREQ_DAILY;
}

rl_layout to_layout(const std::string& l) {
    if (l == "wide") return RL_LAYOUT_WIDE;
    if (l == "long") return RL_LAYOUT_LONG;
    return RL_LAYOUT_AUTO;
}

rl_clean_mode to_clean_mode(const std::string& c) {
    if (c == "drop_commodities") return RL_CLEAN_DROP_COMMODITIES;
    if (c == "ffill") return RL_CLEAN_FORWARD_FILL;
    return RL_CLEAN_DROP_DATES;
}

int default_warmup(rl_frequency f) { return f == RL_FREQ_DAILY ? 20 : 5; }

rl_status load_panel(const CommonOptions& opts, PanelPtr& panel) {
    rl_panel* raw = nullptr;
    rl_status status =
        rl_panel_read_file(opts.input.c_str(), to_layout(opts.layout), to_frequency(opts.frequency),
                           to_clean_mode(opts.clean), opts.max_gap, &raw);
    if (status == RL_OK) panel.reset(raw);
    return status;
}

void add_panel_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--input", opts.input, "panel CSV path")->required();
    cmd->add_option("--frequency", opts.frequency, "daily|monthly (default daily)")
        ->check(CLI::IsMember({"daily", "monthly"}));
    cmd->add_option("--layout", opts.layout, "auto|wide|long (default auto)")
        ->check(CLI::IsMember({"auto", "wide", "long"}));
    cmd->add_option("--clean", opts.clean, "drop_dates|drop_commodities|ffill (default drop_dates)")
        ->check(CLI::IsMember({"drop_dates", "drop_commodities", "ffill"}));
    cmd->add_option("--max-gap", opts.max_gap, "largest gap forward-fill may bridge (default 1)");
    cmd->add_option("--out", opts.out_dir, "output directory (default .)");
}

std::filesystem::path out_path(const CommonOptions& opts, const char* name) {
    return std::filesystem::path(opts.out_dir) / name;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-sorted commodity portfolio analytics"};
    app.require_subcommand(1);

    // --- ingest ---------------------------------------------------------
    CommonOptions ingest_opts;
    CLI::App* ingest = app.add_subcommand("ingest", "parse, clean and re-emit a price panel");
    add_panel_options(ingest, ingest_opts);

    // --- backtest -------------------------------------------------------
    CommonOptions bt_opts;
    int bt_cutoff = 0, bt_cutoff_low = 0, bt_cutoff_high = 0, bt_warmup = -1;
    std::string bt_market;
    CLI::App* backtest = app.add_subcommand("backtest", "run a low-minus-high rank backtest");
    add_panel_options(backtest, bt_opts);
    backtest->add_option("--cutoff", bt_cutoff, "ranks per leg (default floor(N/2))");
    backtest->add_option("--cutoff-low", bt_cutoff_low, "low-leg size (asymmetric legs)");
    backtest->add_option("--cutoff-high", bt_cutoff_high, "high-leg size (asymmetric legs)");
    backtest->add_option("--warmup", bt_warmup, "periods before trading starts (default 20 daily / 5 monthly)");
    backtest->add_option("--market", bt_market, "market return series CSV for summary diagnostics");

    // --- sweep ----------------------------------------------------------
    CommonOptions sweep_opts;
    int sweep_warmup = -1, sweep_nw_lags = 0;
    bool sweep_log_returns = false;
    std::string sweep_market;
    CLI::App* sweep = app.add_subcommand("sweep", "regress LMH returns on the market for every cutoff");
    add_panel_options(sweep, sweep_opts);
    sweep->add_option("--market", sweep_market, "market return series CSV")->required();
    sweep->add_option("--warmup", sweep_warmup, "periods before trading starts");
    sweep->add_option("--nw-lags", sweep_nw_lags, "Newey-West lags (0 = classical OLS)");
    sweep->add_flag("--log-returns", sweep_log_returns, "regress log instead of simple LMH returns");

    // --- simulate -------------------------------------------------------
    std::string sim_spec, sim_out = ".", sim_frequency = "daily";
    std::uint64_t sim_seed = 0;
    bool sim_seed_set = false;
    CLI::App* simulate = app.add_subcommand("simulate", "synthesize a panel from a rank model spec");
    simulate->add_option("--spec", sim_spec, "model spec file")->required();
    simulate->add_option("--seed", sim_seed, "RNG seed (default from spec file)")
        ->each([&](const std::string&) { sim_seed_set = true; });
    simulate->add_option("--frequency", sim_frequency, "daily|monthly date labels")
        ->check(CLI::IsMember({"daily", "monthly"}));
    simulate->add_option("--out", sim_out, "output directory (default .)");

    // --- estimate -------------------------------------------------------
    CommonOptions est_opts;
    std::string est_baseline = "cross_mean";
    CLI::App* estimate = app.add_subcommand("estimate", "estimate rank statistics from a panel");
    add_panel_options(estimate, est_opts);
    estimate->add_option("--alpha-baseline", est_baseline,
                         "cross_mean|total_price growth baseline (default cross_mean)")
        ->check(CLI::IsMember({"cross_mean", "total_price"}));

    // --- verify ---------------------------------------------------------
    std::string ver_spec, ver_out = ".";
    std::uint64_t ver_seed = 0;
    bool ver_seed_set = false;
    double ver_tol = 0.10, ver_burn_in = -1.0;
    CLI::App* verify = app.add_subcommand("verify", "Monte Carlo check of the stationary gap distribution");
    verify->add_option("--spec", ver_spec, "model spec file")->required();
    verify->add_option("--seed", ver_seed, "RNG seed (default from spec file)")
        ->each([&](const std::string&) { ver_seed_set = true; });
    verify->add_option("--tol", ver_tol, "max relative deviation per gap (default 0.10)");
    verify->add_option("--burn-in", ver_burn_in, "burn-in fraction (default from spec file)");
    verify->add_option("--out", ver_out, "output directory (default .)");

    // --- report ---------------------------------------------------------
    std::string rep_input, rep_panel, rep_out = ".";
    std::string rep_frequency = "daily", rep_layout = "auto";
    CLI::App* report = app.add_subcommand("report", "render SVG plots from result CSVs");
    report->add_option("--input", rep_input, "backtest series CSV");
    report->add_option("--panel", rep_panel, "panel CSV for relative-price fan plots");
    report->add_option("--frequency", rep_frequency, "panel frequency")
        ->check(CLI::IsMember({"daily", "monthly"}));
    report->add_option("--layout", rep_layout, "panel layout")
        ->check(CLI::IsMember({"auto", "wide", "long"}));
    report->add_option("--out", rep_out, "output directory (default .)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    // ---------------------------------------------------------------- //

    if (app.got_subcommand(ingest)) {
        PanelPtr panel;
        if (rl_status s = load_panel(ingest_opts, panel); s != RL_OK) return report_failure("ingest", s);
        const auto path = out_path(ingest_opts, "panel.csv");
        if (rl_status s = rl_panel_write_csv(panel.get(), path.c_str()); s != RL_OK) {
            return report_failure("ingest", s);
        }
        std::printf("wrote %s (%d dates x %d commodities)\n", path.c_str(),
                    rl_panel_num_dates(panel.get()), rl_panel_num_commodities(panel.get()));
        return 0;
    }

    if (app.got_subcommand(backtest)) {
        PanelPtr panel;
        if (rl_status s = load_panel(bt_opts, panel); s != RL_OK) return report_failure("backtest", s);
        const int n = rl_panel_num_commodities(panel.get());
        int m_low = bt_cutoff_low, m_high = bt_cutoff_high;
        if (m_low <= 0 && m_high <= 0) {
            const int m = bt_cutoff > 0 ? bt_cutoff : n / 2;
            m_low = m_high = m;
        } else if (m_low <= 0 || m_high <= 0) {
            std::fprintf(stderr, "ranklab backtest: domain error: --cutoff-low and --cutoff-high must be given together\n");
            return 2;
        }
        const rl_frequency freq = to_frequency(bt_opts.frequency);
        const int warmup = bt_warmup >= 0 ? bt_warmup : default_warmup(freq);

        rl_backtest* raw = nullptr;
        if (rl_status s = rl_backtest_run(panel.get(), m_low, m_high, warmup, &raw); s != RL_OK) {
            return report_failure("backtest", s);
        }
        BacktestPtr bt(raw);

        const auto csv_path = out_path(bt_opts, "backtest.csv");
        if (rl_status s = rl_backtest_write_csv(bt.get(), csv_path.c_str()); s != RL_OK) {
            return report_failure("backtest", s);
        }

        std::string summary;
        char line[256];
        std::snprintf(line, sizeof(line), "periods:                 %d\n",
                      rl_backtest_num_periods(bt.get()));
        summary += line;
        std::snprintf(line, sizeof(line), "legs (low/high):         %d/%d\n", m_low, m_high);
        summary += line;
        std::snprintf(line, sizeof(line), "warmup:                  %d\n", warmup);
        summary += line;
        std::snprintf(line, sizeof(line), "annualized LMH (mean log excess): %.6f\n",
                      rl_backtest_annualized_lmh(bt.get()));
        summary += line;
        const double sharpe = rl_backtest_sharpe_lmh(bt.get());
        if (std::isnan(sharpe)) {
            summary += "LMH Sharpe:              n/a (zero variance)\n";
        } else {
            std::snprintf(line, sizeof(line), "LMH Sharpe:              %.4f\n", sharpe);
            summary += line;
        }
        if (!bt_market.empty()) {
            rl_series* market_raw = nullptr;
            if (rl_status s = rl_series_read_file(bt_market.c_str(), &market_raw); s != RL_OK) {
                return report_failure("backtest", s);
            }
            SeriesPtr market(market_raw);
            double correlation = 0.0, market_sharpe = 0.0, market_annualized = 0.0;
            if (rl_status s = rl_backtest_market_stats(bt.get(), market.get(), &correlation,
                                                       &market_sharpe, &market_annualized);
                s != RL_OK) {
                return report_failure("backtest", s);
            }
            std::snprintf(line, sizeof(line), "correlation with market: %.4f\n", correlation);
            summary += line;
            std::snprintf(line, sizeof(line), "market Sharpe:           %.4f\n", market_sharpe);
            summary += line;
            std::snprintf(line, sizeof(line), "market annualized mean:  %.6f\n", market_annualized);
            summary += line;
        }
        std::printf("%s", summary.c_str());

        std::ofstream summary_file(out_path(bt_opts, "summary.txt"));
        summary_file << summary;
        if (!summary_file) {
            std::fprintf(stderr, "ranklab backtest: io error: cannot write summary.txt\n");
            return 3;
        }
        return 0;
    }

    if (app.got_subcommand(sweep)) {
        PanelPtr panel;
        if (rl_status s = load_panel(sweep_opts, panel); s != RL_OK) return report_failure("sweep", s);
        rl_series* market_raw = nullptr;
        if (rl_status s = rl_series_read_file(sweep_market.c_str(), &market_raw); s != RL_OK) {
            return report_failure("sweep", s);
        }
        SeriesPtr market(market_raw);
        const rl_frequency freq = to_frequency(sweep_opts.frequency);
        const int warmup = sweep_warmup >= 0 ? sweep_warmup : default_warmup(freq);

        rl_sweep* raw = nullptr;
        if (rl_status s = rl_sweep_run(panel.get(), warmup, market.get(), sweep_nw_lags,
                                       sweep_log_returns ? 1 : 0, &raw);
            s != RL_OK) {
            return report_failure("sweep", s);
        }
        SweepPtr result(raw);
        const auto path = out_path(sweep_opts, "sweep.csv");
        if (rl_status s = rl_sweep_write_csv(result.get(), path.c_str()); s != RL_OK) {
            return report_failure("sweep", s);
        }
        std::printf("cutoff  intercept_bp  se_intercept      beta   se_beta\n");
        for (int i = 0; i < rl_sweep_num_rows(result.get()); ++i) {
            rl_sweep_row row;
            rl_sweep_get_row(result.get(), i, &row);
            std::printf("%6d  %12.4f  %12.4f  %8.4f  %8.4f\n", row.cutoff, row.intercept_bp,
                        row.se_intercept, row.beta, row.se_beta);
        }
        std::printf("wrote %s\n", path.c_str());
        return 0;
    }

    if (app.got_subcommand(simulate)) {
        rl_model* model_raw = nullptr;
        if (rl_status s = rl_model_read_file(sim_spec.c_str(), &model_raw); s != RL_OK) {
            return report_failure("simulate", s);
        }
        ModelPtr model(model_raw);
        const std::uint64_t seed = sim_seed_set ? sim_seed : rl_model_seed(model.get());
        rl_panel* panel_raw = nullptr;
        if (rl_status s = rl_panel_synthesize(model.get(), seed, to_frequency(sim_frequency),
                                              &panel_raw);
            s != RL_OK) {
            return report_failure("simulate", s);
        }
        PanelPtr panel(panel_raw);
        const auto path = std::filesystem::path(sim_out) / "panel.csv";
        if (rl_status s = rl_panel_write_csv(panel.get(), path.c_str()); s != RL_OK) {
            return report_failure("simulate", s);
        }
        std::printf("wrote %s (%d dates x %d commodities, seed %" PRIu64 ")\n", path.c_str(),
                    rl_panel_num_dates(panel.get()), rl_panel_num_commodities(panel.get()),
                    static_cast<std::uint64_t>(seed));
        return 0;
    }

    if (app.got_subcommand(estimate)) {
        PanelPtr panel;
        if (rl_status s = load_panel(est_opts, panel); s != RL_OK) return report_failure("estimate", s);
        const rl_alpha_baseline baseline =
            est_baseline == "total_price" ? RL_ALPHA_TOTAL_PRICE : RL_ALPHA_CROSS_MEAN;
        rl_stats* raw = nullptr;
        if (rl_status s = rl_estimate_panel(panel.get(), baseline, &raw); s != RL_OK) {
            return report_failure("estimate", s);
        }
        StatsPtr stats(raw);
        const auto path = out_path(est_opts, "rank_stats.csv");
        if (rl_status s = rl_stats_write_csv(stats.get(), path.c_str()); s != RL_OK) {
            return report_failure("estimate", s);
        }
        const int n = rl_stats_n(stats.get());
        std::printf("   k       alpha   partial_sum       sigma       kappa\n");
        for (int k = 0; k < n; ++k) {
            if (k + 1 < n) {
                std::printf("%4d  %10.6f  %12.6f  %10.6f  %10.6f\n", k + 1,
                            rl_stats_alpha(stats.get(), k), rl_stats_partial_alpha_sum(stats.get(), k),
                            rl_stats_sigma(stats.get(), k), rl_stats_kappa(stats.get(), k));
            } else {
                std::printf("%4d  %10.6f\n", k + 1, rl_stats_alpha(stats.get(), k));
            }
        }
        std::printf("stationary (all alpha partial sums negative): %s\n",
                    rl_stats_stationary(stats.get()) ? "yes" : "no");
        std::printf("wrote %s\n", path.c_str());
        return 0;
    }

    if (app.got_subcommand(verify)) {
        rl_model* model_raw = nullptr;
        if (rl_status s = rl_model_read_file(ver_spec.c_str(), &model_raw); s != RL_OK) {
            return report_failure("verify", s);
        }
        ModelPtr model(model_raw);
        const std::uint64_t seed = ver_seed_set ? ver_seed : rl_model_seed(model.get());
        const double burn_in = ver_burn_in >= 0.0 ? ver_burn_in : rl_model_burn_in(model.get());

        rl_gap_report* raw = nullptr;
        if (rl_status s = rl_verify_theorem(model.get(), seed, burn_in, &raw); s != RL_OK) {
            return report_failure("verify", s);
        }
        GapReportPtr gaps(raw);
        const auto path = std::filesystem::path(ver_out) / "gap_report.csv";
        if (rl_status s = rl_gap_report_write_csv(gaps.get(), path.c_str()); s != RL_OK) {
            return report_failure("verify", s);
        }

        bool all_ok = true;
        const int n = rl_gap_report_n(gaps.get());
        for (int k = 0; k < n; ++k) {
            const double dev = rl_gap_report_deviation(gaps.get(), k);
            const bool ok = dev <= ver_tol;
            all_ok = all_ok && ok;
            std::printf("gap %d: theoretical %.6f  empirical %.6f  deviation %.4f  [%s]\n", k + 1,
                        rl_gap_report_theoretical(gaps.get(), k),
                        rl_gap_report_empirical(gaps.get(), k), dev, ok ? "PASS" : "FAIL");
        }
        std::printf("wrote %s\n", path.c_str());
        if (!all_ok) {
            std::fprintf(stderr, "ranklab verify: %d gap(s) exceed tolerance %.4f\n",
                         [&] {
                             int bad = 0;
                             for (int k = 0; k < n; ++k) {
                                 if (rl_gap_report_deviation(gaps.get(), k) > ver_tol) ++bad;
                             }
                             return bad;
                         }(),
                         ver_tol);
            return 1;
        }
        return 0;
    }

    if (app.got_subcommand(report)) {
        if (rep_input.empty() && rep_panel.empty()) {
            std::fprintf(stderr, "ranklab report: domain error: need --input and/or --panel\n");
            return 2;
        }
        if (!rep_input.empty()) {
            if (rl_status s = rl_report_backtest_csv(rep_input.c_str(), rep_out.c_str());
                s != RL_OK) {
                return report_failure("report", s);
            }
            std::printf("wrote %s/cumulative_lmh.svg and %s/legs.svg\n", rep_out.c_str(),
                        rep_out.c_str());
        }
        if (!rep_panel.empty()) {
            rl_panel* panel_raw = nullptr;
            if (rl_status s = rl_panel_read_file(rep_panel.c_str(), to_layout(rep_layout),
                                                 to_frequency(rep_frequency), RL_CLEAN_DROP_DATES,
                                                 1, &panel_raw);
                s != RL_OK) {
                return report_failure("report", s);
            }
            PanelPtr panel(panel_raw);
            if (rl_status s = rl_report_panel(panel.get(), rep_out.c_str()); s != RL_OK) {
                return report_failure("report", s);
            }
            std::printf("wrote %s/relative_prices.svg and %s/relative_prices_ranked.svg\n",
                        rep_out.c_str(), rep_out.c_str());
        }
        return 0;
    }

    return 0;
}
