// C API implementation: thin translation layer over the C++ core. Every
// entry point catches exceptions, stores the message in a thread-local
// buffer, and returns a status code.

#include "ranklab/ranklab.h"

#include <cmath>
#include <cstring>
#include <string>

#include "core/backtest.hpp"
#include "core/errors.hpp"
#include "core/model_config.hpp"
#include "core/panel.hpp"
#include "core/rank.hpp"
#include "core/ranksde.hpp"
#include "core/report.hpp"
#include "core/series.hpp"

using namespace ranklab;

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

rl_status fail(rl_status status, const std::string& msg) {
    set_error(msg);
    return status;
}

rl_status fail_argument(const char* msg) { return fail(RL_ERR_ARGUMENT, msg); }

// Runs fn, translating exceptions into status codes. DuplicateError is a
// ParseError subclass, so it maps to RL_ERR_PARSE.
template <typename Fn>
rl_status guarded(Fn&& fn) {
    try {
        fn();
        return RL_OK;
    } catch (const ParseError& e) {
        return fail(RL_ERR_PARSE, e.what());
    } catch (const InsufficientDataError& e) {
        return fail(RL_ERR_DOMAIN, e.what());
    } catch (const DomainError& e) {
        return fail(RL_ERR_DOMAIN, e.what());
    } catch (const NumericError& e) {
        return fail(RL_ERR_NUMERIC, e.what());
    } catch (const IoError& e) {
        return fail(RL_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(RL_ERR_DOMAIN, e.what());
    }
}

rl_status copy_date(const Date& date, char* buf, size_t bufsize) {
    const std::string text = date.to_string();
    if (!buf || bufsize < text.size() + 1) {
        return fail_argument("date buffer too small (needs 11 bytes)");
    }
    std::memcpy(buf, text.c_str(), text.size() + 1);
    return RL_OK;
}

}  // namespace

struct rl_panel {
    PricePanel panel;
};

struct rl_model {
    ModelConfig config;
};

struct rl_series {
    DatedSeries series;
};

struct rl_backtest {
    BacktestResult result;
    Frequency frequency;
};

struct rl_sweep {
    std::vector<SweepRow> rows;
};

struct rl_stats {
    RankStats stats;
};

struct rl_gap_report {
    GapReport report;
};

extern "C" {

const char* rl_last_error(void) { return g_last_error.c_str(); }

const char* rl_status_name(rl_status status) {
    switch (status) {
        case RL_OK: return "ok";
        case RL_ERR_PARSE: return "parse error";
        case RL_ERR_DOMAIN: return "domain error";
        case RL_ERR_IO: return "io error";
        case RL_ERR_NUMERIC: return "numeric error";
        case RL_ERR_ARGUMENT: return "argument error";
    }
    return "unknown";
}

const char* rl_version(void) { return "1.0.0"; }

/* ---------------------------------------------------------------- */
/* Panels                                                            */
/* ---------------------------------------------------------------- */

static CleaningPolicy to_policy(rl_clean_mode mode, int max_gap) {
    CleaningPolicy policy;
    switch (mode) {
        case RL_CLEAN_DROP_DATES:
            policy.mode = CleaningPolicy::Mode::drop_incomplete_dates;
            break;
        case RL_CLEAN_DROP_COMMODITIES:
            policy.mode = CleaningPolicy::Mode::drop_incomplete_commodities;
            break;
        case RL_CLEAN_FORWARD_FILL:
            policy.mode = CleaningPolicy::Mode::forward_fill;
            break;
        default:
            throw DomainError("unknown cleaning mode");
    }
    policy.max_gap = max_gap;
    return policy;
}

static Layout detect_layout(const char* text, rl_layout layout) {
    switch (layout) {
        case RL_LAYOUT_WIDE: return Layout::wide;
        case RL_LAYOUT_LONG: return Layout::long_form;
        case RL_LAYOUT_AUTO: break;
        default: throw DomainError("unknown layout");
    }
    std::string_view view(text);
    std::string_view first = view.substr(0, view.find('\n'));
    if (!first.empty() && first.back() == '\r') first.remove_suffix(1);
    return first == "date,commodity,price" ? Layout::long_form : Layout::wide;
}

rl_status rl_panel_parse(const char* csv_text, rl_layout layout, rl_frequency frequency,
                         rl_clean_mode mode, int max_gap, rl_panel** out) {
    if (!csv_text || !out) return fail_argument("null argument");
    return guarded([&] {
        const Frequency freq = frequency == RL_FREQ_MONTHLY ? Frequency::monthly : Frequency::daily;
        RawPanel raw = parse_csv(csv_text, detect_layout(csv_text, layout), freq);
        *out = new rl_panel{clean(raw, to_policy(mode, max_gap))};
    });
}

rl_status rl_panel_read_file(const char* path, rl_layout layout, rl_frequency frequency,
                             rl_clean_mode mode, int max_gap, rl_panel** out) {
    if (!path || !out) return fail_argument("null argument");
    return guarded([&] {
        const std::string text = read_text_file(path);
        const Frequency freq = frequency == RL_FREQ_MONTHLY ? Frequency::monthly : Frequency::daily;
        RawPanel raw = parse_csv(text, detect_layout(text.c_str(), layout), freq);
        *out = new rl_panel{clean(raw, to_policy(mode, max_gap))};
    });
}

int rl_panel_num_dates(const rl_panel* panel) {
    return panel ? static_cast<int>(panel->panel.num_dates()) : 0;
}

int rl_panel_num_commodities(const rl_panel* panel) {
    return panel ? static_cast<int>(panel->panel.num_commodities()) : 0;
}

rl_frequency rl_panel_frequency(const rl_panel* panel) {
    return panel && panel->panel.frequency == Frequency::monthly ? RL_FREQ_MONTHLY : RL_FREQ_DAILY;
}

const char* rl_panel_commodity(const rl_panel* panel, int i) {
    if (!panel || i < 0 || static_cast<std::size_t>(i) >= panel->panel.num_commodities()) {
        return nullptr;
    }
    return panel->panel.commodities[static_cast<std::size_t>(i)].c_str();
}

rl_status rl_panel_date(const rl_panel* panel, int t, char* buf, size_t bufsize) {
    if (!panel) return fail_argument("null panel");
    if (t < 0 || static_cast<std::size_t>(t) >= panel->panel.num_dates()) {
        return fail_argument("date index out of range");
    }
    return copy_date(panel->panel.dates[static_cast<std::size_t>(t)], buf, bufsize);
}

double rl_panel_price(const rl_panel* panel, int t, int i) {
    if (!panel || t < 0 || i < 0 || static_cast<std::size_t>(t) >= panel->panel.num_dates() ||
        static_cast<std::size_t>(i) >= panel->panel.num_commodities()) {
        return 0.0;
    }
    return panel->panel.prices(static_cast<std::size_t>(t), static_cast<std::size_t>(i));
}

rl_status rl_panel_write_csv(const rl_panel* panel, const char* path) {
    if (!panel || !path) return fail_argument("null argument");
    return guarded([&] { write_text_file(path, emit_csv(panel->panel)); });
}

void rl_panel_free(rl_panel* panel) { delete panel; }

/* ---------------------------------------------------------------- */
/* Models                                                            */
/* ---------------------------------------------------------------- */

rl_status rl_model_create(int n, const double* g, const double* s, double dt, double horizon,
                          double obs_interval, const double* init, rl_model** out) {
    if (!g || !s || !out) return fail_argument("null argument");
    return guarded([&] {
        ModelConfig config;
        config.spec.n = n;
        if (n > 0) {
            config.spec.g.assign(g, g + n);
            config.spec.s.assign(s, s + n);
            if (init) config.spec.init_log_prices.assign(init, init + n);
        }
        config.spec.dt = dt;
        config.spec.horizon = horizon;
        config.spec.obs_interval = obs_interval;
        config.spec.validate();
        *out = new rl_model{std::move(config)};
    });
}

rl_status rl_model_parse(const char* text, rl_model** out) {
    if (!text || !out) return fail_argument("null argument");
    return guarded([&] { *out = new rl_model{parse_model_config(text)}; });
}

rl_status rl_model_read_file(const char* path, rl_model** out) {
    if (!path || !out) return fail_argument("null argument");
    return guarded([&] { *out = new rl_model{parse_model_config(read_text_file(path))}; });
}

int rl_model_n(const rl_model* model) { return model ? model->config.spec.n : 0; }

unsigned long long rl_model_seed(const rl_model* model) {
    return model ? model->config.seed : 0ULL;
}

double rl_model_burn_in(const rl_model* model) { return model ? model->config.burn_in : 0.0; }

void rl_model_free(rl_model* model) { delete model; }

rl_status rl_panel_synthesize(const rl_model* model, unsigned long long seed,
                              rl_frequency frequency, rl_panel** out) {
    if (!model || !out) return fail_argument("null argument");
    return guarded([&] {
        const Frequency freq = frequency == RL_FREQ_MONTHLY ? Frequency::monthly : Frequency::daily;
        *out = new rl_panel{synthesize(model->config.spec, seed, freq)};
    });
}

/* ---------------------------------------------------------------- */
/* Series                                                            */
/* ---------------------------------------------------------------- */

rl_status rl_series_parse(const char* csv_text, rl_series** out) {
    if (!csv_text || !out) return fail_argument("null argument");
    return guarded([&] { *out = new rl_series{parse_series_csv(csv_text)}; });
}

rl_status rl_series_read_file(const char* path, rl_series** out) {
    if (!path || !out) return fail_argument("null argument");
    return guarded([&] { *out = new rl_series{parse_series_csv(read_text_file(path))}; });
}

int rl_series_len(const rl_series* series) {
    return series ? static_cast<int>(series->series.size()) : 0;
}

void rl_series_free(rl_series* series) { delete series; }

/* ---------------------------------------------------------------- */
/* Backtests                                                         */
/* ---------------------------------------------------------------- */

rl_status rl_backtest_run(const rl_panel* panel, int m_low, int m_high, int warmup,
                          rl_backtest** out) {
    if (!panel || !out) return fail_argument("null argument");
    return guarded([&] {
        NormalizedPanel norm = normalize(panel->panel, panel->panel.dates.front());
        PortfolioSpec spec{m_low, m_high, warmup};
        *out = new rl_backtest{run_lmh(norm, spec), panel->panel.frequency};
    });
}

int rl_backtest_num_periods(const rl_backtest* bt) {
    return bt ? static_cast<int>(bt->result.lmh_logret.size()) : 0;
}

rl_status rl_backtest_date(const rl_backtest* bt, int t, char* buf, size_t bufsize) {
    if (!bt) return fail_argument("null backtest");
    if (t < 0 || static_cast<std::size_t>(t) >= bt->result.dates.size()) {
        return fail_argument("date index out of range");
    }
    return copy_date(bt->result.dates[static_cast<std::size_t>(t)], buf, bufsize);
}

rl_status rl_backtest_series(const rl_backtest* bt, rl_bt_series which, double* out,
                             size_t capacity) {
    if (!bt || !out) return fail_argument("null argument");
    const std::vector<double>* src = nullptr;
    switch (which) {
        case RL_BT_LOW_LOGRET: src = &bt->result.low_logret; break;
        case RL_BT_HIGH_LOGRET: src = &bt->result.high_logret; break;
        case RL_BT_LMH_LOGRET: src = &bt->result.lmh_logret; break;
        case RL_BT_CUM_LMH: src = &bt->result.cum_lmh; break;
    }
    if (!src) return fail_argument("unknown series");
    if (capacity < src->size()) return fail_argument("buffer too small");
    std::memcpy(out, src->data(), src->size() * sizeof(double));
    return RL_OK;
}

double rl_backtest_annualized_lmh(const rl_backtest* bt) {
    return bt ? bt->result.metrics.annualized_lmh : 0.0;
}

double rl_backtest_sharpe_lmh(const rl_backtest* bt) {
    return bt ? bt->result.metrics.sharpe_lmh : 0.0;
}

rl_status rl_backtest_market_stats(const rl_backtest* bt, const rl_series* market,
                                   double* correlation, double* market_sharpe,
                                   double* market_annualized) {
    if (!bt || !market) return fail_argument("null argument");
    return guarded([&] {
        std::vector<double> aligned = align_market(market->series, bt->result);
        std::vector<double> lmh_simple(bt->result.low_ret.size());
        for (std::size_t t = 0; t < lmh_simple.size(); ++t) {
            lmh_simple[t] = bt->result.low_ret[t] - bt->result.high_ret[t];
        }
        const double ppy = periods_per_year(bt->frequency);
        if (correlation) *correlation = econ::correlation(lmh_simple, aligned);
        if (market_sharpe) *market_sharpe = econ::sharpe(aligned, ppy);
        if (market_annualized) *market_annualized = econ::annualize_mean(aligned, ppy);
    });
}

rl_status rl_backtest_write_csv(const rl_backtest* bt, const char* path) {
    if (!bt || !path) return fail_argument("null argument");
    return guarded([&] { write_text_file(path, emit_backtest_csv(bt->result)); });
}

void rl_backtest_free(rl_backtest* bt) { delete bt; }

/* ---------------------------------------------------------------- */
/* Sweeps                                                            */
/* ---------------------------------------------------------------- */

rl_status rl_sweep_run(const rl_panel* panel, int warmup, const rl_series* market, int nw_lags,
                       int log_returns, rl_sweep** out) {
    if (!panel || !market || !out) return fail_argument("null argument");
    return guarded([&] {
        NormalizedPanel norm = normalize(panel->panel, panel->panel.dates.front());
        SweepOptions options;
        options.nw_lags = nw_lags;
        options.log_returns = log_returns != 0;
        *out = new rl_sweep{sweep_cutoffs(norm, warmup, market->series, options)};
    });
}

int rl_sweep_num_rows(const rl_sweep* sweep) {
    return sweep ? static_cast<int>(sweep->rows.size()) : 0;
}

rl_status rl_sweep_get_row(const rl_sweep* sweep, int index, rl_sweep_row* out) {
    if (!sweep || !out) return fail_argument("null argument");
    if (index < 0 || static_cast<std::size_t>(index) >= sweep->rows.size()) {
        return fail_argument("row index out of range");
    }
    const SweepRow& row = sweep->rows[static_cast<std::size_t>(index)];
    out->cutoff = row.cutoff;
    out->intercept_bp = row.fit.intercept;
    out->se_intercept = row.fit.se_intercept;
    out->beta = row.fit.beta;
    out->se_beta = row.fit.se_beta;
    out->r2 = row.fit.r2;
    out->n_obs = static_cast<int>(row.fit.n);
    return RL_OK;
}

rl_status rl_sweep_write_csv(const rl_sweep* sweep, const char* path) {
    if (!sweep || !path) return fail_argument("null argument");
    return guarded([&] { write_text_file(path, emit_sweep_csv(sweep->rows)); });
}

void rl_sweep_free(rl_sweep* sweep) { delete sweep; }

/* ---------------------------------------------------------------- */
/* Rank statistics                                                   */
/* ---------------------------------------------------------------- */

rl_status rl_estimate_panel(const rl_panel* panel, rl_alpha_baseline baseline, rl_stats** out) {
    if (!panel || !out) return fail_argument("null argument");
    return guarded([&] {
        const PricePanel& p = panel->panel;
        Matrix log_prices(p.num_dates(), p.num_commodities());
        for (std::size_t t = 0; t < p.num_dates(); ++t) {
            for (std::size_t i = 0; i < p.num_commodities(); ++i) {
                log_prices(t, i) = std::log(p.prices(t, i));
            }
        }
        const double dt = 1.0 / periods_per_year(p.frequency);
        RankStats stats = estimate_stats(log_prices, dt);
        if (baseline == RL_ALPHA_TOTAL_PRICE) {
            stats.alpha = estimate_alpha_total_baseline(log_prices, dt);
            StationarityVerdict verdict = check_stationarity(stats.alpha);
            stats.partial_alpha_sums = std::move(verdict.partial_sums);
            stats.stationary_per_rank = std::move(verdict.per_rank);
            stats.stationary = verdict.overall;
        }
        *out = new rl_stats{std::move(stats)};
    });
}

int rl_stats_n(const rl_stats* stats) {
    return stats ? static_cast<int>(stats->stats.alpha.size()) : 0;
}

double rl_stats_alpha(const rl_stats* stats, int k) {
    if (!stats || k < 0 || static_cast<std::size_t>(k) >= stats->stats.alpha.size()) return 0.0;
    return stats->stats.alpha[static_cast<std::size_t>(k)];
}

double rl_stats_sigma(const rl_stats* stats, int k) {
    if (!stats || k < 0 || static_cast<std::size_t>(k) >= stats->stats.sigma.size()) return 0.0;
    return stats->stats.sigma[static_cast<std::size_t>(k)];
}

double rl_stats_kappa(const rl_stats* stats, int k) {
    if (!stats || k < 0 || static_cast<std::size_t>(k) >= stats->stats.kappa.size()) return 0.0;
    return stats->stats.kappa[static_cast<std::size_t>(k)];
}

double rl_stats_partial_alpha_sum(const rl_stats* stats, int k) {
    if (!stats || k < 0 ||
        static_cast<std::size_t>(k) >= stats->stats.partial_alpha_sums.size()) {
        return 0.0;
    }
    return stats->stats.partial_alpha_sums[static_cast<std::size_t>(k)];
}

int rl_stats_stationary(const rl_stats* stats) {
    return stats && stats->stats.stationary ? 1 : 0;
}

rl_status rl_stats_write_csv(const rl_stats* stats, const char* path) {
    if (!stats || !path) return fail_argument("null argument");
    return guarded([&] { write_text_file(path, emit_rank_stats_csv(stats->stats)); });
}

void rl_stats_free(rl_stats* stats) { delete stats; }

/* ---------------------------------------------------------------- */
/* Theorem verification                                              */
/* ---------------------------------------------------------------- */

rl_status rl_theoretical_gaps(const double* alpha, int n, const double* sigma, double* gaps_out) {
    if (!alpha || !sigma || !gaps_out) return fail_argument("null argument");
    if (n < 2) return fail_argument("n must be >= 2");
    return guarded([&] {
        std::vector<double> gaps =
            theoretical_gaps(std::span<const double>(alpha, static_cast<std::size_t>(n)),
                             std::span<const double>(sigma, static_cast<std::size_t>(n - 1)));
        std::memcpy(gaps_out, gaps.data(), gaps.size() * sizeof(double));
    });
}

rl_status rl_verify_theorem(const rl_model* model, unsigned long long seed, double burn_in,
                            rl_gap_report** out) {
    if (!model || !out) return fail_argument("null argument");
    return guarded([&] {
        *out = new rl_gap_report{verify_theorem(model->config.spec, seed, burn_in)};
    });
}

int rl_gap_report_n(const rl_gap_report* report) {
    return report ? static_cast<int>(report->report.theoretical.size()) : 0;
}

double rl_gap_report_theoretical(const rl_gap_report* report, int k) {
    if (!report || k < 0 || static_cast<std::size_t>(k) >= report->report.theoretical.size()) {
        return 0.0;
    }
    return report->report.theoretical[static_cast<std::size_t>(k)];
}

double rl_gap_report_empirical(const rl_gap_report* report, int k) {
    if (!report || k < 0 || static_cast<std::size_t>(k) >= report->report.empirical.size()) {
        return 0.0;
    }
    return report->report.empirical[static_cast<std::size_t>(k)];
}

double rl_gap_report_deviation(const rl_gap_report* report, int k) {
    if (!report || k < 0 || static_cast<std::size_t>(k) >= report->report.rel_deviation.size()) {
        return 0.0;
    }
    return report->report.rel_deviation[static_cast<std::size_t>(k)];
}

rl_status rl_gap_report_write_csv(const rl_gap_report* report, const char* path) {
    if (!report || !path) return fail_argument("null argument");
    return guarded([&] { write_text_file(path, emit_gap_report_csv(report->report)); });
}

void rl_gap_report_free(rl_gap_report* report) { delete report; }

/* ---------------------------------------------------------------- */
/* Reports                                                           */
/* ---------------------------------------------------------------- */

rl_status rl_report_backtest_csv(const char* csv_path, const char* out_dir) {
    if (!csv_path || !out_dir) return fail_argument("null argument");
    return guarded([&] { report_backtest_csv(read_text_file(csv_path), out_dir); });
}

rl_status rl_report_panel(const rl_panel* panel, const char* out_dir) {
    if (!panel || !out_dir) return fail_argument("null argument");
    return guarded([&] { report_panel(panel->panel, out_dir); });
}

} /* extern "C" */
