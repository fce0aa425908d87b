/*
 * ranklab - rank-sorted commodity portfolio analytics.
 *
 * C API of the shared library. All objects are opaque handles created and
 * destroyed through these functions; every fallible call returns an
 * rl_status and leaves a human-readable message in rl_last_error() (per
 * thread) on failure. Out-parameters are written only on RL_OK.
 */

#ifndef RANKLAB_H
#define RANKLAB_H

#include <stddef.h>

#if defined(_WIN32)
#define RANKLAB_API __declspec(dllexport)
#else
#define RANKLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rl_status {
    RL_OK = 0,
    RL_ERR_PARSE = 1,    /* malformed input text (includes duplicate keys)   */
    RL_ERR_DOMAIN = 2,   /* precondition / invariant violation              */
    RL_ERR_IO = 3,       /* filesystem problems                             */
    RL_ERR_NUMERIC = 4,  /* numerical blowup during integration             */
    RL_ERR_ARGUMENT = 5  /* null handle or out-of-range argument            */
} rl_status;

/* Message for the most recent failure on this thread; empty string if none. */
RANKLAB_API const char *rl_last_error(void);
RANKLAB_API const char *rl_status_name(rl_status status);
RANKLAB_API const char *rl_version(void);

typedef enum rl_layout {
    RL_LAYOUT_AUTO = 0, /* header 'date,commodity,price' => long, else wide */
    RL_LAYOUT_WIDE = 1,
    RL_LAYOUT_LONG = 2
} rl_layout;

typedef enum rl_frequency { RL_FREQ_DAILY = 0, RL_FREQ_MONTHLY = 1 } rl_frequency;

typedef enum rl_clean_mode {
    RL_CLEAN_DROP_DATES = 0,
    RL_CLEAN_DROP_COMMODITIES = 1,
    RL_CLEAN_FORWARD_FILL = 2
} rl_clean_mode;

/* ------------------------------------------------------------------ */
/* Price panels                                                        */
/* ------------------------------------------------------------------ */

typedef struct rl_panel rl_panel;

/* Parse CSV text and apply the cleaning policy (max_gap is used by
 * RL_CLEAN_FORWARD_FILL only). */
RANKLAB_API rl_status rl_panel_parse(const char *csv_text, rl_layout layout,
                                     rl_frequency frequency, rl_clean_mode mode,
                                     int max_gap, rl_panel **out);
RANKLAB_API rl_status rl_panel_read_file(const char *path, rl_layout layout,
                                         rl_frequency frequency, rl_clean_mode mode,
                                         int max_gap, rl_panel **out);

RANKLAB_API int rl_panel_num_dates(const rl_panel *panel);
RANKLAB_API int rl_panel_num_commodities(const rl_panel *panel);
RANKLAB_API rl_frequency rl_panel_frequency(const rl_panel *panel);
/* Commodity identifier; pointer is owned by the panel. NULL if out of range. */
RANKLAB_API const char *rl_panel_commodity(const rl_panel *panel, int i);
/* ISO-8601 date into buf (needs >= 11 bytes). */
RANKLAB_API rl_status rl_panel_date(const rl_panel *panel, int t, char *buf, size_t bufsize);
RANKLAB_API double rl_panel_price(const rl_panel *panel, int t, int i);

/* Wide-layout CSV at full precision; re-parsing yields an identical panel. */
RANKLAB_API rl_status rl_panel_write_csv(const rl_panel *panel, const char *path);
RANKLAB_API void rl_panel_free(rl_panel *panel);

/* ------------------------------------------------------------------ */
/* Rank model                                                          */
/* ------------------------------------------------------------------ */

typedef struct rl_model rl_model;

/* First-order rank model: per-rank drifts g[0..n-1] (rank 1 = most
 * expensive first), per-rank volatilities s[0..n-1] >= 0. Time unit is one
 * year; dt must divide obs_interval. init may be NULL for all-zero initial
 * log prices. */
RANKLAB_API rl_status rl_model_create(int n, const double *g, const double *s, double dt,
                                      double horizon, double obs_interval, const double *init,
                                      rl_model **out);
/* Plain-text `key = value` config; keys n, g, s, dt, horizon, obs_interval,
 * seed, burn_in. */
RANKLAB_API rl_status rl_model_parse(const char *text, rl_model **out);
RANKLAB_API rl_status rl_model_read_file(const char *path, rl_model **out);
RANKLAB_API int rl_model_n(const rl_model *model);
RANKLAB_API unsigned long long rl_model_seed(const rl_model *model);
RANKLAB_API double rl_model_burn_in(const rl_model *model);
RANKLAB_API void rl_model_free(rl_model *model);

/* Simulate the model and exponentiate into a synthetic panel (deterministic
 * in (model, seed); frequency only labels the synthetic dates). */
RANKLAB_API rl_status rl_panel_synthesize(const rl_model *model, unsigned long long seed,
                                          rl_frequency frequency, rl_panel **out);

/* ------------------------------------------------------------------ */
/* Dated value series (market returns)                                 */
/* ------------------------------------------------------------------ */

typedef struct rl_series rl_series;

RANKLAB_API rl_status rl_series_parse(const char *csv_text, rl_series **out);
RANKLAB_API rl_status rl_series_read_file(const char *path, rl_series **out);
RANKLAB_API int rl_series_len(const rl_series *series);
RANKLAB_API void rl_series_free(rl_series *series);

/* ------------------------------------------------------------------ */
/* Backtests                                                           */
/* ------------------------------------------------------------------ */

typedef struct rl_backtest rl_backtest;

typedef enum rl_bt_series {
    RL_BT_LOW_LOGRET = 0,
    RL_BT_HIGH_LOGRET = 1,
    RL_BT_LMH_LOGRET = 2,
    RL_BT_CUM_LMH = 3
} rl_bt_series;

/* Rank-sorted LMH backtest with per-period rebalancing. Membership is
 * decided on the previous period's ranks. m_low / m_high are the leg sizes
 * (equal for the usual symmetric sorts). */
RANKLAB_API rl_status rl_backtest_run(const rl_panel *panel, int m_low, int m_high, int warmup,
                                      rl_backtest **out);
RANKLAB_API int rl_backtest_num_periods(const rl_backtest *bt);
RANKLAB_API rl_status rl_backtest_date(const rl_backtest *bt, int t, char *buf, size_t bufsize);
RANKLAB_API rl_status rl_backtest_series(const rl_backtest *bt, rl_bt_series which, double *out,
                                         size_t capacity);
/* Mean LMH log excess return per year. */
RANKLAB_API double rl_backtest_annualized_lmh(const rl_backtest *bt);
/* Annualized Sharpe ratio of the LMH log returns (NaN if undefined). */
RANKLAB_API double rl_backtest_sharpe_lmh(const rl_backtest *bt);
/* Market diagnostics over the backtest dates: Pearson correlation of the
 * simple LMH excess return with the market return, the market's annualized
 * Sharpe ratio and annualized mean return. Any out pointer may be NULL. */
RANKLAB_API rl_status rl_backtest_market_stats(const rl_backtest *bt, const rl_series *market,
                                               double *correlation, double *market_sharpe,
                                               double *market_annualized);
/* CSV: date,low_logret,high_logret,lmh_logret,cum_lmh */
RANKLAB_API rl_status rl_backtest_write_csv(const rl_backtest *bt, const char *path);
RANKLAB_API void rl_backtest_free(rl_backtest *bt);

/* ------------------------------------------------------------------ */
/* Cutoff sweep with market regressions                                */
/* ------------------------------------------------------------------ */

typedef struct rl_sweep rl_sweep;

typedef struct rl_sweep_row {
    int cutoff;
    double intercept_bp;
    double se_intercept;
    double beta;
    double se_beta;
    double r2;
    int n_obs;
} rl_sweep_row;

/* One OLS of daily LMH excess returns (basis points) on market returns
 * (basis points) per cutoff 1..floor(N/2). nw_lags > 0 switches to
 * Newey-West standard errors; log_returns != 0 regresses log instead of
 * simple LMH returns. */
RANKLAB_API rl_status rl_sweep_run(const rl_panel *panel, int warmup, const rl_series *market,
                                   int nw_lags, int log_returns, rl_sweep **out);
RANKLAB_API int rl_sweep_num_rows(const rl_sweep *sweep);
RANKLAB_API rl_status rl_sweep_get_row(const rl_sweep *sweep, int index, rl_sweep_row *out);
/* CSV: cutoff,intercept_bp,se_intercept,beta,se_beta */
RANKLAB_API rl_status rl_sweep_write_csv(const rl_sweep *sweep, const char *path);
RANKLAB_API void rl_sweep_free(rl_sweep *sweep);

/* ------------------------------------------------------------------ */
/* Rank statistics and the stationary gap distribution                 */
/* ------------------------------------------------------------------ */

typedef struct rl_stats rl_stats;

typedef enum rl_alpha_baseline {
    RL_ALPHA_CROSS_MEAN = 0, /* relative to the cross-sectional mean growth */
    RL_ALPHA_TOTAL_PRICE = 1 /* relative to the growth of the total price   */
} rl_alpha_baseline;

/* Estimate per-rank growth (alpha), adjacent-gap volatility (sigma) and
 * local-time rates (kappa) from a panel; per-year units via the panel
 * frequency. */
RANKLAB_API rl_status rl_estimate_panel(const rl_panel *panel, rl_alpha_baseline baseline,
                                        rl_stats **out);
RANKLAB_API int rl_stats_n(const rl_stats *stats);
RANKLAB_API double rl_stats_alpha(const rl_stats *stats, int k);             /* k in [0, n)   */
RANKLAB_API double rl_stats_sigma(const rl_stats *stats, int k);             /* k in [0, n-1) */
RANKLAB_API double rl_stats_kappa(const rl_stats *stats, int k);             /* k in [0, n-1) */
RANKLAB_API double rl_stats_partial_alpha_sum(const rl_stats *stats, int k); /* k in [0, n-1) */
RANKLAB_API int rl_stats_stationary(const rl_stats *stats);
RANKLAB_API rl_status rl_stats_write_csv(const rl_stats *stats, const char *path);
RANKLAB_API void rl_stats_free(rl_stats *stats);

/* Expected stationary log gaps sigma_k^2 / (-4 (alpha_1+..+alpha_k)).
 * alpha has length n, sigma and gaps_out length n-1. Fails with
 * RL_ERR_DOMAIN naming the first rank whose partial sum is not negative. */
RANKLAB_API rl_status rl_theoretical_gaps(const double *alpha, int n, const double *sigma,
                                          double *gaps_out);

typedef struct rl_gap_report rl_gap_report;

/* Simulate the model and compare empirical mean log gaps against the
 * stationary values implied by the model parameters. */
RANKLAB_API rl_status rl_verify_theorem(const rl_model *model, unsigned long long seed,
                                        double burn_in, rl_gap_report **out);
RANKLAB_API int rl_gap_report_n(const rl_gap_report *report); /* number of gaps = N-1 */
RANKLAB_API double rl_gap_report_theoretical(const rl_gap_report *report, int k);
RANKLAB_API double rl_gap_report_empirical(const rl_gap_report *report, int k);
RANKLAB_API double rl_gap_report_deviation(const rl_gap_report *report, int k);
/* CSV: k,theoretical_gap,empirical_gap,relative_deviation */
RANKLAB_API rl_status rl_gap_report_write_csv(const rl_gap_report *report, const char *path);
RANKLAB_API void rl_gap_report_free(rl_gap_report *report);

/* ------------------------------------------------------------------ */
/* Report plots (SVG)                                                  */
/* ------------------------------------------------------------------ */

/* From an emitted backtest CSV: cumulative_lmh.svg and legs.svg. Output is
 * byte-deterministic for fixed input. */
RANKLAB_API rl_status rl_report_backtest_csv(const char *csv_path, const char *out_dir);
/* From a panel: relative_prices.svg and relative_prices_ranked.svg. */
RANKLAB_API rl_status rl_report_panel(const rl_panel *panel, const char *out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RANKLAB_H */
