#pragma once

#include <span>
#include <vector>

#include "core/econometrics.hpp"
#include "core/rank.hpp"
#include "core/series.hpp"

namespace ranklab {

// Leg sizes and warm-up for the low/high rank portfolios. Symmetric sorts
// use low_count == high_count == m; asymmetric legs (e.g. bottom 7 vs top 8
// of 15) are allowed as long as the legs stay disjoint.
struct PortfolioSpec {
    int low_count = 0;
    int high_count = 0;
    int warmup = 0;

    static PortfolioSpec symmetric(int m, int warmup) { return {m, m, warmup}; }
    // Throws DomainError if the legs overlap or the panel is too short.
    void validate(std::size_t n, std::size_t t) const;
};

int default_warmup(Frequency f);  // 20 daily, 5 monthly

struct BacktestMetrics {
    double annualized_lmh = 0.0;   // mean log excess per period * periods/yr
    double sharpe_lmh = 0.0;       // NaN when the series has zero variance
    std::size_t n_periods = 0;
};

struct BacktestResult {
    std::vector<Date> dates;            // post-warm-up trading dates
    std::vector<double> low_logret;
    std::vector<double> high_logret;
    std::vector<double> lmh_logret;     // low - high
    std::vector<double> cum_lmh;        // running sum of lmh_logret
    std::vector<double> low_ret;        // simple returns, kept for regressions
    std::vector<double> high_ret;
    std::vector<std::vector<std::size_t>> low_members;   // per period
    std::vector<std::vector<std::size_t>> high_members;
    BacktestMetrics metrics;
};

// One-period simple return of an equal-dollar portfolio formed at t-1.
double leg_return(const NormalizedPanel& norm, std::span<const std::size_t> members,
                  std::size_t t);

// Rank-sorted low-minus-high backtest: each period t > warmup ranks theta at
// t-1, holds the bottom `low_count` against the top `high_count` over
// (t-1, t], and rebalances every period.
BacktestResult run_lmh(const NormalizedPanel& norm, const PortfolioSpec& spec);

struct SweepRow {
    int cutoff = 0;
    econ::RegressionFit fit;  // units: basis points per period
};

struct SweepOptions {
    int nw_lags = 0;          // > 0 switches to Newey-West standard errors
    bool log_returns = false; // regress log instead of simple LMH returns
};

// One regression of LMH daily excess returns (basis points) on market
// returns (basis points) per cutoff m = 1..floor(N/2). Cutoffs run in
// parallel. The market series must cover every post-warm-up date.
std::vector<SweepRow> sweep_cutoffs(const NormalizedPanel& norm, int warmup,
                                    const DatedSeries& market, const SweepOptions& options = {});

// Market values aligned to the result's trading dates; throws DomainError
// on any missing date.
std::vector<double> align_market(const DatedSeries& market, const BacktestResult& result);

std::string emit_backtest_csv(const BacktestResult& result);
std::string emit_sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace ranklab
