#include "core/backtest.hpp"

#include <cmath>
#include <limits>

#include "core/csv.hpp"
#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace ranklab {

void PortfolioSpec::validate(std::size_t n, std::size_t t) const {
    if (low_count < 1 || high_count < 1) {
        throw DomainError("leg sizes must be at least 1");
    }
    if (static_cast<std::size_t>(low_count) + static_cast<std::size_t>(high_count) > n) {
        throw DomainError("legs overlap: low " + std::to_string(low_count) + " + high " +
                          std::to_string(high_count) + " exceeds " + std::to_string(n) +
                          " commodities");
    }
    if (warmup < 0) throw DomainError("warmup must be >= 0");
    if (static_cast<std::size_t>(warmup) + 2 > t) {
        throw DomainError("warmup " + std::to_string(warmup) + " leaves no tradable periods in " +
                          std::to_string(t) + " dates");
    }
}

int default_warmup(Frequency f) { return f == Frequency::daily ? 20 : 5; }

double leg_return(const NormalizedPanel& norm, std::span<const std::size_t> members,
                  std::size_t t) {
    if (members.empty()) throw DomainError("portfolio leg has no members");
    if (t < 1 || t >= norm.num_dates()) throw DomainError("leg return index out of range");
    double sum = 0.0;
    for (std::size_t i : members) {
        sum += norm.values(t, i) / norm.values(t - 1, i) - 1.0;
    }
    return sum / static_cast<double>(members.size());
}

BacktestResult run_lmh(const NormalizedPanel& norm, const PortfolioSpec& spec) {
    const std::size_t n = norm.num_commodities();
    const std::size_t t_count = norm.num_dates();
    spec.validate(n, t_count);

    RelativePriceField field = relative_prices(norm);

    BacktestResult result;
    double cum = 0.0;
    for (std::size_t t = static_cast<std::size_t>(spec.warmup) + 1; t < t_count; ++t) {
        // Membership from ranks at t-1; returns realized over (t-1, t].
        auto order = rank_order(field.theta.row(t - 1));
        std::vector<std::size_t> high(order.begin(), order.begin() + spec.high_count);
        std::vector<std::size_t> low(order.end() - spec.low_count, order.end());

        const double low_simple = leg_return(norm, low, t);
        const double high_simple = leg_return(norm, high, t);
        const double low_log = std::log1p(low_simple);
        const double high_log = std::log1p(high_simple);

        result.dates.push_back(norm.dates[t]);
        result.low_ret.push_back(low_simple);
        result.high_ret.push_back(high_simple);
        result.low_logret.push_back(low_log);
        result.high_logret.push_back(high_log);
        result.lmh_logret.push_back(low_log - high_log);
        cum += low_log - high_log;
        result.cum_lmh.push_back(cum);
        result.low_members.push_back(std::move(low));
        result.high_members.push_back(std::move(high));
    }

    const double ppy = periods_per_year(norm.frequency);
    result.metrics.n_periods = result.lmh_logret.size();
    result.metrics.annualized_lmh = econ::annualize_mean(result.lmh_logret, ppy);
    try {
        result.metrics.sharpe_lmh = econ::sharpe(result.lmh_logret, ppy);
    } catch (const DomainError&) {
        result.metrics.sharpe_lmh = std::numeric_limits<double>::quiet_NaN();
    }
    return result;
}

std::vector<double> align_market(const DatedSeries& market, const BacktestResult& result) {
    std::vector<double> out;
    out.reserve(result.dates.size());
    for (const Date& d : result.dates) out.push_back(market.at(d));
    return out;
}

std::vector<SweepRow> sweep_cutoffs(const NormalizedPanel& norm, int warmup,
                                    const DatedSeries& market, const SweepOptions& options) {
    const std::size_t n = norm.num_commodities();
    const int max_cutoff = static_cast<int>(n / 2);
    if (max_cutoff < 1) throw DomainError("sweep needs at least 2 commodities");

    constexpr double kBp = 1e4;
    std::vector<SweepRow> rows(static_cast<std::size_t>(max_cutoff));
    parallel_for(rows.size(), [&](std::size_t idx) {
        const int m = static_cast<int>(idx) + 1;
        BacktestResult bt = run_lmh(norm, PortfolioSpec::symmetric(m, warmup));
        std::vector<double> market_bp = align_market(market, bt);
        for (double& v : market_bp) v *= kBp;

        std::vector<double> lmh_bp(bt.lmh_logret.size());
        for (std::size_t t = 0; t < lmh_bp.size(); ++t) {
            lmh_bp[t] = options.log_returns ? bt.lmh_logret[t] * kBp
                                            : (bt.low_ret[t] - bt.high_ret[t]) * kBp;
        }

        rows[idx].cutoff = m;
        rows[idx].fit = options.nw_lags > 0
                            ? econ::ols_market_regression_nw(lmh_bp, market_bp, options.nw_lags)
                            : econ::ols_market_regression(lmh_bp, market_bp);
    });
    return rows;
}

std::string emit_backtest_csv(const BacktestResult& result) {
    std::string out = "date,low_logret,high_logret,lmh_logret,cum_lmh\n";
    for (std::size_t t = 0; t < result.dates.size(); ++t) {
        out += result.dates[t].to_string();
        out += ',';
        out += csv::format_double(result.low_logret[t]);
        out += ',';
        out += csv::format_double(result.high_logret[t]);
        out += ',';
        out += csv::format_double(result.lmh_logret[t]);
        out += ',';
        out += csv::format_double(result.cum_lmh[t]);
        out += '\n';
    }
    return out;
}

std::string emit_sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "cutoff,intercept_bp,se_intercept,beta,se_beta\n";
    for (const SweepRow& row : rows) {
        out += std::to_string(row.cutoff);
        out += ',';
        out += csv::format_double(row.fit.intercept);
        out += ',';
        out += csv::format_double(row.fit.se_intercept);
        out += ',';
        out += csv::format_double(row.fit.beta);
        out += ',';
        out += csv::format_double(row.fit.se_beta);
        out += '\n';
    }
    return out;
}

}  // namespace ranklab
