#pragma once

#include <cstddef>
#include <span>

namespace ranklab::econ {

struct RegressionFit {
    double intercept = 0.0;
    double beta = 0.0;
    double se_intercept = 0.0;
    double se_beta = 0.0;
    std::size_t n = 0;
    double r2 = 0.0;
};

// Classical OLS of y on x with homoskedastic standard errors
// (sigma^2 = RSS/(n-2)). Requires n >= 3 and var(x) > 0.
RegressionFit ols_market_regression(std::span<const double> y, std::span<const double> x);

// Same point estimates, Newey-West (Bartlett kernel) standard errors with
// `lags` autocovariance terms. lags == 0 reduces to plain White/HC0.
RegressionFit ols_market_regression_nw(std::span<const double> y, std::span<const double> x,
                                       int lags);

// mean(series) * periods_per_year. Errors on an empty series.
double annualize_mean(std::span<const double> series, double periods_per_year);

// mean/std * sqrt(periods_per_year), sample std (n-1). Errors when the
// sample standard deviation is zero.
double sharpe(std::span<const double> series, double periods_per_year);

// Pearson sample correlation; errors on constant input.
double correlation(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> series);
double sample_std(std::span<const double> series);

}  // namespace ranklab::econ
