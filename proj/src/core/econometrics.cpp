#include "core/econometrics.hpp"

#include <cmath>
#include <vector>

#include "core/errors.hpp"

namespace ranklab::econ {

double mean(std::span<const double> series) {
    double s = 0.0;
    for (double v : series) s += v;
    return s / static_cast<double>(series.size());
}

double sample_std(std::span<const double> series) {
    const double m = mean(series);
    double ss = 0.0;
    for (double v : series) {
        const double d = v - m;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(series.size() - 1));
}

namespace {

struct OlsCore {
    double intercept, beta;
    double x_mean, sxx, rss, syy;
    std::vector<double> residuals;
};

OlsCore fit_core(std::span<const double> y, std::span<const double> x) {
    if (y.size() != x.size()) throw DomainError("regression series lengths differ");
    const std::size_t n = y.size();
    if (n < 3) throw DomainError("regression needs at least 3 observations");

    const double xm = mean(x);
    const double ym = mean(y);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - xm;
        const double dy = y[i] - ym;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) throw DomainError("regressor has zero variance");

    OlsCore core;
    core.beta = sxy / sxx;
    core.intercept = ym - core.beta * xm;
    core.x_mean = xm;
    core.sxx = sxx;
    core.syy = syy;
    core.residuals.resize(n);
    core.rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - core.intercept - core.beta * x[i];
        core.residuals[i] = r;
        core.rss += r * r;
    }
    return core;
}

double r_squared(const OlsCore& core) {
    if (core.syy <= 0.0) return core.rss == 0.0 ? 1.0 : 0.0;
    return 1.0 - core.rss / core.syy;
}

}  // namespace

RegressionFit ols_market_regression(std::span<const double> y, std::span<const double> x) {
    OlsCore core = fit_core(y, x);
    const std::size_t n = y.size();

    const double sigma2 = core.rss / static_cast<double>(n - 2);
    RegressionFit fit;
    fit.intercept = core.intercept;
    fit.beta = core.beta;
    fit.se_beta = std::sqrt(sigma2 / core.sxx);
    fit.se_intercept =
        std::sqrt(sigma2 * (1.0 / static_cast<double>(n) + core.x_mean * core.x_mean / core.sxx));
    fit.n = n;
    fit.r2 = r_squared(core);
    return fit;
}

RegressionFit ols_market_regression_nw(std::span<const double> y, std::span<const double> x,
                                       int lags) {
    if (lags < 0) throw DomainError("Newey-West lag count must be >= 0");
    OlsCore core = fit_core(y, x);
    const std::size_t n = y.size();

    // Sandwich (X'X)^-1 S (X'X)^-1 with z_t = (1, x_t) and Bartlett weights.
    const double xm_sum = [&] {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }();
    double xx_sum = 0.0;
    for (double v : x) xx_sum += v * v;
    // (X'X)^-1 for the 2x2 design.
    const double det = static_cast<double>(n) * xx_sum - xm_sum * xm_sum;
    const double inv00 = xx_sum / det;
    const double inv01 = -xm_sum / det;
    const double inv11 = static_cast<double>(n) / det;

    double s00 = 0.0, s01 = 0.0, s11 = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double u = core.residuals[t];
        s00 += u * u;
        s01 += u * u * x[t];
        s11 += u * u * x[t] * x[t];
    }
    for (int l = 1; l <= lags; ++l) {
        if (static_cast<std::size_t>(l) >= n) break;
        const double w = 1.0 - static_cast<double>(l) / static_cast<double>(lags + 1);
        for (std::size_t t = static_cast<std::size_t>(l); t < n; ++t) {
            const double cross = core.residuals[t] * core.residuals[t - l];
            s00 += w * 2.0 * cross;
            s01 += w * cross * (x[t] + x[t - l]);
            s11 += w * 2.0 * cross * x[t] * x[t - l];
        }
    }

    // var(b) = A S A with A = (X'X)^-1; expand the 2x2 products directly.
    const double v00 = inv00 * (s00 * inv00 + s01 * inv01) + inv01 * (s01 * inv00 + s11 * inv01);
    const double v11 = inv01 * (s00 * inv01 + s01 * inv11) + inv11 * (s01 * inv01 + s11 * inv11);

    RegressionFit fit;
    fit.intercept = core.intercept;
    fit.beta = core.beta;
    fit.se_intercept = std::sqrt(std::max(0.0, v00));
    fit.se_beta = std::sqrt(std::max(0.0, v11));
    fit.n = n;
    fit.r2 = r_squared(core);
    return fit;
}

double annualize_mean(std::span<const double> series, double periods_per_year) {
    if (series.empty()) throw DomainError("cannot annualize an empty series");
    return mean(series) * periods_per_year;
}

double sharpe(std::span<const double> series, double periods_per_year) {
    if (series.size() < 2) throw DomainError("Sharpe ratio needs at least 2 observations");
    const double sd = sample_std(series);
    if (sd == 0.0) throw DomainError("Sharpe ratio undefined for zero-variance series");
    return mean(series) / sd * std::sqrt(periods_per_year);
}

double correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DomainError("correlation series lengths differ");
    if (a.size() < 2) throw DomainError("correlation needs at least 2 observations");
    const double ma = mean(a);
    const double mb = mean(b);
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) throw DomainError("correlation undefined for constant series");
    return sab / std::sqrt(saa * sbb);
}

}  // namespace ranklab::econ
