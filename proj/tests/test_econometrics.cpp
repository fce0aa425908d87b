#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "core/econometrics.hpp"
#include "core/errors.hpp"

using namespace ranklab;

namespace {

// Independent oracle: raw normal equations for y = a + b x with an explicit
// 2x2 inverse, standard errors from sigma^2 * (X'X)^-1. No shared code with
// the implementation, which works on centered sums.
struct OracleFit {
    double intercept, beta, se_intercept, se_beta;
};

OracleFit normal_equations_oracle(const std::vector<double>& y, const std::vector<double>& x) {
    const std::size_t n = y.size();
    double sx = 0.0, sxx = 0.0, sy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sxx += x[i] * x[i];
        sy += y[i];
        sxy += x[i] * y[i];
    }
    const double nn = static_cast<double>(n);
    const double det = nn * sxx - sx * sx;
    const double inv00 = sxx / det;
    const double inv01 = -sx / det;
    const double inv11 = nn / det;
    OracleFit fit;
    fit.intercept = inv00 * sy + inv01 * sxy;
    fit.beta = inv01 * sy + inv11 * sxy;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - fit.intercept - fit.beta * x[i];
        rss += r * r;
    }
    const double sigma2 = rss / (nn - 2.0);
    fit.se_intercept = std::sqrt(sigma2 * inv00);
    fit.se_beta = std::sqrt(sigma2 * inv11);
    return fit;
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("exact linear fit recovers coefficients with zero standard errors") {
    std::vector<double> x, y;
    for (int i = 1; i <= 10; ++i) {
        x.push_back(static_cast<double>(i));
        y.push_back(2.0 + 3.0 * static_cast<double>(i));
    }
    econ::RegressionFit fit = econ::ols_market_regression(y, x);
    CHECK(fit.intercept == 2.0);
    CHECK(fit.beta == 3.0);
    CHECK(fit.se_intercept == 0.0);
    CHECK(fit.se_beta == 0.0);
    CHECK(fit.r2 == 1.0);
    CHECK(fit.n == 10);
}

TEST_CASE("zero-variance regressor is a singularity error") {
    std::vector<double> x(5, 2.0);
    std::vector<double> y{1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK_THROWS_AS(econ::ols_market_regression(y, x), DomainError);
}

TEST_CASE("regression needs at least 3 observations") {
    std::vector<double> x{1.0, 2.0};
    std::vector<double> y{1.0, 2.0};
    CHECK_THROWS_AS(econ::ols_market_regression(y, x), DomainError);
}

TEST_CASE("random regressions match the normal-equations oracle to 1e-10") {
    std::mt19937_64 rng(20100105);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_real_distribution<double> coef(-5.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 200;
        const double a = coef(rng);
        const double b = coef(rng);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = noise(rng) * 10.0;
            y[i] = a + b * x[i] + noise(rng);
        }
        econ::RegressionFit fit = econ::ols_market_regression(y, x);
        OracleFit oracle = normal_equations_oracle(y, x);
        CHECK(close_rel(fit.intercept, oracle.intercept, 1e-10));
        CHECK(close_rel(fit.beta, oracle.beta, 1e-10));
        CHECK(close_rel(fit.se_intercept, oracle.se_intercept, 1e-10));
        CHECK(close_rel(fit.se_beta, oracle.se_beta, 1e-10));
    }
}

TEST_CASE("residuals are orthogonal to the regressor and sum to zero") {
    std::mt19937_64 rng(55);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 120;
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = noise(rng);
            y[i] = 0.3 - 1.7 * x[i] + noise(rng) * 2.0;
        }
        econ::RegressionFit fit = econ::ols_market_regression(y, x);
        double r_sum = 0.0, rx_sum = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - fit.intercept - fit.beta * x[i];
            r_sum += r;
            rx_sum += r * x[i];
            scale += std::abs(y[i]);
        }
        CHECK(std::abs(r_sum) <= 1e-9 * scale);
        CHECK(std::abs(rx_sum) <= 1e-9 * scale * 10.0);
    }
}

TEST_CASE("adding a constant to y shifts the intercept and leaves beta alone") {
    std::mt19937_64 rng(66);
    std::normal_distribution<double> noise(0.0, 1.0);
    const std::size_t n = 80;
    std::vector<double> x(n), y(n), y_shift(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = noise(rng);
        y[i] = 1.0 + 0.5 * x[i] + noise(rng);
        y_shift[i] = y[i] + 4.25;
    }
    econ::RegressionFit base = econ::ols_market_regression(y, x);
    econ::RegressionFit shifted = econ::ols_market_regression(y_shift, x);
    CHECK(shifted.beta == doctest::Approx(base.beta).epsilon(1e-12));
    CHECK(shifted.intercept == doctest::Approx(base.intercept + 4.25).epsilon(1e-12));
    CHECK(shifted.se_beta == doctest::Approx(base.se_beta).epsilon(1e-10));
}

TEST_CASE("Newey-West with zero autocorrelation stays close to classical OLS") {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> noise(0.0, 1.0);
    const std::size_t n = 4000;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = noise(rng);
        y[i] = 0.2 + 0.8 * x[i] + noise(rng);
    }
    econ::RegressionFit classical = econ::ols_market_regression(y, x);
    econ::RegressionFit nw = econ::ols_market_regression_nw(y, x, 5);
    CHECK(nw.intercept == classical.intercept);
    CHECK(nw.beta == classical.beta);
    // i.i.d. errors: HAC and classical SEs agree up to sampling noise.
    CHECK(std::abs(nw.se_beta - classical.se_beta) / classical.se_beta < 0.15);
    CHECK(std::abs(nw.se_intercept - classical.se_intercept) / classical.se_intercept < 0.15);
}

TEST_CASE("annualize_mean multiplies the mean by periods per year") {
    std::vector<double> daily(40, 0.001);
    CHECK(econ::annualize_mean(daily, 252) == doctest::Approx(0.252).epsilon(1e-12));
    std::vector<double> zero(10, 0.0);
    CHECK(econ::annualize_mean(zero, 252) == 0.0);
    std::vector<double> alternating{0.01, -0.01, 0.01, -0.01};
    CHECK(econ::annualize_mean(alternating, 252) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(econ::annualize_mean(std::vector<double>{}, 252), DomainError);
}

TEST_CASE("sharpe matches direct substitution") {
    // Two-point series with mean 0.0004 and sample std 0.01.
    const double d = 0.01 / std::sqrt(2.0);
    std::vector<double> series{0.0004 - d, 0.0004 + d};
    CHECK(econ::sharpe(series, 252) ==
          doctest::Approx(0.0004 / 0.01 * std::sqrt(252.0)).epsilon(1e-12));

    std::vector<double> constant(5, 0.42);
    CHECK_THROWS_AS(econ::sharpe(constant, 252), DomainError);

    std::vector<double> negated{-(0.0004 - d), -(0.0004 + d)};
    CHECK(econ::sharpe(negated, 252) == doctest::Approx(-econ::sharpe(series, 252)).epsilon(1e-12));
}

TEST_CASE("correlation endpoints and independence bound") {
    std::vector<double> a{1.0, 2.0, 3.0, 5.0, 8.0};
    CHECK(econ::correlation(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> neg(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
    CHECK(econ::correlation(a, neg) == doctest::Approx(-1.0).epsilon(1e-12));

    std::vector<double> constant(5, 1.0);
    CHECK_THROWS_AS(econ::correlation(a, constant), DomainError);

    std::mt19937_64 rng(11);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> u(10000), v(10000);
    for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = noise(rng);
        v[i] = noise(rng);
    }
    CHECK(std::abs(econ::correlation(u, v)) < 0.05);
}

TEST_CASE("correlation is invariant under positive affine transforms") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> a(500), b(500), a2(500), b2(500);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = noise(rng);
        b[i] = 0.4 * a[i] + noise(rng);
        a2[i] = 3.0 * a[i] + 7.0;
        b2[i] = 0.5 * b[i] - 2.0;
    }
    CHECK(econ::correlation(a2, b2) == doctest::Approx(econ::correlation(a, b)).epsilon(1e-12));
}
