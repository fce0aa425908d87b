#include <doctest.h>

#include <cmath>
#include <random>

#include "core/errors.hpp"
#include "core/rank.hpp"
#include "core/ranksde.hpp"

using namespace ranklab;

namespace {

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t t = 0; t < rows.size(); ++t) {
        for (std::size_t i = 0; i < rows[0].size(); ++i) m(t, i) = rows[t][i];
    }
    return m;
}

Matrix random_log_prices(std::mt19937_64& rng, std::size_t t_count, std::size_t n) {
    std::normal_distribution<double> step(0.0, 0.05);
    Matrix m(t_count, n);
    for (std::size_t i = 0; i < n; ++i) m(0, i) = step(rng) * 10.0;
    for (std::size_t t = 1; t < t_count; ++t) {
        for (std::size_t i = 0; i < n; ++i) m(t, i) = m(t - 1, i) + step(rng);
    }
    return m;
}

}  // namespace

TEST_CASE("model spec validation") {
    RankModelSpec spec;
    spec.n = 2;
    spec.g = {0.1, -0.1};
    spec.s = {0.2, 0.2};
    spec.horizon = 1.0;
    CHECK_NOTHROW(spec.validate());

    SUBCASE("negative volatility") {
        spec.s[0] = -0.1;
        CHECK_THROWS_AS(spec.validate(), DomainError);
    }
    SUBCASE("bad dt") {
        spec.dt = 0.0;
        CHECK_THROWS_AS(spec.validate(), DomainError);
    }
    SUBCASE("obs interval below dt") {
        spec.obs_interval = spec.dt / 2.0;
        CHECK_THROWS_AS(spec.validate(), DomainError);
    }
    SUBCASE("horizon shorter than one observation") {
        spec.horizon = spec.obs_interval / 2.0;
        CHECK_THROWS_AS(spec.validate(), DomainError);
    }
    SUBCASE("obs interval not a multiple of dt") {
        spec.obs_interval = spec.dt * 2.5;
        CHECK_THROWS_AS(spec.validate(), DomainError);
    }
    SUBCASE("wrong vector lengths") {
        spec.g.push_back(0.0);
        CHECK_THROWS_AS(spec.validate(), DomainError);
    }
}

TEST_CASE("zero drift and volatility keeps paths constant at the initial state") {
    RankModelSpec spec;
    spec.n = 3;
    spec.g = {0.0, 0.0, 0.0};
    spec.s = {0.0, 0.0, 0.0};
    spec.dt = 0.1;
    spec.obs_interval = 0.2;
    spec.horizon = 2.0;
    spec.init_log_prices = {1.0, -1.0, 0.5};

    SimulatedPaths paths = simulate(spec, 3);
    REQUIRE(paths.log_prices.rows() == 11);
    for (std::size_t t = 0; t < paths.log_prices.rows(); ++t) {
        CHECK(paths.log_prices(t, 0) == 1.0);
        CHECK(paths.log_prices(t, 1) == -1.0);
        CHECK(paths.log_prices(t, 2) == 0.5);
    }
}

TEST_CASE("same spec and seed give identical paths") {
    RankModelSpec spec;
    spec.n = 4;
    spec.g = {-0.2, 0.0, 0.0, 0.2};
    spec.s = {0.3, 0.3, 0.3, 0.3};
    spec.horizon = 1.0;

    SimulatedPaths a = simulate(spec, 12345);
    SimulatedPaths b = simulate(spec, 12345);
    CHECK(a.log_prices == b.log_prices);
    SimulatedPaths c = simulate(spec, 12346);
    CHECK(a.log_prices.data() != c.log_prices.data());
}

TEST_CASE("runaway drift triggers a numerical blowup error naming the step") {
    RankModelSpec spec;
    spec.n = 2;
    spec.g = {1e307, 1e307};
    spec.s = {0.0, 0.0};
    spec.dt = 1.0;
    spec.obs_interval = 1.0;
    spec.horizon = 100.0;
    try {
        simulate(spec, 1);
        FAIL("expected NumericError");
    } catch (const NumericError& e) {
        CHECK(std::string(e.what()).find("step") != std::string::npos);
    }
}

TEST_CASE("alpha estimate is zero when all names move identically") {
    Matrix m = matrix_from_rows({{0.0, 1.0, 2.0},
                                 {0.1, 1.1, 2.1},
                                 {0.3, 1.3, 2.3},
                                 {0.2, 1.2, 2.2}});
    std::vector<double> alpha = estimate_alpha(m, 1.0);
    for (double a : alpha) CHECK(a == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("alpha estimator on a deterministic leader-loses panel") {
    // Leader loses exactly delta in log terms each period, laggard gains it.
    const double delta = 0.05;
    const double dt = 0.25;
    std::vector<std::vector<double>> rows;
    for (int t = 0; t < 9; ++t) {
        const double sign = (t % 2 == 0) ? 1.0 : -1.0;
        rows.push_back({sign * delta / 2.0, -sign * delta / 2.0});
    }
    std::vector<double> alpha = estimate_alpha(matrix_from_rows(rows), dt);
    CHECK(alpha[0] == doctest::Approx(-delta / dt).epsilon(1e-12));
    CHECK(alpha[1] == doctest::Approx(delta / dt).epsilon(1e-12));
}

TEST_CASE("alpha estimates recover the drifts of a simulated model") {
    RankModelSpec spec;
    spec.n = 3;
    spec.g = {-0.2, 0.0, 0.2};
    spec.s = {0.05, 0.05, 0.05};
    spec.dt = 1.0 / 2520.0;
    spec.obs_interval = 1.0 / 252.0;
    spec.horizon = 300.0;

    SimulatedPaths paths = simulate(spec, 2718);
    std::vector<double> alpha = estimate_alpha(paths.log_prices, paths.sample_dt);
    // mean(g) = 0, so implied alpha equals g. Small s makes the Monte Carlo
    // interval tight; 0.02 is ~3 standard errors here.
    CHECK(std::abs(alpha[0] - (-0.2)) < 0.02);
    CHECK(std::abs(alpha[1] - 0.0) < 0.02);
    CHECK(std::abs(alpha[2] - 0.2) < 0.02);
}

TEST_CASE("alpha estimates sum to zero") {
    std::mt19937_64 rng(31415);
    for (int trial = 0; trial < 100; ++trial) {
        Matrix m = random_log_prices(rng, 20, 5);
        std::vector<double> alpha = estimate_alpha(m, 0.01);
        double sum = 0.0, scale = 0.0;
        for (double a : alpha) {
            sum += a;
            scale += std::abs(a);
        }
        CHECK(std::abs(sum) <= 1e-10 * std::max(1.0, scale));
    }
}

TEST_CASE("sigma estimator on a smooth deterministic panel") {
    // Distinct constant drifts, no noise: the quadratic-variation estimator
    // returns (drift gap)^2 * dt, vanishing as dt -> 0.
    auto build = [](double dt) {
        const double drift_top = 0.5, drift_bottom = -0.5;
        std::vector<std::vector<double>> rows;
        for (int t = 0; t < 6; ++t) {
            rows.push_back({1.0 + drift_top * dt * t, -1.0 + drift_bottom * dt * t});
        }
        return matrix_from_rows(rows);
    };
    for (double dt : {0.1, 0.01}) {
        std::vector<double> sigma = estimate_sigma(build(dt), dt);
        const double expected_sq = 1.0 * dt;  // drift gap = 1.0
        CHECK(sigma[0] * sigma[0] == doctest::Approx(expected_sq).epsilon(1e-9));
    }
}

TEST_CASE("sigma^2 of a simulated model approaches s_k^2 + s_{k+1}^2") {
    RankModelSpec spec;
    spec.n = 3;
    spec.g = {-0.3, 0.0, 0.3};
    spec.s = {0.15, 0.25, 0.35};
    spec.dt = 1.0 / 2520.0;
    spec.obs_interval = spec.dt;  // finest sampling: occupants cannot swap mid-interval
    spec.horizon = 50.0;

    SimulatedPaths paths = simulate(spec, 1111);
    std::vector<double> sigma = estimate_sigma(paths.log_prices, paths.sample_dt);
    const double expected0 = 0.15 * 0.15 + 0.25 * 0.25;
    const double expected1 = 0.25 * 0.25 + 0.35 * 0.35;
    CHECK(std::abs(sigma[0] * sigma[0] - expected0) / expected0 < 0.03);
    CHECK(std::abs(sigma[1] * sigma[1] - expected1) / expected1 < 0.03);
}

TEST_CASE("twin names sharing a driver have zero adjacent-gap volatility") {
    std::vector<std::vector<double>> rows;
    double level = 0.0;
    for (int t = 0; t < 8; ++t) {
        rows.push_back({level, level, level + 1.0});
        level += (t % 2 == 0) ? 0.1 : -0.07;
    }
    std::vector<double> sigma = estimate_sigma(matrix_from_rows(rows), 0.5);
    // Ranks: the +1 name leads; the twins occupy ranks 2 and 3 and never separate.
    CHECK(sigma[1] == 0.0);
}

TEST_CASE("kappa is exactly zero when ranks never change") {
    Matrix m = matrix_from_rows({{2.0, 1.0, 0.0},
                                 {2.1, 1.05, 0.1},
                                 {2.05, 1.0, 0.05},
                                 {2.2, 1.1, 0.0}});
    std::vector<double> kappa = estimate_kappa(m, 0.5);
    CHECK(kappa[0] == 0.0);
    CHECK(kappa[1] == 0.0);
}

TEST_CASE("kappa is nonnegative on arbitrary inputs") {
    std::mt19937_64 rng(161803);
    for (int trial = 0; trial < 200; ++trial) {
        Matrix m = random_log_prices(rng, 25, 4);
        std::vector<double> kappa = estimate_kappa(m, 0.1);
        for (double k : kappa) CHECK(k >= -1e-12);
    }
}

TEST_CASE("local-time triangular system round-trips the raw accumulators") {
    std::mt19937_64 rng(999);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix m = random_log_prices(rng, 30, 4);
        const double dt = 0.2;
        const double total_time = dt * static_cast<double>(m.rows() - 1);
        std::vector<double> kappa = estimate_kappa(m, dt);

        // Reference A_k by direct loops.
        const std::size_t n = m.cols();
        std::vector<double> a_ref(n, 0.0);
        for (std::size_t t = 0; t + 1 < m.rows(); ++t) {
            auto now = rank_order(m.row(t));
            auto next = rank_order(m.row(t + 1));
            for (std::size_t k = 0; k < n; ++k) {
                a_ref[k] += m(t + 1, next[k]) - m(t + 1, now[k]);
            }
        }
        // kappa_k = 2 sum_{j<=k} A_j / T; difference the partial sums back out.
        double prev_lambda = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double lambda = kappa[k] * total_time;
            const double a_back = (lambda - prev_lambda) / 2.0;
            CHECK(std::abs(a_back - a_ref[k]) <= 1e-12 * std::max(1.0, std::abs(a_ref[k])));
            prev_lambda = lambda;
        }
    }
}

TEST_CASE("stationarity verdicts follow the partial-sum rule") {
    {
        StationarityVerdict v = check_stationarity(std::vector<double>{-0.2, 0.0, 0.2});
        CHECK(v.partial_sums == std::vector<double>{-0.2, -0.2});
        CHECK(v.overall);
    }
    {
        StationarityVerdict v = check_stationarity(std::vector<double>{0.1, -0.1, 0.0});
        CHECK_FALSE(v.per_rank[0]);
        CHECK_FALSE(v.overall);
    }
    {
        // Boundary: zero partial sums are not strictly negative.
        StationarityVerdict v = check_stationarity(std::vector<double>{0.0, 0.0, 0.0});
        CHECK_FALSE(v.overall);
    }
}

TEST_CASE("theoretical gaps by direct substitution") {
    {
        std::vector<double> gaps =
            theoretical_gaps(std::vector<double>{-0.1, 0.1}, std::vector<double>{0.2});
        REQUIRE(gaps.size() == 1);
        CHECK(gaps[0] == doctest::Approx(0.1).epsilon(1e-12));
    }
    {
        std::vector<double> gaps = theoretical_gaps(std::vector<double>{-0.2, 0.1, 0.1},
                                                    std::vector<double>{0.3, 0.3});
        CHECK(gaps[0] == doctest::Approx(0.1125).epsilon(1e-12));
        CHECK(gaps[1] == doctest::Approx(0.225).epsilon(1e-12));
    }
}

TEST_CASE("doubling every sigma quadruples every gap") {
    std::vector<double> alpha{-0.3, -0.1, 0.1, 0.3};
    std::vector<double> sigma{0.2, 0.3, 0.25};
    std::vector<double> doubled{0.4, 0.6, 0.5};
    std::vector<double> base = theoretical_gaps(alpha, sigma);
    std::vector<double> big = theoretical_gaps(alpha, doubled);
    for (std::size_t k = 0; k < base.size(); ++k) {
        CHECK(big[k] == doctest::Approx(4.0 * base[k]).epsilon(1e-12));
    }
}

TEST_CASE("time rescaling (alpha -> c alpha, sigma^2 -> c sigma^2) leaves gaps unchanged") {
    std::vector<double> alpha{-0.3, -0.1, 0.1, 0.3};
    std::vector<double> sigma{0.2, 0.3, 0.25};
    const double c = 3.7;
    std::vector<double> alpha_scaled(alpha), sigma_scaled(sigma);
    for (double& a : alpha_scaled) a *= c;
    for (double& s : sigma_scaled) s *= std::sqrt(c);
    std::vector<double> base = theoretical_gaps(alpha, sigma);
    std::vector<double> scaled = theoretical_gaps(alpha_scaled, sigma_scaled);
    for (std::size_t k = 0; k < base.size(); ++k) {
        CHECK(scaled[k] == doctest::Approx(base[k]).epsilon(1e-12));
    }
}

TEST_CASE("non-stationary alpha names the first failing rank") {
    try {
        theoretical_gaps(std::vector<double>{-0.1, 0.3, -0.2}, std::vector<double>{0.2, 0.2});
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("alpha_1+..+alpha_2") != std::string::npos);
    }
}

TEST_CASE("empirical gaps of a constant panel are the observed gaps") {
    std::vector<std::vector<double>> rows(120, {3.0, 1.5, 1.0});
    std::vector<double> gaps = empirical_gaps(matrix_from_rows(rows), 0.1);
    CHECK(gaps[0] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(gaps[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("empirical gaps need at least 100 retained samples") {
    std::vector<std::vector<double>> rows(120, {1.0, 0.0});
    CHECK_THROWS_AS(empirical_gaps(matrix_from_rows(rows), 0.5), DomainError);
    CHECK_THROWS_AS(empirical_gaps(matrix_from_rows(rows), 1.0), DomainError);
}

TEST_CASE("empirical gaps ignore commodity labels") {
    std::mt19937_64 rng(13);
    Matrix m = random_log_prices(rng, 150, 4);
    Matrix permuted(m.rows(), m.cols());
    const std::size_t perm[4] = {2, 0, 3, 1};
    for (std::size_t t = 0; t < m.rows(); ++t) {
        for (std::size_t i = 0; i < 4; ++i) permuted(t, i) = m(t, perm[i]);
    }
    CHECK(empirical_gaps(m, 0.2) == empirical_gaps(permuted, 0.2));
}

TEST_CASE("two-particle model matches the closed-form stationary gap") {
    // Gap volatility sigma_1 = 0.2 (per-name s = 0.2/sqrt(2)), alpha = (-0.1, 0.1):
    // expected mean log gap = 0.2^2 / (4 * 0.1) = 0.1.
    RankModelSpec spec;
    spec.n = 2;
    spec.g = {-0.1, 0.1};
    spec.s = {0.2 / std::sqrt(2.0), 0.2 / std::sqrt(2.0)};
    spec.dt = 1.0 / 2520.0;
    spec.obs_interval = 1.0 / 252.0;
    spec.horizon = 2000.0;

    SimulatedPaths paths = simulate(spec, 60902);
    std::vector<double> gaps = empirical_gaps(paths.log_prices, 0.2);
    CHECK(std::abs(gaps[0] - 0.1) / 0.1 < 0.10);
}

TEST_CASE("verify_theorem on the degenerate noiseless model collapses the gaps") {
    RankModelSpec spec;
    spec.n = 2;
    spec.g = {-0.1, 0.1};
    spec.s = {0.0, 0.0};
    spec.dt = 1.0 / 252.0;
    spec.obs_interval = 1.0 / 252.0;
    spec.horizon = 10.0;
    spec.init_log_prices = {0.5, -0.5};

    GapReport report = verify_theorem(spec, 5, 0.5);
    CHECK(report.theoretical[0] == 0.0);
    CHECK(report.empirical[0] < 0.02);  // particles coalesce at the drift fixed point
}

TEST_CASE("verify_theorem rejects non-stationary specs up front") {
    RankModelSpec spec;
    spec.n = 3;
    spec.g = {0.1, 0.2, 0.3};  // increasing in rank: top rank grows fastest
    spec.s = {0.2, 0.2, 0.2};
    spec.horizon = 1.0;
    CHECK_THROWS_AS(verify_theorem(spec, 1, 0.2), DomainError);
}

TEST_CASE("implied parameters of the first-order model") {
    RankModelSpec spec;
    spec.n = 3;
    spec.g = {-0.2, 0.1, 0.4};
    spec.s = {0.3, 0.4, 0.5};
    spec.horizon = 1.0;
    std::vector<double> alpha = implied_alpha(spec);
    CHECK(alpha[0] == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(alpha[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(alpha[2] == doctest::Approx(0.3).epsilon(1e-12));
    std::vector<double> sigma = implied_sigma(spec);
    CHECK(sigma[0] == doctest::Approx(std::sqrt(0.09 + 0.16)).epsilon(1e-12));
    CHECK(sigma[1] == doctest::Approx(std::sqrt(0.16 + 0.25)).epsilon(1e-12));
}

TEST_CASE("estimate_stats bundles the estimators with a verdict") {
    RankModelSpec spec;
    spec.n = 3;
    spec.g = {-0.2, 0.0, 0.2};
    spec.s = {0.2, 0.2, 0.2};
    spec.horizon = 100.0;

    SimulatedPaths paths = simulate(spec, 321);
    RankStats stats = estimate_stats(paths.log_prices, paths.sample_dt);
    REQUIRE(stats.alpha.size() == 3);
    REQUIRE(stats.sigma.size() == 2);
    REQUIRE(stats.kappa.size() == 2);
    REQUIRE(stats.partial_alpha_sums.size() == 2);
    CHECK(stats.stationary);  // strong mean reversion, plenty of data
    for (double k : stats.kappa) CHECK(k >= 0.0);
}

TEST_CASE("derived replication seeds are distinct and deterministic") {
    CHECK(derive_seed(42, 0) == derive_seed(42, 0));
    CHECK(derive_seed(42, 0) != derive_seed(42, 1));
    CHECK(derive_seed(42, 1) != derive_seed(43, 1));
}
