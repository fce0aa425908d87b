#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/matrix.hpp"

namespace ranklab {

// First-order (rank-based) model: each particle's log price gets the drift
// and volatility of its current rank, with independent drivers. One time
// unit is one year; the conventional step is 1/2520 (ten steps per trading
// day at 252 days/year).
struct RankModelSpec {
    int n = 0;
    std::vector<double> g;    // per-rank drift, rank 1 = most expensive
    std::vector<double> s;    // per-rank volatility, >= 0
    double dt = 1.0 / 2520.0;
    double horizon = 0.0;
    double obs_interval = 1.0 / 252.0;  // must be an integer multiple of dt
    std::vector<double> init_log_prices;  // empty = all zeros

    void validate() const;  // throws DomainError
    // Euler steps between consecutive samples (validated integer ratio).
    std::size_t steps_per_observation() const;
    std::size_t num_observations() const;  // excludes the initial sample
};

struct SimulatedPaths {
    double sample_dt = 0.0;  // time between rows = spec.obs_interval
    Matrix log_prices;       // (num_observations + 1) x n, row 0 = initial state
};

// Euler-Maruyama on log prices with per-step re-ranking (ties by index).
// Deterministic in (spec, seed). Throws NumericError naming the step if a
// value goes non-finite.
SimulatedPaths simulate(const RankModelSpec& spec, std::uint64_t seed);

// Rank-level statistics from sampled log prices (rows = samples, columns =
// names). `dt` is the time between rows in years, so outputs are per year.
// Occupancy is frozen at the start of each interval.

// Excess growth rate of the rank-k occupant over the cross-sectional mean.
// Sums to zero by construction (up to rounding).
std::vector<double> estimate_alpha(const Matrix& log_prices, double dt);

// Same estimator with the growth rate of the total price sum(p_i) as the
// baseline instead of the cross-sectional mean of log increments; provided
// for comparison, does not sum to zero.
std::vector<double> estimate_alpha_total_baseline(const Matrix& log_prices, double dt);

// Volatility of the adjacent-rank log gap, entries k = 1..N-1 (returned as
// sigma, not sigma^2).
std::vector<double> estimate_sigma(const Matrix& log_prices, double dt);

// Local-time rates recovered from the telescoping rank-vs-name
// decomposition: A_k = sum_t [d log theta_(k) - d log theta_{occupant}],
// Lambda_k = 2 * sum_{j<=k} A_j, kappa_k = Lambda_k / T. Entries k = 1..N-1,
// nonnegative by construction.
std::vector<double> estimate_kappa(const Matrix& log_prices, double dt);

struct StationarityVerdict {
    std::vector<double> partial_sums;  // alpha_1+..+alpha_k, k = 1..N-1
    std::vector<bool> per_rank;        // partial sum strictly negative
    bool overall = false;
};

StationarityVerdict check_stationarity(std::span<const double> alpha);

// Expected stationary log gaps: gap_k = sigma_k^2 / (-4 (alpha_1+..+alpha_k)).
// Throws DomainError naming the first rank whose partial sum is not negative.
std::vector<double> theoretical_gaps(std::span<const double> alpha,
                                     std::span<const double> sigma);

// Time-averaged adjacent log gaps over the post-burn-in samples.
// burn_in is the fraction of samples discarded; needs >= 100 retained.
std::vector<double> empirical_gaps(const Matrix& log_prices, double burn_in);

// Parameters the first-order model implies for the rank statistics.
std::vector<double> implied_alpha(const RankModelSpec& spec);   // g_k - mean(g)
std::vector<double> implied_sigma(const RankModelSpec& spec);   // sqrt(s_k^2 + s_{k+1}^2)

struct GapReport {
    std::vector<double> alpha;        // implied
    std::vector<double> sigma;        // implied
    std::vector<double> theoretical;  // per gap k = 1..N-1
    std::vector<double> empirical;
    std::vector<double> rel_deviation;
};

// simulate -> empirical_gaps vs theoretical_gaps under the implied
// parameters. Errors before simulating if the spec is not stationary.
GapReport verify_theorem(const RankModelSpec& spec, std::uint64_t seed, double burn_in);

struct RankStats {
    std::vector<double> alpha;
    std::vector<double> sigma;
    std::vector<double> kappa;
    std::vector<double> partial_alpha_sums;
    std::vector<bool> stationary_per_rank;
    bool stationary = false;
};

RankStats estimate_stats(const Matrix& log_prices, double dt);

// Independent stream for replication r of a base seed (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t replication);

}  // namespace ranklab
