#include <doctest.h>

#include <cmath>
#include <random>

#include "core/csv.hpp"
#include "core/errors.hpp"
#include "core/panel.hpp"
#include "core/ranksde.hpp"

using namespace ranklab;

namespace {

const char* kWideCsv =
    "date,gold,wheat\n"
    "2010-01-05,10,50\n"
    "2010-01-06,12,45\n";

PricePanel clean_default(const RawPanel& raw) {
    return clean(raw, CleaningPolicy{});
}

// Random complete panel with occasionally awkward doubles.
PricePanel random_panel(std::mt19937_64& rng, std::size_t max_n = 6, std::size_t max_t = 12) {
    std::uniform_int_distribution<std::size_t> n_dist(2, max_n);
    std::uniform_int_distribution<std::size_t> t_dist(2, max_t);
    std::uniform_real_distribution<double> price(0.01, 1000.0);
    std::uniform_int_distribution<int> gap(1, 9);

    PricePanel p;
    const std::size_t n = n_dist(rng);
    const std::size_t t_count = t_dist(rng);
    Date d{2015, 1, 1};
    for (std::size_t t = 0; t < t_count; ++t) {
        p.dates.push_back(d);
        d = add_days(d, gap(rng));
    }
    for (std::size_t i = 0; i < n; ++i) p.commodities.push_back("c" + std::to_string(i + 1));
    p.prices = Matrix(t_count, n);
    for (std::size_t t = 0; t < t_count; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            // Mix of round values and full-precision noise.
            p.prices(t, i) = (t + i) % 3 == 0 ? std::round(price(rng)) + 1.0
                                              : price(rng) * (1.0 + 1e-13 * price(rng));
        }
    }
    return p;
}

}  // namespace

TEST_CASE("wide CSV parses to the transcribed matrix") {
    RawPanel raw = parse_csv(kWideCsv, Layout::wide);
    PricePanel p = clean_default(raw);
    REQUIRE(p.num_dates() == 2);
    REQUIRE(p.num_commodities() == 2);
    CHECK(p.commodities[0] == "gold");
    CHECK(p.commodities[1] == "wheat");
    CHECK(p.prices(0, 0) == 10.0);
    CHECK(p.prices(0, 1) == 50.0);
    CHECK(p.prices(1, 0) == 12.0);
    CHECK(p.prices(1, 1) == 45.0);
    CHECK(p.dates[0] == Date{2010, 1, 5});
}

TEST_CASE("long CSV rows in shuffled order give the same panel") {
    const char* ordered =
        "date,commodity,price\n"
        "2010-01-05,gold,10\n"
        "2010-01-05,wheat,50\n"
        "2010-01-06,gold,12\n"
        "2010-01-06,wheat,45\n";
    const char* shuffled =
        "date,commodity,price\n"
        "2010-01-06,wheat,45\n"
        "2010-01-05,gold,10\n"
        "2010-01-06,gold,12\n"
        "2010-01-05,wheat,50\n";
    PricePanel a = clean_default(parse_csv(ordered, Layout::long_form));
    PricePanel b = clean_default(parse_csv(shuffled, Layout::long_form));
    CHECK(a == b);
    // Matches the wide parse of the same data as well.
    PricePanel c = clean_default(parse_csv(kWideCsv, Layout::wide));
    CHECK(a.prices == c.prices);
}

TEST_CASE("duplicate (date, commodity) row is a duplicate error") {
    const char* text =
        "date,commodity,price\n"
        "2010-01-05,gold,10\n"
        "2010-01-05,gold,11\n";
    CHECK_THROWS_AS(parse_csv(text, Layout::long_form), DuplicateError);
}

TEST_CASE("parse errors carry the offending line") {
    const char* bad_number =
        "date,gold,wheat\n"
        "2010-01-05,10,50\n"
        "2010-01-06,oops,45\n";
    try {
        parse_csv(bad_number, Layout::wide);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }

    const char* bad_date =
        "date,gold,wheat\n"
        "2010-13-05,10,50\n";
    try {
        parse_csv(bad_date, Layout::wide);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("nonpositive price is a domain error with row provenance") {
    const char* text =
        "date,gold,wheat\n"
        "2010-01-05,10,50\n"
        "2010-01-06,-1,45\n";
    try {
        parse_csv(text, Layout::wide);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_csv("date,gold,wheat\n2010-01-05,0,50\n", Layout::wide), DomainError);
}

TEST_CASE("clean leaves a complete panel unchanged under any policy") {
    RawPanel raw = parse_csv(kWideCsv, Layout::wide);
    for (auto mode : {CleaningPolicy::Mode::drop_incomplete_dates,
                      CleaningPolicy::Mode::drop_incomplete_commodities,
                      CleaningPolicy::Mode::forward_fill}) {
        PricePanel p = clean(raw, CleaningPolicy{mode, 1});
        CHECK(p.prices == raw.prices);
        CHECK(p.dates == raw.dates);
    }
}

TEST_CASE("cleaning policies on a single missing cell") {
    const char* text =
        "date,gold,wheat\n"
        "2010-01-05,10,50\n"
        "2010-01-06,,45\n"
        "2010-01-07,12,47\n";
    RawPanel raw = parse_csv(text, Layout::wide);

    SUBCASE("drop_incomplete_dates removes the gappy date") {
        PricePanel p = clean(raw, CleaningPolicy{CleaningPolicy::Mode::drop_incomplete_dates, 0});
        REQUIRE(p.num_dates() == 2);
        CHECK(p.dates[0] == Date{2010, 1, 5});
        CHECK(p.dates[1] == Date{2010, 1, 7});
    }
    SUBCASE("forward_fill(1) bridges the gap with the prior price") {
        PricePanel p = clean(raw, CleaningPolicy{CleaningPolicy::Mode::forward_fill, 1});
        REQUIRE(p.num_dates() == 3);
        CHECK(p.prices(1, 0) == 10.0);
        CHECK(p.prices(1, 1) == 45.0);
    }
    SUBCASE("forward_fill(0) cannot bridge, so the date drops") {
        PricePanel p = clean(raw, CleaningPolicy{CleaningPolicy::Mode::forward_fill, 0});
        CHECK(p.num_dates() == 2);
    }
}

TEST_CASE("leading gaps cannot be forward-filled") {
    const char* text =
        "date,gold,wheat\n"
        "2010-01-05,,50\n"
        "2010-01-06,11,45\n"
        "2010-01-07,12,47\n";
    PricePanel p = clean(parse_csv(text, Layout::wide),
                         CleaningPolicy{CleaningPolicy::Mode::forward_fill, 3});
    CHECK(p.num_dates() == 2);
    CHECK(p.dates[0] == Date{2010, 1, 6});
}

TEST_CASE("cleaning that leaves too little data errors") {
    const char* text =
        "date,gold,wheat\n"
        "2010-01-05,10,\n"
        "2010-01-06,12,\n";
    RawPanel raw = parse_csv(text, Layout::wide);
    CHECK_THROWS_AS(clean(raw, CleaningPolicy{CleaningPolicy::Mode::drop_incomplete_dates, 0}),
                    InsufficientDataError);
    CHECK_THROWS_AS(clean(raw, CleaningPolicy{CleaningPolicy::Mode::drop_incomplete_commodities, 0}),
                    InsufficientDataError);
}

TEST_CASE("clean is idempotent on randomized gappy panels") {
    std::mt19937_64 rng(271828);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        PricePanel base = random_panel(rng, 5, 10);
        RawPanel raw;
        raw.dates = base.dates;
        raw.commodities = base.commodities;
        raw.prices = base.prices;
        for (std::size_t t = 0; t < raw.prices.rows(); ++t) {
            for (std::size_t c = 0; c < raw.prices.cols(); ++c) {
                if (unit(rng) < 0.12) raw.prices(t, c) = std::nan("");
            }
        }
        CleaningPolicy policy;
        const double pick = unit(rng);
        policy.mode = pick < 0.4   ? CleaningPolicy::Mode::drop_incomplete_dates
                      : pick < 0.7 ? CleaningPolicy::Mode::drop_incomplete_commodities
                                   : CleaningPolicy::Mode::forward_fill;
        policy.max_gap = 2;

        PricePanel once;
        try {
            once = clean(raw, policy);
        } catch (const InsufficientDataError&) {
            continue;  // holes ate the panel; nothing to check
        }
        RawPanel again;
        again.dates = once.dates;
        again.commodities = once.commodities;
        again.prices = once.prices;
        again.frequency = once.frequency;
        CHECK(clean(again, policy) == once);
    }
}

TEST_CASE("emit and re-parse round-trips panels exactly") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 200; ++trial) {
        PricePanel p = random_panel(rng);
        RawPanel raw = parse_csv(emit_csv(p), Layout::wide, p.frequency);
        PricePanel back = clean_default(raw);
        CHECK(back == p);
    }
}

TEST_CASE("synthesize with zero drift and volatility is constant at the initial prices") {
    RankModelSpec spec;
    spec.n = 3;
    spec.g = {0.0, 0.0, 0.0};
    spec.s = {0.0, 0.0, 0.0};
    spec.dt = 0.01;
    spec.horizon = 1.0;
    spec.obs_interval = 0.1;
    spec.init_log_prices = {0.0, std::log(2.0), std::log(5.0)};

    PricePanel p = synthesize(spec, 7);
    REQUIRE(p.num_dates() == 11);
    for (std::size_t t = 0; t < p.num_dates(); ++t) {
        CHECK(p.prices(t, 0) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(p.prices(t, 1) == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(p.prices(t, 2) == doctest::Approx(5.0).epsilon(1e-15));
    }
}

TEST_CASE("synthesize is deterministic in (spec, seed)") {
    RankModelSpec spec;
    spec.n = 4;
    spec.g = {-0.2, -0.05, 0.05, 0.2};
    spec.s = {0.3, 0.25, 0.25, 0.3};
    spec.horizon = 2.0;

    PricePanel a = synthesize(spec, 99);
    PricePanel b = synthesize(spec, 99);
    CHECK(a == b);
    PricePanel c = synthesize(spec, 100);
    CHECK(a.prices.data() != c.prices.data());
}

TEST_CASE("synthesized daily log increments match the specified volatility within 5%") {
    // Uniform s, so every name's per-step volatility is s regardless of rank.
    RankModelSpec spec;
    spec.n = 5;
    spec.g = {-0.3, -0.1, 0.0, 0.1, 0.3};
    spec.s = std::vector<double>(5, 0.25);
    spec.horizon = 10.0;

    PricePanel p = synthesize(spec, 4242);
    REQUIRE(p.num_dates() == 2521);
    const double expected_daily = 0.25 / std::sqrt(252.0);
    for (std::size_t i = 0; i < p.num_commodities(); ++i) {
        double ss = 0.0;
        std::size_t count = 0;
        for (std::size_t t = 1; t < p.num_dates(); ++t) {
            const double d = std::log(p.prices(t, i) / p.prices(t - 1, i));
            ss += d * d;
            ++count;
        }
        const double sample_vol = std::sqrt(ss / static_cast<double>(count));
        CHECK(std::abs(sample_vol - expected_daily) / expected_daily < 0.05);
    }
}

TEST_CASE("synthesize always satisfies the panel invariants") {
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<int> n_dist(2, 6);
    std::uniform_real_distribution<double> g_dist(-0.5, 0.5);
    std::uniform_real_distribution<double> s_dist(0.0, 0.6);
    for (int trial = 0; trial < 50; ++trial) {
        RankModelSpec spec;
        spec.n = n_dist(rng);
        for (int k = 0; k < spec.n; ++k) {
            spec.g.push_back(g_dist(rng));
            spec.s.push_back(s_dist(rng));
        }
        spec.dt = 1.0 / 252.0;
        spec.obs_interval = 2.0 / 252.0;
        spec.horizon = 1.0;

        PricePanel p = synthesize(spec, rng());
        REQUIRE(p.num_dates() >= 2);
        REQUIRE(p.num_commodities() == static_cast<std::size_t>(spec.n));
        for (std::size_t t = 0; t < p.num_dates(); ++t) {
            if (t > 0) CHECK(p.dates[t - 1] < p.dates[t]);
            for (std::size_t i = 0; i < p.num_commodities(); ++i) {
                CHECK(p.prices(t, i) > 0.0);
                CHECK(std::isfinite(p.prices(t, i)));
            }
        }
    }
}

TEST_CASE("format_double output re-parses to the same bits") {
    std::mt19937_64 rng(8675309);
    std::uniform_real_distribution<double> mant(0.0, 1.0);
    std::uniform_int_distribution<int> exp_dist(-12, 12);
    for (int trial = 0; trial < 2000; ++trial) {
        const double v = mant(rng) * std::pow(10.0, exp_dist(rng)) + 1e-300;
        const std::string text = csv::format_double(v);
        CHECK(csv::parse_number(text, 1) == v);
    }
}
