#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/date.hpp"
#include "core/matrix.hpp"

namespace ranklab {

struct RankModelSpec;  // ranksde.hpp

enum class Frequency { daily, monthly };

inline int periods_per_year(Frequency f) { return f == Frequency::daily ? 252 : 12; }

enum class Layout { wide, long_form };

// Panel as parsed: rectangular over dates x commodities, but cells may be
// missing (NaN). clean() turns it into a complete PricePanel.
struct RawPanel {
    std::vector<Date> dates;                // strictly increasing
    std::vector<std::string> commodities;   // distinct, order preserved
    Matrix prices;                          // NaN marks a missing cell
    Frequency frequency = Frequency::daily;
};

// Complete panel of strictly positive prices at one sampling frequency.
struct PricePanel {
    std::vector<Date> dates;
    std::vector<std::string> commodities;
    Matrix prices;
    Frequency frequency = Frequency::daily;

    std::size_t num_dates() const { return dates.size(); }
    std::size_t num_commodities() const { return commodities.size(); }
    // Throws DomainError if the date is not in the panel.
    std::size_t date_index(const Date& d) const;

    bool operator==(const PricePanel&) const = default;
};

struct CleaningPolicy {
    enum class Mode { drop_incomplete_dates, drop_incomplete_commodities, forward_fill };
    Mode mode = Mode::drop_incomplete_dates;
    int max_gap = 0;  // forward_fill only
};

// Parses CSV text into a raw panel.
//   long layout: header `date,commodity,price`, one observation per row
//   wide layout: header `date,<id1>,...,<idN>`, empty cells allowed
// Rows may arrive in any date order; output dates are sorted ascending.
// Errors carry the 1-based line number of the offending row.
RawPanel parse_csv(std::string_view text, Layout layout,
                   Frequency frequency = Frequency::daily);

// Applies the missing-data policy and validates the PricePanel invariants
// (N >= 2, T >= 2, completeness).
PricePanel clean(const RawPanel& raw, const CleaningPolicy& policy);

// Simulates the rank model and exponentiates the sampled log prices into a
// panel. Dates are synthetic, starting 2000-01-03. Deterministic in
// (spec, seed).
PricePanel synthesize(const RankModelSpec& spec, std::uint64_t seed,
                      Frequency frequency = Frequency::daily);

// Wide-layout emission at full stored precision; parse_csv(emit_csv(p)) == p.
std::string emit_csv(const PricePanel& panel);

}  // namespace ranklab
