#pragma once

#include <span>
#include <vector>

#include "core/panel.hpp"

namespace ranklab {

// Prices divided by their value at a common base date; the row at the base
// date is exactly all ones, which is what makes cross-commodity comparison
// meaningful despite arbitrary per-commodity units.
struct NormalizedPanel {
    std::vector<Date> dates;
    std::vector<std::string> commodities;
    Matrix values;
    std::size_t base_index = 0;
    Frequency frequency = Frequency::daily;

    std::size_t num_dates() const { return dates.size(); }
    std::size_t num_commodities() const { return commodities.size(); }
};

// theta[t][i] = N * v[t][i] / sum_j v[t][j]; each row sums to N.
struct RelativePriceField {
    std::vector<Date> dates;
    std::vector<std::string> commodities;
    Matrix theta;

    std::size_t num_dates() const { return dates.size(); }
    std::size_t num_commodities() const { return commodities.size(); }
};

// Ranked view of one date. occupant[k] is the commodity index holding rank
// k (rank 0 = most expensive); ranked_theta[k] = theta[occupant[k]].
struct RankSnapshot {
    Date date;
    std::vector<double> ranked_theta;
    std::vector<std::size_t> occupant;
};

// Descending order of `values`; ties broken by ascending index, so ranking
// is deterministic on real data where exact ties can occur.
std::vector<std::size_t> rank_order(std::span<const double> values);

NormalizedPanel normalize(const PricePanel& panel, const Date& base_date);

RelativePriceField relative_prices(const NormalizedPanel& norm);

RankSnapshot rank_snapshot(const RelativePriceField& field, std::size_t t);

// Fraction of periods commodity i (row) spends at rank k (column);
// doubly stochastic.
Matrix rank_occupancy(const RelativePriceField& field);

}  // namespace ranklab
