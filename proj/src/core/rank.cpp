#include "core/rank.hpp"

#include <algorithm>
#include <numeric>

#include "core/errors.hpp"

namespace ranklab {

std::vector<std::size_t> rank_order(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return order;
}

NormalizedPanel normalize(const PricePanel& panel, const Date& base_date) {
    std::size_t base = panel.date_index(base_date);

    NormalizedPanel out;
    out.dates = panel.dates;
    out.commodities = panel.commodities;
    out.base_index = base;
    out.frequency = panel.frequency;
    const std::size_t t_count = panel.num_dates();
    const std::size_t n = panel.num_commodities();
    out.values = Matrix(t_count, n);
    for (std::size_t t = 0; t < t_count; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            out.values(t, i) = panel.prices(t, i) / panel.prices(base, i);
        }
    }
    return out;
}

RelativePriceField relative_prices(const NormalizedPanel& norm) {
    RelativePriceField out;
    out.dates = norm.dates;
    out.commodities = norm.commodities;
    const std::size_t t_count = norm.num_dates();
    const std::size_t n = norm.num_commodities();
    out.theta = Matrix(t_count, n);
    for (std::size_t t = 0; t < t_count; ++t) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += norm.values(t, i);
        const double scale = static_cast<double>(n) / total;
        for (std::size_t i = 0; i < n; ++i) {
            out.theta(t, i) = norm.values(t, i) * scale;
        }
    }
    return out;
}

RankSnapshot rank_snapshot(const RelativePriceField& field, std::size_t t) {
    if (t >= field.num_dates()) throw DomainError("snapshot index out of range");
    RankSnapshot snap;
    snap.date = field.dates[t];
    snap.occupant = rank_order(field.theta.row(t));
    snap.ranked_theta.reserve(snap.occupant.size());
    for (std::size_t i : snap.occupant) snap.ranked_theta.push_back(field.theta(t, i));
    return snap;
}

Matrix rank_occupancy(const RelativePriceField& field) {
    const std::size_t t_count = field.num_dates();
    const std::size_t n = field.num_commodities();
    if (t_count == 0) throw DomainError("occupancy needs at least one period");
    Matrix counts(n, n);
    for (std::size_t t = 0; t < t_count; ++t) {
        auto order = rank_order(field.theta.row(t));
        for (std::size_t k = 0; k < n; ++k) counts(order[k], k) += 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) counts(i, k) /= static_cast<double>(t_count);
    }
    return counts;
}

}  // namespace ranklab
