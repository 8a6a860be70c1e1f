#include <fogflow/objective.hpp>

#include <algorithm>
#include <cmath>

#include <fogflow/error.hpp>

namespace fogflow {

void check_weights(Weights const & w) {
    for (double x : {w.makespan, w.cost, w.energy}) {
        if (!std::isfinite(x) || x < 0.0) {
            throw ConfigError("weights must be finite and non-negative");
        }
    }
    if (w.makespan == 0.0 && w.cost == 0.0 && w.energy == 0.0) {
        throw ConfigError("at least one weight must be positive");
    }
}

NormalizationBounds calibrate_bounds(std::span<Metrics const> initial) {
    if (initial.empty()) {
        throw ConfigError("cannot calibrate normalization bounds from an empty population");
    }
    NormalizationBounds b{initial[0].makespan, initial[0].makespan, initial[0].total_cost,
                          initial[0].total_cost, initial[0].total_energy, initial[0].total_energy};
    for (auto const & m : initial.subspan(1)) {
        b.ms_min = std::min(b.ms_min, m.makespan);
        b.ms_max = std::max(b.ms_max, m.makespan);
        b.tc_min = std::min(b.tc_min, m.total_cost);
        b.tc_max = std::max(b.tc_max, m.total_cost);
        b.te_min = std::min(b.te_min, m.total_energy);
        b.te_max = std::max(b.te_max, m.total_energy);
    }
    return b;
}

namespace {

double scale(double x, double lo, double hi) {
    return hi > lo ? (x - lo) / (hi - lo) : 0.0;
}

} // namespace

NormalizedMetrics normalize(Metrics const & metrics, NormalizationBounds const & bounds) {
    return NormalizedMetrics{scale(metrics.makespan, bounds.ms_min, bounds.ms_max),
                             scale(metrics.total_cost, bounds.tc_min, bounds.tc_max),
                             scale(metrics.total_energy, bounds.te_min, bounds.te_max)};
}

double weighted_fitness(NormalizedMetrics const & norm, Weights const & w) {
    return w.makespan * norm.makespan + w.cost * norm.cost + w.energy * norm.energy;
}

Objective::Objective(Weights weights, NormalizationBounds bounds) : weights_(weights), bounds_(bounds) {
    check_weights(weights_);
    if (bounds_.ms_min > bounds_.ms_max || bounds_.tc_min > bounds_.tc_max || bounds_.te_min > bounds_.te_max) {
        throw ConfigError("normalization bounds need min <= max per metric");
    }
}

} // namespace fogflow
