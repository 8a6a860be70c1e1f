#pragma once

#include <span>

#include <fogflow/schedule.hpp>

namespace fogflow {

struct Weights {
    double makespan = 0.3;
    double cost = 0.3;
    double energy = 0.3;
};

// Throws ConfigError if a weight is negative or non-finite, or all are zero.
void check_weights(Weights const & w);

struct NormalizationBounds {
    double ms_min = 0.0, ms_max = 0.0;
    double tc_min = 0.0, tc_max = 0.0;
    double te_min = 0.0, te_max = 0.0;

    friend bool operator==(NormalizationBounds const &, NormalizationBounds const &) = default;
};

struct NormalizedMetrics {
    double makespan = 0.0;
    double cost = 0.0;
    double energy = 0.0;
};

// Componentwise min and max. Throws ConfigError on an empty list.
NormalizationBounds calibrate_bounds(std::span<Metrics const> initial);

// (x - min) / (max - min) per component, 0 when max == min. Not clamped:
// metrics outside the calibration range map outside [0, 1].
NormalizedMetrics normalize(Metrics const & metrics, NormalizationBounds const & bounds);

// Lower is better.
double weighted_fitness(NormalizedMetrics const & norm, Weights const & w);

// Weights plus frozen bounds: the scalar objective an optimizer minimizes.
class Objective {
public:
    Objective(Weights weights, NormalizationBounds bounds);

    double operator()(Metrics const & metrics) const {
        return weighted_fitness(normalize(metrics, bounds_), weights_);
    }

    Weights const & weights() const noexcept { return weights_; }
    NormalizationBounds const & bounds() const noexcept { return bounds_; }

private:
    Weights weights_;
    NormalizationBounds bounds_;
};

} // namespace fogflow
