#pragma once

#include <cstddef>
#include <vector>

#include <fogflow/optimizers.hpp>

namespace fogflow {

inline constexpr std::size_t kDefaultOracleCap = 1'000'000;

// Exhaustive enumeration of all m^n mappings of a small instance. Metrics are
// computed once; any set of normalization bounds can then be applied.
class ExhaustiveOracle {
public:
    // Throws ConfigError if m^n exceeds `cap`.
    explicit ExhaustiveOracle(Problem const & problem, std::size_t cap = kDefaultOracleCap);

    std::size_t count() const noexcept { return metrics_.size(); }
    Metrics const & metrics(std::size_t index) const { return metrics_.at(index); }
    // Index k in lexicographic order of genomes (task 0 most significant).
    Mapping genome(std::size_t index) const;

    // Bounds calibrated over every mapping.
    NormalizationBounds full_bounds() const;

    // Argmin of the weighted fitness under `bounds`; ties go to the
    // lexicographically smallest genome.
    Individual best(NormalizationBounds const & bounds) const;
    Individual best() const { return best(full_bounds()); }

private:
    std::size_t tasks_;
    std::size_t resources_;
    Weights weights_;
    std::vector<Metrics> metrics_;
};

Individual brute_force(Problem const & problem, std::size_t cap = kDefaultOracleCap);

} // namespace fogflow
