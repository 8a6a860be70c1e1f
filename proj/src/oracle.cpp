#include <fogflow/oracle.hpp>

#include <fogflow/error.hpp>

namespace fogflow {

ExhaustiveOracle::ExhaustiveOracle(Problem const & problem, std::size_t cap)
    : tasks_(problem.tasks()), resources_(problem.resources()), weights_(problem.weights()) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < tasks_; ++k) {
        if (total > cap / resources_) {
            throw ConfigError("exhaustive search over " + std::to_string(resources_) + "^" + std::to_string(tasks_)
                              + " mappings exceeds the cap of " + std::to_string(cap)
                              + "; use fewer tasks or resources");
        }
        total *= resources_;
    }

    metrics_.reserve(total);
    std::vector<ResourceId> genes(tasks_, 0);
    for (std::size_t index = 0; index < total; ++index) {
        metrics_.push_back(problem.simulator().evaluate(Mapping(genes)));
        // odometer increment, last task fastest
        for (std::size_t k = tasks_; k-- > 0;) {
            if (++genes[k] < resources_) {
                break;
            }
            genes[k] = 0;
        }
    }
}

Mapping ExhaustiveOracle::genome(std::size_t index) const {
    if (index >= metrics_.size()) {
        throw std::out_of_range("oracle index out of range");
    }
    std::vector<ResourceId> genes(tasks_, 0);
    for (std::size_t k = tasks_; k-- > 0;) {
        genes[k] = index % resources_;
        index /= resources_;
    }
    return Mapping(std::move(genes));
}

NormalizationBounds ExhaustiveOracle::full_bounds() const {
    return calibrate_bounds(metrics_);
}

Individual ExhaustiveOracle::best(NormalizationBounds const & bounds) const {
    Objective const objective(weights_, bounds);
    std::size_t best_index = 0;
    double best_fitness = objective(metrics_[0]);
    for (std::size_t i = 1; i < metrics_.size(); ++i) {
        double const f = objective(metrics_[i]);
        if (f < best_fitness) {
            best_fitness = f;
            best_index = i;
        }
    }
    return Individual{genome(best_index), metrics_[best_index], best_fitness};
}

Individual brute_force(Problem const & problem, std::size_t cap) {
    return ExhaustiveOracle(problem, cap).best();
}

} // namespace fogflow
