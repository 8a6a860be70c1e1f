#pragma once

#include <filesystem>

#include <fogflow/dax.hpp>
#include <fogflow/optimizers.hpp>

namespace fogflow::testing {

inline std::filesystem::path fixture(char const * name) {
    return std::filesystem::path(FOGFLOW_FIXTURES) / name;
}

// 4-task diamond on one end device, one fog node and one cloud server.
inline Problem diamond_problem() {
    return Problem(parse_dax_file(fixture("diamond.dax")), default_testbed(1, 1, 1), Weights{0.3, 0.3, 0.3});
}

inline Problem layered_problem(std::vector<std::size_t> layers, std::uint64_t seed, std::size_t end,
                               std::size_t fog, std::size_t cloud) {
    LayeredSpec spec;
    spec.layers = std::move(layers);
    return Problem(generate_layered(spec, seed), default_testbed(end, fog, cloud), Weights{0.3, 0.3, 0.3});
}

inline bool non_increasing(RunResult const & result) {
    for (std::size_t k = 1; k < result.convergence.size(); ++k) {
        if (result.convergence[k].best_fitness > result.convergence[k - 1].best_fitness) {
            return false;
        }
    }
    return true;
}

} // namespace fogflow::testing
