#include <fogflow/workflow.hpp>

#include <cstdio>
#include <random>

#include <fogflow/error.hpp>

namespace fogflow {

void check_layered_spec(LayeredSpec const & spec) {
    std::vector<std::string> problems;
    if (spec.layers.empty()) {
        problems.emplace_back("at least one layer is required");
    }
    for (auto width : spec.layers) {
        if (width == 0) {
            problems.emplace_back("layer widths must be >= 1");
            break;
        }
    }
    auto const [len_lo, len_hi] = spec.length_range;
    if (!(len_lo > 0.0) || !(len_lo <= len_hi)) {
        problems.emplace_back("length range must satisfy 0 < min <= max");
    }
    auto const [edge_lo, edge_hi] = spec.edge_size_range;
    if (!(edge_lo >= 0.0) || !(edge_lo <= edge_hi)) {
        problems.emplace_back("edge size range must satisfy 0 <= min <= max");
    }
    if (!(spec.inter_layer_density >= 0.0 && spec.inter_layer_density <= 1.0)) {
        problems.emplace_back("inter-layer density must lie in [0, 1]");
    }
    if (!problems.empty()) {
        std::string message = "invalid layered spec:";
        for (auto const & p : problems) {
            message += " " + p + ";";
        }
        message.pop_back();
        throw ConfigError(message);
    }
}

Workflow generate_layered(LayeredSpec const & spec, std::uint64_t seed) {
    check_layered_spec(spec);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> length(spec.length_range.first, spec.length_range.second);
    std::uniform_real_distribution<double> data(spec.edge_size_range.first, spec.edge_size_range.second);
    std::bernoulli_distribution connect(spec.inter_layer_density);

    std::vector<Task> tasks;
    std::vector<DataEdge> edges;
    std::size_t previous_begin = 0;
    std::size_t previous_width = 0;

    for (std::size_t layer = 0; layer < spec.layers.size(); ++layer) {
        std::size_t const begin = tasks.size();
        for (std::size_t k = 0; k < spec.layers[layer]; ++k) {
            TaskId const id = tasks.size();
            char label[16];
            std::snprintf(label, sizeof label, "ID%05zu", id);
            tasks.push_back(Task{id, label, length(rng)});

            if (layer == 0) {
                continue;
            }
            bool has_parent = false;
            for (std::size_t p = 0; p < previous_width; ++p) {
                if (connect(rng)) {
                    edges.push_back(DataEdge{previous_begin + p, id, data(rng)});
                    has_parent = true;
                }
            }
            if (!has_parent) {
                std::uniform_int_distribution<std::size_t> pick(0, previous_width - 1);
                edges.push_back(DataEdge{previous_begin + pick(rng), id, data(rng)});
            }
        }
        previous_begin = begin;
        previous_width = spec.layers[layer];
    }

    return Workflow("layered", std::move(tasks), std::move(edges));
}

} // namespace fogflow
