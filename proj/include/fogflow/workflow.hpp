#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fogflow {

using TaskId = std::size_t;

struct Task {
    TaskId id;
    std::string label;
    double length_mi; // million instructions
};

struct DataEdge {
    TaskId parent;
    TaskId child;
    double size_mb; // megabits

    friend bool operator==(DataEdge const &, DataEdge const &) = default;
};

// Directed acyclic task graph. Construction does not validate; call validate()
// or use a consumer (parse_dax, Simulator) that does.
class Workflow {
public:
    Workflow() = default;
    Workflow(std::string name, std::vector<Task> tasks, std::vector<DataEdge> edges)
        : name_(std::move(name)), tasks_(std::move(tasks)), edges_(std::move(edges)) {}

    std::string const & name() const noexcept { return name_; }
    std::span<Task const> tasks() const noexcept { return tasks_; }
    std::span<DataEdge const> edges() const noexcept { return edges_; }
    std::size_t size() const noexcept { return tasks_.size(); }
    Task const & task(TaskId id) const { return tasks_.at(id); }

private:
    std::string name_;
    std::vector<Task> tasks_;
    std::vector<DataEdge> edges_;
};

struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const noexcept { return violations.empty(); }
    explicit operator bool() const noexcept { return ok(); }
};

// Every violated Workflow invariant: empty task set, non-contiguous ids,
// non-positive lengths, dangling or self-referencing edges, duplicate edges,
// negative sizes, and cycles (naming one task that lies on a cycle).
ValidationReport validate(Workflow const & workflow);

// Throws ValidationError carrying the full report if the workflow is invalid.
void require_valid(Workflow const & workflow);

// Kahn's algorithm with ready tasks taken in ascending id order, so the
// result is unique for a given graph. Throws ValidationError on a cycle.
std::vector<TaskId> topological_order(Workflow const & workflow);

// Number of tasks on the longest path.
std::size_t depth(Workflow const & workflow);

double total_length_mi(Workflow const & workflow);
double total_data_mb(Workflow const & workflow);

struct LayeredSpec {
    std::vector<std::size_t> layers;
    std::pair<double, double> length_range{500.0, 5000.0};
    std::pair<double, double> edge_size_range{1.0, 50.0};
    double inter_layer_density = 0.5;
};

// Throws ConfigError listing what is wrong with the spec.
void check_layered_spec(LayeredSpec const & spec);

// Tasks are numbered layer by layer. Every task past the first layer draws
// each possible parent in the previous layer with probability
// inter_layer_density, and gets one uniformly chosen parent if none was drawn.
Workflow generate_layered(LayeredSpec const & spec, std::uint64_t seed);

} // namespace fogflow
