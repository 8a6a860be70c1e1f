#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <fogflow/infra.hpp>
#include <fogflow/workflow.hpp>

namespace fogflow {

// Task -> resource assignment; position is the task id. This is the genome
// every optimizer searches over.
class Mapping {
public:
    Mapping() = default;
    explicit Mapping(std::vector<ResourceId> assignment) : assignment_(std::move(assignment)) {}

    std::size_t size() const noexcept { return assignment_.size(); }
    ResourceId operator[](TaskId task) const { return assignment_[task]; }
    ResourceId & operator[](TaskId task) { return assignment_[task]; }
    std::span<ResourceId const> view() const noexcept { return assignment_; }
    std::vector<ResourceId> const & values() const noexcept { return assignment_; }

    friend bool operator==(Mapping const &, Mapping const &) = default;
    friend auto operator<=>(Mapping const &, Mapping const &) = default;

private:
    std::vector<ResourceId> assignment_;
};

// Throws ValidationError unless the mapping has one entry per task, each in 0..m-1.
void check_mapping(Mapping const & mapping, std::size_t tasks, std::size_t resources);

struct ScheduleTrace {
    std::vector<double> start;   // per task, seconds
    std::vector<double> finish;  // per task, seconds
    std::vector<double> busy;    // per resource, total execution seconds
    double horizon = 0.0;        // latest finish; every schedule starts at 0

    double idle(ResourceId r) const { return horizon - busy.at(r); }
};

struct Metrics {
    double makespan = 0.0;  // s
    double total_cost = 0.0;  // $
    double total_energy = 0.0;  // J

    friend bool operator==(Metrics const &, Metrics const &) = default;
};

// Precomputes the task order and parent lists of a validated workflow so that
// many mappings can be simulated cheaply. Immutable; safe to share across
// threads.
class Simulator {
public:
    // Throws ValidationError if the workflow is invalid.
    Simulator(Workflow workflow, ResourcePool pool);

    Workflow const & workflow() const noexcept { return workflow_; }
    ResourcePool const & pool() const noexcept { return pool_; }
    std::vector<TaskId> const & order() const noexcept { return order_; }

    // List scheduling in topological order. Each resource runs its tasks
    // back to back in placement order; a task starts once its resource is free
    // and every parent's output has arrived.
    ScheduleTrace simulate(Mapping const & mapping) const;

    Metrics evaluate(Mapping const & mapping) const;

private:
    struct Incoming {
        TaskId parent;
        double size_mb;
    };

    Workflow workflow_;
    ResourcePool pool_;
    std::vector<TaskId> order_;
    std::vector<std::vector<Incoming>> parents_;
};

ScheduleTrace simulate(Workflow const & workflow, ResourcePool const & pool, Mapping const & mapping);

// max finish - min start
double makespan(ScheduleTrace const & trace);

// Communication cost over every edge plus execution cost of every task.
double total_cost(Workflow const & workflow, ResourcePool const & pool, Mapping const & mapping,
                  ScheduleTrace const & trace);

// Active energy at working power over each resource's busy time plus idle
// energy at idle power over the rest of [0, horizon], for every resource in
// the pool. Throws InvariantError if a resource is busy longer than the horizon.
double total_energy(ResourcePool const & pool, ScheduleTrace const & trace);

Metrics evaluate(Workflow const & workflow, ResourcePool const & pool, Mapping const & mapping);

// CSV: task_id,resource_id,start_s,finish_s
void write_trace_csv(std::ostream & out, ScheduleTrace const & trace, Mapping const & mapping);

} // namespace fogflow
