#include <fogflow/schedule.hpp>

#include <algorithm>
#include <ostream>

#include <fogflow/error.hpp>
#include <fogflow/format.hpp>

namespace fogflow {

void check_mapping(Mapping const & mapping, std::size_t tasks, std::size_t resources) {
    if (mapping.size() != tasks) {
        throw ValidationError("mapping has " + std::to_string(mapping.size()) + " entries for "
                              + std::to_string(tasks) + " tasks");
    }
    for (std::size_t t = 0; t < mapping.size(); ++t) {
        if (mapping[t] >= resources) {
            throw ValidationError("task " + std::to_string(t) + " mapped to resource "
                                  + std::to_string(mapping[t]) + " outside 0.."
                                  + std::to_string(resources - 1));
        }
    }
}

Simulator::Simulator(Workflow workflow, ResourcePool pool)
    : workflow_(std::move(workflow)), pool_(std::move(pool)) {
    require_valid(workflow_);
    order_ = topological_order(workflow_);
    parents_.resize(workflow_.size());
    for (auto const & e : workflow_.edges()) {
        parents_[e.child].push_back(Incoming{e.parent, e.size_mb});
    }
}

ScheduleTrace Simulator::simulate(Mapping const & mapping) const {
    check_mapping(mapping, workflow_.size(), pool_.size());

    ScheduleTrace trace;
    trace.start.assign(workflow_.size(), 0.0);
    trace.finish.assign(workflow_.size(), 0.0);
    trace.busy.assign(pool_.size(), 0.0);
    std::vector<double> ready(pool_.size(), 0.0);

    for (TaskId t : order_) {
        ResourceId const r = mapping[t];
        double start = ready[r];
        for (auto const & in : parents_[t]) {
            ResourceId const from = mapping[in.parent];
            double arrival = trace.finish[in.parent];
            if (from != r && in.size_mb > 0.0) {
                arrival += in.size_mb / pool_.link_bandwidth(from, r);
            }
            start = std::max(start, arrival);
        }
        double const exec = workflow_.task(t).length_mi / pool_[r].mips;
        trace.start[t] = start;
        trace.finish[t] = start + exec;
        trace.busy[r] += exec;
        ready[r] = trace.finish[t];
        trace.horizon = std::max(trace.horizon, trace.finish[t]);
    }
    return trace;
}

Metrics Simulator::evaluate(Mapping const & mapping) const {
    auto const trace = simulate(mapping);
    return Metrics{makespan(trace), total_cost(workflow_, pool_, mapping, trace), total_energy(pool_, trace)};
}

ScheduleTrace simulate(Workflow const & workflow, ResourcePool const & pool, Mapping const & mapping) {
    return Simulator(workflow, pool).simulate(mapping);
}

double makespan(ScheduleTrace const & trace) {
    if (trace.finish.empty()) {
        return 0.0;
    }
    return *std::max_element(trace.finish.begin(), trace.finish.end())
           - *std::min_element(trace.start.begin(), trace.start.end());
}

double total_cost(Workflow const & workflow, ResourcePool const & pool, Mapping const & mapping,
                  ScheduleTrace const & trace) {
    double comm = 0.0;
    for (auto const & e : workflow.edges()) {
        comm += pool.unit_comm_cost(mapping[e.parent], mapping[e.child]) * e.size_mb;
    }
    double exec = 0.0;
    for (TaskId t = 0; t < workflow.size(); ++t) {
        exec += pool[mapping[t]].exec_cost_rate * (trace.finish[t] - trace.start[t]);
    }
    return comm + exec;
}

double total_energy(ResourcePool const & pool, ScheduleTrace const & trace) {
    double active = 0.0;
    double idle = 0.0;
    for (ResourceId r = 0; r < pool.size(); ++r) {
        double const busy = trace.busy.at(r);
        // busy time is a sum of the same execution spans that build the horizon
        if (busy > trace.horizon * (1.0 + 1e-12)) {
            throw InvariantError("resource " + std::to_string(r) + " busy for " + std::to_string(busy)
                                 + " s, longer than the horizon " + std::to_string(trace.horizon) + " s");
        }
        active += pool[r].working_power * busy;
        idle += pool[r].idle_power * std::max(0.0, trace.horizon - busy);
    }
    return active + idle;
}

Metrics evaluate(Workflow const & workflow, ResourcePool const & pool, Mapping const & mapping) {
    return Simulator(workflow, pool).evaluate(mapping);
}

void write_trace_csv(std::ostream & out, ScheduleTrace const & trace, Mapping const & mapping) {
    out << "task_id,resource_id,start_s,finish_s\n";
    for (TaskId t = 0; t < trace.start.size(); ++t) {
        out << t << ',' << mapping[t] << ',' << format_number(trace.start[t]) << ','
            << format_number(trace.finish[t]) << '\n';
    }
}

} // namespace fogflow
