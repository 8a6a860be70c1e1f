#include <fogflow/workflow.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

#include <fogflow/error.hpp>

namespace fogflow {

namespace {

std::string describe_task(Workflow const & workflow, TaskId id) {
    auto const & label = workflow.task(id).label;
    std::string out = "task " + std::to_string(id);
    if (!label.empty()) {
        out += " (" + label + ")";
    }
    return out;
}

// Kahn's algorithm over edges whose endpoints are in range. Returns the order
// produced; it is shorter than n when a cycle blocks progress.
std::vector<TaskId> kahn(Workflow const & workflow) {
    auto const n = workflow.size();
    std::vector<std::vector<TaskId>> children(n);
    std::vector<std::size_t> in_degree(n, 0);
    for (auto const & e : workflow.edges()) {
        if (e.parent >= n || e.child >= n) {
            continue;
        }
        children[e.parent].push_back(e.child);
        ++in_degree[e.child];
    }

    std::priority_queue<TaskId, std::vector<TaskId>, std::greater<>> ready;
    for (TaskId t = 0; t < n; ++t) {
        if (in_degree[t] == 0) {
            ready.push(t);
        }
    }

    std::vector<TaskId> order;
    order.reserve(n);
    while (!ready.empty()) {
        TaskId const t = ready.top();
        ready.pop();
        order.push_back(t);
        for (TaskId c : children[t]) {
            if (--in_degree[c] == 0) {
                ready.push(c);
            }
        }
    }
    return order;
}

// Given a Kahn order that stalled, walk backwards through unplaced parents
// until a task repeats. That task lies on a cycle.
TaskId find_cycle_member(Workflow const & workflow, std::vector<TaskId> const & partial) {
    auto const n = workflow.size();
    std::vector<bool> placed(n, false);
    for (TaskId t : partial) {
        placed[t] = true;
    }
    std::vector<std::vector<TaskId>> parents(n);
    for (auto const & e : workflow.edges()) {
        if (e.parent < n && e.child < n) {
            parents[e.child].push_back(e.parent);
        }
    }

    TaskId current = 0;
    while (placed[current]) {
        ++current;
    }
    std::vector<bool> seen(n, false);
    while (!seen[current]) {
        seen[current] = true;
        auto const it = std::find_if(parents[current].begin(), parents[current].end(),
                                     [&](TaskId p) { return !placed[p]; });
        // every unplaced task has at least one unplaced parent
        current = *it;
    }
    return current;
}

} // namespace

ValidationReport validate(Workflow const & workflow) {
    ValidationReport report;
    auto & v = report.violations;
    auto const n = workflow.size();

    if (n == 0) {
        v.emplace_back("workflow has no tasks");
        return report;
    }

    for (std::size_t i = 0; i < n; ++i) {
        auto const & t = workflow.tasks()[i];
        if (t.id != i) {
            v.push_back("task at position " + std::to_string(i) + " has id " + std::to_string(t.id)
                        + "; ids must be contiguous from 0");
        }
        if (!(t.length_mi > 0.0)) {
            v.push_back(describe_task(workflow, i) + " has non-positive length");
        }
    }

    std::set<std::pair<TaskId, TaskId>> seen_pairs;
    for (auto const & e : workflow.edges()) {
        auto const edge_name = "edge " + std::to_string(e.parent) + "->" + std::to_string(e.child);
        if (e.parent >= n || e.child >= n) {
            v.push_back(edge_name + " references a missing task");
            continue;
        }
        if (e.parent == e.child) {
            v.push_back(edge_name + " is a self-loop");
        }
        if (!(e.size_mb >= 0.0)) {
            v.push_back(edge_name + " has negative data size");
        }
        if (!seen_pairs.emplace(e.parent, e.child).second) {
            v.push_back(edge_name + " is duplicated");
        }
    }

    auto const order = kahn(workflow);
    if (order.size() < n) {
        v.push_back("cycle through " + describe_task(workflow, find_cycle_member(workflow, order)));
    }
    return report;
}

void require_valid(Workflow const & workflow) {
    auto report = validate(workflow);
    if (!report.ok()) {
        throw ValidationError(std::move(report.violations));
    }
}

std::vector<TaskId> topological_order(Workflow const & workflow) {
    auto order = kahn(workflow);
    if (order.size() < workflow.size()) {
        throw ValidationError("cycle through " + describe_task(workflow, find_cycle_member(workflow, order)));
    }
    return order;
}

std::size_t depth(Workflow const & workflow) {
    auto const order = topological_order(workflow);
    std::vector<std::vector<TaskId>> children(workflow.size());
    for (auto const & e : workflow.edges()) {
        children[e.parent].push_back(e.child);
    }
    std::vector<std::size_t> level(workflow.size(), 1);
    std::size_t deepest = 0;
    for (TaskId t : order) {
        deepest = std::max(deepest, level[t]);
        for (TaskId c : children[t]) {
            level[c] = std::max(level[c], level[t] + 1);
        }
    }
    return deepest;
}

double total_length_mi(Workflow const & workflow) {
    return std::accumulate(workflow.tasks().begin(), workflow.tasks().end(), 0.0,
                           [](double acc, Task const & t) { return acc + t.length_mi; });
}

double total_data_mb(Workflow const & workflow) {
    return std::accumulate(workflow.edges().begin(), workflow.edges().end(), 0.0,
                           [](double acc, DataEdge const & e) { return acc + e.size_mb; });
}

} // namespace fogflow
