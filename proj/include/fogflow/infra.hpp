#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fogflow {

using ResourceId = std::size_t;

enum class Layer { EndDevice, Fog, Cloud };

std::string_view to_string(Layer layer);
Layer parse_layer(std::string_view text);

struct Resource {
    ResourceId id = 0;
    Layer layer = Layer::EndDevice;
    double mips = 0.0;
    double exec_cost_rate = 0.0;  // $ per second of execution
    double comm_cost_rate = 0.0;  // $ per Mb, this endpoint's tariff
    double working_power = 0.0;   // W while executing
    double idle_power = 0.0;      // W while idle
    double uplink_mbps = 0.0;
    double downlink_mbps = 0.0;
};

// Built-in testbed rates for a single resource of the given layer. Power ratings are
// taken as watts.
Resource testbed_resource(Layer layer);

class ResourcePool {
public:
    // Throws ValidationError if the list is empty, ids are not 0..m-1, or any
    // resource breaks its invariants.
    explicit ResourcePool(std::vector<Resource> resources);

    std::size_t size() const noexcept { return resources_.size(); }
    Resource const & operator[](ResourceId id) const { return resources_.at(id); }
    std::vector<Resource> const & resources() const noexcept { return resources_; }

    // Unbounded (infinity) for src == dst, else min(src uplink, dst downlink).
    double link_bandwidth(ResourceId src, ResourceId dst) const;

    // $ per Mb moved from src to dst: 0 when co-located, else the larger of
    // the two endpoint tariffs.
    double unit_comm_cost(ResourceId src, ResourceId dst) const;

private:
    std::vector<Resource> resources_;
};

// End devices first, then fog nodes, then cloud servers.
ResourcePool default_testbed(std::size_t n_end, std::size_t n_fog, std::size_t n_cloud);

// CSV with header
// layer,mips,exec_cost_rate,comm_cost_rate,working_power,idle_power,uplink_mbps,downlink_mbps
// one resource per row, ids assigned in row order.
ResourcePool read_resource_table(std::filesystem::path const & path);
ResourcePool parse_resource_table(std::string_view text);

} // namespace fogflow
