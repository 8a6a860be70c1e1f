#include <fogflow/infra.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fogflow/error.hpp>

namespace fogflow {

std::string_view to_string(Layer layer) {
    switch (layer) {
    case Layer::EndDevice: return "end";
    case Layer::Fog: return "fog";
    case Layer::Cloud: return "cloud";
    }
    return "unknown";
}

Layer parse_layer(std::string_view text) {
    if (text == "end" || text == "end_device" || text == "EndDevice") {
        return Layer::EndDevice;
    }
    if (text == "fog" || text == "Fog") {
        return Layer::Fog;
    }
    if (text == "cloud" || text == "Cloud") {
        return Layer::Cloud;
    }
    throw ParseError("unknown layer '" + std::string(text) + "'");
}

Resource testbed_resource(Layer layer) {
    switch (layer) {
    case Layer::EndDevice:
        return Resource{0, layer, 1000.0, 0.0, 0.0, 700.0, 30.0, 20.0, 40.0};
    case Layer::Fog:
        return Resource{0, layer, 1300.0, 0.48, 0.01, 800.0, 40.0, 10.0, 10.0};
    case Layer::Cloud:
        return Resource{0, layer, 1600.0, 0.96, 0.02, 1600.0, 1300.0, 1.0, 10.0};
    }
    throw InvariantError("unhandled layer");
}

ResourcePool::ResourcePool(std::vector<Resource> resources) : resources_(std::move(resources)) {
    std::vector<std::string> violations;
    if (resources_.empty()) {
        violations.emplace_back("resource pool is empty");
    }
    for (std::size_t i = 0; i < resources_.size(); ++i) {
        auto const & r = resources_[i];
        auto const name = "resource " + std::to_string(i);
        if (r.id != i) {
            violations.push_back(name + " has id " + std::to_string(r.id) + "; ids must be contiguous from 0");
        }
        double const fields[] = {r.mips, r.exec_cost_rate, r.comm_cost_rate, r.working_power,
                                 r.idle_power, r.uplink_mbps, r.downlink_mbps};
        if (!std::all_of(std::begin(fields), std::end(fields), [](double x) { return std::isfinite(x); })) {
            violations.push_back(name + " has a non-finite rate");
            continue;
        }
        if (!(r.mips > 0.0)) {
            violations.push_back(name + " needs mips > 0");
        }
        if (r.exec_cost_rate < 0.0 || r.comm_cost_rate < 0.0) {
            violations.push_back(name + " has a negative cost rate");
        }
        if (!(r.working_power > 0.0) || r.idle_power < 0.0 || r.idle_power > r.working_power) {
            violations.push_back(name + " needs 0 <= idle_power <= working_power and working_power > 0");
        }
        if (!(r.uplink_mbps > 0.0) || !(r.downlink_mbps > 0.0)) {
            violations.push_back(name + " needs positive uplink and downlink bandwidth");
        }
    }
    if (!violations.empty()) {
        throw ValidationError(std::move(violations));
    }
}

double ResourcePool::link_bandwidth(ResourceId src, ResourceId dst) const {
    auto const & a = (*this)[src];
    auto const & b = (*this)[dst];
    if (src == dst) {
        return std::numeric_limits<double>::infinity();
    }
    return std::min(a.uplink_mbps, b.downlink_mbps);
}

double ResourcePool::unit_comm_cost(ResourceId src, ResourceId dst) const {
    auto const & a = (*this)[src];
    auto const & b = (*this)[dst];
    if (src == dst) {
        return 0.0;
    }
    return std::max(a.comm_cost_rate, b.comm_cost_rate);
}

ResourcePool default_testbed(std::size_t n_end, std::size_t n_fog, std::size_t n_cloud) {
    if (n_end + n_fog + n_cloud == 0) {
        throw ConfigError("testbed needs at least one resource");
    }
    std::vector<Resource> resources;
    auto const add = [&](Layer layer, std::size_t count) {
        for (std::size_t k = 0; k < count; ++k) {
            auto r = testbed_resource(layer);
            r.id = resources.size();
            resources.push_back(r);
        }
    };
    add(Layer::EndDevice, n_end);
    add(Layer::Fog, n_fog);
    add(Layer::Cloud, n_cloud);
    return ResourcePool(std::move(resources));
}

namespace {

std::vector<std::string> split_csv_line(std::string const & line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        auto const first = cell.find_first_not_of(" \t\r");
        auto const last = cell.find_last_not_of(" \t\r");
        cells.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
    }
    return cells;
}

} // namespace

ResourcePool parse_resource_table(std::string_view text) {
    static constexpr char const * kColumns[] = {"layer", "mips", "exec_cost_rate", "comm_cost_rate",
                                                 "working_power", "idle_power", "uplink_mbps", "downlink_mbps"};
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<Resource> resources;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') {
            continue;
        }
        auto const cells = split_csv_line(line);
        if (!header_seen) {
            if (cells.size() != std::size(kColumns) || !std::equal(cells.begin(), cells.end(), std::begin(kColumns))) {
                throw ParseError("resource table header must be layer,mips,exec_cost_rate,comm_cost_rate,"
                                 "working_power,idle_power,uplink_mbps,downlink_mbps", line_no);
            }
            header_seen = true;
            continue;
        }
        if (cells.size() != std::size(kColumns)) {
            throw ParseError("expected 8 columns", line_no);
        }
        double values[7];
        for (std::size_t k = 0; k < 7; ++k) {
            auto const & c = cells[k + 1];
            auto const [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), values[k]);
            if (ec != std::errc() || ptr != c.data() + c.size() || c.empty()) {
                throw ParseError("invalid number '" + c + "' in column " + kColumns[k + 1], line_no);
            }
        }
        Layer layer;
        try {
            layer = parse_layer(cells[0]);
        } catch (ParseError const & e) {
            throw ParseError(e.what(), line_no);
        }
        resources.push_back(Resource{resources.size(), layer, values[0], values[1], values[2], values[3],
                                     values[4], values[5], values[6]});
    }
    if (!header_seen) {
        throw ParseError("resource table is empty");
    }
    return ResourcePool(std::move(resources));
}

ResourcePool read_resource_table(std::filesystem::path const & path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open resource table " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_resource_table(buffer.str());
}

} // namespace fogflow
