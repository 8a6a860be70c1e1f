#include <fogflow/dax.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <fogflow/error.hpp>

namespace fogflow {

namespace pt = boost::property_tree;

namespace {

std::string attribute(pt::ptree const & node, char const * name) {
    return node.get<std::string>(std::string("<xmlattr>.") + name, "");
}

double parse_number(std::string const & text, std::string const & what) {
    double value = 0.0;
    auto const * first = text.data();
    auto const * last = text.data() + text.size();
    auto const [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || text.empty()) {
        throw ParseError("invalid number '" + text + "' for " + what);
    }
    return value;
}

enum class Direction { In, Out, Other };

Direction parse_link(std::string const & link) {
    if (link == "input" || link == "in") {
        return Direction::In;
    }
    if (link == "output" || link == "out") {
        return Direction::Out;
    }
    return Direction::Other;
}

struct FileUse {
    TaskId job;
    Direction direction;
    double bytes;
};

} // namespace

Workflow parse_dax(std::string_view document) {
    pt::ptree tree;
    try {
        std::istringstream in{std::string(document)};
        pt::read_xml(in, tree);
    } catch (pt::xml_parser_error const & e) {
        throw ParseError("malformed DAX: " + e.message(), e.line());
    }

    auto const root_it = tree.find("adag");
    if (root_it == tree.not_found()) {
        throw ParseError("DAX document has no <adag> root element");
    }
    auto const & root = root_it->second;
    std::string const name = attribute(root, "name");

    std::vector<Task> tasks;
    std::unordered_map<std::string, TaskId> ids;
    std::vector<std::string> violations;
    // file name -> uses in document order
    std::map<std::string, std::vector<FileUse>> files;

    for (auto const & [tag, job] : root) {
        if (tag != "job") {
            continue;
        }
        auto const label = attribute(job, "id");
        if (label.empty()) {
            throw ParseError("<job> without an id attribute");
        }
        auto const runtime_text = attribute(job, "runtime");
        if (runtime_text.empty()) {
            throw ParseError("job " + label + " has no runtime attribute");
        }
        double const runtime = parse_number(runtime_text, "runtime of job " + label);

        TaskId const id = tasks.size();
        if (!ids.emplace(label, id).second) {
            violations.push_back("duplicate job id " + label);
        }
        tasks.push_back(Task{id, label, runtime * kReferenceMips});

        for (auto const & [use_tag, use] : job) {
            if (use_tag != "uses") {
                continue;
            }
            auto file = attribute(use, "file");
            if (file.empty()) {
                file = attribute(use, "name");
            }
            if (file.empty()) {
                throw ParseError("<uses> in job " + label + " names no file");
            }
            auto const size_text = attribute(use, "size");
            double const bytes = size_text.empty() ? 0.0 : parse_number(size_text, "size of file " + file);
            files[file].push_back(FileUse{id, parse_link(attribute(use, "link")), bytes});
        }
    }

    if (!violations.empty()) {
        throw ValidationError(std::move(violations));
    }

    std::map<std::pair<TaskId, TaskId>, double> edge_mb;
    for (auto const & [file, uses] : files) {
        // the producer's declared size wins when declarations disagree
        double bytes = -1.0;
        for (auto const & u : uses) {
            if (u.direction == Direction::Out) {
                bytes = u.bytes;
                break;
            }
        }
        if (bytes < 0.0) {
            continue; // workflow input, no producer
        }
        for (auto const & producer : uses) {
            if (producer.direction != Direction::Out) {
                continue;
            }
            for (auto const & consumer : uses) {
                if (consumer.direction != Direction::In || consumer.job == producer.job) {
                    continue;
                }
                edge_mb[{producer.job, consumer.job}] += bytes * 8.0 / 1e6;
            }
        }
    }

    for (auto const & [tag, child] : root) {
        if (tag != "child") {
            continue;
        }
        auto const child_label = attribute(child, "ref");
        auto const child_it = ids.find(child_label);
        if (child_it == ids.end()) {
            violations.push_back("<child> references unknown job " + child_label);
            continue;
        }
        for (auto const & [ptag, parent] : child) {
            if (ptag != "parent") {
                continue;
            }
            auto const parent_label = attribute(parent, "ref");
            auto const parent_it = ids.find(parent_label);
            if (parent_it == ids.end()) {
                violations.push_back("<parent> references unknown job " + parent_label);
                continue;
            }
            edge_mb.try_emplace({parent_it->second, child_it->second}, 0.0);
        }
    }

    if (!violations.empty()) {
        throw ValidationError(std::move(violations));
    }

    std::vector<DataEdge> edges;
    edges.reserve(edge_mb.size());
    for (auto const & [pair, mb] : edge_mb) {
        edges.push_back(DataEdge{pair.first, pair.second, mb});
    }

    Workflow workflow(name, std::move(tasks), std::move(edges));
    require_valid(workflow);
    return workflow;
}

Workflow parse_dax_file(std::filesystem::path const & path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open DAX file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_dax(buffer.str());
}

namespace {

std::string escape(std::string const & text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string label_of(Task const & t) {
    return t.label.empty() ? "ID" + std::to_string(t.id) : t.label;
}

} // namespace

std::string write_dax(Workflow const & workflow) {
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out.precision(17);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<adag name=\"" << escape(workflow.name()) << "\" jobCount=\"" << workflow.size() << "\">\n";

    std::vector<std::vector<std::size_t>> outgoing(workflow.size());
    std::vector<std::vector<std::size_t>> incoming(workflow.size());
    auto const edges = workflow.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].size_mb > 0.0) {
            outgoing[edges[k].parent].push_back(k);
            incoming[edges[k].child].push_back(k);
        }
    }
    auto const file_name = [](std::size_t k) { return "edge_" + std::to_string(k) + ".dat"; };
    auto const bytes = [&](std::size_t k) { return edges[k].size_mb * 1e6 / 8.0; };

    for (auto const & t : workflow.tasks()) {
        out << "  <job id=\"" << escape(label_of(t)) << "\" runtime=\"" << t.length_mi / kReferenceMips << "\">\n";
        for (auto k : incoming[t.id]) {
            out << "    <uses file=\"" << file_name(k) << "\" link=\"input\" size=\"" << bytes(k) << "\"/>\n";
        }
        for (auto k : outgoing[t.id]) {
            out << "    <uses file=\"" << file_name(k) << "\" link=\"output\" size=\"" << bytes(k) << "\"/>\n";
        }
        out << "  </job>\n";
    }
    for (auto const & e : edges) {
        if (e.size_mb > 0.0) {
            continue;
        }
        out << "  <child ref=\"" << escape(label_of(workflow.task(e.child))) << "\">\n"
            << "    <parent ref=\"" << escape(label_of(workflow.task(e.parent))) << "\"/>\n"
            << "  </child>\n";
    }
    out << "</adag>\n";
    return out.str();
}

} // namespace fogflow
