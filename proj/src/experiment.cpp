#include <fogflow/experiment.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <fogflow/dax.hpp>
#include <fogflow/error.hpp>
#include <fogflow/format.hpp>

namespace fogflow {

namespace {

std::string_view trim(std::string_view s) {
    auto const first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    auto const last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t begin = 0;
    while (true) {
        auto const end = s.find(sep, begin);
        parts.push_back(trim(s.substr(begin, end == std::string_view::npos ? std::string_view::npos : end - begin)));
        if (end == std::string_view::npos) {
            return parts;
        }
        begin = end + 1;
    }
}

template <typename T>
T parse_value(std::string_view key, std::string_view text) {
    T value{};
    auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError("invalid value '" + std::string(text) + "' for " + std::string(key));
    }
    return value;
}

template <typename T, std::size_t N>
std::array<T, N> parse_tuple(std::string_view key, std::string_view text) {
    auto const parts = split(text, ',');
    if (parts.size() != N) {
        throw ConfigError(std::string(key) + " expects " + std::to_string(N) + " comma-separated values");
    }
    std::array<T, N> out{};
    for (std::size_t k = 0; k < N; ++k) {
        out[k] = parse_value<T>(key, parts[k]);
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
    if (text == "0" || text == "false" || text == "no" || text == "off") return false;
    throw ConfigError("invalid boolean '" + std::string(text) + "' for " + std::string(key));
}

std::filesystem::path resolve(std::filesystem::path const & base, std::string_view value) {
    std::filesystem::path p{std::string(value)};
    return p.is_relative() && !base.empty() ? base / p : p;
}

constexpr std::string_view kLayeredPrefix = "layered:";

} // namespace

void apply_setting(ExperimentConfig & config, std::string_view key, std::string_view value,
                   std::filesystem::path const & base_dir) {
    value = trim(value);
    auto & opt = config.optimizer;
    if (key == "workflow") {
        config.workflow = value.starts_with(kLayeredPrefix) ? std::string(value) : resolve(base_dir, value).string();
    } else if (key == "pool") {
        config.pool = parse_tuple<std::size_t, 3>(key, value);
    } else if (key == "resources") {
        config.resources = resolve(base_dir, value);
    } else if (key == "algorithms") {
        config.algorithms.clear();
        for (auto name : split(value, ',')) {
            config.algorithms.push_back(parse_algorithm(name));
        }
    } else if (key == "weights") {
        auto const w = parse_tuple<double, 3>(key, value);
        config.weights = Weights{w[0], w[1], w[2]};
    } else if (key == "repeats") {
        config.repeats = parse_value<std::size_t>(key, value);
    } else if (key == "seed") {
        config.base_seed = parse_value<std::uint64_t>(key, value);
    } else if (key == "pop") {
        opt.population = parse_value<std::size_t>(key, value);
    } else if (key == "iters") {
        opt.iterations = parse_value<std::size_t>(key, value);
    } else if (key == "threads") {
        opt.threads = parse_value<std::size_t>(key, value);
    } else if (key == "out") {
        config.output_dir = resolve(base_dir, value);
    } else if (key == "traces") {
        config.write_traces = parse_bool(key, value);
    } else if (key == "pso_omega") {
        opt.pso.omega = parse_value<double>(key, value);
    } else if (key == "pso_c1") {
        opt.pso.c1 = parse_value<double>(key, value);
    } else if (key == "pso_c2") {
        opt.pso.c2 = parse_value<double>(key, value);
    } else if (key == "ga_crossover") {
        opt.ga.crossover_rate = parse_value<double>(key, value);
    } else if (key == "ga_mutation") {
        opt.ga.mutation_rate = parse_value<double>(key, value);
    } else if (key == "ga_tournament") {
        opt.ga.tournament_size = parse_value<std::size_t>(key, value);
    } else if (key == "ga_elite") {
        opt.ga.elite_count = parse_value<std::size_t>(key, value);
    } else if (key == "de_cr") {
        opt.de.cr = parse_value<double>(key, value);
    } else if (key == "de_f") {
        opt.de.f = parse_value<double>(key, value);
    } else {
        throw ConfigError("unknown configuration key '" + std::string(key) + "'");
    }
}

ExperimentConfig parse_config(std::string_view text, std::filesystem::path const & base_dir) {
    ExperimentConfig config;
    std::size_t line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        auto line = raw;
        if (auto const hash = line.find('#'); hash != std::string_view::npos) {
            line = trim(line.substr(0, hash));
        }
        if (line.empty()) {
            continue;
        }
        auto const eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("expected 'key = value'", line_no);
        }
        try {
            apply_setting(config, trim(line.substr(0, eq)), line.substr(eq + 1), base_dir);
        } catch (ConfigError const & e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return config;
}

ExperimentConfig read_config(std::filesystem::path const & path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open configuration file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.parent_path());
}

void check_experiment(ExperimentConfig const & config) {
    if (config.workflow.empty()) {
        throw ConfigError("no workflow given");
    }
    if (config.algorithms.empty()) {
        throw ConfigError("at least one algorithm is required");
    }
    if (config.repeats < 1) {
        throw ConfigError("repeats must be at least 1");
    }
    check_weights(config.weights);
    for (auto a : config.algorithms) {
        check_config(config.optimizer, a);
    }
}

LayeredSpec parse_layered_source(std::string_view source, std::uint64_t & seed) {
    if (!source.starts_with(kLayeredPrefix)) {
        throw ConfigError("layered source must start with 'layered:'");
    }
    auto const parts = split(source.substr(kLayeredPrefix.size()), ';');
    LayeredSpec spec;
    for (auto width : split(parts[0], ',')) {
        spec.layers.push_back(parse_value<std::size_t>("layered widths", width));
    }
    for (std::size_t k = 1; k < parts.size(); ++k) {
        auto const eq = parts[k].find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("layered option '" + std::string(parts[k]) + "' is not key=value");
        }
        auto const key = trim(parts[k].substr(0, eq));
        auto const value = trim(parts[k].substr(eq + 1));
        if (key == "density") {
            spec.inter_layer_density = parse_value<double>(key, value);
        } else if (key == "seed") {
            seed = parse_value<std::uint64_t>(key, value);
        } else if (key == "length") {
            auto const r = parse_tuple<double, 2>(key, value);
            spec.length_range = {r[0], r[1]};
        } else if (key == "edge") {
            auto const r = parse_tuple<double, 2>(key, value);
            spec.edge_size_range = {r[0], r[1]};
        } else {
            throw ConfigError("unknown layered option '" + std::string(key) + "'");
        }
    }
    check_layered_spec(spec);
    return spec;
}

Workflow load_workflow(std::string const & source) {
    if (source.starts_with(kLayeredPrefix)) {
        std::uint64_t seed = 0;
        auto const spec = parse_layered_source(source, seed);
        return generate_layered(spec, seed);
    }
    return parse_dax_file(source);
}

ResourcePool load_pool(ExperimentConfig const & config) {
    if (!config.resources.empty()) {
        return read_resource_table(config.resources);
    }
    return default_testbed(config.pool[0], config.pool[1], config.pool[2]);
}

ExperimentReport run_experiment(ExperimentConfig const & config, Problem const & problem) {
    check_experiment(config);
    ExperimentReport report;
    for (auto algorithm : config.algorithms) {
        for (std::size_t r = 0; r < config.repeats; ++r) {
            auto opt = config.optimizer;
            opt.seed = config.base_seed + r;
            auto const began = std::chrono::steady_clock::now();
            auto result = run(algorithm, problem, opt);
            std::chrono::duration<double, std::milli> const elapsed = std::chrono::steady_clock::now() - began;
            auto const metrics = result.best.raw;
            double const fitness = result.best.fitness;
            report.runs.push_back(RunRecord{algorithm, opt.seed, metrics, fitness, elapsed.count(), std::move(result)});
        }
    }
    report.summary = summarize(report.runs, config.algorithms);
    return report;
}

std::vector<SummaryRow> summarize(std::span<RunRecord const> runs, std::span<Algorithm const> order) {
    std::vector<SummaryRow> rows;
    for (auto algorithm : order) {
        std::vector<std::array<double, 4>> samples;
        for (auto const & run : runs) {
            if (run.algorithm == algorithm) {
                samples.push_back({run.metrics.makespan, run.metrics.total_cost, run.metrics.total_energy, run.fitness});
            }
        }
        if (samples.empty()) {
            continue;
        }
        SummaryRow row{algorithm, samples.size(), {}, {}};
        double const n = static_cast<double>(samples.size());
        for (std::size_t c = 0; c < 4; ++c) {
            double sum = 0.0;
            for (auto const & s : samples) {
                sum += s[c];
            }
            row.mean[c] = sum / n;
            double ss = 0.0;
            for (auto const & s : samples) {
                ss += (s[c] - row.mean[c]) * (s[c] - row.mean[c]);
            }
            row.stddev[c] = samples.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        }
        rows.push_back(row);
    }
    return rows;
}

void write_runs_csv(std::ostream & out, std::span<RunRecord const> runs) {
    out << "algorithm,seed,makespan_s,cost_usd,energy_j,fitness\n";
    for (auto const & r : runs) {
        out << to_string(r.algorithm) << ',' << r.seed << ',' << format_number(r.metrics.makespan) << ','
            << format_number(r.metrics.total_cost) << ',' << format_number(r.metrics.total_energy) << ','
            << format_number(r.fitness) << '\n';
    }
}

void write_timings_csv(std::ostream & out, std::span<RunRecord const> runs) {
    out << "algorithm,seed,wall_time_ms\n";
    for (auto const & r : runs) {
        out << to_string(r.algorithm) << ',' << r.seed << ',' << format_number(r.wall_time_ms) << '\n';
    }
}

void write_summary_csv(std::ostream & out, std::span<SummaryRow const> summary) {
    out << "algorithm,runs,mean_makespan_s,sd_makespan_s,mean_cost_usd,sd_cost_usd,"
           "mean_energy_j,sd_energy_j,mean_fitness,sd_fitness\n";
    for (auto const & row : summary) {
        out << to_string(row.algorithm) << ',' << row.runs;
        for (std::size_t c = 0; c < 4; ++c) {
            out << ',' << format_number(row.mean[c]) << ',' << format_number(row.stddev[c]);
        }
        out << '\n';
    }
}

void write_convergence_csv(std::ostream & out, RunResult const & result) {
    out << "iteration,best_fitness,best_makespan_s,best_cost_usd,best_energy_j\n";
    for (std::size_t k = 0; k < result.convergence.size(); ++k) {
        auto const & p = result.convergence[k];
        out << k << ',' << format_number(p.best_fitness) << ',' << format_number(p.best_raw.makespan) << ','
            << format_number(p.best_raw.total_cost) << ',' << format_number(p.best_raw.total_energy) << '\n';
    }
}

namespace {

void write_file(std::filesystem::path const & path, auto && writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    writer(out);
}

} // namespace

void write_report(ExperimentReport const & report, ExperimentConfig const & config, Problem const & problem) {
    namespace fs = std::filesystem;
    auto const & dir = config.output_dir;
    fs::create_directories(dir / "convergence");
    write_file(dir / "runs.csv", [&](std::ostream & out) { write_runs_csv(out, report.runs); });
    write_file(dir / "summary.csv", [&](std::ostream & out) { write_summary_csv(out, report.summary); });
    write_file(dir / "timings.csv", [&](std::ostream & out) { write_timings_csv(out, report.runs); });
    if (config.write_traces) {
        fs::create_directories(dir / "traces");
    }
    for (auto const & run : report.runs) {
        auto const stem = std::string(to_string(run.algorithm)) + "_seed" + std::to_string(run.seed) + ".csv";
        write_file(dir / "convergence" / stem, [&](std::ostream & out) { write_convergence_csv(out, run.result); });
        if (config.write_traces) {
            auto const & genome = run.result.best.genome;
            auto const trace = problem.simulator().simulate(genome);
            write_file(dir / "traces" / stem, [&](std::ostream & out) { write_trace_csv(out, trace, genome); });
        }
    }
}

std::string describe(Workflow const & workflow) {
    require_valid(workflow);
    return "tasks: " + std::to_string(workflow.size()) + ", edges: " + std::to_string(workflow.edges().size())
           + ", depth: " + std::to_string(depth(workflow)) + ", total_mi: " + format_number(total_length_mi(workflow))
           + ", total_mb: " + format_number(total_data_mb(workflow));
}

std::string format_mapping(Mapping const & mapping) {
    std::string out = "{";
    for (std::size_t k = 0; k < mapping.size(); ++k) {
        if (k > 0) {
            out += ',';
        }
        out += std::to_string(mapping[k] + 1);
    }
    return out + "}";
}

} // namespace fogflow
