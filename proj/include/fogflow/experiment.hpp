#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <fogflow/optimizers.hpp>

namespace fogflow {

struct ExperimentConfig {
    // DAX path, or an inline generator spec:
    //   layered:<w1>,<w2>,...[;density=<p>][;seed=<s>][;length=<lo>,<hi>][;edge=<lo>,<hi>]
    std::string workflow;
    std::array<std::size_t, 3> pool{1, 5, 5}; // end, fog, cloud
    std::filesystem::path resources;           // resource table CSV; overrides `pool` when set
    std::vector<Algorithm> algorithms{Algorithm::Pso, Algorithm::Ga, Algorithm::De, Algorithm::GaPso};
    Weights weights;
    OptimizerConfig optimizer; // seed is replaced per run
    std::size_t repeats = 10;
    std::uint64_t base_seed = 1;
    std::filesystem::path output_dir = "results";
    bool write_traces = false;
};

// Sets one option by its key (the long flag name without dashes). Relative
// paths are resolved against `base_dir`. Throws ConfigError on an unknown
// key or a malformed value.
void apply_setting(ExperimentConfig & config, std::string_view key, std::string_view value,
                   std::filesystem::path const & base_dir = {});

// Flat "key = value" lines; '#' starts a comment. Throws ParseError with the
// line number for malformed lines and unknown keys.
ExperimentConfig parse_config(std::string_view text, std::filesystem::path const & base_dir = {});
ExperimentConfig read_config(std::filesystem::path const & path);

// Throws ConfigError when the configuration cannot describe an experiment.
void check_experiment(ExperimentConfig const & config);

LayeredSpec parse_layered_source(std::string_view source, std::uint64_t & seed);
// DAX file or inline layered spec.
Workflow load_workflow(std::string const & source);
ResourcePool load_pool(ExperimentConfig const & config);

struct RunRecord {
    Algorithm algorithm;
    std::uint64_t seed;
    Metrics metrics;
    double fitness;
    double wall_time_ms;
    RunResult result;
};

struct SummaryRow {
    Algorithm algorithm;
    std::size_t runs;
    std::array<double, 4> mean;    // makespan, cost, energy, fitness
    std::array<double, 4> stddev;  // sample standard deviation, 0 for one run
};

struct ExperimentReport {
    std::vector<RunRecord> runs;
    std::vector<SummaryRow> summary;
};

// Runs every requested algorithm with seeds base_seed + r for r in
// 0..repeats-1, in algorithm order then repeat order.
ExperimentReport run_experiment(ExperimentConfig const & config, Problem const & problem);

std::vector<SummaryRow> summarize(std::span<RunRecord const> runs, std::span<Algorithm const> order);

void write_runs_csv(std::ostream & out, std::span<RunRecord const> runs);
void write_timings_csv(std::ostream & out, std::span<RunRecord const> runs);
void write_summary_csv(std::ostream & out, std::span<SummaryRow const> summary);
void write_convergence_csv(std::ostream & out, RunResult const & result);

// runs.csv, summary.csv, timings.csv, convergence/<alg>_seed<seed>.csv and,
// when requested, traces/<alg>_seed<seed>.csv under config.output_dir.
void write_report(ExperimentReport const & report, ExperimentConfig const & config, Problem const & problem);

// "tasks: N, edges: E, depth: D, total_mi: X, total_mb: Y"
std::string describe(Workflow const & workflow);

// 1-based genes, as in "{4,3,2,4,5}"
std::string format_mapping(Mapping const & mapping);

} // namespace fogflow
