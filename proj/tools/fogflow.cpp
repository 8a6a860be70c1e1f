// fogflow: workflow scheduling experiments on a cloud-fog resource pool.
//
//   fogflow run --config <file> [--workflow <dax>] [--algorithms pso,ga,de,gapso]
//               [--repeats N] [--seed N] [--pop N] [--iters N]
//               [--weights w1,w2,w3] [--pool e,f,c] [--out DIR]
//   fogflow describe <dax>
//   fogflow oracle --workflow <dax> --pool e,f,c
//
// Exit codes: 0 success, 2 bad configuration, 3 workflow or pool error,
// 4 internal invariant violation.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <fogflow/error.hpp>
#include <fogflow/experiment.hpp>
#include <fogflow/format.hpp>
#include <fogflow/oracle.hpp>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInput = 3;
constexpr int kExitInvariant = 4;

int fail(int code, std::string const & message) {
    std::cerr << "fogflow: " << message << '\n';
    return code;
}

// Flags that map one-to-one onto configuration keys.
struct Overrides {
    std::map<std::string, std::string> values;

    void bind(CLI::App * app, std::string const & key, std::string const & help) {
        app->add_option("--" + key, values[key], help);
    }

    void apply(CLI::App const * app, fogflow::ExperimentConfig & config) const {
        for (auto const & [key, value] : values) {
            if (app->count("--" + key) > 0) {
                fogflow::apply_setting(config, key, value);
            }
        }
    }
};

int run_command(std::string const & config_path, Overrides const & overrides, CLI::App const * app) {
    fogflow::ExperimentConfig config;
    try {
        if (!config_path.empty()) {
            config = fogflow::read_config(config_path);
        }
        overrides.apply(app, config);
        fogflow::check_experiment(config);
    } catch (std::exception const & e) {
        return fail(kExitConfig, e.what());
    }

    std::optional<fogflow::Problem> problem;
    try {
        problem.emplace(fogflow::load_workflow(config.workflow), fogflow::load_pool(config), config.weights);
    } catch (fogflow::InvariantError const & e) {
        return fail(kExitInvariant, e.what());
    } catch (std::exception const & e) {
        return fail(kExitInput, e.what());
    }

    try {
        auto const report = fogflow::run_experiment(config, *problem);
        fogflow::write_report(report, config, *problem);
        for (auto const & row : report.summary) {
            std::cout << fogflow::to_string(row.algorithm) << ": mean fitness " << fogflow::format_number(row.mean[3])
                      << ", makespan " << fogflow::format_number(row.mean[0]) << " s, cost $"
                      << fogflow::format_number(row.mean[1]) << ", energy " << fogflow::format_number(row.mean[2])
                      << " J over " << row.runs << " runs\n";
        }
        std::cout << "results written to " << config.output_dir.string() << '\n';
    } catch (fogflow::InvariantError const & e) {
        return fail(kExitInvariant, e.what());
    } catch (fogflow::ConfigError const & e) {
        return fail(kExitConfig, e.what());
    }
    return 0;
}

int describe_command(std::string const & source) {
    try {
        std::cout << fogflow::describe(fogflow::load_workflow(source)) << '\n';
    } catch (fogflow::InvariantError const & e) {
        return fail(kExitInvariant, e.what());
    } catch (std::exception const & e) {
        return fail(kExitInput, e.what());
    }
    return 0;
}

int oracle_command(fogflow::ExperimentConfig const & config, std::size_t cap, std::string const & trace_path) {
    try {
        fogflow::check_weights(config.weights);
    } catch (std::exception const & e) {
        return fail(kExitConfig, e.what());
    }
    try {
        fogflow::Problem const problem(fogflow::load_workflow(config.workflow), fogflow::load_pool(config),
                                       config.weights);
        fogflow::ExhaustiveOracle const oracle(problem, cap);
        auto const best = oracle.best();
        std::cout << "mappings: " << oracle.count() << '\n'
                  << "best: " << fogflow::format_mapping(best.genome) << '\n'
                  << "makespan_s: " << fogflow::format_number(best.raw.makespan) << '\n'
                  << "cost_usd: " << fogflow::format_number(best.raw.total_cost) << '\n'
                  << "energy_j: " << fogflow::format_number(best.raw.total_energy) << '\n'
                  << "fitness: " << fogflow::format_number(best.fitness) << '\n';
        if (!trace_path.empty()) {
            std::ofstream out(trace_path);
            fogflow::write_trace_csv(out, problem.simulator().simulate(best.genome), best.genome);
        }
    } catch (fogflow::ConfigError const & e) {
        return fail(kExitConfig, e.what());
    } catch (fogflow::InvariantError const & e) {
        return fail(kExitInvariant, e.what());
    } catch (std::exception const & e) {
        return fail(kExitInput, e.what());
    }
    return 0;
}

} // namespace

int main(int argc, char ** argv) {
    CLI::App app{"Workflow scheduling on cloud-fog resources with PSO, GA, DE and GA-PSO"};
    app.require_subcommand(1);

    auto * run = app.add_subcommand("run", "Run optimizers for several seeds and write CSV results");
    std::string config_path;
    run->add_option("--config", config_path, "Key = value configuration file")->check(CLI::ExistingFile);
    Overrides overrides;
    overrides.bind(run, "workflow", "DAX file or layered:<widths>[;density=..][;seed=..]");
    overrides.bind(run, "algorithms", "Comma-separated subset of pso,ga,de,gapso");
    overrides.bind(run, "repeats", "Runs per algorithm");
    overrides.bind(run, "seed", "Base seed; run r uses seed + r");
    overrides.bind(run, "pop", "Population size");
    overrides.bind(run, "iters", "Iterations");
    overrides.bind(run, "weights", "Makespan,cost,energy weights");
    overrides.bind(run, "pool", "End devices,fog nodes,cloud servers");
    overrides.bind(run, "resources", "Resource table CSV (overrides --pool)");
    overrides.bind(run, "threads", "Evaluation threads");
    overrides.bind(run, "traces", "Write schedule traces of each run's best mapping");
    overrides.bind(run, "out", "Output directory");

    auto * describe = app.add_subcommand("describe", "Summarize a workflow");
    std::string describe_source;
    describe->add_option("workflow", describe_source, "DAX file or layered:<widths>")->required();

    auto * oracle = app.add_subcommand("oracle", "Exhaustively search a small instance");
    std::string oracle_workflow;
    std::string oracle_pool = "1,1,1";
    std::string oracle_weights = "0.3,0.3,0.3";
    std::string oracle_resources;
    std::string trace_path;
    std::size_t cap = fogflow::kDefaultOracleCap;
    oracle->add_option("--workflow", oracle_workflow, "DAX file or layered:<widths>")->required();
    oracle->add_option("--pool", oracle_pool, "End devices,fog nodes,cloud servers")->capture_default_str();
    oracle->add_option("--weights", oracle_weights, "Makespan,cost,energy weights")->capture_default_str();
    oracle->add_option("--resources", oracle_resources, "Resource table CSV (overrides --pool)");
    oracle->add_option("--cap", cap, "Maximum number of mappings")->capture_default_str();
    oracle->add_option("--trace", trace_path, "Write the best schedule as CSV");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const & e) {
        int const code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (*run) {
        return run_command(config_path, overrides, run);
    }
    if (*describe) {
        return describe_command(describe_source);
    }

    fogflow::ExperimentConfig config;
    try {
        fogflow::apply_setting(config, "workflow", oracle_workflow);
        fogflow::apply_setting(config, "pool", oracle_pool);
        fogflow::apply_setting(config, "weights", oracle_weights);
        if (!oracle_resources.empty()) {
            fogflow::apply_setting(config, "resources", oracle_resources);
        }
    } catch (std::exception const & e) {
        return fail(kExitConfig, e.what());
    }
    return oracle_command(config, cap, trace_path);
}
