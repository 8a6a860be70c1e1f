#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include <fogflow/objective.hpp>
#include <fogflow/operators.hpp>
#include <fogflow/schedule.hpp>

namespace fogflow {

// A workflow, a resource pool and the weights of the scalar objective.
class Problem {
public:
    Problem(Workflow workflow, ResourcePool pool, Weights weights);

    Simulator const & simulator() const noexcept { return simulator_; }
    Weights const & weights() const noexcept { return weights_; }
    std::size_t tasks() const noexcept { return simulator_.workflow().size(); }
    std::size_t resources() const noexcept { return simulator_.pool().size(); }

private:
    Simulator simulator_;
    Weights weights_;
};

struct Individual {
    Mapping genome;
    Metrics raw;
    double fitness = 0.0;
};

struct GaParams {
    double crossover_rate = 0.8;
    double mutation_rate = 0.1;
    std::size_t tournament_size = 2;
    // Parents always survive the parents+offspring merge, so at least this
    // many elites are kept for any value in 1..population.
    std::size_t elite_count = 1;
};

struct DeParams {
    double cr = 0.4;
    double f = 1.2;
};

struct OptimizerConfig {
    std::size_t population = 50;
    std::size_t iterations = 100;
    PsoCoefficients pso;
    GaParams ga;
    DeParams de;
    std::uint64_t seed = 0;
    // Worker threads for fitness evaluation. Results do not depend on it.
    std::size_t threads = 1;
};

enum class Algorithm { Pso, Ga, De, GaPso };

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);

// Throws ConfigError when a parameter is out of range for the algorithm.
void check_config(OptimizerConfig const & config, Algorithm algorithm);

struct ConvergencePoint {
    double best_fitness = 0.0;
    Metrics best_raw;
};

struct RunResult {
    Individual best;
    // Entry 0 is the initial population; entry k the best found after iteration k.
    std::vector<ConvergencePoint> convergence;
    std::size_t evaluations = 0;
    NormalizationBounds bounds;
};

struct Population {
    std::vector<Individual> members;
    NormalizationBounds bounds;
};

// P genomes with genes uniform over 0..m-1, drawn in order from `rng`.
std::vector<Mapping> random_population(std::size_t tasks, std::size_t resources, std::size_t size, Rng & rng);

// Draws, evaluates and scores the initial population. Normalization bounds
// are calibrated on it and stay frozen for the rest of a run.
Population init_population(Problem const & problem, std::size_t size, Rng & rng, std::size_t threads = 1);

// One GA generation: size-`tournament_size` tournaments fill a mating pool,
// consecutive pairs undergo single-point crossover with probability
// crossover_rate, every gene mutates with probability mutation_rate, and the
// best `population.size()` of parents plus offspring survive. Offspring whose
// genome already appears among the survivors' candidates are discarded.
void ga_generation(Problem const & problem, Objective const & objective, GaParams const & params,
                   std::vector<Individual> & population, Rng & rng);

// One rand/1/bin DE generation with greedy one-to-one replacement on strict
// improvement.
void de_generation(Problem const & problem, Objective const & objective, DeParams const & params,
                   std::vector<Individual> & population, Rng & rng);

// Every run begins with init_population on an Rng seeded with config.seed, so
// runs of different algorithms with the same seed share their initial
// population and bounds.
RunResult run_pso(Problem const & problem, OptimizerConfig const & config);
RunResult run_ga(Problem const & problem, OptimizerConfig const & config);
RunResult run_de(Problem const & problem, OptimizerConfig const & config);
// GA for the first floor(T/2) iterations, PSO seeded with the GA population
// for the rest.
RunResult run_ga_pso(Problem const & problem, OptimizerConfig const & config);

RunResult run(Algorithm algorithm, Problem const & problem, OptimizerConfig const & config);

} // namespace fogflow
