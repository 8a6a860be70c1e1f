#include <fogflow/optimizers.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <thread>

#include <fogflow/error.hpp>

namespace fogflow {

Problem::Problem(Workflow workflow, ResourcePool pool, Weights weights)
    : simulator_(std::move(workflow), std::move(pool)), weights_(weights) {
    check_weights(weights_);
}

std::string_view to_string(Algorithm algorithm) {
    switch (algorithm) {
    case Algorithm::Pso: return "pso";
    case Algorithm::Ga: return "ga";
    case Algorithm::De: return "de";
    case Algorithm::GaPso: return "gapso";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "pso") return Algorithm::Pso;
    if (name == "ga") return Algorithm::Ga;
    if (name == "de") return Algorithm::De;
    if (name == "gapso" || name == "ga-pso" || name == "ga_pso") return Algorithm::GaPso;
    throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected pso, ga, de or gapso)");
}

void check_config(OptimizerConfig const & config, Algorithm algorithm) {
    auto const rate = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (config.population < 2) {
        throw ConfigError("population must be at least 2");
    }
    if (config.iterations < 1) {
        throw ConfigError("iterations must be at least 1");
    }
    if (config.threads < 1) {
        throw ConfigError("threads must be at least 1");
    }
    bool const uses_ga = algorithm == Algorithm::Ga || algorithm == Algorithm::GaPso;
    bool const uses_pso = algorithm == Algorithm::Pso || algorithm == Algorithm::GaPso;
    if (uses_ga) {
        if (!rate(config.ga.crossover_rate) || !rate(config.ga.mutation_rate)) {
            throw ConfigError("GA crossover and mutation rates must lie in [0, 1]");
        }
        if (config.ga.tournament_size < 1) {
            throw ConfigError("tournament size must be at least 1");
        }
        if (config.ga.elite_count < 1 || config.ga.elite_count > config.population) {
            throw ConfigError("elite count must lie in 1..population");
        }
    }
    if (uses_pso) {
        auto const & c = config.pso;
        if (!std::isfinite(c.omega) || !std::isfinite(c.c1) || !std::isfinite(c.c2)) {
            throw ConfigError("PSO coefficients must be finite");
        }
    }
    if (algorithm == Algorithm::De) {
        if (config.population < 4) {
            throw ConfigError("differential evolution needs a population of at least 4");
        }
        if (!rate(config.de.cr)) {
            throw ConfigError("DE crossover probability must lie in [0, 1]");
        }
        if (!(config.de.f > 0.0) || !std::isfinite(config.de.f)) {
            throw ConfigError("DE differential weight must be positive");
        }
    }
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn && fn) {
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += threads) {
                fn(i);
            }
        });
    }
}

std::vector<Metrics> evaluate_all(Simulator const & simulator, std::vector<Mapping> const & genomes,
                                  std::size_t threads) {
    std::vector<Metrics> metrics(genomes.size());
    parallel_for(genomes.size(), threads, [&](std::size_t i) { metrics[i] = simulator.evaluate(genomes[i]); });
    return metrics;
}

// State shared by every algorithm for one run: the RNG, the frozen objective
// and the best individual found so far.
class Search {
public:
    Search(Problem const & problem, OptimizerConfig const & config)
        : problem_(problem), config_(config), rng_(config.seed) {
        auto initial = init_population(problem, config.population, rng_, config.threads);
        objective_.emplace(problem.weights(), initial.bounds);
        evaluations_ = initial.members.size();
        for (auto const & ind : initial.members) {
            offer(ind);
        }
        initial_ = std::move(initial.members);
        record();
    }

    Problem const & problem() const { return problem_; }
    OptimizerConfig const & config() const { return config_; }
    Rng & rng() { return rng_; }
    std::size_t resources() const { return problem_.resources(); }
    std::size_t tasks() const { return problem_.tasks(); }
    std::vector<Individual> take_initial() { return std::move(initial_); }
    Individual const & best() const { return *best_; }

    // All random draws for a batch happen before this call.
    std::vector<Individual> evaluate(std::vector<Mapping> genomes) {
        auto const metrics = evaluate_all(problem_.simulator(), genomes, config_.threads);
        std::vector<Individual> out;
        out.reserve(genomes.size());
        for (std::size_t i = 0; i < genomes.size(); ++i) {
            out.push_back(Individual{std::move(genomes[i]), metrics[i], (*objective_)(metrics[i])});
            offer(out.back());
        }
        evaluations_ += out.size();
        return out;
    }

    void record() { convergence_.push_back(ConvergencePoint{best_->fitness, best_->raw}); }

    RunResult finish() {
        if (!std::is_sorted(convergence_.rbegin(), convergence_.rend(),
                            [](auto const & a, auto const & b) { return a.best_fitness < b.best_fitness; })) {
            throw InvariantError("convergence sequence increased");
        }
        return RunResult{*best_, std::move(convergence_), evaluations_, objective_->bounds()};
    }

private:
    void offer(Individual const & candidate) {
        if (!best_ || candidate.fitness < best_->fitness) {
            best_ = candidate;
        }
    }

    Problem const & problem_;
    OptimizerConfig const & config_;
    Rng rng_;
    std::optional<Objective> objective_;
    std::optional<Individual> best_;
    std::vector<Individual> initial_;
    std::vector<ConvergencePoint> convergence_;
    std::size_t evaluations_ = 0;
};

// ---------------------------------------------------------------- GA

using BatchEvaluator = std::function<std::vector<Individual>(std::vector<Mapping>)>;

void ga_step(std::vector<Individual> & population, GaParams const & params, std::size_t resources, Rng & rng,
             BatchEvaluator const & evaluate) {
    std::size_t const size = population.size();
    std::size_t const n = population.front().genome.size();

    std::vector<double> fitness(size);
    std::transform(population.begin(), population.end(), fitness.begin(), [](auto const & i) { return i.fitness; });

    std::vector<std::size_t> mating(size);
    for (auto & slot : mating) {
        slot = tournament_select(fitness, params.tournament_size, rng);
    }

    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Mapping> offspring;
    offspring.reserve(size);
    for (std::size_t k = 0; offspring.size() < size; k += 2) {
        auto const & a = population[mating[k]].genome;
        auto const & b = population[mating[k + 1 < size ? k + 1 : 0]].genome;
        bool const cross = u(rng) < params.crossover_rate;
        if (cross && n > 1) {
            std::uniform_int_distribution<std::size_t> point(1, n - 1);
            auto [c1, c2] = single_point_crossover(a, b, point(rng));
            offspring.push_back(std::move(c1));
            if (offspring.size() < size) {
                offspring.push_back(std::move(c2));
            }
        } else {
            offspring.push_back(a);
            if (offspring.size() < size) {
                offspring.push_back(b);
            }
        }
    }
    for (auto & child : offspring) {
        uniform_mutation(child, params.mutation_rate, resources, rng);
    }

    auto children = evaluate(std::move(offspring));

    // Merge parents and offspring, keep the best `size`. Offspring identical
    // to a genome already in the pool are dropped.
    std::set<Mapping> seen;
    for (auto const & p : population) {
        seen.insert(p.genome);
    }
    std::vector<Individual> merged = std::move(population);
    for (auto & child : children) {
        if (seen.insert(child.genome).second) {
            merged.push_back(std::move(child));
        }
    }
    std::stable_sort(merged.begin(), merged.end(),
                     [](auto const & a, auto const & b) { return a.fitness < b.fitness; });
    merged.resize(size);
    population = std::move(merged);
}

void ga_generation(Search & search, std::vector<Individual> & population) {
    ga_step(population, search.config().ga, search.resources(), search.rng(),
            [&](std::vector<Mapping> genomes) { return search.evaluate(std::move(genomes)); });
}

// ---------------------------------------------------------------- PSO

struct Swarm {
    std::vector<Mapping> positions;
    std::vector<std::vector<double>> velocities;
    std::vector<Individual> pbest;
    Individual gbest;
};

Swarm make_swarm(std::vector<Individual> population, Individual gbest) {
    Swarm swarm;
    for (auto const & ind : population) {
        swarm.positions.push_back(ind.genome);
        swarm.velocities.emplace_back(ind.genome.size(), 0.0);
    }
    swarm.pbest = std::move(population);
    swarm.gbest = std::move(gbest);
    return swarm;
}

void pso_iteration(Search & search, Swarm & swarm) {
    auto const & coeff = search.config().pso;
    auto & rng = search.rng();
    std::size_t const m = search.resources();
    double const v_max = static_cast<double>(m - 1);

    for (std::size_t i = 0; i < swarm.positions.size(); ++i) {
        double const r1 = open_unit(rng);
        double const r2 = open_unit(rng);
        auto & x = swarm.positions[i];
        auto & v = swarm.velocities[i];
        auto const & pbest = swarm.pbest[i].genome;
        auto const & gbest = swarm.gbest.genome;
        for (std::size_t j = 0; j < x.size(); ++j) {
            double const xj = static_cast<double>(x[j]);
            v[j] = pso_velocity(v[j], xj, static_cast<double>(pbest[j]), static_cast<double>(gbest[j]), coeff,
                                r1, r2, v_max);
            x[j] = project_gene(xj + v[j], m);
        }
    }

    auto evaluated = search.evaluate(swarm.positions);
    for (std::size_t i = 0; i < evaluated.size(); ++i) {
        if (evaluated[i].fitness < swarm.pbest[i].fitness) {
            swarm.pbest[i] = std::move(evaluated[i]);
        }
    }
    for (auto const & p : swarm.pbest) {
        if (p.fitness < swarm.gbest.fitness) {
            swarm.gbest = p;
        }
    }
}

// ---------------------------------------------------------------- DE

void de_step(std::vector<Individual> & population, DeParams const & params, std::size_t resources, Rng & rng,
             BatchEvaluator const & evaluate) {
    std::size_t const n = population.front().genome.size();
    std::uniform_int_distribution<std::size_t> gene(0, n - 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    std::vector<Mapping> trials;
    trials.reserve(population.size());
    std::vector<double> draws(n);
    for (std::size_t i = 0; i < population.size(); ++i) {
        auto const [r1, r2, r3] = distinct_partners(population.size(), i, rng);
        std::size_t const forced = gene(rng);
        for (auto & d : draws) {
            d = u(rng);
        }
        trials.push_back(de_trial(population[i].genome, population[r1].genome, population[r2].genome,
                                  population[r3].genome, params.f, params.cr, forced, draws, resources));
    }

    auto evaluated = evaluate(std::move(trials));
    for (std::size_t i = 0; i < population.size(); ++i) {
        if (evaluated[i].fitness < population[i].fitness) {
            population[i] = std::move(evaluated[i]);
        }
    }
}

void de_generation(Search & search, std::vector<Individual> & population) {
    de_step(population, search.config().de, search.resources(), search.rng(),
            [&](std::vector<Mapping> genomes) { return search.evaluate(std::move(genomes)); });
}

BatchEvaluator plain_evaluator(Problem const & problem, Objective const & objective) {
    return [&](std::vector<Mapping> genomes) {
        auto const metrics = evaluate_all(problem.simulator(), genomes, 1);
        std::vector<Individual> out;
        for (std::size_t i = 0; i < genomes.size(); ++i) {
            out.push_back(Individual{std::move(genomes[i]), metrics[i], objective(metrics[i])});
        }
        return out;
    };
}

} // namespace

void ga_generation(Problem const & problem, Objective const & objective, GaParams const & params,
                   std::vector<Individual> & population, Rng & rng) {
    if (population.empty()) {
        throw ConfigError("GA generation needs a non-empty population");
    }
    ga_step(population, params, problem.resources(), rng, plain_evaluator(problem, objective));
}

void de_generation(Problem const & problem, Objective const & objective, DeParams const & params,
                   std::vector<Individual> & population, Rng & rng) {
    if (population.size() < 4) {
        throw ConfigError("differential evolution needs a population of at least 4");
    }
    de_step(population, params, problem.resources(), rng, plain_evaluator(problem, objective));
}

std::vector<Mapping> random_population(std::size_t tasks, std::size_t resources, std::size_t size, Rng & rng) {
    std::vector<Mapping> genomes;
    genomes.reserve(size);
    for (std::size_t k = 0; k < size; ++k) {
        genomes.emplace_back(random_genome(tasks, resources, rng));
    }
    return genomes;
}

Population init_population(Problem const & problem, std::size_t size, Rng & rng, std::size_t threads) {
    if (size < 1) {
        throw ConfigError("population must not be empty");
    }
    auto genomes = random_population(problem.tasks(), problem.resources(), size, rng);
    auto const metrics = evaluate_all(problem.simulator(), genomes, threads);
    Population population;
    population.bounds = calibrate_bounds(metrics);
    Objective const objective(problem.weights(), population.bounds);
    for (std::size_t i = 0; i < size; ++i) {
        population.members.push_back(Individual{std::move(genomes[i]), metrics[i], objective(metrics[i])});
    }
    return population;
}

RunResult run_ga(Problem const & problem, OptimizerConfig const & config) {
    check_config(config, Algorithm::Ga);
    Search search(problem, config);
    auto population = search.take_initial();
    for (std::size_t it = 0; it < config.iterations; ++it) {
        ga_generation(search, population);
        search.record();
    }
    return search.finish();
}

RunResult run_pso(Problem const & problem, OptimizerConfig const & config) {
    check_config(config, Algorithm::Pso);
    Search search(problem, config);
    auto swarm = make_swarm(search.take_initial(), search.best());
    for (std::size_t it = 0; it < config.iterations; ++it) {
        pso_iteration(search, swarm);
        search.record();
    }
    return search.finish();
}

RunResult run_de(Problem const & problem, OptimizerConfig const & config) {
    check_config(config, Algorithm::De);
    Search search(problem, config);
    auto population = search.take_initial();
    for (std::size_t it = 0; it < config.iterations; ++it) {
        de_generation(search, population);
        search.record();
    }
    return search.finish();
}

RunResult run_ga_pso(Problem const & problem, OptimizerConfig const & config) {
    check_config(config, Algorithm::GaPso);
    Search search(problem, config);
    auto population = search.take_initial();
    std::size_t const ga_iterations = config.iterations / 2;
    for (std::size_t it = 0; it < ga_iterations; ++it) {
        ga_generation(search, population);
        search.record();
    }
    auto swarm = make_swarm(std::move(population), search.best());
    for (std::size_t it = ga_iterations; it < config.iterations; ++it) {
        pso_iteration(search, swarm);
        search.record();
    }
    return search.finish();
}

RunResult run(Algorithm algorithm, Problem const & problem, OptimizerConfig const & config) {
    switch (algorithm) {
    case Algorithm::Pso: return run_pso(problem, config);
    case Algorithm::Ga: return run_ga(problem, config);
    case Algorithm::De: return run_de(problem, config);
    case Algorithm::GaPso: return run_ga_pso(problem, config);
    }
    throw InvariantError("unhandled algorithm");
}

} // namespace fogflow
