#include <doctest.h>

#include <algorithm>

#include <fogflow/error.hpp>
#include <fogflow/oracle.hpp>

#include "test_support.hpp"

using namespace fogflow;
using namespace fogflow::testing;

namespace {

constexpr Algorithm kAll[] = {Algorithm::Pso, Algorithm::Ga, Algorithm::De, Algorithm::GaPso};

OptimizerConfig small_config(std::uint64_t seed, std::size_t pop = 12, std::size_t iters = 15) {
    OptimizerConfig c;
    c.population = pop;
    c.iterations = iters;
    c.seed = seed;
    return c;
}

bool same_result(RunResult const & a, RunResult const & b) {
    if (a.best.genome != b.best.genome || a.best.fitness != b.best.fitness || a.evaluations != b.evaluations
        || a.convergence.size() != b.convergence.size() || !(a.bounds == b.bounds)) {
        return false;
    }
    for (std::size_t k = 0; k < a.convergence.size(); ++k) {
        if (a.convergence[k].best_fitness != b.convergence[k].best_fitness
            || !(a.convergence[k].best_raw == b.convergence[k].best_raw)) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("algorithm names") {
    for (auto a : kAll) {
        CHECK(parse_algorithm(to_string(a)) == a);
    }
    CHECK(parse_algorithm("ga-pso") == Algorithm::GaPso);
    CHECK_THROWS_AS(parse_algorithm("sa"), ConfigError);
}

TEST_CASE("configuration checks") {
    auto c = small_config(1);
    c.population = 1;
    CHECK_THROWS_AS(check_config(c, Algorithm::Ga), ConfigError);
    c = small_config(1, 3);
    CHECK_NOTHROW(check_config(c, Algorithm::Ga));
    CHECK_THROWS_AS(check_config(c, Algorithm::De), ConfigError);
    c = small_config(1);
    c.iterations = 0;
    CHECK_THROWS_AS(check_config(c, Algorithm::Pso), ConfigError);
    c = small_config(1);
    c.ga.mutation_rate = 1.5;
    CHECK_THROWS_AS(check_config(c, Algorithm::GaPso), ConfigError);
    c = small_config(1);
    c.de.f = 0.0;
    CHECK_THROWS_AS(check_config(c, Algorithm::De), ConfigError);
    c.de.f = 1.2;
    c.de.cr = -0.1;
    CHECK_THROWS_AS(check_config(c, Algorithm::De), ConfigError);
    c = small_config(1);
    c.ga.elite_count = 0;
    CHECK_THROWS_AS(check_config(c, Algorithm::Ga), ConfigError);

    auto const problem = diamond_problem();
    CHECK_THROWS_AS(run_de(problem, small_config(1, 3)), ConfigError);
}

TEST_CASE("default optimizer parameters") {
    OptimizerConfig const c;
    CHECK(c.population == 50);
    CHECK(c.iterations == 100);
    CHECK(c.pso.omega == 1.0);
    CHECK(c.pso.c1 == 2.0);
    CHECK(c.pso.c2 == 2.0);
    CHECK(c.ga.crossover_rate == 0.8);
    CHECK(c.ga.mutation_rate == 0.1);
    CHECK(c.de.cr == 0.4);
    CHECK(c.de.f == 1.2);
    Weights const w;
    CHECK(w.makespan == 0.3);
    CHECK(w.cost == 0.3);
    CHECK(w.energy == 0.3);
}

TEST_CASE("initial population") {
    Rng a(5);
    Rng b(5);
    auto const pa = random_population(10, 5, 50, a);
    auto const pb = random_population(10, 5, 50, b);
    CHECK(pa == pb);
    REQUIRE(pa.size() == 50);
    for (auto const & g : pa) {
        CHECK(g.size() == 10);
        CHECK(std::all_of(g.values().begin(), g.values().end(), [](ResourceId r) { return r < 5; }));
    }
    Rng c(1);
    for (auto const & g : random_population(6, 1, 4, c)) {
        CHECK(g == Mapping(std::vector<ResourceId>(6, 0)));
    }

    auto const problem = diamond_problem();
    Rng d(3);
    auto const population = init_population(problem, 20, d);
    std::vector<Metrics> metrics;
    for (auto const & ind : population.members) {
        metrics.push_back(ind.raw);
        CHECK(ind.raw == problem.simulator().evaluate(ind.genome));
    }
    CHECK(population.bounds == calibrate_bounds(metrics));
    Objective const objective(problem.weights(), population.bounds);
    for (auto const & ind : population.members) {
        CHECK(ind.fitness == objective(ind.raw));
    }
}

TEST_CASE("every algorithm: monotone, feasible, deterministic, never below the oracle") {
    auto const diamond = diamond_problem();
    ExhaustiveOracle const oracle(diamond);
    std::vector<Problem> problems;
    problems.push_back(diamond_problem());
    problems.push_back(layered_problem({2, 3, 3, 2}, 17, 1, 2, 2));
    problems.push_back(Problem(parse_dax_file(fixture("montage_mini.dax")), default_testbed(1, 5, 5), Weights{}));

    for (auto algorithm : kAll) {
        for (std::size_t p = 0; p < problems.size(); ++p) {
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                CAPTURE(to_string(algorithm));
                CAPTURE(p);
                CAPTURE(seed);
                auto const & problem = problems[p];
                auto const config = small_config(seed);
                auto const result = run(algorithm, problem, config);

                CHECK(non_increasing(result));
                CHECK(result.convergence.size() == config.iterations + 1);
                CHECK(result.evaluations == config.population * (config.iterations + 1));
                CHECK(result.best.fitness == result.convergence.back().best_fitness);
                REQUIRE(result.best.genome.size() == problem.tasks());
                for (auto g : result.best.genome.values()) {
                    CHECK(g < problem.resources());
                }
                CHECK(result.best.raw == problem.simulator().evaluate(result.best.genome));
                CHECK(result.best.fitness == Objective(problem.weights(), result.bounds)(result.best.raw));

                CHECK(same_result(result, run(algorithm, problem, config)));
                auto threaded = config;
                threaded.threads = 3;
                CHECK(same_result(result, run(algorithm, problem, threaded)));

                if (p == 0) {
                    CHECK(result.best.fitness >= oracle.best(result.bounds).fitness - 1e-12);
                }
            }
        }
    }
}

TEST_CASE("same seed shares the initial population across algorithms") {
    auto const problem = layered_problem({1, 4, 4, 1}, 3, 1, 2, 2);
    auto const config = small_config(21);
    auto const pso = run_pso(problem, config);
    for (auto algorithm : kAll) {
        auto const r = run(algorithm, problem, config);
        CHECK(r.bounds == pso.bounds);
        CHECK(r.convergence[0].best_fitness == pso.convergence[0].best_fitness);
    }
}

TEST_CASE("single-resource search space") {
    auto const problem = layered_problem({1, 2, 1}, 8, 0, 0, 1);
    auto const config = small_config(4);
    for (auto algorithm : kAll) {
        auto const r = run(algorithm, problem, config);
        CHECK(r.best.genome == Mapping(std::vector<ResourceId>(problem.tasks(), 0)));
        for (auto const & point : r.convergence) {
            CHECK(point.best_fitness == r.convergence[0].best_fitness);
        }
    }
}

TEST_CASE("GA without crossover or mutation keeps the population multiset") {
    auto const problem = layered_problem({2, 3, 2}, 9, 1, 2, 2);
    Rng rng(12);
    auto population = init_population(problem, 16, rng);
    Objective const objective(problem.weights(), population.bounds);
    GaParams params;
    params.crossover_rate = 0.0;
    params.mutation_rate = 0.0;

    auto genomes = [](std::vector<Individual> const & pop) {
        std::vector<Mapping> g;
        for (auto const & i : pop) {
            g.push_back(i.genome);
        }
        std::sort(g.begin(), g.end());
        return g;
    };
    auto const before = genomes(population.members);
    double const best_before = std::min_element(population.members.begin(), population.members.end(),
                                                [](auto const & a, auto const & b) { return a.fitness < b.fitness; })
                                   ->fitness;
    for (int k = 0; k < 5; ++k) {
        ga_generation(problem, objective, params, population.members, rng);
        CHECK(genomes(population.members) == before);
        CHECK(population.members.front().fitness == best_before);
    }
}

TEST_CASE("GA generation keeps the best of parents and offspring") {
    auto const problem = layered_problem({2, 3, 2}, 10, 1, 2, 2);
    Rng rng(2);
    auto population = init_population(problem, 10, rng);
    Objective const objective(problem.weights(), population.bounds);
    for (int k = 0; k < 20; ++k) {
        auto const previous = population.members;
        ga_generation(problem, objective, GaParams{}, population.members, rng);
        REQUIRE(population.members.size() == previous.size());
        CHECK(std::is_sorted(population.members.begin(), population.members.end(),
                             [](auto const & a, auto const & b) { return a.fitness < b.fitness; }));
        double const best_prev = std::min_element(previous.begin(), previous.end(), [](auto const & a, auto const & b) {
                                     return a.fitness < b.fitness;
                                 })->fitness;
        CHECK(population.members.front().fitness <= best_prev);
        // the k-th survivor is no worse than the k-th best parent
        auto sorted_prev = previous;
        std::stable_sort(sorted_prev.begin(), sorted_prev.end(),
                         [](auto const & a, auto const & b) { return a.fitness < b.fitness; });
        for (std::size_t i = 0; i < sorted_prev.size(); ++i) {
            CHECK(population.members[i].fitness <= sorted_prev[i].fitness);
        }
    }
}

TEST_CASE("DE generation replaces only on strict improvement") {
    auto const problem = layered_problem({2, 3, 2}, 11, 1, 2, 2);
    Rng rng(6);
    auto population = init_population(problem, 8, rng);
    Objective const objective(problem.weights(), population.bounds);
    for (int k = 0; k < 20; ++k) {
        auto const previous = population.members;
        de_generation(problem, objective, DeParams{}, population.members, rng);
        for (std::size_t i = 0; i < previous.size(); ++i) {
            if (population.members[i].genome != previous[i].genome) {
                CHECK(population.members[i].fitness < previous[i].fitness);
            } else {
                CHECK(population.members[i].fitness == previous[i].fitness);
            }
        }
    }
    std::vector<Individual> tiny(population.members.begin(), population.members.begin() + 3);
    CHECK_THROWS_AS(de_generation(problem, objective, DeParams{}, tiny, rng), ConfigError);
}

TEST_CASE("GA-PSO splits iterations at floor(T/2)") {
    auto const problem = diamond_problem();
    auto config = small_config(3, 6, 2);
    auto const r = run_ga_pso(problem, config);
    CHECK(r.convergence.size() == 3);
    CHECK(r.evaluations == 18);
    CHECK(non_increasing(r));

    // the first floor(T/2) iterations are exactly a GA run of that length
    config.iterations = 7;
    auto const hybrid = run_ga_pso(problem, config);
    config.iterations = 3;
    auto const ga = run_ga(problem, config);
    for (std::size_t k = 0; k <= 3; ++k) {
        CHECK(hybrid.convergence[k].best_fitness == ga.convergence[k].best_fitness);
    }
    CHECK(hybrid.convergence.back().best_fitness <= ga.convergence.back().best_fitness);

    config.iterations = 1; // no GA phase at all
    CHECK(run_ga_pso(problem, config).convergence.size() == 2);
}

TEST_CASE("diamond benchmark: optimizers reach the oracle optimum") {
    auto const problem = diamond_problem();
    ExhaustiveOracle const oracle(problem);
    for (auto algorithm : kAll) {
        int hits = 0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto const r = run(algorithm, problem, small_config(seed, 20, 50));
            auto const target = oracle.best(r.bounds).fitness;
            if (std::abs(r.best.fitness - target) <= 1e-9) {
                ++hits;
            }
        }
        CAPTURE(to_string(algorithm));
        CAPTURE(hits);
        CHECK(hits >= (algorithm == Algorithm::Pso ? 6 : 8));
    }
}
