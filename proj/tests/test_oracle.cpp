#include <doctest.h>

#include <fogflow/error.hpp>
#include <fogflow/oracle.hpp>

#include "test_support.hpp"

using namespace fogflow;
using namespace fogflow::testing;

TEST_CASE("oracle enumerates in lexicographic order") {
    auto const problem = diamond_problem();
    ExhaustiveOracle const oracle(problem);
    REQUIRE(oracle.count() == 81);
    CHECK(oracle.genome(0) == Mapping({0, 0, 0, 0}));
    CHECK(oracle.genome(1) == Mapping({0, 0, 0, 1}));
    CHECK(oracle.genome(3) == Mapping({0, 0, 1, 0}));
    CHECK(oracle.genome(80) == Mapping({2, 2, 2, 2}));
    for (std::size_t i = 0; i < oracle.count(); ++i) {
        CHECK(oracle.metrics(i) == problem.simulator().evaluate(oracle.genome(i)));
    }
    CHECK_THROWS_AS(oracle.genome(81), std::out_of_range);
}

TEST_CASE("diamond evaluations by hand") {
    // split 2000 MI, left 4000, right 3000, join 1500; edges 30, 20, 10, 25 Mb
    auto const problem = diamond_problem();
    auto const & sim = problem.simulator();

    // everything on the end device: 2 + 4 + 3 + 1.5 s back to back
    auto const all_end = sim.evaluate(Mapping({0, 0, 0, 0}));
    CHECK(all_end.makespan == 10.5);
    CHECK(all_end.total_cost == 0.0);
    // end busy 10.5 s at 700 W, fog and cloud idle at 40 W and 1300 W
    CHECK(all_end.total_energy == doctest::Approx(10.5 * 700 + 10.5 * 40 + 10.5 * 1300).epsilon(1e-12));

    // split on end, left on fog, right on cloud, join on end
    // left: starts 2 + 30/min(20,10) = 5, runs 4000/1300
    // right: starts 2 + 20/min(20,10) = 4, runs 3000/1600 = 1.875 -> 5.875
    // join: left output 10 Mb over min(10,40) = 1 s, right 25 Mb over min(1,40) = 25 s
    double const left_finish = 5.0 + 4000.0 / 1300.0;
    double const join_start = std::max(left_finish + 1.0, 5.875 + 25.0);
    double const ms = join_start + 1.5;
    auto const mixed = sim.evaluate(Mapping({0, 1, 2, 0}));
    CHECK(mixed.makespan == doctest::Approx(ms).epsilon(1e-12));
    double const cost = 30 * 0.01 + 20 * 0.02 + 10 * 0.01 + 25 * 0.02 + 0.48 * (4000.0 / 1300.0) + 0.96 * 1.875;
    CHECK(mixed.total_cost == doctest::Approx(cost).epsilon(1e-12));
    double const end_busy = 2.0 + 1.5;
    double const fog_busy = 4000.0 / 1300.0;
    double const cloud_busy = 1.875;
    double const energy = 700 * end_busy + 30 * (ms - end_busy) + 800 * fog_busy + 40 * (ms - fog_busy)
                          + 1600 * cloud_busy + 1300 * (ms - cloud_busy);
    CHECK(mixed.total_energy == doctest::Approx(energy).epsilon(1e-12));
}

TEST_CASE("oracle best is the argmin with lexicographic tie-break") {
    auto const problem = diamond_problem();
    ExhaustiveOracle const oracle(problem);
    auto const bounds = oracle.full_bounds();
    Objective const objective(problem.weights(), bounds);
    auto const best = oracle.best();
    for (std::size_t i = 0; i < oracle.count(); ++i) {
        double const f = objective(oracle.metrics(i));
        CHECK(f >= best.fitness);
        if (f == best.fitness) {
            CHECK(best.genome <= oracle.genome(i));
        }
    }
    auto const free = brute_force(problem);
    CHECK(free.genome == best.genome);
    CHECK(free.fitness == best.fitness);
}

TEST_CASE("oracle ties resolve to the smallest genome") {
    // two identical end devices: every mapping has a mirror image
    Problem const problem(parse_dax_file(fixture("chain_end_fog.dax")), default_testbed(2, 0, 0), Weights{});
    auto const best = brute_force(problem);
    CHECK(best.genome == Mapping({0, 0}));
}

TEST_CASE("single task: best placement by hand") {
    Problem const problem(parse_dax_file(fixture("single_job.dax")), default_testbed(1, 1, 1), Weights{});
    ExhaustiveOracle const oracle(problem);
    REQUIRE(oracle.count() == 3);
    // 2500 MI: end 2.5 s, fog 2500/1300 s, cloud 2500/1600 s
    CHECK(oracle.metrics(0).makespan == 2.5);
    CHECK(oracle.metrics(1).makespan == doctest::Approx(2500.0 / 1300.0));
    CHECK(oracle.metrics(2).makespan == doctest::Approx(2500.0 / 1600.0));
    auto const best = oracle.best();
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(best.fitness <= Objective(problem.weights(), oracle.full_bounds())(oracle.metrics(i)));
    }
}

TEST_CASE("single resource: the all-zero mapping") {
    Problem const problem(parse_dax_file(fixture("diamond.dax")), default_testbed(0, 1, 0), Weights{});
    auto const best = brute_force(problem);
    CHECK(best.genome == Mapping({0, 0, 0, 0}));
    CHECK(best.fitness == 0.0);
}

TEST_CASE("cap") {
    auto const problem = diamond_problem();
    CHECK_THROWS_AS(ExhaustiveOracle(problem, 80), ConfigError);
    CHECK_NOTHROW(ExhaustiveOracle(problem, 81));
    Problem const big(parse_dax_file(fixture("montage_mini.dax")), default_testbed(1, 5, 5), Weights{});
    CHECK_THROWS_AS(brute_force(big), ConfigError);
}
