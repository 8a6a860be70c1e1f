#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <fogflow/error.hpp>
#include <fogflow/operators.hpp>

using namespace fogflow;

TEST_CASE("gene projection rounds then clamps") {
    CHECK(project_gene(2.4, 5) == 2);
    CHECK(project_gene(2.5, 5) == 3);
    CHECK(project_gene(5.6, 5) == 4);
    CHECK(project_gene(-0.7, 5) == 0);
    CHECK(project_gene(1e300, 5) == 4);
    CHECK(project_gene(-std::numeric_limits<double>::infinity(), 5) == 0);
    CHECK(project_gene(std::nan(""), 5) == 0);
    CHECK(project_gene(3.0, 1) == 0);
}

TEST_CASE("velocity update by direct substitution") {
    PsoCoefficients const c{1.0, 2.0, 2.0};
    // v' = 1 + 2*0.5*(4-3) + 2*0.5*(2-3) = 1
    double const v = pso_velocity(1.0, 3.0, 4.0, 2.0, c, 0.5, 0.5, 10.0);
    CHECK(v == 1.0);
    CHECK(project_gene(3.0 + v, 10) == 4);
}

TEST_CASE("velocity clamp") {
    PsoCoefficients const c{1.0, 2.0, 2.0};
    CHECK(pso_velocity(0.0, 0.0, 9.0, 9.0, c, 0.99, 0.99, 4.0) == 4.0);
    CHECK(pso_velocity(0.0, 9.0, 0.0, 0.0, c, 0.99, 0.99, 4.0) == -4.0);
    CHECK(pso_velocity(3.0, 0.0, 0.0, 0.0, c, 0.5, 0.5, 0.0) == 0.0);
}

TEST_CASE("single-point crossover") {
    Mapping const a({1, 1, 1, 1});
    Mapping const b({2, 2, 2, 2});
    auto const [c1, c2] = single_point_crossover(a, b, 2);
    CHECK(c1 == Mapping({1, 1, 2, 2}));
    CHECK(c2 == Mapping({2, 2, 1, 1}));
    CHECK_THROWS_AS(single_point_crossover(a, Mapping({1}), 1), InvariantError);
}

TEST_CASE("mutation rates 0 and 1") {
    Rng rng(1);
    Mapping genome({0, 1, 2, 3, 4});
    uniform_mutation(genome, 0.0, 5, rng);
    CHECK(genome == Mapping({0, 1, 2, 3, 4}));

    std::set<ResourceId> values;
    for (int k = 0; k < 50; ++k) {
        uniform_mutation(genome, 1.0, 5, rng);
        values.insert(genome.values().begin(), genome.values().end());
    }
    CHECK(values == std::set<ResourceId>{0, 1, 2, 3, 4});
}

TEST_CASE("tournament picks the fitter contestant") {
    Rng rng(9);
    std::vector<double> const fitness{0.9, 0.1, 0.5, 0.7};
    std::vector<int> wins(4, 0);
    for (int k = 0; k < 4000; ++k) {
        ++wins[tournament_select(fitness, 2, rng)];
    }
    // P(win) for size 2 with replacement: (2*(rank below)+1)/16 -> 7/16, 5/16, 3/16, 1/16
    CHECK(wins[1] > wins[2]);
    CHECK(wins[2] > wins[3]);
    CHECK(wins[3] > wins[0]);
    CHECK(tournament_select(std::vector<double>{0.3}, 2, rng) == 0);
}

TEST_CASE("DE mutant gene by direct substitution") {
    double const gene = de_mutant_gene(2.0, 4.0, 1.0, 1.2);
    CHECK(gene == doctest::Approx(5.6));
    CHECK(project_gene(gene, 10) == 6);
    CHECK(project_gene(gene, 5) == 4);
}

TEST_CASE("DE trial with CR = 0 takes only the forced gene from the mutant") {
    Mapping const target({0, 0, 0, 0, 0});
    Mapping const base({3, 3, 3, 3, 3});
    Mapping const a({1, 1, 1, 1, 1});
    Mapping const b({1, 1, 1, 1, 1});
    std::vector<double> const draws{0.0, 0.1, 0.2, 0.3, 0.4};
    for (std::size_t forced = 0; forced < 5; ++forced) {
        auto const trial = de_trial(target, base, a, b, 1.2, 0.0, forced, draws, 5);
        for (std::size_t j = 0; j < 5; ++j) {
            CHECK(trial[j] == (j == forced ? 3u : 0u));
        }
    }
    // CR = 1 takes every gene
    auto const all = de_trial(target, base, a, b, 1.2, 1.0, 0, draws, 5);
    CHECK(all == base);
}

TEST_CASE("distinct partners") {
    Rng rng(4);
    for (int k = 0; k < 1000; ++k) {
        auto const p = distinct_partners(5, static_cast<std::size_t>(k % 5), rng);
        std::set<std::size_t> s(p.begin(), p.end());
        CHECK(s.size() == 3);
        CHECK(s.count(static_cast<std::size_t>(k % 5)) == 0);
        CHECK(*s.rbegin() < 5);
    }
    CHECK_THROWS_AS(distinct_partners(3, 0, rng), ConfigError);
}

TEST_CASE("genes stay feasible under adversarial coefficients") {
    Rng rng(77);
    std::uniform_real_distribution<double> wild(-1e6, 1e6);
    for (int trial = 0; trial < 2000; ++trial) {
        std::size_t const m = 1 + rng() % 8;
        double const f = std::abs(wild(rng));
        double const gene = de_mutant_gene(static_cast<double>(rng() % m), static_cast<double>(rng() % m),
                                           static_cast<double>(rng() % m), f);
        CHECK(project_gene(gene, m) < m);

        PsoCoefficients const c{wild(rng), wild(rng), wild(rng)};
        double const v_max = static_cast<double>(m - 1);
        double const v = pso_velocity(wild(rng), static_cast<double>(rng() % m), static_cast<double>(rng() % m),
                                      static_cast<double>(rng() % m), c, open_unit(rng), open_unit(rng), v_max);
        CHECK(std::abs(v) <= v_max);
        CHECK(project_gene(static_cast<double>(rng() % m) + v, m) < m);
    }
}

TEST_CASE("open unit interval") {
    Rng rng(0);
    for (int k = 0; k < 10000; ++k) {
        double const u = open_unit(rng);
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}
