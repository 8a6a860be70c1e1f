#include <fogflow/operators.hpp>

#include <algorithm>
#include <cmath>

#include <fogflow/error.hpp>

namespace fogflow {

ResourceId project_gene(double value, std::size_t resources) {
    if (std::isnan(value)) {
        return 0;
    }
    double const top = static_cast<double>(resources - 1);
    return static_cast<ResourceId>(std::clamp(std::round(value), 0.0, top));
}

std::vector<ResourceId> random_genome(std::size_t tasks, std::size_t resources, Rng & rng) {
    std::uniform_int_distribution<ResourceId> pick(0, resources - 1);
    std::vector<ResourceId> genes(tasks);
    for (auto & g : genes) {
        g = pick(rng);
    }
    return genes;
}

double open_unit(Rng & rng) {
    std::uniform_real_distribution<double> u(std::nextafter(0.0, 1.0), 1.0);
    return u(rng);
}

double pso_velocity(double velocity, double position, double pbest, double gbest, PsoCoefficients const & c,
                    double r1, double r2, double v_max) {
    double const v = c.omega * velocity + c.c1 * r1 * (pbest - position) + c.c2 * r2 * (gbest - position);
    return std::clamp(v, -v_max, v_max);
}

std::pair<Mapping, Mapping> single_point_crossover(Mapping const & a, Mapping const & b, std::size_t point) {
    if (a.size() != b.size() || point > a.size()) {
        throw InvariantError("crossover point outside the genome");
    }
    Mapping first = a;
    Mapping second = b;
    for (std::size_t k = point; k < a.size(); ++k) {
        first[k] = b[k];
        second[k] = a[k];
    }
    return {std::move(first), std::move(second)};
}

void uniform_mutation(Mapping & genome, double rate, std::size_t resources, Rng & rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<ResourceId> pick(0, resources - 1);
    for (std::size_t k = 0; k < genome.size(); ++k) {
        if (u(rng) < rate) {
            genome[k] = pick(rng);
        }
    }
}

std::size_t tournament_select(std::span<double const> fitness, std::size_t size, Rng & rng) {
    std::uniform_int_distribution<std::size_t> pick(0, fitness.size() - 1);
    std::size_t best = pick(rng);
    for (std::size_t k = 1; k < size; ++k) {
        std::size_t const challenger = pick(rng);
        if (fitness[challenger] < fitness[best]) {
            best = challenger;
        }
    }
    return best;
}

double de_mutant_gene(double base, double a, double b, double f) {
    return base + f * (a - b);
}

Mapping de_trial(Mapping const & target, Mapping const & base, Mapping const & a, Mapping const & b, double f,
                 double cr, std::size_t forced, std::span<double const> crossover_draws, std::size_t resources) {
    Mapping trial = target;
    for (std::size_t j = 0; j < target.size(); ++j) {
        if (j == forced || crossover_draws[j] < cr) {
            double const gene = de_mutant_gene(static_cast<double>(base[j]), static_cast<double>(a[j]),
                                               static_cast<double>(b[j]), f);
            trial[j] = project_gene(gene, resources);
        }
    }
    return trial;
}

std::array<std::size_t, 3> distinct_partners(std::size_t population, std::size_t exclude, Rng & rng) {
    if (population < 4) {
        throw ConfigError("differential evolution needs a population of at least 4");
    }
    std::uniform_int_distribution<std::size_t> pick(0, population - 1);
    std::array<std::size_t, 3> chosen{};
    for (std::size_t k = 0; k < 3; ++k) {
        std::size_t candidate;
        do {
            candidate = pick(rng);
        } while (candidate == exclude || std::find(chosen.begin(), chosen.begin() + k, candidate) != chosen.begin() + k);
        chosen[k] = candidate;
    }
    return chosen;
}

} // namespace fogflow
