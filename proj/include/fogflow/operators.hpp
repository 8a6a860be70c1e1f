#pragma once

// Variation operators shared by the optimizers. Each takes its random draws
// either from an explicit Rng or as plain arguments so the arithmetic can be
// checked in isolation.

#include <cstddef>
#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <fogflow/schedule.hpp>

namespace fogflow {

using Rng = std::mt19937_64;

// Round to nearest, then clamp to 0..m-1. NaN maps to 0.
ResourceId project_gene(double value, std::size_t resources);

std::vector<ResourceId> random_genome(std::size_t tasks, std::size_t resources, Rng & rng);

// Uniform in the open interval (0, 1).
double open_unit(Rng & rng);

struct PsoCoefficients {
    double omega = 1.0;
    double c1 = 2.0;
    double c2 = 2.0;
};

// One coordinate of the velocity update
//   v' = omega*v + c1*r1*(pbest - x) + c2*r2*(gbest - x)
// clamped to [-v_max, v_max].
double pso_velocity(double velocity, double position, double pbest, double gbest, PsoCoefficients const & c,
                    double r1, double r2, double v_max);

// Children swap tails at `point` (1..n-1): {a[0,point) b[point,n)}, {b[0,point) a[point,n)}.
std::pair<Mapping, Mapping> single_point_crossover(Mapping const & a, Mapping const & b, std::size_t point);

// Redraws each gene uniformly from 0..m-1 with probability `rate`.
void uniform_mutation(Mapping & genome, double rate, std::size_t resources, Rng & rng);

// Index of the fittest of `size` uniformly drawn contestants (with
// replacement). The first drawn wins ties.
std::size_t tournament_select(std::span<double const> fitness, std::size_t size, Rng & rng);

// base + f * (a - b), before projection.
double de_mutant_gene(double base, double a, double b, double f);

// Binomial crossover of a rand/1 mutant into `target`. Gene j comes from the
// projected mutant when crossover_draws[j] < cr or j == forced; otherwise
// from the target.
Mapping de_trial(Mapping const & target, Mapping const & base, Mapping const & a, Mapping const & b, double f,
                 double cr, std::size_t forced, std::span<double const> crossover_draws, std::size_t resources);

// Three distinct indices in 0..population-1, all different from `exclude`.
// Requires population >= 4.
std::array<std::size_t, 3> distinct_partners(std::size_t population, std::size_t exclude, Rng & rng);

} // namespace fogflow
