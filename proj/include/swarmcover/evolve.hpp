#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "swarmcover/codec.hpp"
#include "swarmcover/grid_map.hpp"
#include "swarmcover/rng.hpp"
#include "swarmcover/sim.hpp"

namespace swarmcover {

// Crossover flavours. The default swaps one contiguous window of the gene
// vector (per-UAV-aligned inside run_ga); Uniform swaps each position
// independently with probability 1/2.
enum class CrossoverOp { TwoPoint, Uniform };

// Real-coded GA settings. mutation_rate left unset means the per-gene
// default max(0.01, 1.5/L) for genotype length L.
struct GaConfig {
    int population_size = 1000;
    int generations = 100;
    double crossover_rate = 0.9;
    CrossoverOp crossover_op = CrossoverOp::TwoPoint;
    std::optional<double> mutation_rate;
    double segment_mutation_rate = 0.1;
    int tournament_size = 5;
    int elitism = 1;
    std::uint64_t seed = 1;
    bool early_stop_at_lower_bound = true;

    void validate() const {
        if (population_size < 2) throw std::invalid_argument("population_size must be >= 2");
        if (generations < 1) throw std::invalid_argument("generations must be >= 1");
        if (crossover_rate < 0.0 || crossover_rate > 1.0)
            throw std::invalid_argument("crossover_rate must be in [0, 1]");
        if (mutation_rate && (*mutation_rate < 0.0 || *mutation_rate > 1.0))
            throw std::invalid_argument("mutation_rate must be in [0, 1]");
        if (segment_mutation_rate < 0.0 || segment_mutation_rate > 1.0)
            throw std::invalid_argument("segment_mutation_rate must be in [0, 1]");
        if (tournament_size < 1 || tournament_size > population_size)
            throw std::invalid_argument("tournament_size must be in [1, population_size]");
        if (elitism < 0 || elitism >= population_size)
            throw std::invalid_argument("elitism must be in [0, population_size)");
    }

    double effective_mutation_rate(std::size_t genotype_len) const {
        if (mutation_rate) return *mutation_rate;
        return std::max(0.01, 1.5 / static_cast<double>(genotype_len));
    }
};

struct GaRunResult {
    Genotype best_genotype;
    int best_fitness = 0;
    SimResult best_sim;
    int generations_executed = 0;
    std::vector<int> fitness_history; // best of each generation, non-increasing with elitism
    double wall_time_seconds = 0.0;
};

inline std::vector<Genotype> init_population(Rng& rng, const GridMap& map, int uavs,
                                             int population_size) {
    const std::size_t len = genotype_length(map, uavs);
    std::vector<Genotype> population(population_size);
    for (auto& genotype : population) {
        genotype.resize(len);
        for (double& gene : genotype) gene = rng.next_double();
    }
    return population;
}

// Picks k candidates uniformly with replacement and returns the index of the
// fittest; equal fitness resolves to the lowest population index.
inline std::size_t tournament_select(Rng& rng, const std::vector<int>& fitnesses, int k) {
    if (fitnesses.empty()) throw std::invalid_argument("tournament over empty population");
    std::size_t best = rng.next_below(fitnesses.size());
    for (int i = 1; i < k; ++i) {
        const std::size_t candidate = rng.next_below(fitnesses.size());
        if (fitnesses[candidate] < fitnesses[best] ||
            (fitnesses[candidate] == fitnesses[best] && candidate < best))
            best = candidate;
    }
    return best;
}

namespace evolve_detail {

// Swaps genes [c1, c2) of a window chosen over `cells` positions, repeated at
// the same offsets in every UAV block, so one spatial region changes hands in
// all movement maps at once. With a single block this is plain two-point.
inline void two_point_swap(Rng& rng, Genotype& a, Genotype& b, std::size_t blocks) {
    const std::size_t cells = a.size() / blocks;
    std::size_t c1 = rng.next_below(cells);
    std::size_t c2 = rng.next_below(cells);
    if (c1 > c2) std::swap(c1, c2);
    for (std::size_t block = 0; block < blocks; ++block)
        for (std::size_t g = block * cells + c1; g < block * cells + c2; ++g)
            std::swap(a[g], b[g]);
}

inline void uniform_swap(Rng& rng, Genotype& a, Genotype& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (rng.next_u64() & 1u) std::swap(a[i], b[i]);
}

} // namespace evolve_detail

// Recombines two parents. With probability `rate` the configured operator
// swaps genes between the children, otherwise the parents are returned
// unchanged. Every child gene comes from one of the two parents.
inline std::pair<Genotype, Genotype> crossover(Rng& rng, const Genotype& a, const Genotype& b,
                                               double rate,
                                               CrossoverOp op = CrossoverOp::TwoPoint,
                                               int uavs = 1) {
    if (a.size() != b.size()) throw std::invalid_argument("crossover parents differ in length");
    Genotype child_a = a;
    Genotype child_b = b;
    if (!child_a.empty() && rng.next_double() < rate) {
        if (op == CrossoverOp::TwoPoint)
            evolve_detail::two_point_swap(rng, child_a, child_b, std::max(uavs, 1));
        else
            evolve_detail::uniform_swap(rng, child_a, child_b);
    }
    return {std::move(child_a), std::move(child_b)};
}

inline void mutate_in_place(Rng& rng, Genotype& genotype, double rate) {
    for (double& gene : genotype)
        if (rng.next_double() < rate) gene = rng.next_double();
}

// Uniform-reset mutation: each gene is independently redrawn from [0, 1]
// with probability `rate`.
inline Genotype mutate(Rng& rng, const Genotype& genotype, double rate) {
    Genotype out = genotype;
    mutate_in_place(rng, out, rate);
    return out;
}

namespace evolve_detail {

// Redraws a contiguous window of 2..cells/3 cell positions in every UAV
// block. Large coordinated changes like this are what move a converged
// population between nearby route partitions.
inline void segment_reset_in_place(Rng& rng, Genotype& genotype, int uavs) {
    const std::size_t cells = genotype.size() / uavs;
    const std::size_t max_window = std::max<std::size_t>(2, cells / 3);
    const std::size_t window =
        max_window <= 2 ? 2 : 2 + rng.next_below(max_window - 1);
    const std::size_t start = rng.next_below(cells);
    for (int u = 0; u < uavs; ++u)
        for (std::size_t w = 0; w < window; ++w)
            genotype[u * cells + (start + w) % cells] = rng.next_double();
}

} // namespace evolve_detail

// Generational GA with elitism and tournament selection, minimizing the
// simulator fitness. Deterministic for a given (config, map, uavs): all
// randomness flows from one sequential stream seeded by config.seed.
inline GaRunResult run_ga(const GaConfig& config, const GridMap& map, int uavs) {
    config.validate();
    const auto t_start = std::chrono::steady_clock::now();

    const Simulator sim(map, uavs);
    SimWorkspace ws;
    const std::size_t len = genotype_length(map, uavs);
    const double mutation_rate = config.effective_mutation_rate(len);
    const int bound = theoretical_min_epochs(map, uavs);

    Rng rng(config.seed);
    std::vector<Genotype> population = init_population(rng, map, uavs, config.population_size);
    std::vector<Genotype> next;
    std::vector<int> fitnesses(population.size());
    std::vector<std::size_t> order(population.size());

    GaRunResult result;
    result.best_fitness = std::numeric_limits<int>::max();

    auto vary = [&](Genotype& child) {
        if (rng.next_double() < config.segment_mutation_rate)
            evolve_detail::segment_reset_in_place(rng, child, uavs);
        else
            mutate_in_place(rng, child, mutation_rate);
    };

    for (int gen = 0; gen < config.generations; ++gen) {
        int gen_best = std::numeric_limits<int>::max();
        std::size_t gen_best_idx = 0;
        for (std::size_t i = 0; i < population.size(); ++i) {
            fitnesses[i] = sim.evaluate_fitness(population[i], ws);
            if (fitnesses[i] < gen_best) {
                gen_best = fitnesses[i];
                gen_best_idx = i;
            }
        }
        result.fitness_history.push_back(gen_best);
        result.generations_executed = gen + 1;
        if (gen_best < result.best_fitness) {
            result.best_fitness = gen_best;
            result.best_genotype = population[gen_best_idx];
        }
        if (config.early_stop_at_lower_bound && result.best_fitness == bound) break;
        if (gen + 1 == config.generations) break;

        // Elites first: the `elitism` lowest-fitness individuals, stable by index.
        next.clear();
        if (config.elitism > 0) {
            order.resize(population.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::partial_sort(order.begin(), order.begin() + config.elitism, order.end(),
                              [&](std::size_t x, std::size_t y) {
                                  return fitnesses[x] != fitnesses[y] ? fitnesses[x] < fitnesses[y]
                                                                      : x < y;
                              });
            for (int e = 0; e < config.elitism; ++e) next.push_back(population[order[e]]);
        }
        while (next.size() < population.size()) {
            const std::size_t pa = tournament_select(rng, fitnesses, config.tournament_size);
            const std::size_t pb = tournament_select(rng, fitnesses, config.tournament_size);
            auto [child_a, child_b] = crossover(rng, population[pa], population[pb],
                                                config.crossover_rate, config.crossover_op, uavs);
            vary(child_a);
            vary(child_b);
            next.push_back(std::move(child_a));
            if (next.size() < population.size()) next.push_back(std::move(child_b));
        }
        population.swap(next);
    }

    result.best_sim = sim.evaluate(result.best_genotype);
    result.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

} // namespace swarmcover
