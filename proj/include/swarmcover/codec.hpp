#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "swarmcover/grid_map.hpp"

namespace swarmcover {

// One gene per (UAV, visitable cell) pair, UAV-major, each in [0, 1].
using Genotype = std::vector<double>;

// Fixed outgoing direction per visitable cell for one UAV. nullopt means the
// cell has no feasible moves and the UAV parks there (NoMove).
struct MovementMap {
    std::vector<std::optional<Direction>> moves;
};

inline std::size_t genotype_length(const GridMap& map, int uavs) {
    if (uavs < 1 || uavs > 4) throw std::invalid_argument("UAV count must be between 1 and 4");
    return static_cast<std::size_t>(uavs) * map.visitable_count();
}

// Maps g in [0,1] onto one of k equal intervals over the canonically ordered
// feasible list; g = 1.0 clamps into the last interval.
inline int decode_gene(double g, int feasible_count) {
    if (!(g >= 0.0 && g <= 1.0)) throw std::invalid_argument("gene outside [0, 1]");
    if (feasible_count < 1) throw std::invalid_argument("decode_gene requires k >= 1");
    const int idx = static_cast<int>(g * feasible_count);
    return idx >= feasible_count ? feasible_count - 1 : idx;
}

// Decodes the genotype into one movement map per UAV. Pure and total: every
// assigned direction is drawn from that cell's feasible set.
inline std::vector<MovementMap> build_movement_maps(const Genotype& genotype,
                                                    const GridMap& map, int uavs) {
    const std::size_t expected = genotype_length(map, uavs);
    if (genotype.size() != expected)
        throw std::invalid_argument("genotype length " + std::to_string(genotype.size()) +
                                    " does not match " + std::to_string(expected));
    const int cell_count = map.visitable_count();
    std::vector<MovementMap> out(uavs);
    for (int u = 0; u < uavs; ++u) {
        out[u].moves.resize(cell_count);
        for (int i = 0; i < cell_count; ++i) {
            const int k = map.feasible_count(i);
            if (k == 0) continue;
            const double g = genotype[static_cast<std::size_t>(u) * cell_count + i];
            out[u].moves[i] = map.feasible_dir(i, decode_gene(g, k));
        }
    }
    return out;
}

} // namespace swarmcover
