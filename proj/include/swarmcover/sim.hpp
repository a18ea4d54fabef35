#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "swarmcover/codec.hpp"
#include "swarmcover/grid_map.hpp"

namespace swarmcover {

// Outcome of one swarm simulation. `paths[u][e]` is UAV u's cell after epoch
// e, with index 0 the start; a UAV that did not move in an epoch repeats its
// cell. On success fitness equals the epoch at which coverage completed; on
// failure it is max_epochs plus the number of unvisited cells.
struct SimResult {
    int fitness = 0;
    bool covered = false;
    int epochs_used = 0;
    int unvisited = 0;
    std::vector<std::vector<Coord>> paths;
};

// One recorded move for rendering: the epoch it happened in, the cells
// involved and the direction taken.
struct MoveStep {
    int epoch;
    Coord from;
    Coord to;
    Direction direction;
};

// Reusable scratch buffers so that the GA inner loop evaluates without
// allocating. One workspace per thread.
struct SimWorkspace {
    std::vector<std::int32_t> targets;   // decoded target cell per (uav, cell), -1 = NoMove
    std::vector<std::uint8_t> visited;   // per (uav, cell) visited flags
    std::vector<std::uint8_t> global;    // distinct-coverage flags
    std::vector<std::int32_t> positions; // current cell index per uav
};

// Epoch-synchronized swarm simulator for one (map, UAV count) pair. Holds
// only immutable precomputed state and may be shared across threads.
class Simulator {
public:
    Simulator(const GridMap& map, int uavs)
        : map_(map),
          uavs_(uavs),
          cell_count_(map.visitable_count()),
          max_epochs_(max_epochs(map, uavs)),
          min_epochs_(theoretical_min_epochs(map, uavs)) {
        for (const Coord c : start_positions(map, uavs))
            start_indices_.push_back(map_.cell_index(c));
    }

    const GridMap& map() const { return map_; }
    int uavs() const { return uavs_; }
    int epoch_bound() const { return min_epochs_; }
    int epoch_limit() const { return max_epochs_; }

    SimResult evaluate(const Genotype& genotype) const {
        SimWorkspace ws;
        SimResult result;
        result.fitness = run<true>(genotype, ws, &result);
        return result;
    }

    int evaluate_fitness(const Genotype& genotype, SimWorkspace& ws) const {
        return run<false>(genotype, ws, nullptr);
    }

private:
    template <bool RecordPaths>
    int run(const Genotype& genotype, SimWorkspace& ws, SimResult* out) const {
        const std::size_t expected = static_cast<std::size_t>(uavs_) * cell_count_;
        if (genotype.size() != expected)
            throw std::invalid_argument("genotype length does not match map and UAV count");

        decode_targets(genotype, ws);

        ws.visited.assign(expected, 0);
        ws.global.assign(cell_count_, 0);
        ws.positions.assign(start_indices_.begin(), start_indices_.end());
        int covered_count = 0;
        for (int u = 0; u < uavs_; ++u) {
            const int s = start_indices_[u];
            ws.visited[static_cast<std::size_t>(u) * cell_count_ + s] = 1;
            if (!ws.global[s]) {
                ws.global[s] = 1;
                ++covered_count;
            }
        }
        if constexpr (RecordPaths) {
            out->paths.assign(uavs_, {});
            for (int u = 0; u < uavs_; ++u)
                out->paths[u].push_back(map_.visitable_cells()[start_indices_[u]]);
        }

        auto finish = [&](bool covered, int epoch, int epochs_executed) {
            const int unvisited = cell_count_ - covered_count;
            const int fitness = covered ? epoch : max_epochs_ + unvisited;
            if constexpr (RecordPaths) {
                out->covered = covered;
                out->unvisited = covered ? 0 : unvisited;
                out->epochs_used = covered ? epoch : epochs_executed;
                out->fitness = fitness;
            }
            return fitness;
        };

        // Degenerate case: the starts already cover everything.
        if (covered_count == cell_count_) return finish(true, 0, 0);

        for (int epoch = 1; epoch <= max_epochs_; ++epoch) {
            bool any_moved = false;
            for (int u = 0; u < uavs_; ++u) {
                const std::size_t base = static_cast<std::size_t>(u) * cell_count_;
                const int pos = ws.positions[u];
                const int target = ws.targets[base + pos];
                if (target >= 0 && !ws.visited[base + target]) {
                    bool occupied = false;
                    for (int v = 0; v < uavs_; ++v) {
                        if (v != u && ws.positions[v] == target) {
                            occupied = true;
                            break;
                        }
                    }
                    if (!occupied) {
                        ws.positions[u] = target;
                        ws.visited[base + target] = 1;
                        if (!ws.global[target]) {
                            ws.global[target] = 1;
                            ++covered_count;
                        }
                        any_moved = true;
                    }
                }
                if constexpr (RecordPaths)
                    out->paths[u].push_back(map_.visitable_cells()[ws.positions[u]]);
            }
            if (!any_moved) return finish(false, epoch, epoch);
            if (covered_count == cell_count_) return finish(true, epoch, epoch);
        }
        return finish(false, max_epochs_, max_epochs_);
    }

    void decode_targets(const Genotype& genotype, SimWorkspace& ws) const {
        ws.targets.resize(genotype.size());
        for (int u = 0; u < uavs_; ++u) {
            const std::size_t base = static_cast<std::size_t>(u) * cell_count_;
            for (int i = 0; i < cell_count_; ++i) {
                const int k = map_.feasible_count(i);
                ws.targets[base + i] =
                    k == 0 ? -1 : map_.feasible_target(i, decode_gene(genotype[base + i], k));
            }
        }
    }

    GridMap map_;
    int uavs_;
    int cell_count_;
    int max_epochs_;
    int min_epochs_;
    std::vector<std::int32_t> start_indices_;
};

// Implements the fitness evaluation directly from a genotype: decode the
// movement maps, place UAVs at the start corners, then advance synchronized
// epochs. Within an epoch UAVs act in ascending index order; a UAV moves iff
// its stored direction leads to a cell it has not visited itself and no other
// UAV currently occupies. Stops early when no UAV moved or coverage is done.
inline SimResult evaluate(const Genotype& genotype, const GridMap& map, int uavs) {
    return Simulator(map, uavs).evaluate(genotype);
}

// Per-UAV move tuples, skipping the epochs in which a UAV stayed put.
inline std::vector<std::vector<MoveStep>> extract_paths(const SimResult& result) {
    std::vector<std::vector<MoveStep>> out(result.paths.size());
    for (std::size_t u = 0; u < result.paths.size(); ++u) {
        const auto& path = result.paths[u];
        for (std::size_t e = 1; e < path.size(); ++e) {
            const Coord from = path[e - 1];
            const Coord to = path[e];
            if (from == to) continue;
            Direction dir = Direction::Up;
            for (const Direction d : kAllDirections) {
                if (step(from, d) == to) {
                    dir = d;
                    break;
                }
            }
            out[u].push_back(MoveStep{static_cast<int>(e), from, to, dir});
        }
    }
    return out;
}

// Fraction of visitable cells reached by the swarm.
inline double coverage_ratio(const SimResult& result, const GridMap& map) {
    std::vector<std::uint8_t> seen(map.visitable_count(), 0);
    int distinct = 0;
    for (const auto& path : result.paths) {
        for (const Coord c : path) {
            const int idx = map.cell_index(c);
            if (idx >= 0 && !seen[idx]) {
                seen[idx] = 1;
                ++distinct;
            }
        }
    }
    return static_cast<double>(distinct) / map.visitable_count();
}

} // namespace swarmcover
