#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "swarmcover/codec.hpp"
#include "swarmcover/grid_map.hpp"
#include "swarmcover/sim.hpp"

// Independent correctness references for the simulator. Everything here is
// written for obviousness, not speed: plain coordinate sets, no index tables,
// no incremental bookkeeping. The main simulator is tested against these.

namespace swarmcover {

struct OracleBudget {
    std::uint64_t max_joint_policies = 2'000'000; // exhaustive enumeration cap
    std::uint64_t max_states = 50'000'000;        // path-search node cap
};

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

namespace oracle_detail {

// Feasible directions recomputed from scratch, in (Up, Down, Left, Right) order.
inline std::vector<Direction> feasible_here(const GridMap& map, Coord cell) {
    std::vector<Direction> out;
    for (const Direction d : {Direction::Up, Direction::Down, Direction::Left, Direction::Right}) {
        const Coord next = step(cell, d);
        if (next.row >= 0 && next.row < map.rows() && next.col >= 0 && next.col < map.cols() &&
            !map.obstacle(next))
            out.push_back(d);
    }
    return out;
}

// Simulates the swarm for explicitly given movement maps (one direction or
// nothing per visitable cell per UAV, keyed by coordinate).
inline SimResult simulate_movement_maps(const std::vector<std::map<Coord, Direction>>& maps,
                                        const GridMap& grid, int uavs) {
    const int total_cells = grid.visitable_count();
    const int limit = max_epochs(grid, uavs);

    std::vector<Coord> positions = start_positions(grid, uavs);
    std::vector<std::set<Coord>> visited_by(uavs);
    for (int u = 0; u < uavs; ++u) visited_by[u].insert(positions[u]);

    auto union_visited = [&] {
        std::set<Coord> all;
        for (const auto& s : visited_by) all.insert(s.begin(), s.end());
        return all;
    };

    SimResult result;
    result.paths.assign(uavs, {});
    for (int u = 0; u < uavs; ++u) result.paths[u].push_back(positions[u]);

    auto all_covered = [&] { return static_cast<int>(union_visited().size()) == total_cells; };
    auto unvisited_count = [&] { return total_cells - static_cast<int>(union_visited().size()); };

    if (all_covered()) {
        result.covered = true;
        result.fitness = 0;
        result.epochs_used = 0;
        result.unvisited = 0;
        return result;
    }

    for (int epoch = 1; epoch <= limit; ++epoch) {
        bool any_moved = false;
        for (int u = 0; u < uavs; ++u) {
            const auto it = maps[u].find(positions[u]);
            if (it != maps[u].end()) {
                const Coord target = step(positions[u], it->second);
                const bool self_visited = visited_by[u].count(target) > 0;
                bool occupied = false;
                for (int v = 0; v < uavs; ++v)
                    if (v != u && positions[v] == target) occupied = true;
                if (!self_visited && !occupied) {
                    positions[u] = target;
                    visited_by[u].insert(target);
                    any_moved = true;
                }
            }
            result.paths[u].push_back(positions[u]);
        }
        if (!any_moved) {
            result.covered = false;
            result.unvisited = unvisited_count();
            result.fitness = limit + result.unvisited;
            result.epochs_used = epoch;
            return result;
        }
        if (all_covered()) {
            result.covered = true;
            result.unvisited = 0;
            result.fitness = epoch;
            result.epochs_used = epoch;
            return result;
        }
    }
    result.covered = false;
    result.unvisited = unvisited_count();
    result.fitness = limit + result.unvisited;
    result.epochs_used = limit;
    return result;
}

} // namespace oracle_detail

// Reference fitness evaluation: decodes the genotype with the interval rule
// spelled out longhand, then simulates. Must agree with Simulator::evaluate
// on fitness, coverage, epochs and paths.
inline SimResult reference_evaluate(const Genotype& genotype, const GridMap& map, int uavs) {
    const auto cells = map.visitable_cells();
    if (genotype.size() != static_cast<std::size_t>(uavs) * cells.size())
        throw std::invalid_argument("genotype length does not match map and UAV count");

    std::vector<std::map<Coord, Direction>> maps(uavs);
    for (int u = 0; u < uavs; ++u) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto feasible = oracle_detail::feasible_here(map, cells[i]);
            if (feasible.empty()) continue;
            const double g = genotype[u * cells.size() + i];
            if (g < 0.0 || g > 1.0) throw std::invalid_argument("gene outside [0, 1]");
            int slot = static_cast<int>(std::floor(g * static_cast<double>(feasible.size())));
            if (slot == static_cast<int>(feasible.size())) slot -= 1;
            maps[u][cells[i]] = feasible[slot];
        }
    }
    return oracle_detail::simulate_movement_maps(maps, map, uavs);
}

// Enumerates every joint movement-map assignment and returns the minimum
// fitness among covering ones, or nullopt when none covers. Throws
// BudgetExceeded if the joint space is larger than the budget allows.
inline std::optional<int> exhaustive_min_epochs(const GridMap& map, int uavs,
                                                const OracleBudget& budget = {}) {
    const auto cells = map.visitable_cells();
    std::vector<std::vector<Direction>> options;
    for (const Coord c : cells) options.push_back(oracle_detail::feasible_here(map, c));

    long double per_uav = 1.0L;
    for (const auto& opt : options)
        per_uav *= static_cast<long double>(std::max<std::size_t>(opt.size(), 1));
    long double joint = 1.0L;
    for (int u = 0; u < uavs; ++u) joint *= per_uav;
    if (joint > static_cast<long double>(budget.max_joint_policies))
        throw BudgetExceeded("joint movement-map space exceeds max_joint_policies");

    // Mixed-radix counter over all (uav, cell) slots with feasible choices.
    struct Slot {
        int uav;
        std::size_t cell;
    };
    std::vector<Slot> slots;
    for (int u = 0; u < uavs; ++u)
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (!options[i].empty()) slots.push_back({u, i});

    std::vector<std::size_t> choice(slots.size(), 0);
    std::optional<int> best;
    while (true) {
        std::vector<std::map<Coord, Direction>> maps(uavs);
        for (std::size_t s = 0; s < slots.size(); ++s)
            maps[slots[s].uav][cells[slots[s].cell]] = options[slots[s].cell][choice[s]];
        const SimResult r = oracle_detail::simulate_movement_maps(maps, map, uavs);
        if (r.covered && (!best || r.fitness < *best)) best = r.fitness;

        std::size_t s = 0;
        while (s < slots.size()) {
            if (++choice[s] < options[slots[s].cell].size()) break;
            choice[s] = 0;
            ++s;
        }
        if (s == slots.size()) break;
    }
    return best;
}

namespace oracle_detail {

struct HamSearch {
    const GridMap& map;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<std::uint8_t> on_path;

    explicit HamSearch(const GridMap& m, std::uint64_t max_states)
        : map(m), budget(max_states), on_path(m.visitable_count(), 0) {}

    std::vector<int> neighbours(int idx) const {
        std::vector<int> out;
        for (int j = 0; j < map.feasible_count(idx); ++j) out.push_back(map.feasible_target(idx, j));
        return out;
    }

    // Degree of a free cell counting unvisited neighbours plus the current
    // search position.
    int remaining_degree(int idx, int current) const {
        int deg = 0;
        for (const int n : neighbours(idx))
            if (!on_path[n] || n == current) ++deg;
        return deg;
    }

    bool prune(int current, int remaining) const {
        // Remaining graph = unvisited cells plus the current cell. A
        // Hamiltonian continuation needs every non-endpoint to keep degree
        // >= 2, and only one endpoint besides the current cell.
        int forced_endpoints = 0;
        for (int idx = 0; idx < map.visitable_count(); ++idx) {
            if (on_path[idx]) continue;
            const int deg = remaining_degree(idx, current);
            if (deg == 0) return true;
            if (deg == 1 && ++forced_endpoints > 1) return true;
        }
        // Connectivity: every unvisited cell must be reachable from the
        // current cell through unvisited cells.
        std::vector<int> stack{current};
        std::vector<std::uint8_t> seen(map.visitable_count(), 0);
        seen[current] = 1;
        int reached = 0;
        while (!stack.empty()) {
            const int at = stack.back();
            stack.pop_back();
            for (const int n : neighbours(at)) {
                if (!seen[n] && !on_path[n]) {
                    seen[n] = 1;
                    ++reached;
                    stack.push_back(n);
                }
            }
        }
        return reached != remaining;
    }

    bool extend(int current, int remaining) {
        if (remaining == 0) return true;
        if (++nodes > budget) throw BudgetExceeded("hamiltonian path search exceeded max_states");
        if (prune(current, remaining)) return false;

        // Warnsdorff ordering: try the most constrained successor first.
        std::vector<std::pair<int, int>> next;
        for (const int n : neighbours(current))
            if (!on_path[n]) next.emplace_back(remaining_degree(n, -1), n);
        std::sort(next.begin(), next.end());
        for (const auto& [deg, n] : next) {
            on_path[n] = 1;
            if (extend(n, remaining - 1)) return true;
            on_path[n] = 0;
        }
        return false;
    }
};

} // namespace oracle_detail

// True iff a Hamiltonian path over the visitable cells (4-adjacency) starting
// at `start` exists. Single-UAV full coverage is achievable exactly when this
// holds: a lone UAV's trajectory is a self-avoiding walk, and every
// self-avoiding walk is realizable by some movement map.
inline bool hamiltonian_path_exists(const GridMap& map, Coord start,
                                    const OracleBudget& budget = {}) {
    const int start_idx = map.cell_index(start);
    if (start_idx < 0) throw std::invalid_argument("start cell is not visitable");
    const int total = map.visitable_count();
    if (total == 1) return true;

    // Bipartite counting bound: a path over all cells alternates checkerboard
    // classes, so class sizes may differ by at most one, and when they do the
    // start must lie in the larger class.
    int class_of_start = (start.row + start.col) % 2;
    int same = 0, other = 0;
    for (const Coord c : map.visitable_cells())
        ((c.row + c.col) % 2 == class_of_start ? same : other) += 1;
    if (other > same) return false;
    if (same - other > 1) return false;

    oracle_detail::HamSearch search(map, budget.max_states);
    search.on_path[start_idx] = 1;
    return search.extend(start_idx, total - 1);
}

} // namespace swarmcover
