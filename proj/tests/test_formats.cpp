#include "doctest.h"

#include <set>

#include "swarmcover/evolve.hpp"
#include "swarmcover/render.hpp"
#include "swarmcover/result_file.hpp"

using namespace swarmcover;

namespace {

SolveResult small_solve(const GridMap& map, int uavs, std::uint64_t seed) {
    GaConfig config;
    config.population_size = 60;
    config.generations = 60;
    config.seed = seed;
    const GaRunResult run = run_ga(config, map, uavs);
    SolveResult result;
    result.map_id = map.id().empty() ? "custom" : map.id();
    result.map_text = map.serialize();
    result.uavs = uavs;
    result.config = config;
    result.bound = theoretical_min_epochs(map, uavs);
    result.epoch_limit = max_epochs(map, uavs);
    result.generations_executed = run.generations_executed;
    result.sim = run.best_sim;
    result.genotype = run.best_genotype;
    return result;
}

} // namespace

TEST_CASE("solve results round-trip through JSON") {
    const GridMap& map2 = builtin_maps()[1];
    const SolveResult original = small_solve(map2, 2, 31);
    const std::string text = write_solve_result(original, map2);
    const SolveResult back = read_solve_result(text);

    CHECK(back.map_id == "map2");
    CHECK(back.uavs == 2);
    CHECK(back.config.population_size == original.config.population_size);
    CHECK(back.config.seed == original.config.seed);
    CHECK(back.config.crossover_op == original.config.crossover_op);
    CHECK(back.config.segment_mutation_rate == original.config.segment_mutation_rate);
    CHECK(back.bound == original.bound);
    CHECK(back.epoch_limit == original.epoch_limit);
    CHECK(back.sim.covered == original.sim.covered);
    CHECK(back.sim.fitness == original.sim.fitness);
    CHECK(back.sim.paths == original.sim.paths);
    CHECK(back.genotype == original.genotype);

    const GridMap reparsed = GridMap::parse(back.map_text);
    CHECK(reparsed == map2);
}

TEST_CASE("read_solve_result rejects foreign documents") {
    CHECK_THROWS_AS(read_solve_result("not json at all"), std::invalid_argument);
    CHECK_THROWS_AS(read_solve_result("{\"format\":\"something\"}"), std::invalid_argument);
}

TEST_CASE("movement map grids mark obstacles and directions") {
    const GridMap strip = GridMap::parse("1 3\n...\n");
    const Genotype right(3, 0.9);
    const auto maps = build_movement_maps(right, strip, 1);
    CHECK(movement_map_grid(strip, maps[0]) == "RRL\n");

    const GridMap walled = GridMap::parse("5 5\n.....\n..#..\n.#.#.\n..#..\n.....\n");
    const auto walled_maps = build_movement_maps(Genotype(genotype_length(walled, 1), 0.0), walled, 1);
    const std::string grid = movement_map_grid(walled, walled_maps[0]);
    CHECK(grid.find('#') != std::string::npos);
    CHECK(grid.find('-') != std::string::npos); // the isolated centre cell
}

TEST_CASE("ascii diagram shows the strip sweep as two right arrows") {
    const GridMap strip = GridMap::parse("1 3\n...\n");
    Genotype right(3, 0.9);
    const SimResult result = evaluate(right, strip, 1);
    const std::string diagram = ascii_diagram(strip, result.paths[0]);
    // Start cell bracketed, then an arrow, then the terminal cell.
    CHECK(diagram == "[>] >  * \n");
    int arrows = 0;
    for (const char ch : diagram)
        if (ch == '>') ++arrows;
    CHECK(arrows == 2);
}

TEST_CASE("ascii diagram fills map 6 obstacles") {
    const GridMap& map6 = builtin_maps()[5];
    std::vector<Coord> trivial_path{Coord{0, 0}, Coord{0, 1}};
    const std::string diagram = ascii_diagram(map6, trivial_path);
    int filled = 0;
    std::istringstream lines(diagram);
    std::string line;
    while (std::getline(lines, line)) {
        REQUIRE(line.size() == 9 * 3);
        for (std::size_t cell = 0; cell < 9; ++cell)
            if (line.substr(cell * 3, 3) == "###") ++filled;
    }
    CHECK(filled == 21);
}

TEST_CASE("svg diagrams contain the grid and one polyline per call") {
    const GridMap& map2 = builtin_maps()[1];
    const SolveResult solved = small_solve(map2, 2, 47);
    REQUIRE(solved.sim.paths.size() == 2);
    const std::string svg = svg_diagram(map2, solved.sim.paths[0], "UAV 1");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("UAV 1") != std::string::npos);
    // 25 cells, 4 of them filled obstacles.
    std::size_t rects = 0, pos = 0;
    while ((pos = svg.find("<rect", pos)) != std::string::npos) {
        ++rects;
        pos += 5;
    }
    CHECK(rects == 25);
}

TEST_CASE("rendered paths replay to legal trajectories") {
    // A covered solve's paths, read back from the result file, must replay
    // as collision-free legal moves that cover the map.
    const GridMap& map2 = builtin_maps()[1];
    SolveResult solved = small_solve(map2, 2, 7);
    int attempts = 0;
    while (!solved.sim.covered && attempts < 5) solved = small_solve(map2, 2, 100 + ++attempts);
    REQUIRE(solved.sim.covered);

    const SolveResult back = read_solve_result(write_solve_result(solved, map2));
    const GridMap map = GridMap::parse(back.map_text);

    std::set<Coord> global;
    std::size_t longest = 0;
    for (const auto& path : back.sim.paths) longest = std::max(longest, path.size());
    for (std::size_t e = 0; e < longest; ++e) {
        std::set<Coord> occupied;
        for (const auto& path : back.sim.paths) {
            const Coord c = path[std::min(e, path.size() - 1)];
            CHECK(map.visitable(c));
            CHECK(occupied.insert(c).second);
            global.insert(c);
        }
    }
    for (const auto& path : back.sim.paths) {
        for (std::size_t e = 1; e < path.size(); ++e) {
            const int dist = std::abs(path[e].row - path[e - 1].row) +
                             std::abs(path[e].col - path[e - 1].col);
            CHECK(dist <= 1);
        }
    }
    CHECK(static_cast<int>(global.size()) == map.visitable_count());
}
