#include "doctest.h"

#include <set>

#include "swarmcover/grid_map.hpp"

using namespace swarmcover;

namespace {

// Epoch lower bounds for the six benchmark maps, 1-4 UAVs.
constexpr int kExpectedBounds[6][4] = {
    {48, 24, 16, 12}, {20, 10, 6, 5},  {27, 13, 9, 6},
    {38, 19, 12, 9},  {50, 25, 16, 12}, {59, 29, 19, 14},
};

constexpr int kExpectedVisitable[6] = {49, 21, 28, 39, 51, 60};

} // namespace

TEST_CASE("parse accepts the minimal free map") {
    const GridMap m = GridMap::parse("2 2\n..\n..\n");
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 2);
    CHECK(m.visitable_count() == 4);
}

TEST_CASE("parse accepts CRLF and trailing whitespace") {
    const GridMap m = GridMap::parse("2 3\r\n... \r\n...\t\r\n");
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m.visitable_count() == 6);
}

TEST_CASE("parse rejects corner obstacles with a location") {
    try {
        GridMap::parse("2 2\n#.\n..\n");
        FAIL("expected MapError");
    } catch (const MapError& e) {
        CHECK(e.line() == 0);
        CHECK(e.column() == 0);
    }
}

TEST_CASE("parse rejects ragged rows") {
    CHECK_THROWS_AS(GridMap::parse("2 3\n...\n..\n"), MapError);
    CHECK_THROWS_AS(GridMap::parse("2 2\n..\n..\n..\n"), MapError);
}

TEST_CASE("parse rejects unknown characters") {
    try {
        GridMap::parse("2 2\n..\n.x\n");
        FAIL("expected MapError");
    } catch (const MapError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 1);
    }
}

TEST_CASE("parse rejects empty and single-cell grids") {
    CHECK_THROWS_AS(GridMap::parse(""), MapError);
    CHECK_THROWS_AS(GridMap::parse("1 1\n.\n"), MapError);
    CHECK_THROWS_AS(GridMap::parse("0 3\n"), MapError);
}

TEST_CASE("single free row parses and orders cells row-major") {
    const GridMap m = GridMap::parse("1 3\n...\n");
    const std::vector<Coord> expected{{0, 0}, {0, 1}, {0, 2}};
    CHECK(m.visitable_cells() == expected);
}

TEST_CASE("serialize round-trips every built-in map") {
    for (const GridMap& m : builtin_maps()) {
        const GridMap back = GridMap::parse(m.serialize());
        CHECK(back == m);
    }
}

TEST_CASE("serialize of the 2x2 free map") {
    const GridMap m = GridMap::parse("2 2\n..\n..\n");
    CHECK(m.serialize() == "2 2\n..\n..\n");
}

TEST_CASE("built-in maps have the published sizes and visitable counts") {
    const auto& maps = builtin_maps();
    REQUIRE(maps.size() == 6);
    const int sizes[6][2] = {{7, 7}, {5, 5}, {6, 6}, {7, 7}, {8, 8}, {9, 9}};
    for (int i = 0; i < 6; ++i) {
        CHECK(maps[i].id() == "map" + std::to_string(i + 1));
        CHECK(maps[i].rows() == sizes[i][0]);
        CHECK(maps[i].cols() == sizes[i][1]);
        CHECK(maps[i].visitable_count() == kExpectedVisitable[i]);
    }
}

TEST_CASE("map 6 has the published obstacle layout") {
    const GridMap& m = builtin_maps()[5];
    int obstacle_count = 0;
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 9; ++c)
            if (m.obstacle(Coord{r, c})) ++obstacle_count;
    CHECK(obstacle_count == 21);
    // 1-based row 5 is a full wall except the outermost columns.
    for (int c = 1; c <= 7; ++c) CHECK(m.obstacle(Coord{4, c}));
    CHECK_FALSE(m.obstacle(Coord{4, 0}));
    CHECK_FALSE(m.obstacle(Coord{4, 8}));
    CHECK(m.obstacle(Coord{1, 3}));
    CHECK(m.obstacle(Coord{1, 4}));
    CHECK(m.obstacle(Coord{1, 5}));
    CHECK(m.obstacle(Coord{2, 4}));
    CHECK(m.obstacle(Coord{3, 1}));
    CHECK(m.obstacle(Coord{3, 7}));
}

TEST_CASE("map 6 serialization has 21 obstacle characters") {
    const std::string text = builtin_maps()[5].serialize();
    CHECK(std::count(text.begin(), text.end(), '#') == 21);
}

TEST_CASE("map 1 serializes to seven lines of dots") {
    CHECK(builtin_maps()[0].serialize() ==
          "7 7\n.......\n.......\n.......\n.......\n.......\n.......\n.......\n");
}

TEST_CASE("epoch bounds match the published table for all maps and swarm sizes") {
    const auto& maps = builtin_maps();
    for (int i = 0; i < 6; ++i) {
        for (int n = 1; n <= 4; ++n) {
            CHECK(theoretical_min_epochs(maps[i], n) == kExpectedBounds[i][n - 1]);
            CHECK(max_epochs(maps[i], n) == 2 * kExpectedBounds[i][n - 1]);
        }
    }
}

TEST_CASE("bound is zero when the starts already cover the map") {
    const GridMap m = GridMap::parse("2 2\n..\n..\n");
    CHECK(theoretical_min_epochs(m, 4) == 0);
    CHECK(max_epochs(m, 4) == 0);
}

TEST_CASE("feasible moves respect boundaries, obstacles and canonical order") {
    const GridMap& map1 = builtin_maps()[0];
    CHECK(map1.feasible_moves(Coord{0, 0}) ==
          std::vector<Direction>{Direction::Down, Direction::Right});
    CHECK(map1.feasible_moves(Coord{3, 3}) ==
          std::vector<Direction>{Direction::Up, Direction::Down, Direction::Left,
                                 Direction::Right});

    // Map 6, cell (0,4): up is off-grid, down is the row-2 obstacle.
    const GridMap& map6 = builtin_maps()[5];
    CHECK(map6.feasible_moves(Coord{0, 4}) ==
          std::vector<Direction>{Direction::Left, Direction::Right});

    CHECK_THROWS_AS(map6.feasible_moves(Coord{1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(map6.feasible_moves(Coord{-1, 0}), std::invalid_argument);
}

TEST_CASE("feasible moves never leave the grid or enter obstacles") {
    for (const GridMap& m : builtin_maps()) {
        for (const Coord cell : m.visitable_cells()) {
            Direction prev = Direction::Up;
            bool first = true;
            for (const Direction d : m.feasible_moves(cell)) {
                CHECK(m.visitable(step(cell, d)));
                if (!first) CHECK(static_cast<int>(prev) < static_cast<int>(d));
                prev = d;
                first = false;
            }
        }
    }
}

TEST_CASE("start positions follow the corner order and stay distinct") {
    const GridMap& map1 = builtin_maps()[0];
    CHECK(start_positions(map1, 2) == std::vector<Coord>{{0, 0}, {6, 0}});
    CHECK(start_positions(map1, 1) == std::vector<Coord>{{0, 0}});

    const GridMap& map6 = builtin_maps()[5];
    CHECK(start_positions(map6, 4) == std::vector<Coord>{{0, 0}, {8, 0}, {0, 8}, {8, 8}});

    for (const GridMap& m : builtin_maps()) {
        for (int n = 1; n <= 4; ++n) {
            const auto starts = start_positions(m, n);
            std::set<Coord> unique(starts.begin(), starts.end());
            CHECK(unique.size() == starts.size());
            for (const Coord c : starts) CHECK(m.visitable(c));
        }
    }

    CHECK_THROWS_AS(start_positions(map1, 0), std::invalid_argument);
    CHECK_THROWS_AS(start_positions(map1, 5), std::invalid_argument);
    // Corners coincide on a single-row strip.
    const GridMap strip = GridMap::parse("1 3\n...\n");
    CHECK_THROWS_AS(start_positions(strip, 2), std::invalid_argument);
}

TEST_CASE("cell_index is the inverse of visitable_cells") {
    for (const GridMap& m : builtin_maps()) {
        const auto& cells = m.visitable_cells();
        for (std::size_t i = 0; i < cells.size(); ++i)
            CHECK(m.cell_index(cells[i]) == static_cast<int>(i));
    }
    CHECK(builtin_maps()[5].cell_index(Coord{1, 3}) == -1);
}
