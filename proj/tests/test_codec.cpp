#include "doctest.h"

#include <algorithm>

#include "swarmcover/codec.hpp"
#include "swarmcover/rng.hpp"

using namespace swarmcover;

TEST_CASE("genotype length is uavs times visitable cells") {
    CHECK(genotype_length(builtin_maps()[0], 1) == 49);
    CHECK(genotype_length(builtin_maps()[5], 4) == 240);
    CHECK(genotype_length(GridMap::parse("2 2\n..\n..\n"), 1) == 4);
}

TEST_CASE("decode_gene partitions the unit interval") {
    CHECK(decode_gene(0.6, 4) == 2);
    CHECK(decode_gene(0.0, 1) == 0);
    CHECK(decode_gene(0.0, 4) == 0);
    CHECK(decode_gene(1.0, 3) == 2);
    CHECK(decode_gene(0.999999, 3) == 2);
    CHECK_THROWS_AS(decode_gene(-0.1, 3), std::invalid_argument);
    CHECK_THROWS_AS(decode_gene(1.1, 3), std::invalid_argument);
    CHECK_THROWS_AS(decode_gene(0.5, 0), std::invalid_argument);
}

TEST_CASE("decode_gene is monotone and hits every interval") {
    for (int k = 1; k <= 4; ++k) {
        int prev = 0;
        bool hit[4] = {};
        for (int i = 0; i <= 1000; ++i) {
            const int idx = decode_gene(i / 1000.0, k);
            CHECK(idx >= prev);
            CHECK(idx < k);
            hit[idx] = true;
            prev = idx;
        }
        for (int idx = 0; idx < k; ++idx) CHECK(hit[idx]);
    }
}

TEST_CASE("all-zero genotype picks each cell's first feasible direction") {
    const GridMap& map1 = builtin_maps()[0];
    const Genotype zeros(genotype_length(map1, 1), 0.0);
    const auto maps = build_movement_maps(zeros, map1, 1);
    REQUIRE(maps.size() == 1);
    for (std::size_t i = 0; i < map1.visitable_cells().size(); ++i) {
        const auto feasible = map1.feasible_moves(map1.visitable_cells()[i]);
        REQUIRE(maps[0].moves[i].has_value());
        CHECK(*maps[0].moves[i] == feasible.front());
    }
}

TEST_CASE("high genes pick each cell's last feasible direction") {
    const GridMap m = GridMap::parse("2 2\n..\n..\n");
    const Genotype genes(4, 0.99);
    const auto maps = build_movement_maps(genes, m, 1);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto feasible = m.feasible_moves(m.visitable_cells()[i]);
        CHECK(*maps[0].moves[i] == feasible.back());
    }
}

TEST_CASE("cells with no feasible moves decode to NoMove") {
    // The centre cell is walled in; the map stays corner-valid.
    const GridMap m = GridMap::parse("5 5\n.....\n..#..\n.#.#.\n..#..\n.....\n");
    const int isolated = m.cell_index(Coord{2, 2});
    REQUIRE(isolated >= 0);
    CHECK(m.feasible_moves(Coord{2, 2}).empty());
    const Genotype genes(genotype_length(m, 1), 0.5);
    const auto maps = build_movement_maps(genes, m, 1);
    CHECK_FALSE(maps[0].moves[isolated].has_value());
}

TEST_CASE("movement map directions are always feasible") {
    // 10,000 random genotypes per built-in map, spread over swarm sizes.
    Rng rng(20240601);
    for (const GridMap& m : builtin_maps()) {
        std::vector<std::vector<Direction>> feasible;
        for (const Coord cell : m.visitable_cells()) feasible.push_back(m.feasible_moves(cell));
        long long violations = 0;
        for (int n = 1; n <= 4; ++n) {
            for (int trial = 0; trial < 2500; ++trial) {
                Genotype g(genotype_length(m, n));
                for (double& gene : g) gene = rng.next_double();
                const auto maps = build_movement_maps(g, m, n);
                for (int u = 0; u < n; ++u) {
                    for (std::size_t i = 0; i < feasible.size(); ++i) {
                        if (feasible[i].empty()) {
                            if (maps[u].moves[i].has_value()) ++violations;
                        } else if (!maps[u].moves[i].has_value() ||
                                   std::find(feasible[i].begin(), feasible[i].end(),
                                             *maps[u].moves[i]) == feasible[i].end()) {
                            ++violations;
                        }
                    }
                }
            }
        }
        CHECK(violations == 0);
    }
}

TEST_CASE("build_movement_maps is deterministic") {
    Rng rng(7);
    Genotype g(genotype_length(builtin_maps()[2], 2));
    for (double& gene : g) gene = rng.next_double();
    const auto a = build_movement_maps(g, builtin_maps()[2], 2);
    const auto b = build_movement_maps(g, builtin_maps()[2], 2);
    for (std::size_t u = 0; u < a.size(); ++u) CHECK(a[u].moves == b[u].moves);
}

TEST_CASE("build_movement_maps rejects wrong lengths") {
    CHECK_THROWS_AS(build_movement_maps(Genotype(10, 0.5), builtin_maps()[0], 1),
                    std::invalid_argument);
}
