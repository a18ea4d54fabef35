#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "swarmcover/codec.hpp"
#include "swarmcover/evolve.hpp"
#include "swarmcover/grid_map.hpp"
#include "swarmcover/sim.hpp"

// Solve-result document: everything needed to reproduce and render one run.
// The map itself is embedded so result files stand alone.

namespace swarmcover {

// Wall time is deliberately not part of the document: identical invocations
// must produce identical files.
struct SolveResult {
    std::string map_id;
    std::string map_text;
    int uavs = 0;
    GaConfig config;
    int bound = 0;
    int epoch_limit = 0;
    int generations_executed = 0;
    SimResult sim;
    Genotype genotype;
};

inline std::string movement_map_grid(const GridMap& map, const MovementMap& moves) {
    std::string out;
    for (int r = 0; r < map.rows(); ++r) {
        for (int c = 0; c < map.cols(); ++c) {
            const int idx = map.cell_index(Coord{r, c});
            if (idx < 0)
                out += '#';
            else if (!moves.moves[idx])
                out += '-';
            else
                out += direction_char(*moves.moves[idx]);
        }
        out += '\n';
    }
    return out;
}

inline std::string write_solve_result(const SolveResult& result, const GridMap& map) {
    nlohmann::json doc;
    doc["format"] = "swarmcover-result";
    doc["version"] = 1;

    nlohmann::json config;
    config["map"] = result.map_id;
    config["uavs"] = result.uavs;
    config["population_size"] = result.config.population_size;
    config["generations"] = result.config.generations;
    config["crossover_rate"] = result.config.crossover_rate;
    config["crossover_op"] =
        result.config.crossover_op == CrossoverOp::TwoPoint ? "two-point" : "uniform";
    if (result.config.mutation_rate)
        config["mutation_rate"] = *result.config.mutation_rate;
    else
        config["mutation_rate"] = "auto";
    config["segment_mutation_rate"] = result.config.segment_mutation_rate;
    config["tournament_size"] = result.config.tournament_size;
    config["elitism"] = result.config.elitism;
    config["seed"] = result.config.seed;
    config["early_stop_at_lower_bound"] = result.config.early_stop_at_lower_bound;
    doc["config"] = config;

    doc["map_text"] = result.map_text;
    doc["bound"] = result.bound;
    doc["max_epochs"] = result.epoch_limit;
    doc["covered"] = result.sim.covered;
    doc["fitness"] = result.sim.fitness;
    doc["epochs"] = result.sim.epochs_used;
    doc["unvisited"] = result.sim.unvisited;
    doc["generations_executed"] = result.generations_executed;

    nlohmann::json paths = nlohmann::json::array();
    for (const auto& path : result.sim.paths) {
        nlohmann::json one = nlohmann::json::array();
        for (const Coord c : path) one.push_back({c.row, c.col});
        paths.push_back(std::move(one));
    }
    doc["paths"] = std::move(paths);

    nlohmann::json movement_maps = nlohmann::json::array();
    for (const MovementMap& mm : build_movement_maps(result.genotype, map, result.uavs))
        movement_maps.push_back(movement_map_grid(map, mm));
    doc["movement_maps"] = std::move(movement_maps);

    doc["genotype"] = result.genotype;
    return doc.dump(2) + "\n";
}

inline SolveResult read_solve_result(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("result file is not valid JSON: ") + e.what());
    }
    if (doc.value("format", "") != "swarmcover-result")
        throw std::invalid_argument("not a swarmcover result file");

    SolveResult out;
    const auto& config = doc.at("config");
    out.map_id = config.at("map").get<std::string>();
    out.uavs = config.at("uavs").get<int>();
    out.config.population_size = config.at("population_size").get<int>();
    out.config.generations = config.at("generations").get<int>();
    out.config.crossover_rate = config.at("crossover_rate").get<double>();
    out.config.crossover_op = config.at("crossover_op").get<std::string>() == "uniform"
                                  ? CrossoverOp::Uniform
                                  : CrossoverOp::TwoPoint;
    if (config.at("mutation_rate").is_number())
        out.config.mutation_rate = config.at("mutation_rate").get<double>();
    out.config.segment_mutation_rate = config.at("segment_mutation_rate").get<double>();
    out.config.tournament_size = config.at("tournament_size").get<int>();
    out.config.elitism = config.at("elitism").get<int>();
    out.config.seed = config.at("seed").get<std::uint64_t>();
    out.config.early_stop_at_lower_bound = config.at("early_stop_at_lower_bound").get<bool>();

    out.map_text = doc.at("map_text").get<std::string>();
    out.bound = doc.at("bound").get<int>();
    out.epoch_limit = doc.at("max_epochs").get<int>();
    out.generations_executed = doc.at("generations_executed").get<int>();
    out.sim.covered = doc.at("covered").get<bool>();
    out.sim.fitness = doc.at("fitness").get<int>();
    out.sim.epochs_used = doc.at("epochs").get<int>();
    out.sim.unvisited = doc.at("unvisited").get<int>();
    for (const auto& path : doc.at("paths")) {
        std::vector<Coord> one;
        for (const auto& cell : path) one.push_back(Coord{cell.at(0).get<int>(), cell.at(1).get<int>()});
        out.sim.paths.push_back(std::move(one));
    }
    if (doc.contains("genotype")) out.genotype = doc.at("genotype").get<Genotype>();
    return out;
}

} // namespace swarmcover
