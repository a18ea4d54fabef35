#pragma once

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "swarmcover/evolve.hpp"
#include "swarmcover/grid_map.hpp"
#include "swarmcover/rng.hpp"

namespace swarmcover {

// One grid-search cell repetition: which run it was and how it went.
struct RunRecord {
    std::string map_id;
    int uavs = 0;
    int population_size = 0;
    int generations = 0;
    int run_index = 0;
    std::uint64_t seed = 0;
    bool covered = false;
    int best_fitness = 0;
    std::optional<int> best_epochs; // set iff covered
    double wall_time_seconds = 0.0;
};

// Identity of a run within a grid, used for resuming.
using RunKey = std::tuple<std::string, int, int, int, int>;

inline RunKey run_key(const RunRecord& r) {
    return {r.map_id, r.uavs, r.population_size, r.generations, r.run_index};
}

// The experiment protocol: the Cartesian product of map configurations and
// GA configurations, each repeated runs_per_cell times with derived seeds.
struct ExperimentGrid {
    std::vector<std::string> maps;
    std::vector<int> uav_counts;
    std::vector<int> population_sizes;
    std::vector<int> generation_counts;
    int runs_per_cell = 50;
    std::uint64_t base_seed = 1;
    GaConfig ga_base; // population/generations/seed overridden per run

    std::size_t total_runs() const {
        return maps.size() * uav_counts.size() * population_sizes.size() *
               generation_counts.size() * static_cast<std::size_t>(runs_per_cell);
    }

    void validate() const {
        if (maps.empty() || uav_counts.empty() || population_sizes.empty() ||
            generation_counts.empty())
            throw std::invalid_argument("experiment grid has an empty dimension");
        if (runs_per_cell < 1) throw std::invalid_argument("runs_per_cell must be >= 1");
    }
};

// The complete benchmark grid: 6 maps x 1-4 UAVs x 5 population sizes x
// 5 generation counts x 50 runs = 30,000 runs.
inline ExperimentGrid full_study_grid(std::uint64_t base_seed = 1) {
    ExperimentGrid grid;
    for (int i = 1; i <= 6; ++i) grid.maps.push_back("map" + std::to_string(i));
    grid.uav_counts = {1, 2, 3, 4};
    grid.population_sizes = {1000, 2000, 3000, 4000, 5000};
    grid.generation_counts = {100, 200, 300, 400, 500};
    grid.runs_per_cell = 50;
    grid.base_seed = base_seed;
    grid.ga_base.early_stop_at_lower_bound = false;
    return grid;
}

// Stable per-run seed: a pure function of the run identity, so partial and
// resumed grids reproduce byte-identical records in any execution order.
inline std::uint64_t derive_run_seed(std::uint64_t base_seed, std::string_view map_id, int uavs,
                                     int population, int generations, int run_index) {
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a over the map id
    for (const char ch : map_id) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    std::uint64_t state = base_seed;
    state ^= splitmix64(state) ^ h;
    state ^= splitmix64(state) ^ static_cast<std::uint64_t>(uavs);
    state ^= splitmix64(state) ^ static_cast<std::uint64_t>(population);
    state ^= splitmix64(state) ^ static_cast<std::uint64_t>(generations);
    state ^= splitmix64(state) ^ static_cast<std::uint64_t>(run_index);
    return splitmix64(state);
}

// Resolves a map id against the built-ins; the CLI layer may register extra
// maps by passing a resolver.
using MapResolver = std::function<const GridMap*(const std::string&)>;

inline const GridMap* builtin_resolver(const std::string& id) { return find_builtin_map(id); }

// Executes every run of the grid on a small worker pool and hands finished
// records to `sink` (serialized; records arrive in completion order). Runs
// whose key appears in `already_done` are skipped, which makes interrupted
// grids resumable. The set of emitted records is independent of scheduling.
inline void run_grid(const ExperimentGrid& grid,
                     const std::function<void(const RunRecord&)>& sink, int workers = 1,
                     const std::set<RunKey>* already_done = nullptr,
                     const std::function<void(std::size_t, std::size_t)>& progress = nullptr,
                     const MapResolver& resolve = builtin_resolver) {
    grid.validate();
    grid.ga_base.validate();

    struct Task {
        const GridMap* map;
        int uavs, population, generations, run_index;
    };
    std::vector<Task> tasks;
    for (const std::string& map_id : grid.maps) {
        const GridMap* map = resolve(map_id);
        if (map == nullptr) throw std::invalid_argument("unknown map id: " + map_id);
        for (const int uavs : grid.uav_counts)
            for (const int pop : grid.population_sizes)
                for (const int gens : grid.generation_counts)
                    for (int run = 0; run < grid.runs_per_cell; ++run) {
                        if (already_done &&
                            already_done->count(RunKey{map_id, uavs, pop, gens, run}))
                            continue;
                        tasks.push_back(Task{map, uavs, pop, gens, run});
                    }
    }

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex sink_mutex;
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& task = tasks[i];
            try {
                GaConfig config = grid.ga_base;
                config.population_size = task.population;
                config.generations = task.generations;
                config.seed = derive_run_seed(grid.base_seed, task.map->id(), task.uavs,
                                              task.population, task.generations, task.run_index);
                const GaRunResult result = run_ga(config, *task.map, task.uavs);

                RunRecord record;
                record.map_id = task.map->id();
                record.uavs = task.uavs;
                record.population_size = task.population;
                record.generations = task.generations;
                record.run_index = task.run_index;
                record.seed = config.seed;
                record.covered = result.best_sim.covered;
                record.best_fitness = result.best_fitness;
                if (record.covered) record.best_epochs = result.best_sim.epochs_used;
                record.wall_time_seconds = result.wall_time_seconds;

                const std::size_t finished = done.fetch_add(1) + 1;
                {
                    const std::lock_guard<std::mutex> lock(sink_mutex);
                    sink(record);
                    if (progress) progress(finished, tasks.size());
                }
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(tasks.size()); // stop handing out work
                return;
            }
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// Records file: append-only, line-delimited, versioned header. Field order is
// fixed; best_epochs is empty for uncovered runs.

inline constexpr const char* kRecordsVersionLine = "#swarmcover-records v1";
inline constexpr const char* kRecordsColumnsLine =
    "map_id,uavs,population,generations,run,seed,covered,best_fitness,best_epochs,wall_time_s";

inline std::string records_header() {
    return std::string(kRecordsVersionLine) + "\n" + kRecordsColumnsLine + "\n";
}

inline std::string format_record(const RunRecord& r) {
    std::ostringstream out;
    out << r.map_id << ',' << r.uavs << ',' << r.population_size << ',' << r.generations << ','
        << r.run_index << ',' << r.seed << ',' << (r.covered ? 1 : 0) << ',' << r.best_fitness
        << ',';
    if (r.best_epochs) out << *r.best_epochs;
    out << ',';
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6f", r.wall_time_seconds);
    out << buffer << '\n';
    return out.str();
}

inline std::vector<RunRecord> parse_records(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("records file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kRecordsVersionLine)
        throw std::invalid_argument("unsupported records version line: " + line);
    if (!std::getline(in, line)) throw std::invalid_argument("records file has no column header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kRecordsColumnsLine)
        throw std::invalid_argument("unexpected records columns: " + line);

    std::vector<RunRecord> out;
    int line_number = 2;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = line.find(',', pos);
            fields.push_back(line.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (fields.size() != 10)
            throw std::invalid_argument("records line " + std::to_string(line_number) + " has " +
                                        std::to_string(fields.size()) + " fields, expected 10");
        try {
            RunRecord r;
            r.map_id = fields[0];
            r.uavs = std::stoi(fields[1]);
            r.population_size = std::stoi(fields[2]);
            r.generations = std::stoi(fields[3]);
            r.run_index = std::stoi(fields[4]);
            r.seed = std::stoull(fields[5]);
            r.covered = fields[6] == "1";
            r.best_fitness = std::stoi(fields[7]);
            if (!fields[8].empty()) r.best_epochs = std::stoi(fields[8]);
            r.wall_time_seconds = std::stod(fields[9]);
            out.push_back(std::move(r));
        } catch (const std::exception&) {
            throw std::invalid_argument("records line " + std::to_string(line_number) +
                                        " is malformed");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Experiment config file: `key = value` lines, '#' comments. Lists are
// comma-separated. Unknown keys and malformed values report line numbers.

struct ConfigError : std::runtime_error {
    ConfigError(const std::string& message, int line)
        : std::runtime_error("config line " + std::to_string(line) + ": " + message) {}
};

inline ExperimentGrid parse_experiment_config(const std::string& text) {
    ExperimentGrid grid;
    grid.runs_per_cell = 0; // required key
    grid.ga_base.early_stop_at_lower_bound = false;

    std::istringstream in(text);
    std::string line;
    int line_number = 0;
    bool saw_maps = false, saw_uavs = false, saw_pops = false, saw_gens = false;

    auto parse_int_list = [](const std::string& value, int line_no) {
        std::vector<int> out;
        std::istringstream items(value);
        std::string item;
        while (std::getline(items, item, ',')) {
            try {
                out.push_back(std::stoi(item));
            } catch (const std::exception&) {
                throw ConfigError("expected an integer list, got '" + item + "'", line_no);
            }
        }
        if (out.empty()) throw ConfigError("empty list", line_no);
        return out;
    };

    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto first = s.find_first_not_of(" \t");
            if (first == std::string::npos) return std::string();
            const auto last = s.find_last_not_of(" \t");
            return s.substr(first, last - first + 1);
        };
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_number);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) throw ConfigError("missing value for '" + key + "'", line_number);

        try {
            if (key == "maps") {
                std::istringstream items(value);
                std::string item;
                grid.maps.clear();
                while (std::getline(items, item, ',')) grid.maps.push_back(trim(item));
                saw_maps = true;
            } else if (key == "uavs") {
                grid.uav_counts = parse_int_list(value, line_number);
                saw_uavs = true;
            } else if (key == "populations") {
                grid.population_sizes = parse_int_list(value, line_number);
                saw_pops = true;
            } else if (key == "generations") {
                grid.generation_counts = parse_int_list(value, line_number);
                saw_gens = true;
            } else if (key == "runs") {
                grid.runs_per_cell = std::stoi(value);
            } else if (key == "base_seed") {
                grid.base_seed = std::stoull(value);
            } else if (key == "crossover_rate") {
                grid.ga_base.crossover_rate = std::stod(value);
            } else if (key == "crossover_op") {
                if (value == "two-point")
                    grid.ga_base.crossover_op = CrossoverOp::TwoPoint;
                else if (value == "uniform")
                    grid.ga_base.crossover_op = CrossoverOp::Uniform;
                else
                    throw ConfigError("crossover_op must be two-point or uniform", line_number);
            } else if (key == "segment_mutation_rate") {
                grid.ga_base.segment_mutation_rate = std::stod(value);
            } else if (key == "mutation_rate") {
                if (value == "auto")
                    grid.ga_base.mutation_rate.reset();
                else
                    grid.ga_base.mutation_rate = std::stod(value);
            } else if (key == "tournament_size") {
                grid.ga_base.tournament_size = std::stoi(value);
            } else if (key == "elitism") {
                grid.ga_base.elitism = std::stoi(value);
            } else if (key == "early_stop") {
                if (value == "true" || value == "1")
                    grid.ga_base.early_stop_at_lower_bound = true;
                else if (value == "false" || value == "0")
                    grid.ga_base.early_stop_at_lower_bound = false;
                else
                    throw ConfigError("expected true/false for early_stop", line_number);
            } else {
                throw ConfigError("unknown key '" + key + "'", line_number);
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("malformed value '" + value + "' for '" + key + "'", line_number);
        }
    }

    if (!saw_maps) throw ConfigError("missing required key 'maps'", line_number);
    if (!saw_uavs) throw ConfigError("missing required key 'uavs'", line_number);
    if (!saw_pops) throw ConfigError("missing required key 'populations'", line_number);
    if (!saw_gens) throw ConfigError("missing required key 'generations'", line_number);
    if (grid.runs_per_cell < 1) throw ConfigError("missing required key 'runs'", line_number);
    return grid;
}

} // namespace swarmcover
