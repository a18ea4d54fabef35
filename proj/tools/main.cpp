// Command-line front end: single solves, grid-search execution, report
// generation, map utilities and static path rendering.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "swarmcover/evolve.hpp"
#include "swarmcover/grid_map.hpp"
#include "swarmcover/harness.hpp"
#include "swarmcover/oracle.hpp"
#include "swarmcover/render.hpp"
#include "swarmcover/report.hpp"
#include "swarmcover/result_file.hpp"
#include "swarmcover/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitNotCovered = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

// A map reference is a built-in name ("map1".."map6") or a file path.
swarmcover::GridMap load_map(const std::string& reference) {
    if (const swarmcover::GridMap* builtin = swarmcover::find_builtin_map(reference))
        return *builtin;
    if (!std::filesystem::exists(reference))
        throw std::runtime_error("unknown map '" + reference +
                                 "' (not a built-in name or an existing file)");
    return swarmcover::GridMap::parse(read_file(reference),
                                      std::filesystem::path(reference).stem().string());
}

int default_workers() {
    if (const char* env = std::getenv("SWARMCOVER_WORKERS")) {
        const int value = std::atoi(env);
        if (value >= 1) return value;
    }
    return 1;
}

struct SolveOptions {
    std::string map_ref;
    int uavs = 1;
    swarmcover::GaConfig ga;
    double mutation_rate = -1.0; // negative = auto
    std::string crossover_op = "two-point";
    bool no_early_stop = false;
    std::string out_path = "result.json";
};

void echo_solve_config(const SolveOptions& opt, const swarmcover::GridMap& map) {
    std::cout << "config: map=" << (map.id().empty() ? opt.map_ref : map.id())
              << " uavs=" << opt.uavs << " pop=" << opt.ga.population_size
              << " gens=" << opt.ga.generations << " seed=" << opt.ga.seed
              << " crossover_rate=" << opt.ga.crossover_rate << " crossover_op="
              << (opt.ga.crossover_op == swarmcover::CrossoverOp::TwoPoint ? "two-point"
                                                                           : "uniform")
              << " mutation_rate=";
    if (opt.ga.mutation_rate)
        std::cout << *opt.ga.mutation_rate;
    else
        std::cout << "auto";
    std::cout << " segment_rate=" << opt.ga.segment_mutation_rate
              << " tournament=" << opt.ga.tournament_size << " elitism=" << opt.ga.elitism
              << " early_stop=" << (opt.ga.early_stop_at_lower_bound ? "true" : "false")
              << " out=" << opt.out_path << "\n";
}

int cmd_solve(const SolveOptions& options) {
    SolveOptions opt = options;
    const swarmcover::GridMap map = load_map(opt.map_ref);
    if (opt.mutation_rate >= 0.0) opt.ga.mutation_rate = opt.mutation_rate;
    if (opt.crossover_op == "uniform")
        opt.ga.crossover_op = swarmcover::CrossoverOp::Uniform;
    else if (opt.crossover_op != "two-point")
        throw CLI::ValidationError("solve", "crossover-op must be two-point or uniform");
    opt.ga.early_stop_at_lower_bound = !opt.no_early_stop;
    echo_solve_config(opt, map);

    const swarmcover::GaRunResult run = swarmcover::run_ga(opt.ga, map, opt.uavs);

    swarmcover::SolveResult result;
    result.map_id = map.id().empty() ? opt.map_ref : map.id();
    result.map_text = map.serialize();
    result.uavs = opt.uavs;
    result.config = opt.ga;
    result.bound = swarmcover::theoretical_min_epochs(map, opt.uavs);
    result.epoch_limit = swarmcover::max_epochs(map, opt.uavs);
    result.generations_executed = run.generations_executed;
    result.sim = run.best_sim;
    result.genotype = run.best_genotype;
    write_file(opt.out_path, swarmcover::write_solve_result(result, map));

    if (result.sim.covered) {
        std::cout << "covered in " << result.sim.epochs_used << " epochs (bound " << result.bound
                  << ") after " << run.generations_executed << " generations, "
                  << swarmcover::report_detail::fixed(run.wall_time_seconds, 2) << "s\n";
        return kExitOk;
    }
    std::cout << "not covered: fitness " << result.sim.fitness << " = max_epochs "
              << result.epoch_limit << " + " << result.sim.unvisited << " unvisited cells\n";
    return kExitNotCovered;
}

struct GridSearchOptions {
    std::string config_path;
    bool full_study = false;
    std::uint64_t base_seed = 1;
    bool base_seed_set = false;
    std::string out_path;
    int workers = default_workers();
    bool no_resume = false;
};

int cmd_grid_search(const GridSearchOptions& opt) {
    swarmcover::ExperimentGrid grid;
    if (opt.full_study) {
        grid = swarmcover::full_study_grid(opt.base_seed_set ? opt.base_seed : 1);
    } else {
        if (opt.config_path.empty())
            throw CLI::ValidationError("grid-search", "either --config or --full-study is required");
        grid = swarmcover::parse_experiment_config(read_file(opt.config_path));
        if (opt.base_seed_set) grid.base_seed = opt.base_seed;
    }

    std::cout << "config: source=" << (opt.full_study ? "full-study-profile" : opt.config_path)
              << " runs=" << grid.total_runs() << " base_seed=" << grid.base_seed
              << " workers=" << opt.workers << " out=" << opt.out_path << "\n";

    // Resume: keep every record already present for this grid's keys.
    std::set<swarmcover::RunKey> done;
    bool append = false;
    if (!opt.no_resume && std::filesystem::exists(opt.out_path) &&
        std::filesystem::file_size(opt.out_path) > 0) {
        for (const swarmcover::RunRecord& r : swarmcover::parse_records(read_file(opt.out_path)))
            done.insert(swarmcover::run_key(r));
        append = true;
        std::cerr << "resuming: " << done.size() << " records already present\n";
    }

    std::ofstream out(opt.out_path, append ? std::ios::app : std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + opt.out_path);
    if (!append) out << swarmcover::records_header();

    // Maps referenced by the grid may be built-ins or files next to the config.
    std::map<std::string, swarmcover::GridMap> extra;
    auto resolve = [&](const std::string& id) -> const swarmcover::GridMap* {
        if (const swarmcover::GridMap* builtin = swarmcover::find_builtin_map(id)) return builtin;
        auto it = extra.find(id);
        if (it != extra.end()) return &it->second;
        if (std::filesystem::exists(id)) {
            swarmcover::GridMap parsed = swarmcover::GridMap::parse(read_file(id), id);
            return &extra.emplace(id, std::move(parsed)).first->second;
        }
        return nullptr;
    };
    // Materialize file-backed maps up front so resolver results stay stable.
    for (const std::string& id : grid.maps) {
        if (resolve(id) == nullptr)
            throw std::runtime_error("unknown map '" + id + "' in experiment grid");
    }

    swarmcover::run_grid(
        grid,
        [&](const swarmcover::RunRecord& record) {
            out << swarmcover::format_record(record);
            out.flush();
        },
        opt.workers, done.empty() ? nullptr : &done,
        [&](std::size_t finished, std::size_t total) {
            if (finished % 10 == 0 || finished == total)
                std::cerr << "progress: " << finished << "/" << total << "\n";
        },
        resolve);
    std::cout << "grid search complete: " << opt.out_path << "\n";
    return kExitOk;
}

struct ReportOptions {
    std::string records_path;
    std::string table = "all";
    bool csv = false;
};

int cmd_report(const ReportOptions& opt) {
    const auto records = swarmcover::parse_records(read_file(opt.records_path));
    if (records.empty()) {
        std::cerr << "error: " << opt.records_path << " contains no records\n";
        return kExitUsage;
    }
    std::cout << "config: records=" << opt.records_path << " table=" << opt.table
              << " format=" << (opt.csv ? "csv" : "text") << " count=" << records.size() << "\n";

    using Formatter = std::string (*)(const std::vector<swarmcover::RunRecord>&);
    struct Entry {
        const char* id;
        Formatter text;
        Formatter csv;
    };
    static const Entry entries[] = {
        {"success", swarmcover::format_success_text, swarmcover::format_success_csv},
        {"max-success", swarmcover::format_max_success_text, swarmcover::format_max_success_csv},
        {"best-config", swarmcover::format_best_config_text, swarmcover::format_best_config_csv},
        {"min-epochs", swarmcover::format_min_epochs_text, swarmcover::format_min_epochs_csv},
        {"times", swarmcover::format_times_text, swarmcover::format_times_csv},
        {"comparison", swarmcover::format_comparison_text, swarmcover::format_comparison_csv},
    };

    bool matched = false;
    for (const Entry& entry : entries) {
        if (opt.table != "all" && opt.table != entry.id) continue;
        matched = true;
        std::cout << "\n" << (opt.csv ? entry.csv(records) : entry.text(records));
    }
    if (!matched) {
        std::cerr << "error: unknown table '" << opt.table
                  << "' (success, max-success, best-config, min-epochs, times, comparison, all)\n";
        return kExitUsage;
    }
    return kExitOk;
}

struct RenderOptions {
    std::string result_path;
    std::string format = "ascii";
    std::string out_prefix = "paths";
};

int cmd_render(const RenderOptions& opt) {
    const swarmcover::SolveResult result = swarmcover::read_solve_result(read_file(opt.result_path));
    if (result.sim.paths.empty()) {
        std::cerr << "error: result file has no paths to render\n";
        return kExitUsage;
    }
    const swarmcover::GridMap map = swarmcover::GridMap::parse(result.map_text, result.map_id);
    std::cout << "config: result=" << opt.result_path << " format=" << opt.format
              << " out=" << opt.out_prefix << " uavs=" << result.sim.paths.size() << "\n";

    if (opt.format == "ascii") {
        std::cout << "\n" << swarmcover::ascii_diagrams(map, result.sim);
        return kExitOk;
    }
    if (opt.format == "svg") {
        for (std::size_t u = 0; u < result.sim.paths.size(); ++u) {
            const std::string path = opt.out_prefix + "_uav" + std::to_string(u + 1) + ".svg";
            write_file(path, swarmcover::svg_diagram(map, result.sim.paths[u],
                                                     "UAV " + std::to_string(u + 1) + " on " +
                                                         result.map_id));
            std::cout << "wrote " << path << "\n";
        }
        return kExitOk;
    }
    std::cerr << "error: unknown format '" << opt.format << "' (ascii, svg)\n";
    return kExitUsage;
}

void print_map_summary(const swarmcover::GridMap& map) {
    std::cout << map.id() << ": " << map.rows() << "x" << map.cols()
              << ", visitable " << map.visitable_count() << ", bounds ";
    for (int n = 1; n <= 4 && n <= map.visitable_count(); ++n)
        std::cout << (n > 1 ? "/" : "") << swarmcover::theoretical_min_epochs(map, n);
    std::cout << " (1-4 UAVs, epoch limit is twice the bound)\n";
}

int cmd_maps(const std::string& action, const std::string& name) {
    if (action == "list") {
        for (const swarmcover::GridMap& map : swarmcover::builtin_maps()) print_map_summary(map);
        return kExitOk;
    }
    if (action == "show") {
        const swarmcover::GridMap* map = swarmcover::find_builtin_map(name);
        if (map == nullptr) {
            std::cerr << "error: unknown built-in map '" << name << "'\n";
            return kExitUsage;
        }
        print_map_summary(*map);
        std::cout << map->serialize();
        return kExitOk;
    }
    std::cerr << "error: maps action must be 'list' or 'show'\n";
    return kExitUsage;
}

int cmd_validate(const std::string& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        const swarmcover::GridMap map = swarmcover::GridMap::parse(text, path);
        std::cout << "valid map: " << map.rows() << "x" << map.cols() << ", visitable "
                  << map.visitable_count() << "\n";
        for (int n = 1; n <= 4 && n <= map.visitable_count(); ++n) {
            try {
                swarmcover::start_positions(map, n);
            } catch (const std::exception&) {
                break; // corners coincide on degenerate grids
            }
            std::cout << "  " << n << " UAV" << (n > 1 ? "s" : "") << ": bound "
                      << swarmcover::theoretical_min_epochs(map, n) << ", epoch limit "
                      << swarmcover::max_epochs(map, n) << "\n";
        }
        return kExitOk;
    } catch (const swarmcover::MapError& e) {
        std::cerr << "invalid map: " << e.what() << "\n";
        return kExitUsage;
    }
}

struct OracleOptions {
    std::string action;
    std::string map_ref;
    int uavs = 1;
    int start_row = 0;
    int start_col = 0;
    std::uint64_t budget = 2'000'000;
    std::uint64_t seed = 1;
};

int cmd_oracle(const OracleOptions& opt) {
    const swarmcover::GridMap map = load_map(opt.map_ref);
    if (opt.action == "ham") {
        const bool exists = swarmcover::hamiltonian_path_exists(
            map, swarmcover::Coord{opt.start_row, opt.start_col});
        std::cout << "hamiltonian path from (" << opt.start_row << "," << opt.start_col
                  << "): " << (exists ? "yes" : "no") << "\n";
        return kExitOk;
    }
    if (opt.action == "exhaustive") {
        swarmcover::OracleBudget budget;
        budget.max_joint_policies = opt.budget;
        const auto best = swarmcover::exhaustive_min_epochs(map, opt.uavs, budget);
        if (best)
            std::cout << "exhaustive optimum: " << *best << " epochs\n";
        else
            std::cout << "exhaustive optimum: infeasible\n";
        return kExitOk;
    }
    if (opt.action == "eval") {
        swarmcover::Rng rng(opt.seed);
        swarmcover::Genotype g(swarmcover::genotype_length(map, opt.uavs));
        for (double& gene : g) gene = rng.next_double();
        const swarmcover::SimResult fast = swarmcover::evaluate(g, map, opt.uavs);
        const swarmcover::SimResult slow = swarmcover::reference_evaluate(g, map, opt.uavs);
        std::cout << "simulator fitness " << fast.fitness << ", reference fitness "
                  << slow.fitness << (fast.fitness == slow.fitness ? " (agree)" : " (MISMATCH)")
                  << "\n";
        return fast.fitness == slow.fitness ? kExitOk : kExitRuntime;
    }
    std::cerr << "error: oracle action must be ham, exhaustive or eval\n";
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coverage path planning for UAV swarms on obstacle grids"};
    app.require_subcommand(1);

    SolveOptions solve_opt;
    CLI::App* solve = app.add_subcommand("solve", "Run the GA once and write a result file");
    solve->add_option("--map", solve_opt.map_ref, "built-in name (map1..map6) or map file")
        ->required();
    solve->add_option("--uavs", solve_opt.uavs, "swarm size (1-4)")->check(CLI::Range(1, 4));
    solve->add_option("--pop", solve_opt.ga.population_size, "population size");
    solve->add_option("--gens", solve_opt.ga.generations, "generations");
    solve->add_option("--seed", solve_opt.ga.seed, "run seed");
    solve->add_option("--crossover-rate", solve_opt.ga.crossover_rate, "crossover probability");
    solve->add_option("--crossover-op", solve_opt.crossover_op, "two-point or uniform");
    solve->add_option("--mutation-rate", solve_opt.mutation_rate,
                      "per-gene mutation probability (default max(0.01, 1.5/L))");
    solve->add_option("--segment-rate", solve_opt.ga.segment_mutation_rate,
                      "probability of window-reset mutation instead of per-gene");
    solve->add_option("--tournament", solve_opt.ga.tournament_size, "tournament size");
    solve->add_option("--elitism", solve_opt.ga.elitism, "elites carried over unchanged");
    solve->add_flag("--no-early-stop", solve_opt.no_early_stop,
                    "run all generations even after reaching the bound");
    solve->add_option("--out", solve_opt.out_path, "result file path");

    GridSearchOptions grid_opt;
    CLI::App* grid = app.add_subcommand("grid-search", "Run an experiment grid to a records file");
    grid->add_option("--config", grid_opt.config_path, "experiment config file");
    grid->add_flag("--full-study", grid_opt.full_study,
                   "run the complete 30,000-run benchmark grid");
    grid->add_option("--base-seed", grid_opt.base_seed, "override the grid base seed")
        ->each([&](const std::string&) { grid_opt.base_seed_set = true; });
    grid->add_option("--out", grid_opt.out_path, "records file path")->required();
    grid->add_option("--workers", grid_opt.workers,
                     "worker threads (default $SWARMCOVER_WORKERS or 1)");
    grid->add_flag("--no-resume", grid_opt.no_resume, "overwrite instead of resuming");

    ReportOptions report_opt;
    CLI::App* report = app.add_subcommand("report", "Aggregate a records file into tables");
    report->add_option("--records", report_opt.records_path, "records file")->required();
    report->add_option("--table", report_opt.table,
                       "success | max-success | best-config | min-epochs | times | comparison | all");
    report->add_flag("--csv", report_opt.csv, "machine-readable output");

    RenderOptions render_opt;
    CLI::App* render = app.add_subcommand("render", "Draw per-UAV path diagrams from a result file");
    render->add_option("--result", render_opt.result_path, "solve result file")->required();
    render->add_option("--format", render_opt.format, "ascii or svg");
    render->add_option("--out", render_opt.out_prefix, "output file prefix for svg");

    std::string maps_action = "list";
    std::string maps_name;
    CLI::App* maps = app.add_subcommand("maps", "List or show the built-in maps");
    maps->add_option("action", maps_action, "list or show");
    maps->add_option("name", maps_name, "map name for 'show'");

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "Check a map file and print its bounds");
    validate->add_option("path", validate_path, "map file")->required();

    OracleOptions oracle_opt;
    CLI::App* oracle = app.add_subcommand("oracle", "Reference checks (maintainers)");
    oracle->group(""); // hidden
    oracle->add_option("action", oracle_opt.action, "ham | exhaustive | eval")->required();
    oracle->add_option("--map", oracle_opt.map_ref, "map reference")->required();
    oracle->add_option("--uavs", oracle_opt.uavs, "swarm size")->check(CLI::Range(1, 4));
    oracle->add_option("--start-row", oracle_opt.start_row, "start row");
    oracle->add_option("--start-col", oracle_opt.start_col, "start column");
    oracle->add_option("--max-policies", oracle_opt.budget, "joint policy budget");
    oracle->add_option("--seed", oracle_opt.seed, "genotype seed for eval");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*solve) return cmd_solve(solve_opt);
        if (*grid) return cmd_grid_search(grid_opt);
        if (*report) return cmd_report(report_opt);
        if (*render) return cmd_render(render_opt);
        if (*maps) return cmd_maps(maps_action, maps_name);
        if (*validate) return cmd_validate(validate_path);
        if (*oracle) return cmd_oracle(oracle_opt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const swarmcover::MapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const swarmcover::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
