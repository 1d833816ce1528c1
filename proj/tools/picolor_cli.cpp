// picolor: graph coloring with physics-inspired GNNs and classical baselines.
//
// Exit status: 0 success, 1 infeasible result after the budget ran out,
// 2 input error.

#include "picolor/bench.hpp"
#include "picolor/config.hpp"
#include "picolor/errors.hpp"
#include "picolor/graph.hpp"
#include "picolor/potts.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace picolor;
using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kInputError = 2;

void write_file(const std::string& path, const std::string& contents) {
    if (auto parent = std::filesystem::path(path).parent_path(); !parent.empty()) {
        std::filesystem::create_directories(parent);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << contents;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

struct HyperparamSource {
    std::string config_path;
    std::string preset_name;

    void add_to(CLI::App* app) {
        app->add_option("--config", config_path, "hyperparameter file (key = value)");
        app->add_option("--preset", preset_name, "built-in preset name, e.g. myciel5");
    }

    Hyperparams resolve(const std::string& graph_path) const {
        if (!config_path.empty()) return load_hyperparams(config_path);
        if (!preset_name.empty()) return preset(preset_name);
        // Fall back to the preset named after the instance, if there is one.
        const auto name = stem(graph_path);
        const auto& names = preset_names();
        if (std::find(names.begin(), names.end(), name) != names.end()) return preset(name);
        return Hyperparams{};
    }
};

Graph load_graph(const std::string& path) {
    std::vector<std::string> warnings;
    Graph g = read_dimacs_file(path, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << path << ": " << w << '\n';
    return g;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"picolor: physics-inspired graph coloring toolkit"};
    app.require_subcommand(1);

    // color
    auto* color = app.add_subcommand("color", "color one DIMACS instance, best of k seeds");
    std::string color_graph;
    HyperparamSource color_hp;
    std::string color_solver = "PI_SAGE";
    int color_seeds = 5;
    bool color_purify = false;
    int color_purify_rounds = 64;
    std::optional<int> color_q;
    std::optional<std::uint64_t> color_seed;
    std::int64_t color_iterations = 1'000'000;
    double color_budget = 0.0;
    std::optional<int> color_max_epochs;
    std::string color_out_json;
    std::string color_out_coloring;
    bool color_timing = false;
    color->add_option("graph", color_graph, "DIMACS .col file")->required();
    color_hp.add_to(color);
    color->add_option("--solver", color_solver, "PI_GCN, PI_SAGE, TABUCOL or GREEDY");
    color->add_option("--seeds", color_seeds, "number of seeds (best of k)");
    color->add_flag("--purify", color_purify, "purify infeasible results at the cost of extra colors");
    color->add_option("--purify-rounds", color_purify_rounds);
    color->add_option("-q,--colors", color_q, "override num_colors");
    color->add_option("--seed", color_seed, "override the base seed");
    color->add_option("--iterations", color_iterations, "Tabucol iteration budget");
    color->add_option("--budget", color_budget, "wall-clock seconds per seed for GNN training (0 = none)");
    color->add_option("--max-epochs", color_max_epochs, "override max_epochs");
    color->add_option("--out-json", color_out_json, "write the JSON report here");
    color->add_option("--out-coloring", color_out_coloring, "write the coloring (node color, 1-based)");
    color->add_flag("--timing", color_timing, "include wall time in the JSON report");

    // chromatic
    auto* chromatic = app.add_subcommand("chromatic", "upper-bound the chromatic number");
    std::string chrom_graph;
    HyperparamSource chrom_hp;
    std::string chrom_strategy = "sequential";
    int chrom_q_max = 0;
    int chrom_seeds = 1;
    bool chrom_purify = false;
    bool chrom_exact = false;
    std::optional<int> chrom_max_epochs;
    std::string chrom_out_json;
    chromatic->add_option("graph", chrom_graph, "DIMACS .col file")->required();
    chrom_hp.add_to(chromatic);
    chromatic->add_option("--strategy", chrom_strategy, "sequential or binary")
        ->check(CLI::IsMember({"sequential", "binary"}));
    chromatic->add_option("--q-max", chrom_q_max, "largest q to try (default: greedy bound)");
    chromatic->add_option("--seeds", chrom_seeds, "seeds per q");
    chromatic->add_flag("--purify", chrom_purify, "allow purified solutions to count");
    chromatic->add_flag("--exact", chrom_exact, "use the exhaustive oracle (small graphs only)");
    chromatic->add_option("--max-epochs", chrom_max_epochs, "override max_epochs");
    chromatic->add_option("--out-json", chrom_out_json);

    // schedule
    auto* schedule = app.add_subcommand("schedule", "assign resources to timed requests");
    std::string sched_csv;
    HyperparamSource sched_hp;
    std::string sched_solver = "PI_SAGE";
    int sched_seeds = 3;
    bool sched_closed = false;
    std::string sched_out_csv;
    std::string sched_out_json;
    schedule->add_option("requests", sched_csv, "CSV with header id,start,end")->required();
    sched_hp.add_to(schedule);
    schedule->add_option("--solver", sched_solver, "PI_GCN, PI_SAGE, TABUCOL or GREEDY");
    schedule->add_option("--seeds", sched_seeds);
    schedule->add_flag("--closed-intervals", sched_closed, "back-to-back bookings conflict");
    schedule->add_option("--out-csv", sched_out_csv, "assignment CSV (id,resource)");
    schedule->add_option("--out-json", sched_out_json, "summary JSON");

    // bench
    auto* bench = app.add_subcommand("bench", "run a manifest of instances and solvers");
    std::string bench_manifest;
    std::string bench_out_dir;
    int bench_workers = 0;
    bench->add_option("manifest", bench_manifest, "JSON manifest")->required();
    bench->add_option("--out-dir", bench_out_dir, "write results.json, results.csv, timings.csv here");
    bench->add_option("--workers", bench_workers, "parallel rows (default: hardware threads)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact proper-coloring counts for small graphs");
    std::string oracle_graph;
    std::optional<int> oracle_q;
    std::uint64_t oracle_budget = kDefaultEnumerationBudget;
    oracle->add_option("graph", oracle_graph, "DIMACS .col file")->required();
    oracle->add_option("-q,--colors", oracle_q, "count proper q-colorings; omit for the chromatic number");
    oracle->add_option("--budget", oracle_budget, "largest q^n to enumerate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*color) {
            const Graph g = load_graph(color_graph);
            ColorOptions options;
            options.solver = parse_solver(color_solver);
            options.hp = color_hp.resolve(color_graph);
            if (color_q) options.hp.num_colors = *color_q;
            if (color_seed) options.hp.seed = *color_seed;
            if (color_max_epochs) options.hp.max_epochs = *color_max_epochs;
            options.hp.validate();
            options.seeds = color_seeds;
            options.purify = color_purify;
            options.purify_rounds = color_purify_rounds;
            options.tabucol_iterations = color_iterations;
            options.budget_seconds = color_budget;
            const auto report = color_instance(g, stem(color_graph), options);
            const auto text = to_json(report, color_timing).dump(2) + "\n";
            if (color_out_json.empty()) std::cout << text;
            else write_file(color_out_json, text);
            if (!color_out_coloring.empty()) {
                write_file(color_out_coloring, render_coloring(report.coloring));
                if (report.purified) {
                    write_file(color_out_coloring + ".purified", render_coloring(*report.purified));
                }
            }
            return report.cost == 0 || report.chi_upper ? kOk : kInfeasible;
        }

        if (*chromatic) {
            const Graph g = load_graph(chrom_graph);
            ChromaticOptions options;
            options.hp = chrom_hp.resolve(chrom_graph);
            if (chrom_max_epochs) options.hp.max_epochs = *chrom_max_epochs;
            options.strategy = chrom_strategy == "binary" ? SearchStrategy::Binary : SearchStrategy::Sequential;
            options.q_max = chrom_q_max;
            options.search.seeds = chrom_seeds;
            options.search.purify = chrom_purify;
            options.exact = chrom_exact;
            try {
                const auto report = chromatic_instance(g, stem(chrom_graph), options);
                const auto text = to_json(report).dump(2) + "\n";
                if (chrom_out_json.empty()) std::cout << text;
                else write_file(chrom_out_json, text);
                return kOk;
            } catch (const SearchExhausted& e) {
                std::cerr << "infeasible: " << e.what() << " (best cost " << e.best_cost << ")\n";
                return kInfeasible;
            }
        }

        if (*schedule) {
            const auto requests = read_requests_file(sched_csv);
            ScheduleOptions options;
            options.solver = parse_solver(sched_solver);
            options.hp = !sched_hp.config_path.empty()   ? load_hyperparams(sched_hp.config_path)
                         : !sched_hp.preset_name.empty() ? preset(sched_hp.preset_name)
                                                         : Hyperparams{};
            options.seeds = sched_seeds;
            options.mode = sched_closed ? IntervalMode::Closed : IntervalMode::HalfOpen;
            const auto report = schedule_requests(requests, options);
            const auto summary = to_json(report).dump(2) + "\n";
            if (sched_out_json.empty()) std::cout << summary;
            else write_file(sched_out_json, summary);
            if (!report.feasible) {
                std::cerr << "infeasible: no proper assignment found (best cost " << report.best_cost << ")\n";
                return kInfeasible;
            }
            const auto csv = render_assignment_csv(requests, report.assignment);
            if (sched_out_csv.empty()) std::cout << csv;
            else write_file(sched_out_csv, csv);
            return kOk;
        }

        if (*bench) {
            const auto rows = parse_manifest(read_file(bench_manifest));
            const auto base_dir = std::filesystem::path(bench_manifest).parent_path().string();
            const auto results = run_bench(rows, base_dir, bench_workers);
            const auto results_json = bench_json(results).dump(2) + "\n";
            if (bench_out_dir.empty()) {
                std::cout << results_json;
            } else {
                write_file((std::filesystem::path(bench_out_dir) / "results.json").string(), results_json);
                write_file((std::filesystem::path(bench_out_dir) / "results.csv").string(), bench_csv(results));
                write_file((std::filesystem::path(bench_out_dir) / "timings.csv").string(),
                           bench_timings_csv(results));
            }
            std::cerr << bench_table(results);
            return kOk;
        }

        if (*oracle) {
            const Graph g = load_graph(oracle_graph);
            json j;
            j["graph"] = stem(oracle_graph);
            if (oracle_q) {
                j["q"] = *oracle_q;
                j["proper_colorings"] = count_proper_colorings(g, *oracle_q, oracle_budget);
            } else {
                j["chromatic_number"] = chromatic_number_exact(g, oracle_budget);
            }
            std::cout << j.dump(2) << '\n';
            return kOk;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const SizeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kOk;
}
