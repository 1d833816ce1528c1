#pragma once

#include "picolor/gnn.hpp"
#include "picolor/graph.hpp"
#include "picolor/heuristics.hpp"
#include "picolor/potts.hpp"
#include "picolor/scheduling.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace picolor {

enum class Solver { PiGcn, PiSage, Tabucol, Greedy };

std::string to_string(Solver s);
/// Accepts PI_GCN, PI_SAGE, TABUCOL, GREEDY. Throws InputError otherwise.
Solver parse_solver(std::string_view name);

/// One row of a results table.
struct InstanceReport {
    std::string graph_name;
    std::size_t n = 0;
    std::size_t edge_count = 0;
    std::optional<double> density;
    int q = 0;
    Solver solver = Solver::Greedy;
    std::int64_t cost = 0;
    std::optional<double> epsilon;
    std::optional<int> chi_upper;
    int seeds_tried = 0;
    std::uint64_t best_seed = 0;
    double wall_time_seconds = 0.0;
    std::string stop_reason;
    Coloring coloring;  ///< the q-coloring whose clashes `cost` counts
    std::optional<Coloring> purified;
};

struct ColorOptions {
    Solver solver = Solver::PiSage;
    Hyperparams hp;                 ///< num_colors and seed are the q and base seed
    int seeds = 5;                  ///< best-of-k, seed_i = hp.seed + i
    bool purify = false;
    int purify_rounds = 64;
    std::int64_t tabucol_iterations = 1'000'000;
    double budget_seconds = 0.0;    ///< per-seed wall clock cap, 0 = none
};

/// Runs one solver best-of-k seeds on a graph.
InstanceReport color_instance(const Graph& g, const std::string& name, const ColorOptions& options);

/// Machine-readable report. Wall time is left out unless requested, so
/// reports are byte-stable for identical inputs.
nlohmann::ordered_json to_json(const InstanceReport& r, bool include_timing = false);

/// One `node color` line per node, both 1-based.
std::string render_coloring(const Coloring& c);
Coloring parse_coloring(std::string_view text, std::size_t n);

struct ChromaticOptions {
    Hyperparams hp;
    SearchStrategy strategy = SearchStrategy::Sequential;
    int q_max = 0;  ///< 0 means greedy's bound
    QSearchOptions search;
    bool exact = false;  ///< run the enumeration oracle instead of training
};

struct ChromaticReport {
    std::string graph_name;
    int chi_upper = 0;
    bool exact = false;
    Coloring coloring;
    std::vector<QAttempt> attempts;
    int greedy_bound = 0;
};

/// Throws SearchExhausted when no coloring is found up to q_max.
ChromaticReport chromatic_instance(const Graph& g, const std::string& name, const ChromaticOptions& options);

nlohmann::ordered_json to_json(const ChromaticReport& r);

struct ScheduleOptions {
    Solver solver = Solver::PiSage;
    Hyperparams hp;
    int seeds = 3;
    int purify_rounds = 64;
    int extra_colors = 2;  ///< colors tried beyond the sweep lower bound
    IntervalMode mode = IntervalMode::HalfOpen;
};

struct ScheduleReport {
    Assignment assignment;
    bool feasible = false;
    Solver solver = Solver::PiSage;
    int q = 0;            ///< colors the solver was run with
    int lower_bound = 0;  ///< maximum number of overlapping requests
    std::int64_t best_cost = 0;
};

/// Encode, solve from the lower bound upward, purify if needed, decode and
/// validate.
ScheduleReport schedule_requests(std::span<const Request> requests, const ScheduleOptions& options);

std::string render_assignment_csv(std::span<const Request> requests, const Assignment& a);
nlohmann::ordered_json to_json(const ScheduleReport& r);

/// One manifest entry: a graph, how to solve it, and its budget.
struct ManifestRow {
    std::string graph;   ///< path, relative to the manifest file
    std::string preset;  ///< preset name or config path; may be empty
    Solver solver = Solver::Greedy;
    std::optional<int> q;
    int seeds = 5;
    double budget_seconds = 0.0;
    std::int64_t iterations = 1'000'000;
    bool purify = false;
};

std::vector<ManifestRow> parse_manifest(std::string_view json_text);

struct BenchRow {
    ManifestRow row;
    std::optional<InstanceReport> report;
    std::string error;  ///< set when the row failed
};

/// Runs every row on a worker pool; output keeps manifest order.
std::vector<BenchRow> run_bench(const std::vector<ManifestRow>& rows, const std::string& base_dir, int workers = 0);

nlohmann::ordered_json bench_json(const std::vector<BenchRow>& rows);
std::string bench_csv(const std::vector<BenchRow>& rows);
std::string bench_timings_csv(const std::vector<BenchRow>& rows);
/// Human-oriented table with the columns of the COLOR results table.
std::string bench_table(const std::vector<BenchRow>& rows);

} // namespace picolor
