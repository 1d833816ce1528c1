#include "picolor/bench.hpp"

#include "picolor/config.hpp"
#include "picolor/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

namespace picolor {

using json = nlohmann::ordered_json;

std::string to_string(Solver s) {
    switch (s) {
    case Solver::PiGcn: return "PI_GCN";
    case Solver::PiSage: return "PI_SAGE";
    case Solver::Tabucol: return "TABUCOL";
    case Solver::Greedy: return "GREEDY";
    }
    return "UNKNOWN";
}

Solver parse_solver(std::string_view name) {
    if (name == "PI_GCN") return Solver::PiGcn;
    if (name == "PI_SAGE") return Solver::PiSage;
    if (name == "TABUCOL") return Solver::Tabucol;
    if (name == "GREEDY") return Solver::Greedy;
    throw InputError("unknown solver '" + std::string(name) + "' (expected PI_GCN, PI_SAGE, TABUCOL or GREEDY)");
}

InstanceReport color_instance(const Graph& g, const std::string& name, const ColorOptions& options) {
    using clock = std::chrono::steady_clock;
    const auto started = clock::now();
    const int seeds = std::max(options.seeds, 1);

    InstanceReport r;
    r.graph_name = name;
    r.n = g.node_count();
    r.edge_count = g.edge_count();
    if (r.n >= 2) r.density = density(g);
    r.solver = options.solver;

    switch (options.solver) {
    case Solver::Greedy: {
        auto greedy = greedy_coloring(g);
        r.q = greedy.chi_upper;
        r.coloring = std::move(greedy.coloring);
        r.seeds_tried = 1;
        r.stop_reason = "COMPLETE";
        break;
    }
    case Solver::Tabucol: {
        r.q = options.hp.num_colors;
        r.cost = std::numeric_limits<std::int64_t>::max();
        for (int s = 0; s < seeds; ++s) {
            TabucolConfig cfg;
            cfg.max_iterations = options.tabucol_iterations;
            cfg.seed = options.hp.seed + static_cast<std::uint64_t>(s);
            auto res = tabucol(g, r.q, cfg);
            ++r.seeds_tried;
            if (res.cost < r.cost) {
                r.cost = res.cost;
                r.best_seed = cfg.seed;
                r.coloring = std::move(res.coloring);
            }
            if (r.cost == 0) break;
        }
        r.stop_reason = r.cost == 0 ? "ZERO_COST" : "MAX_ITERATIONS";
        break;
    }
    case Solver::PiGcn:
    case Solver::PiSage: {
        Hyperparams hp = options.hp;
        hp.model_kind = options.solver == Solver::PiGcn ? ModelKind::GcnStyle : ModelKind::SageStyle;
        r.q = hp.num_colors;
        r.cost = std::numeric_limits<std::int64_t>::max();
        double best_loss = std::numeric_limits<double>::infinity();
        for (int s = 0; s < seeds; ++s) {
            hp.seed = options.hp.seed + static_cast<std::uint64_t>(s);
            TrainOptions train_options;
            if (options.budget_seconds > 0.0) {
                train_options.deadline =
                    clock::now() + std::chrono::duration_cast<clock::duration>(
                                       std::chrono::duration<double>(options.budget_seconds));
            }
            TrainResult tr = train(g, hp, UniformCoupling{}, train_options);
            ++r.seeds_tried;
            const double loss = tr.loss_history.empty() ? 0.0 : tr.loss_history[tr.best_epoch];
            if (tr.best_cost < r.cost || (tr.best_cost == r.cost && loss < best_loss)) {
                r.cost = tr.best_cost;
                best_loss = loss;
                r.best_seed = hp.seed;
                r.coloring = std::move(tr.best_coloring);
                r.stop_reason = to_string(tr.stop_reason);
            }
            if (r.cost == 0) break;
        }
        break;
    }
    }

    if (r.edge_count > 0) r.epsilon = normalized_error(static_cast<double>(r.cost), r.edge_count);
    if (r.cost == 0) {
        r.chi_upper = r.coloring.colors_used();
    } else if (options.purify) {
        auto pr = purify(g, r.coloring, r.best_seed, options.purify_rounds);
        if (pr.feasible) {
            r.chi_upper = pr.colors_used;
            r.purified = std::move(pr.coloring);
        }
    }
    r.wall_time_seconds = std::chrono::duration<double>(clock::now() - started).count();
    return r;
}

namespace {

json one_based(const Coloring& c) {
    json out = json::array();
    for (int color : c.assignment) out.push_back(color + 1);
    return out;
}

template <typename T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

} // namespace

json to_json(const InstanceReport& r, bool include_timing) {
    json j;
    j["graph"] = r.graph_name;
    j["n"] = r.n;
    j["edges"] = r.edge_count;
    j["density"] = optional_json(r.density);
    j["q"] = r.q;
    j["solver"] = to_string(r.solver);
    j["cost"] = r.cost;
    j["epsilon"] = optional_json(r.epsilon);
    j["chi_upper"] = optional_json(r.chi_upper);
    j["seeds_tried"] = r.seeds_tried;
    j["best_seed"] = r.best_seed;
    j["stop_reason"] = r.stop_reason;
    j["coloring"] = one_based(r.coloring);
    if (r.purified) j["purified_coloring"] = one_based(*r.purified);
    if (include_timing) j["wall_time_seconds"] = r.wall_time_seconds;
    return j;
}

std::string render_coloring(const Coloring& c) {
    std::string out;
    for (std::size_t v = 0; v < c.size(); ++v) {
        out += std::to_string(v + 1) + " " + std::to_string(c.assignment[v] + 1) + "\n";
    }
    return out;
}

Coloring parse_coloring(std::string_view text, std::size_t n) {
    Coloring c;
    c.assignment.assign(n, -1);
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == 'c' || line[0] == '#') continue;
        std::istringstream fields(line);
        long long v = 0;
        long long color = 0;
        if (!(fields >> v >> color)) throw ParseError(line_no, "expected '<node> <color>'");
        if (v < 1 || static_cast<std::size_t>(v) > n) throw ParseError(line_no, "node out of range");
        if (color < 1) throw ParseError(line_no, "colors are 1-based");
        c.assignment[v - 1] = static_cast<int>(color - 1);
        c.num_colors = std::max(c.num_colors, static_cast<int>(color));
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (c.assignment[v] < 0) throw InputError("node " + std::to_string(v + 1) + " has no color");
    }
    return c;
}

ChromaticReport chromatic_instance(const Graph& g, const std::string& name, const ChromaticOptions& options) {
    ChromaticReport r;
    r.graph_name = name;
    r.greedy_bound = greedy_coloring(g).chi_upper;
    if (options.exact) {
        r.exact = true;
        r.chi_upper = chromatic_number_exact(g);
        return r;
    }
    const int q_max = options.q_max > 0 ? options.q_max : std::max(r.greedy_bound, 1);
    auto found = find_q_upper(g, options.hp, options.strategy, q_max, options.search);
    r.chi_upper = found.q;
    r.coloring = std::move(found.coloring);
    r.attempts = std::move(found.attempts);
    return r;
}

json to_json(const ChromaticReport& r) {
    json j;
    j["graph"] = r.graph_name;
    j["chi_upper"] = r.chi_upper;
    j["exact"] = r.exact;
    j["greedy_bound"] = r.greedy_bound;
    json attempts = json::array();
    for (const auto& a : r.attempts) {
        json item;
        item["q"] = a.q;
        item["seed"] = a.seed;
        item["cost"] = a.cost;
        item["epochs"] = a.epochs;
        item["purified_colors"] = optional_json(a.purified_colors);
        attempts.push_back(std::move(item));
    }
    j["attempts"] = std::move(attempts);
    if (!r.exact) j["coloring"] = one_based(r.coloring);
    return j;
}

ScheduleReport schedule_requests(std::span<const Request> requests, const ScheduleOptions& options) {
    ScheduleReport r;
    r.solver = options.solver;
    if (requests.empty()) {
        r.feasible = true;
        return r;
    }
    const auto encoded = encode_interval_graph(requests, options.mode);
    r.lower_bound = max_concurrent(requests, options.mode);

    std::optional<Coloring> chosen;
    if (options.solver == Solver::Greedy) {
        auto greedy = greedy_coloring(encoded.graph);
        r.q = greedy.chi_upper;
        chosen = std::move(greedy.coloring);
    } else {
        std::optional<std::pair<int, Coloring>> fallback;
        r.best_cost = std::numeric_limits<std::int64_t>::max();
        for (int q = r.lower_bound; q <= r.lower_bound + options.extra_colors; ++q) {
            ColorOptions co;
            co.solver = options.solver;
            co.hp = options.hp;
            co.hp.num_colors = q;
            co.seeds = options.seeds;
            co.purify = true;
            co.purify_rounds = options.purify_rounds;
            auto rep = color_instance(encoded.graph, "schedule", co);
            r.best_cost = std::min(r.best_cost, rep.cost);
            if (rep.cost == 0) {
                r.q = q;
                chosen = std::move(rep.coloring);
                break;
            }
            if (rep.purified && (!fallback || *rep.chi_upper < fallback->second.colors_used())) {
                fallback.emplace(q, std::move(*rep.purified));
            }
        }
        if (!chosen && fallback) {
            r.q = fallback->first;
            chosen = std::move(fallback->second);
        }
    }
    if (!chosen) return r;
    r.assignment = decode_assignment(encoded, requests, *chosen);
    r.feasible = validate_assignment(requests, r.assignment, options.mode);
    return r;
}

std::string render_assignment_csv(std::span<const Request> requests, const Assignment& a) {
    std::string out = "id,resource\n";
    for (const auto& req : requests) {
        out += req.id + "," + std::to_string(a.resource_of.at(req.id)) + "\n";
    }
    return out;
}

json to_json(const ScheduleReport& r) {
    json j;
    j["resources_used"] = r.assignment.resources_used;
    j["feasible"] = r.feasible;
    j["solver"] = to_string(r.solver);
    j["q"] = r.q;
    j["lower_bound"] = r.lower_bound;
    return j;
}

std::vector<ManifestRow> parse_manifest(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("manifest is not valid JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("rows")) doc = doc["rows"];
    if (!doc.is_array()) throw InputError("manifest must be a JSON array of rows");
    std::vector<ManifestRow> rows;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        const std::string where = "manifest row " + std::to_string(i + 1) + ": ";
        if (!item.is_object()) throw InputError(where + "expected an object");
        ManifestRow row;
        try {
            for (const auto& [key, value] : item.items()) {
                if (key == "graph") row.graph = value.get<std::string>();
                else if (key == "preset") row.preset = value.get<std::string>();
                else if (key == "solver") row.solver = parse_solver(value.get<std::string>());
                else if (key == "q") row.q = value.get<int>();
                else if (key == "seeds") row.seeds = value.get<int>();
                else if (key == "budget") row.budget_seconds = value.get<double>();
                else if (key == "iterations") row.iterations = value.get<std::int64_t>();
                else if (key == "purify") row.purify = value.get<bool>();
                else throw InputError("unknown key '" + key + "'");
            }
        } catch (const json::exception& e) {
            throw InputError(where + e.what());
        } catch (const InputError& e) {
            throw InputError(where + e.what());
        }
        if (row.graph.empty()) throw InputError(where + "missing 'graph'");
        if (!item.contains("solver")) throw InputError(where + "missing 'solver'");
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string resolve(const std::string& path, const std::string& base_dir) {
    std::filesystem::path p(path);
    if (p.is_absolute() || base_dir.empty()) return p.string();
    return (std::filesystem::path(base_dir) / p).string();
}

InstanceReport run_row(const ManifestRow& row, const std::string& base_dir) {
    const std::string graph_path = resolve(row.graph, base_dir);
    const Graph g = read_dimacs_file(graph_path);
    ColorOptions options;
    options.solver = row.solver;
    const auto stem = std::filesystem::path(graph_path).stem().string();
    const auto& names = preset_names();
    auto is_preset = [&names](const std::string& s) { return std::find(names.begin(), names.end(), s) != names.end(); };
    if (!row.preset.empty()) {
        options.hp = is_preset(row.preset) ? preset(row.preset) : load_hyperparams(resolve(row.preset, base_dir));
    } else if (is_preset(stem)) {
        options.hp = preset(stem);
    }
    if (row.q) options.hp.num_colors = *row.q;
    options.seeds = row.seeds;
    options.purify = row.purify;
    options.budget_seconds = row.budget_seconds;
    options.tabucol_iterations = row.iterations;
    return color_instance(g, stem, options);
}

} // namespace

std::vector<BenchRow> run_bench(const std::vector<ManifestRow>& rows, const std::string& base_dir, int workers) {
    std::vector<BenchRow> out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) out[i].row = rows[i];
    if (rows.empty()) return out;
    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min<int>(workers, static_cast<int>(rows.size()));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        // Rows already run concurrently; keep each row's kernels on one thread.
        if (workers > 1) omp_set_num_threads(1);
        for (std::size_t i = next++; i < out.size(); i = next++) {
            try {
                out[i].report = run_row(out[i].row, base_dir);
            } catch (const std::exception& e) {
                out[i].error = e.what();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return out;
}

json bench_json(const std::vector<BenchRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        if (r.report) {
            out.push_back(to_json(*r.report));
        } else {
            json j;
            j["graph"] = r.row.graph;
            j["solver"] = to_string(r.row.solver);
            j["error"] = r.error;
            out.push_back(std::move(j));
        }
    }
    return out;
}

namespace {

std::string fixed(double v, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

} // namespace

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string out = "graph,n,edges,density,q,solver,cost,epsilon,chi_upper,seeds_tried,best_seed,stop_reason,error\n";
    for (const auto& b : rows) {
        if (!b.report) {
            std::string quoted;
            for (char ch : b.error) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            out += b.row.graph + ",,,,," + to_string(b.row.solver) + ",,,,,,,\"" + quoted + "\"\n";
            continue;
        }
        const auto& r = *b.report;
        out += r.graph_name + "," + std::to_string(r.n) + "," + std::to_string(r.edge_count) + "," +
               (r.density ? fixed(*r.density, 6) : "") + "," + std::to_string(r.q) + "," + to_string(r.solver) +
               "," + std::to_string(r.cost) + "," + (r.epsilon ? fixed(*r.epsilon, 6) : "") + "," +
               (r.chi_upper ? std::to_string(*r.chi_upper) : "") + "," + std::to_string(r.seeds_tried) + "," +
               std::to_string(r.best_seed) + "," + r.stop_reason + ",\n";
    }
    return out;
}

std::string bench_timings_csv(const std::vector<BenchRow>& rows) {
    std::string out = "graph,solver,wall_time_seconds\n";
    for (const auto& b : rows) {
        if (!b.report) continue;
        out += b.report->graph_name + "," + to_string(b.report->solver) + "," +
               fixed(b.report->wall_time_seconds, 3) + "\n";
    }
    return out;
}

std::string bench_table(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << std::left << std::setw(14) << "graph" << std::right << std::setw(7) << "nodes" << std::setw(8) << "edges"
        << std::setw(9) << "density" << std::setw(5) << "q" << std::setw(10) << "solver" << std::setw(7) << "cost"
        << std::setw(8) << "chi^" << std::setw(9) << "eps" << '\n';
    for (const auto& b : rows) {
        if (!b.report) {
            out << std::left << std::setw(14) << b.row.graph << "  error: " << b.error << '\n';
            continue;
        }
        const auto& r = *b.report;
        out << std::left << std::setw(14) << r.graph_name << std::right << std::setw(7) << r.n << std::setw(8)
            << r.edge_count << std::setw(9) << (r.density ? fixed(100.0 * *r.density, 2) + "%" : "-") << std::setw(5)
            << r.q << std::setw(10) << to_string(r.solver) << std::setw(7) << r.cost << std::setw(8)
            << (r.chi_upper ? std::to_string(*r.chi_upper) : "-") << std::setw(9)
            << (r.epsilon ? fixed(100.0 * *r.epsilon, 2) + "%" : "-") << '\n';
    }
    return out.str();
}

} // namespace picolor
