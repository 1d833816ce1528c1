#include "picolor/scheduling.hpp"

#include "picolor/errors.hpp"
#include "picolor/heuristics.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace picolor {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        fields.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return fields;
}

bool parse_digits(std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && out >= 0;
}

std::int64_t parse_time(std::string_view text, std::size_t line) {
    std::int64_t value = 0;
    if (const auto colon = text.find(':'); colon != std::string_view::npos) {
        std::int64_t hours = 0;
        std::int64_t minutes = 0;
        const auto mm = text.substr(colon + 1);
        if (!parse_digits(text.substr(0, colon), hours) || mm.size() != 2 || !parse_digits(mm, minutes) ||
            minutes >= 60) {
            throw ParseError(line, "malformed time '" + std::string(text) + "'");
        }
        return hours * 60 + minutes;
    }
    if (!parse_digits(text, value)) throw ParseError(line, "malformed time '" + std::string(text) + "'");
    return value;
}

} // namespace

std::vector<Request> parse_requests(std::string_view csv_text) {
    std::vector<Request> out;
    std::unordered_set<std::string> seen;
    std::istringstream in{std::string(csv_text)};
    std::string raw;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (!header) {
            if (fields.size() != 3 || fields[0] != "id" || fields[1] != "start" || fields[2] != "end") {
                throw ParseError(line_no, "expected header 'id,start,end'");
            }
            header = true;
            continue;
        }
        if (fields.size() != 3) throw ParseError(line_no, "expected 3 fields");
        if (fields[0].empty()) throw ParseError(line_no, "empty request id");
        Request r{std::string(fields[0]), parse_time(fields[1], line_no), parse_time(fields[2], line_no)};
        if (r.end <= r.start) throw ParseError(line_no, "request '" + r.id + "' ends before it starts");
        if (!seen.insert(r.id).second) throw ParseError(line_no, "duplicate request id '" + r.id + "'");
        out.push_back(std::move(r));
    }
    if (!header) throw ParseError(line_no, "missing header 'id,start,end'");
    return out;
}

std::vector<Request> read_requests_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open requests file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_requests(buffer.str());
}

bool overlaps(const Request& a, const Request& b, IntervalMode mode) {
    if (mode == IntervalMode::Closed) return a.start <= b.end && b.start <= a.end;
    return a.start < b.end && b.start < a.end;
}

namespace {

std::vector<std::size_t> by_start(std::span<const Request> requests) {
    std::vector<std::size_t> order(requests.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return requests[a].start < requests[b].start; });
    return order;
}

} // namespace

IntervalGraph encode_interval_graph(std::span<const Request> requests, IntervalMode mode) {
    std::vector<Edge> edges;
    // Active requests keyed by end time.
    std::set<std::pair<std::int64_t, std::size_t>> active;
    for (std::size_t i : by_start(requests)) {
        const auto start = requests[i].start;
        while (!active.empty()) {
            const auto end = active.begin()->first;
            const bool finished = mode == IntervalMode::Closed ? end < start : end <= start;
            if (!finished) break;
            active.erase(active.begin());
        }
        for (const auto& [end, j] : active) edges.emplace_back(static_cast<NodeId>(j), static_cast<NodeId>(i));
        active.emplace(requests[i].end, i);
    }
    IntervalGraph out;
    out.graph = Graph(requests.size(), edges);
    out.request_of_node.resize(requests.size());
    std::iota(out.request_of_node.begin(), out.request_of_node.end(), 0);
    return out;
}

Assignment decode_assignment(const IntervalGraph& encoded, std::span<const Request> requests, const Coloring& c) {
    if (c.size() != encoded.graph.node_count() || encoded.request_of_node.size() != c.size()) {
        throw InputError("coloring does not match the interval graph");
    }
    if (const auto clashes = conflict_count(encoded.graph, c); clashes > 0) {
        throw InputError("coloring has " + std::to_string(clashes) + " clashes; assignment would double-book");
    }
    Assignment a;
    std::map<int, int> resource_of_color;
    for (std::size_t v = 0; v < c.size(); ++v) {
        auto [it, inserted] = resource_of_color.emplace(c.assignment[v], a.resources_used);
        if (inserted) ++a.resources_used;
        a.resource_of[requests[encoded.request_of_node[v]].id] = it->second;
    }
    return a;
}

bool validate_assignment(std::span<const Request> requests, const Assignment& a, IntervalMode mode) {
    std::unordered_set<std::string> ids;
    for (const auto& r : requests) {
        ids.insert(r.id);
        if (!a.resource_of.contains(r.id)) throw InputError("request '" + r.id + "' has no resource");
    }
    for (const auto& [id, resource] : a.resource_of) {
        if (!ids.contains(id)) throw InputError("assignment names unknown request '" + id + "'");
    }
    const auto encoded = encode_interval_graph(requests, mode);
    for (auto [u, v] : encoded.graph.edges()) {
        if (a.resource_of.at(requests[u].id) == a.resource_of.at(requests[v].id)) return false;
    }
    return true;
}

int max_concurrent(std::span<const Request> requests, IntervalMode mode) {
    // (time, kind): for half-open intervals ends (kind 0) sort before starts
    // (kind 1) at equal times; closed intervals reverse this.
    std::vector<std::pair<std::int64_t, int>> events;
    const int end_kind = mode == IntervalMode::HalfOpen ? 0 : 2;
    for (const auto& r : requests) {
        events.emplace_back(r.start, 1);
        events.emplace_back(r.end, end_kind);
    }
    std::sort(events.begin(), events.end());
    int current = 0;
    int best = 0;
    for (auto [time, kind] : events) {
        current += kind == 1 ? 1 : -1;
        best = std::max(best, current);
    }
    return best;
}

Coloring start_order_coloring(const IntervalGraph& encoded, std::span<const Request> requests) {
    std::vector<NodeId> order;
    for (std::size_t i : by_start(requests)) order.push_back(static_cast<NodeId>(i));
    return greedy_coloring(encoded.graph, order, GreedyRule::FirstFit).coloring;
}

std::string format_minutes(std::int64_t minutes) {
    const auto h = minutes / 60;
    const auto m = minutes % 60;
    std::string out = (h < 10 ? "0" : "") + std::to_string(h) + ":";
    if (m < 10) out += '0';
    return out + std::to_string(m);
}

} // namespace picolor
