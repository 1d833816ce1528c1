#pragma once

#include "picolor/graph.hpp"
#include "picolor/potts.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace picolor {

/// A booking of one resource over [start, end), times in integer minutes.
struct Request {
    std::string id;
    std::int64_t start = 0;
    std::int64_t end = 0;

    friend bool operator==(const Request&, const Request&) = default;
};

/// Parses CSV with header `id,start,end`. Times are `HH:MM` or integer
/// minutes. Rejects end <= start, malformed times and duplicate ids with a
/// ParseError naming the row's line.
std::vector<Request> parse_requests(std::string_view csv_text);

std::vector<Request> read_requests_file(const std::string& path);

/// By default intervals are half-open, so back-to-back bookings
/// (end_i == start_j) do not conflict. Closed intervals make them conflict.
enum class IntervalMode { HalfOpen, Closed };

bool overlaps(const Request& a, const Request& b, IntervalMode mode = IntervalMode::HalfOpen);

struct IntervalGraph {
    Graph graph;
    /// node -> index into the request list it was built from.
    std::vector<std::size_t> request_of_node;
};

/// One node per request, an edge per overlapping pair, built with a sweep
/// over start times.
IntervalGraph encode_interval_graph(std::span<const Request> requests, IntervalMode mode = IntervalMode::HalfOpen);

struct Assignment {
    std::map<std::string, int> resource_of;
    int resources_used = 0;
};

/// Maps colors back to resources, renumbering colors to consecutive
/// resource indices in order of first use. Throws InputError if the
/// coloring is not proper for the interval graph.
Assignment decode_assignment(const IntervalGraph& encoded, std::span<const Request> requests, const Coloring& c);

/// True iff no two overlapping requests share a resource. Throws
/// InputError if a request has no resource or the assignment names an
/// unknown id.
bool validate_assignment(std::span<const Request> requests, const Assignment& a,
                         IntervalMode mode = IntervalMode::HalfOpen);

/// Maximum number of simultaneously active requests. For interval graphs
/// this equals the chromatic number.
int max_concurrent(std::span<const Request> requests, IntervalMode mode = IntervalMode::HalfOpen);

/// Greedy coloring in order of increasing start time, optimal on interval
/// graphs.
Coloring start_order_coloring(const IntervalGraph& encoded, std::span<const Request> requests);

std::string format_minutes(std::int64_t minutes);

} // namespace picolor
