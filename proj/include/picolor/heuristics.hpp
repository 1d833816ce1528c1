#pragma once

#include "picolor/graph.hpp"
#include "picolor/potts.hpp"

#include <cstdint>
#include <span>

namespace picolor {

struct GreedyResult {
    Coloring coloring;
    int chi_upper = 0;
};

enum class GreedyRule {
    /// Smallest color free among the already-colored neighbors.
    FirstFit,
    /// First fit, but before opening a new color try to free an existing
    /// one by swapping a two-color Kempe chain around the vertex.
    Interchange,
};

/// Largest-first greedy: vertices in non-increasing degree order (ties by
/// ascending id). Always proper.
GreedyResult greedy_coloring(const Graph& g, GreedyRule rule = GreedyRule::Interchange);

/// Greedy over an explicit vertex order.
GreedyResult greedy_coloring(const Graph& g, std::span<const NodeId> order, GreedyRule rule);

struct TabucolConfig {
    std::int64_t max_iterations = 1'000'000;
    int tenure_base = 7;
    int tenure_random = 5;
    double tenure_conflict_scale = 0.6;
    std::uint64_t seed = 0;
};

struct TabucolResult {
    Coloring coloring;
    std::int64_t cost = 0;
    std::int64_t iterations_used = 0;
};

/// Tabu search over single-vertex recolorings of conflicted vertices, with
/// dynamic tenure and best-cost aspiration. Returns the best coloring seen.
TabucolResult tabucol(const Graph& g, int q, const TabucolConfig& cfg);

struct PurifyResult {
    Coloring coloring;
    int colors_used = 0;
    int rounds = 0;
    bool feasible = false;
};

/// Randomized clash removal. Each round opens one fresh color and walks the
/// clashing edges in random order, moving one random endpoint of every edge
/// that still clashes into the fresh color. An endpoint is eligible only if
/// none of its neighbors already holds the fresh color, so the fresh class
/// stays independent and the clash count strictly drops every round.
PurifyResult purify(const Graph& g, const Coloring& c, std::uint64_t seed, int max_rounds);

struct LocalFlipResult {
    Coloring coloring;
    std::int64_t cost = 0;
    bool is_local_opt = false;
};

/// First-improvement single-vertex recoloring until no move lowers the
/// clash count.
LocalFlipResult local_flip_refine(const Graph& g, const Coloring& c, int q);

/// True if no single recoloring within q colors lowers the clash count.
bool is_local_optimum(const Graph& g, const Coloring& c, int q);

} // namespace picolor
