#include "picolor/errors.hpp"
#include "picolor/heuristics.hpp"
#include "picolor/potts.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <set>

using namespace picolor;

namespace {

std::int64_t clashes(const Graph& g, const Coloring& c) {
    std::int64_t n = 0;
    for (auto [a, b] : g.edges()) n += c.assignment[a] == c.assignment[b];
    return n;
}

// Tries every single-vertex recoloring.
bool no_improving_move(const Graph& g, Coloring c, int q) {
    const auto base = clashes(g, c);
    for (std::size_t v = 0; v < c.size(); ++v) {
        const int was = c.assignment[v];
        for (int color = 0; color < q; ++color) {
            c.assignment[v] = color;
            if (clashes(g, c) < base) return false;
        }
        c.assignment[v] = was;
    }
    return true;
}

int distinct(const Coloring& c) { return static_cast<int>(std::set<int>(c.assignment.begin(), c.assignment.end()).size()); }

} // namespace

TEST_CASE("greedy examples") {
    CHECK(greedy_coloring(myciel_graph(5)).chi_upper == 6);
    CHECK(greedy_coloring(Graph(4, {})).chi_upper == 1);
    CHECK(greedy_coloring(complete_graph(5)).chi_upper == 5);
    CHECK(greedy_coloring(queen_graph(9, 9)).chi_upper == 12);
    CHECK(greedy_coloring(queen_graph(7, 7)).chi_upper == 9);
    CHECK(greedy_coloring(queen_graph(9, 9), GreedyRule::FirstFit).chi_upper == 15);
}

TEST_CASE("greedy is proper and within max_degree + 1") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const Graph g = testing::random_graph(5 + trial, 0.1 + 0.02 * trial, rng);
        for (auto rule : {GreedyRule::FirstFit, GreedyRule::Interchange}) {
            const auto r = greedy_coloring(g, rule);
            CHECK(clashes(g, r.coloring) == 0);
            CHECK(r.chi_upper == distinct(r.coloring));
            CHECK(r.chi_upper <= static_cast<int>(g.max_degree()) + 1);
            if (g.node_count() <= 9) CHECK(r.chi_upper >= testing::odometer_chromatic(g));
        }
    }
}

TEST_CASE("interchange frees a color through a Kempe chain") {
    // Path 1-0-2-3 colored first: 0 gets 0, 1 gets 1, 2 gets 1, 3 gets 0.
    // Vertex 4 touches 1 (color 1) and 3 (color 0). The {0, 1} chain grown
    // from 3 is the whole path and holds 1, so no swap and 4 opens color 2.
    const std::vector<Edge> edges{{0, 1}, {0, 2}, {2, 3}, {1, 4}, {3, 4}};
    const Graph g(5, edges);
    const std::vector<NodeId> order{0, 1, 2, 3, 4};
    const auto blocked = greedy_coloring(g, order, GreedyRule::Interchange);
    CHECK(blocked.coloring.assignment == std::vector<int>{0, 1, 1, 0, 2});

    // Two disjoint edges 0-1 and 2-3, then vertex 4 adjacent to 1 and 2.
    // Colors: 0->0, 1->1, 2->0, 3->1. First fit gives 4 color 2; the chain
    // from its 0-neighbor 2 is {2, 3}, which avoids 1, so 2 and 3 swap.
    const std::vector<Edge> split{{0, 1}, {2, 3}, {1, 4}, {2, 4}};
    const auto freed = greedy_coloring(Graph(5, split), order, GreedyRule::Interchange);
    CHECK(freed.coloring.assignment == std::vector<int>{0, 1, 1, 0, 0});
    CHECK(greedy_coloring(Graph(5, split), order, GreedyRule::FirstFit).chi_upper == 3);
}

TEST_CASE("greedy largest-first order") {
    // Star center has the highest degree and is colored first.
    const std::vector<Edge> star{{1, 0}, {1, 2}, {1, 3}};
    const auto r = greedy_coloring(Graph(4, star));
    CHECK(r.coloring.assignment == std::vector<int>{1, 0, 1, 1});

    const std::vector<NodeId> order{0, 2, 1};
    const auto p = greedy_coloring(path_graph(3), order, GreedyRule::FirstFit);
    CHECK(p.coloring.assignment == std::vector<int>{0, 1, 0});
    CHECK_THROWS_AS(greedy_coloring(path_graph(3), std::vector<NodeId>{0, 1}, GreedyRule::FirstFit), InputError);
    CHECK_THROWS_AS(greedy_coloring(path_graph(3), std::vector<NodeId>{0, 1, 1}, GreedyRule::FirstFit), InputError);
}

TEST_CASE("tabucol reaches the exact chromatic number on tiny graphs") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        const Graph g = testing::random_graph(4 + trial % 7, 0.5, rng);
        const int chi = chromatic_number_exact(g);
        REQUIRE(chi == testing::odometer_chromatic(g));
        TabucolConfig cfg;
        cfg.max_iterations = 10000;
        cfg.seed = trial;
        const auto r = tabucol(g, std::max(chi, 1), cfg);
        CHECK(r.cost == 0);
        CHECK(r.cost == clashes(g, r.coloring));
        if (chi > 1) {
            const auto below = tabucol(g, chi - 1, cfg);
            CHECK(below.cost > 0);
            CHECK(below.cost == clashes(g, below.coloring));
            if (chi > 2) CHECK(below.iterations_used == cfg.max_iterations);
        }
    }
}

TEST_CASE("tabucol edge cases and determinism") {
    TabucolConfig cfg;
    cfg.max_iterations = 100;
    const auto k2 = tabucol(complete_graph(2), 1, cfg);
    CHECK(k2.cost == 1);

    cfg.max_iterations = 20000;
    cfg.seed = 4;
    const auto a = tabucol(queen_graph(6, 6), 7, cfg);
    const auto b = tabucol(queen_graph(6, 6), 7, cfg);
    CHECK(a.coloring.assignment == b.coloring.assignment);
    CHECK(a.iterations_used == b.iterations_used);
    CHECK(a.cost == clashes(queen_graph(6, 6), a.coloring));

    CHECK(tabucol(queen_graph(5, 5), 5, cfg).cost == 0);
    CHECK_THROWS_AS(tabucol(path_graph(3), 0, cfg), InputError);
    cfg.max_iterations = 0;
    CHECK_THROWS_AS(tabucol(path_graph(3), 2, cfg), InputError);
}

TEST_CASE("purify examples") {
    const Graph q5 = queen_graph(5, 5);
    Coloring proper{std::vector<int>(25), 5};
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) proper.assignment[r * 5 + c] = (2 * r + c) % 5;
    const auto same = purify(q5, proper, 1, 10);
    CHECK(same.rounds == 0);
    CHECK(same.feasible);
    CHECK(same.coloring.assignment == proper.assignment);
    CHECK(same.colors_used == 5);

    // Every randomized branch finishes K3 in two rounds.
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto r = purify(complete_graph(3), Coloring{{0, 0, 0}, 1}, seed, 2);
        CHECK(r.feasible);
        CHECK(r.colors_used == 3);
        CHECK(clashes(complete_graph(3), r.coloring) == 0);
    }

    // One clash costs exactly one extra color.
    Coloring one_clash = proper;
    one_clash.assignment[1] = proper.assignment[0];
    REQUIRE(clashes(q5, one_clash) >= 1);
    const auto fixed = purify(q5, one_clash, 3, 64);
    CHECK(fixed.feasible);
    CHECK(clashes(q5, fixed.coloring) == 0);
    CHECK(fixed.colors_used <= distinct(one_clash) + fixed.rounds);
}

TEST_CASE("purify properties on random inputs") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const Graph g = testing::random_graph(10 + trial % 20, 0.3, rng);
        const int q = 2 + trial % 4;
        const Coloring c = testing::random_coloring(g.node_count(), q, rng);
        const auto r = purify(g, c, trial, 1000);
        CHECK(r.feasible);
        CHECK(clashes(g, r.coloring) == 0);
        CHECK(r.colors_used == distinct(r.coloring));
        CHECK(r.colors_used <= q + r.rounds);
        const auto again = purify(g, c, trial, 1000);
        CHECK(again.coloring.assignment == r.coloring.assignment);
    }
}

TEST_CASE("purify reports exhaustion") {
    const auto r = purify(complete_graph(6), Coloring{std::vector<int>(6, 0), 1}, 0, 1);
    CHECK_FALSE(r.feasible);
    CHECK(r.rounds == 1);
    CHECK(clashes(complete_graph(6), r.coloring) > 0);
    CHECK(clashes(complete_graph(6), r.coloring) < 15);
}

TEST_CASE("local_flip_refine") {
    const auto k2 = local_flip_refine(complete_graph(2), Coloring{{0, 0}, 2}, 2);
    CHECK(k2.cost == 0);
    CHECK(k2.is_local_opt);

    const Coloring proper{{0, 1, 0, 1}, 2};
    const auto same = local_flip_refine(path_graph(4), proper, 2);
    CHECK(same.coloring.assignment == proper.assignment);
    CHECK(same.cost == 0);

    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 40; ++trial) {
        const Graph g = testing::random_graph(10, 0.5, rng);
        const int q = 2 + trial % 3;
        const Coloring c = testing::random_coloring(10, q, rng);
        const auto r = local_flip_refine(g, c, q);
        CHECK(r.cost <= clashes(g, c));
        CHECK(r.cost == clashes(g, r.coloring));
        CHECK(no_improving_move(g, r.coloring, q));
        CHECK(is_local_optimum(g, r.coloring, q));
        CHECK(is_local_optimum(g, c, q) == no_improving_move(g, c, q));
    }
}
