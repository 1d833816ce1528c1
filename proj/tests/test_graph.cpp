#include "picolor/errors.hpp"
#include "picolor/graph.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace picolor;

TEST_CASE("build_graph drops self-loops and collapses duplicates") {
    const std::vector<Edge> edges{{0, 1}, {1, 0}, {1, 2}, {2, 2}};
    const Graph g = build_graph(3, edges);
    CHECK(g.edge_count() == 2);
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK(g.degree(1) == 2);
    CHECK(g.has_edge(2, 1));
    CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("build_graph on zero nodes") {
    const Graph g = build_graph(0, {});
    CHECK(g.node_count() == 0);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("build_graph rejects out-of-range endpoints and names the pair") {
    const std::vector<Edge> edges{{0, 1}, {1, 3}};
    try {
        build_graph(3, edges);
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("(1, 3)") != std::string::npos);
    }
    const std::vector<Edge> negative{{-1, 0}};
    CHECK_THROWS_AS(build_graph(3, negative), InputError);
}

TEST_CASE("adjacency is sorted, symmetric and consistent with degrees") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = testing::random_graph(25, 0.3, rng);
        std::size_t degree_sum = 0;
        for (NodeId v = 0; v < static_cast<NodeId>(g.node_count()); ++v) {
            auto nb = g.neighbors(v);
            CHECK(std::is_sorted(nb.begin(), nb.end()));
            for (NodeId u : nb) {
                CHECK(u != v);
                CHECK(g.has_edge(u, v));
            }
            degree_sum += g.degree(v);
        }
        CHECK(degree_sum == 2 * g.edge_count());
    }
}

TEST_CASE("generated COLOR instances have the published sizes") {
    const Graph q55 = queen_graph(5, 5);
    CHECK(q55.node_count() == 25);
    CHECK(q55.edge_count() == 160);
    CHECK(queen_graph(8, 12).edge_count() == 1368);
    CHECK(queen_graph(13, 13).edge_count() == 3328);

    const Graph m5 = myciel_graph(5);
    CHECK(m5.node_count() == 47);
    CHECK(m5.edge_count() == 236);
    CHECK(myciel_graph(6).edge_count() == 755);
    CHECK(myciel_graph(3).edge_count() == 20);
}

TEST_CASE("shipped instance files match the generators") {
    CHECK(read_dimacs_file(testing::data_path("color/queen5-5.col")) == queen_graph(5, 5));
    CHECK(read_dimacs_file(testing::data_path("color/myciel5.col")) == myciel_graph(5));
    CHECK(read_dimacs_file(testing::data_path("color/queen8-12.col")) == queen_graph(8, 12));
}

TEST_CASE("parse_dimacs basics") {
    const Graph g = parse_dimacs("p edge 3 2\ne 1 2\ne 2 3");
    CHECK(g.node_count() == 3);
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});

    const Graph with_comments = parse_dimacs("c a comment\n\nc another\np edge 4 1\r\ne 4 1\r\n");
    CHECK(with_comments.edges() == std::vector<Edge>{{0, 3}});
}

TEST_CASE("parse_dimacs tolerates duplicates and reports the header mismatch") {
    std::vector<std::string> warnings;
    const Graph g = parse_dimacs("p edge 3 3\ne 1 2\ne 2 1\ne 1 2\n", &warnings);
    CHECK(g.edge_count() == 1);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("found 1") != std::string::npos);
}

TEST_CASE("parse_dimacs errors carry line numbers") {
    CHECK_THROWS_AS(parse_dimacs("e 1 2"), ParseError);
    CHECK_THROWS_AS(parse_dimacs(""), ParseError);
    try {
        parse_dimacs("c x\np edge 3 1\ne 1 x\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    try {
        parse_dimacs("p edge 3 1\ne 1 4\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_dimacs("p edge 3 1\np edge 3 1\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p edge 3\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p edge 3 1\nx 1 2\n"), ParseError);
}

TEST_CASE("canonical DIMACS writer round-trips") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = testing::random_graph(15, 0.4, rng);
        CHECK(parse_dimacs(write_dimacs(g, "round trip")) == g);
    }
    CHECK(write_dimacs(path_graph(3)) == "p edge 3 2\ne 1 2\ne 2 3\n");
}

TEST_CASE("complement examples") {
    CHECK(complement(complete_graph(3)).edge_count() == 0);
    CHECK(complement(Graph(4, {})) == complete_graph(4));
    CHECK(complement(path_graph(3)).edges() == std::vector<Edge>{{0, 2}});
}

TEST_CASE("complement is an involution and partitions the pairs") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + trial;
        const Graph g = testing::random_graph(n, 0.5, rng);
        const Graph c = complement(g);
        CHECK(complement(c) == g);
        CHECK(g.edge_count() + c.edge_count() == n * (n - 1) / 2);
    }
}

TEST_CASE("density") {
    CHECK(density(queen_graph(5, 5)) == doctest::Approx(0.5333).epsilon(1e-4));
    CHECK(density(complete_graph(3)) == 1.0);
    CHECK_THROWS_AS(density(Graph(1, {})), DomainError);

    // Any graph with 138 nodes and 493 edges, the size of the anna instance.
    std::vector<Edge> edges;
    for (NodeId i = 0; i < 138 && edges.size() < 493; ++i)
        for (NodeId j = i + 1; j < 138 && edges.size() < 493; ++j) edges.emplace_back(i, j);
    CHECK(density(Graph(138, edges)) == doctest::Approx(0.0522).epsilon(1e-3));
}
