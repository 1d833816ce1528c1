#include "picolor/graph.hpp"

#include "picolor/errors.hpp"

#include <cstdlib>

namespace picolor {

Graph queen_graph(std::size_t rows, std::size_t cols) {
    std::vector<Edge> edges;
    auto id = [cols](std::size_t r, std::size_t c) { return static_cast<NodeId>(r * cols + c); };
    for (std::size_t r1 = 0; r1 < rows; ++r1) {
        for (std::size_t c1 = 0; c1 < cols; ++c1) {
            for (std::size_t r2 = r1; r2 < rows; ++r2) {
                for (std::size_t c2 = 0; c2 < cols; ++c2) {
                    if (r2 == r1 && c2 <= c1) continue;
                    long dr = static_cast<long>(r2) - static_cast<long>(r1);
                    long dc = static_cast<long>(c2) - static_cast<long>(c1);
                    if (dr == 0 || dc == 0 || std::labs(dr) == std::labs(dc)) {
                        edges.emplace_back(id(r1, c1), id(r2, c2));
                    }
                }
            }
        }
    }
    return Graph(rows * cols, edges);
}

Graph mycielski(const Graph& g) {
    const auto n = static_cast<NodeId>(g.node_count());
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    for (auto [a, b] : g.edges()) {
        edges.emplace_back(a, n + b);
        edges.emplace_back(b, n + a);
    }
    for (NodeId v = 0; v < n; ++v) edges.emplace_back(n + v, 2 * n);
    return Graph(2 * static_cast<std::size_t>(n) + 1, edges);
}

Graph myciel_graph(int k) {
    if (k < 3) throw DomainError("myciel_graph needs k >= 3");
    // 5-cycle 0-1-2-4-3, the vertex order used by the DIMACS myciel files.
    const Edge c5[] = {{0, 1}, {1, 2}, {2, 4}, {3, 4}, {0, 3}};
    Graph g = mycielski(Graph(5, c5));
    for (int i = 3; i < k; ++i) g = mycielski(g);
    return g;
}

Graph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    return Graph(n, edges);
}

Graph cycle_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n));
    return Graph(n, edges);
}

Graph path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
    return Graph(n, edges);
}

} // namespace picolor
