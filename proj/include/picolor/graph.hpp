#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace picolor {

using NodeId = std::int32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected simple graph.
///
/// Edges are stored canonically as (i, j) with i < j, sorted
/// lexicographically. Adjacency is kept in CSR form with each neighbor list
/// sorted ascending, so iteration order is deterministic.
class Graph {
public:
    Graph() = default;

    /// Builds a graph on n nodes. Self-loops are dropped and duplicate
    /// edges (in either orientation) are collapsed. Throws InputError naming
    /// the first pair with an endpoint outside [0, n).
    Graph(std::size_t n, std::span<const Edge> edge_list);

    std::size_t node_count() const noexcept { return node_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const NodeId> neighbors(NodeId v) const noexcept {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }

    std::size_t degree(NodeId v) const noexcept {
        return static_cast<std::size_t>(offsets_[v + 1] - offsets_[v]);
    }

    std::size_t max_degree() const noexcept;

    bool has_edge(NodeId u, NodeId v) const noexcept;

    friend bool operator==(const Graph& a, const Graph& b) noexcept {
        return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
    }

private:
    std::size_t node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::int64_t> offsets_{0};
    std::vector<NodeId> adjacency_;
};

Graph build_graph(std::size_t n, std::span<const Edge> edge_list);

/// Parses DIMACS COL text (`c` comments, one `p edge n m` line, `e u v`
/// lines with 1-based vertices). Duplicate edges are accepted; if the
/// header edge count disagrees with the deduplicated count, the actual count
/// wins and a warning is appended to `warnings` when provided.
Graph parse_dimacs(std::string_view text, std::vector<std::string>* warnings = nullptr);

Graph read_dimacs_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

/// Canonical DIMACS: `p edge n m`, then `e u v` sorted lexicographically,
/// 1-based.
std::string write_dimacs(const Graph& g, std::string_view comment = {});

Graph complement(const Graph& g);

/// |E| / (n(n-1)/2). Throws DomainError for n < 2.
double density(const Graph& g);

// Instance generators for the COLOR benchmark families.

/// Queens graph on a rows x cols board, squares numbered row-major.
Graph queen_graph(std::size_t rows, std::size_t cols);

/// Mycielski transform: n shadow vertices n..2n-1 and an apex 2n.
Graph mycielski(const Graph& g);

/// DIMACS myciel<k> for k >= 3: k=3 is the Groetzsch graph and each further
/// step applies the Mycielski transform.
Graph myciel_graph(int k);

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);

} // namespace picolor
