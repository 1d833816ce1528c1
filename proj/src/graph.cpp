#include "picolor/graph.hpp"

#include "picolor/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace picolor {

Graph::Graph(std::size_t n, std::span<const Edge> edge_list) : node_count_(n) {
    edges_.reserve(edge_list.size());
    for (auto [a, b] : edge_list) {
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n) {
            throw InputError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                             ") out of range for " + std::to_string(n) + " nodes");
        }
        if (a == b) continue;
        edges_.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    offsets_.assign(n + 1, 0);
    for (auto [a, b] : edges_) {
        ++offsets_[a + 1];
        ++offsets_[b + 1];
    }
    for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
    adjacency_.resize(2 * edges_.size());
    std::vector<std::int64_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // Visiting canonical edges in lexicographic order fills every list sorted:
    // for node v, lower neighbors arrive (as b) before higher ones (as a).
    for (auto [a, b] : edges_) adjacency_[cursor[b]++] = a;
    for (auto [a, b] : edges_) adjacency_[cursor[a]++] = b;
}

std::size_t Graph::max_degree() const noexcept {
    std::size_t best = 0;
    for (std::size_t v = 0; v < node_count_; ++v) best = std::max(best, degree(static_cast<NodeId>(v)));
    return best;
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= node_count_ ||
        static_cast<std::size_t>(v) >= node_count_) {
        return false;
    }
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

Graph build_graph(std::size_t n, std::span<const Edge> edge_list) { return Graph(n, edge_list); }

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

long long parse_integer(std::string_view tok, std::size_t line_no) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(line_no, "expected integer, got '" + std::string(tok) + "'");
    }
    return value;
}

} // namespace

Graph parse_dimacs(std::string_view text, std::vector<std::string>* warnings) {
    bool have_header = false;
    long long n = 0;
    long long declared_m = 0;
    std::vector<Edge> edges;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        auto tokens = split_tokens(line);
        if (tokens.empty() || tokens[0] == "c") {
            if (end == text.size()) break;
            continue;
        }
        if (tokens[0] == "p") {
            if (have_header) throw ParseError(line_no, "duplicate 'p' line");
            if (tokens.size() != 4) throw ParseError(line_no, "expected 'p edge <n> <m>'");
            if (tokens[1] != "edge" && tokens[1] != "col") {
                throw ParseError(line_no, "unsupported problem type '" + std::string(tokens[1]) + "'");
            }
            n = parse_integer(tokens[2], line_no);
            declared_m = parse_integer(tokens[3], line_no);
            if (n < 0 || declared_m < 0) throw ParseError(line_no, "negative size in 'p' line");
            have_header = true;
        } else if (tokens[0] == "e") {
            if (!have_header) throw ParseError(line_no, "edge line before 'p' line");
            if (tokens.size() != 3) throw ParseError(line_no, "expected 'e <u> <v>'");
            long long u = parse_integer(tokens[1], line_no);
            long long v = parse_integer(tokens[2], line_no);
            if (u < 1 || v < 1 || u > n || v > n) {
                throw ParseError(line_no, "vertex out of range 1.." + std::to_string(n));
            }
            edges.emplace_back(static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1));
        } else {
            throw ParseError(line_no, "unknown line type '" + std::string(tokens[0]) + "'");
        }
        if (end == text.size()) break;
    }
    if (!have_header) throw ParseError(line_no, "missing 'p edge <n> <m>' line");

    Graph g(static_cast<std::size_t>(n), edges);
    if (warnings && static_cast<long long>(g.edge_count()) != declared_m) {
        warnings->push_back("header declares " + std::to_string(declared_m) + " edges, found " +
                            std::to_string(g.edge_count()) + " distinct edges");
    }
    return g;
}

Graph read_dimacs_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_dimacs(buffer.str(), warnings);
}

std::string write_dimacs(const Graph& g, std::string_view comment) {
    std::string out;
    if (!comment.empty()) {
        out += "c ";
        out += comment;
        out += '\n';
    }
    out += "p edge " + std::to_string(g.node_count()) + " " + std::to_string(g.edge_count()) + "\n";
    for (auto [a, b] : g.edges()) {
        out += "e " + std::to_string(a + 1) + " " + std::to_string(b + 1) + "\n";
    }
    return out;
}

Graph complement(const Graph& g) {
    const auto n = g.node_count();
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        auto nb = g.neighbors(static_cast<NodeId>(i));
        auto it = std::upper_bound(nb.begin(), nb.end(), static_cast<NodeId>(i));
        for (std::size_t j = i + 1; j < n; ++j) {
            if (it != nb.end() && *it == static_cast<NodeId>(j)) {
                ++it;
                continue;
            }
            edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
        }
    }
    return Graph(n, edges);
}

double density(const Graph& g) {
    const auto n = g.node_count();
    if (n < 2) throw DomainError("density needs at least 2 nodes");
    return static_cast<double>(g.edge_count()) / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

} // namespace picolor
