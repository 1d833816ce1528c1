#include "picolor/kernels.hpp"

#include "kernels_common.hpp"

#include <algorithm>

namespace picolor::kernels {

namespace detail {

ColoringCounter::ColoringCounter(const Graph& g, int q) : q_(q) {
    const auto n = g.node_count();
    std::vector<std::size_t> position(n, n);
    std::vector<std::size_t> placed_neighbors(n, 0);
    order_.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        // Most placed neighbors first, then highest degree, then lowest id.
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (position[v] != n) continue;
            if (best == n || placed_neighbors[v] > placed_neighbors[best] ||
                (placed_neighbors[v] == placed_neighbors[best] &&
                 g.degree(static_cast<NodeId>(v)) > g.degree(static_cast<NodeId>(best)))) {
                best = v;
            }
        }
        position[best] = step;
        order_.push_back(static_cast<NodeId>(best));
        for (NodeId u : g.neighbors(static_cast<NodeId>(best))) ++placed_neighbors[u];
    }
    earlier_.resize(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        for (NodeId u : g.neighbors(order_[pos])) {
            if (position[u] < pos) earlier_[pos].push_back(position[u]);
        }
    }
}

std::uint64_t ColoringCounter::count_with_prefix(std::span<const int> prefix) const {
    std::vector<int> colors(order_.size(), -1);
    for (std::size_t pos = 0; pos < prefix.size(); ++pos) {
        for (std::size_t other : earlier_[pos]) {
            if (colors[other] == prefix[pos]) return 0;
        }
        colors[pos] = prefix[pos];
    }
    return extend(colors, prefix.size());
}

std::uint64_t ColoringCounter::extend(std::vector<int>& colors, std::size_t pos) const {
    if (pos == order_.size()) return 1;
    std::uint64_t total = 0;
    for (int c = 0; c < q_; ++c) {
        bool clash = false;
        for (std::size_t other : earlier_[pos]) {
            if (colors[other] == c) {
                clash = true;
                break;
            }
        }
        if (clash) continue;
        colors[pos] = c;
        total += extend(colors, pos + 1);
    }
    colors[pos] = -1;
    return total;
}

} // namespace detail

namespace serial {

void gemm(const Matrix& a, const Matrix& b, Matrix& c) {
    for (std::size_t i = 0; i < a.rows(); ++i) detail::gemm_row(a, b, c, i);
}

void gemm_tn(const Matrix& a, const Matrix& b, Matrix& c) {
    for (std::size_t i = 0; i < a.cols(); ++i) detail::gemm_tn_row(a, b, c, i);
}

void gemm_nt(const Matrix& a, const Matrix& b, Matrix& c) {
    for (std::size_t i = 0; i < a.rows(); ++i) detail::gemm_nt_row(a, b, c, i);
}

void gcn_propagate(const Graph& g, std::span<const double> scale, const Matrix& x, Matrix& y) {
    for (std::size_t i = 0; i < g.node_count(); ++i) detail::gcn_row(g, scale, x, y, i);
}

void mean_aggregate(const Graph& g, const Matrix& x, Matrix& y) {
    for (std::size_t i = 0; i < g.node_count(); ++i) detail::mean_row(g, x, y, i);
}

void mean_aggregate_adjoint(const Graph& g, const Matrix& x, Matrix& y) {
    for (std::size_t i = 0; i < g.node_count(); ++i) detail::mean_adjoint_row(g, x, y, i);
}

void neighbor_sum(const Graph& g, const Matrix& x, Matrix& y) {
    for (std::size_t i = 0; i < g.node_count(); ++i) detail::neighbor_sum_row(g, x, y, i);
}

double edge_overlap(const Graph& g, const Matrix& p) {
    std::vector<double> parts(g.node_count());
    for (std::size_t i = 0; i < g.node_count(); ++i) parts[i] = detail::overlap_row(g, p, i);
    return detail::ordered_sum(parts);
}

std::uint64_t count_colorings(const Graph& g, int q) {
    if (g.node_count() == 0) return 1;
    if (q <= 0) return 0;
    detail::ColoringCounter counter(g, q);
    return counter.count_with_prefix({});
}

} // namespace serial

} // namespace picolor::kernels
