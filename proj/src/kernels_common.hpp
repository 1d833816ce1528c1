#pragma once

// Row bodies shared by the serial and parallel kernels so both evaluate each
// output row with exactly the same operation order.

#include "picolor/graph.hpp"
#include "picolor/matrix.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace picolor::kernels::detail {

inline void gemm_row(const Matrix& a, const Matrix& b, Matrix& c, std::size_t i) {
    auto out = c.row(i);
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
        const double aik = a(i, k);
        auto brow = b.row(k);
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += aik * brow[j];
    }
}

// Row i of A^T B is column i of A against the rows of B.
inline void gemm_tn_row(const Matrix& a, const Matrix& b, Matrix& c, std::size_t i) {
    auto out = c.row(i);
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const double aki = a(k, i);
        if (aki == 0.0) continue;
        auto brow = b.row(k);
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += aki * brow[j];
    }
}

inline void gemm_nt_row(const Matrix& a, const Matrix& b, Matrix& c, std::size_t i) {
    auto arow = a.row(i);
    for (std::size_t j = 0; j < b.rows(); ++j) {
        auto brow = b.row(j);
        double acc = 0.0;
        for (std::size_t k = 0; k < arow.size(); ++k) acc += arow[k] * brow[k];
        c(i, j) = acc;
    }
}

inline void gcn_row(const Graph& g, std::span<const double> scale, const Matrix& x, Matrix& y, std::size_t i) {
    auto out = y.row(i);
    const double si = scale[i];
    auto xi = x.row(i);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = si * xi[c];
    for (NodeId j : g.neighbors(static_cast<NodeId>(i))) {
        const double sj = scale[j];
        auto xj = x.row(j);
        for (std::size_t c = 0; c < out.size(); ++c) out[c] += sj * xj[c];
    }
    for (std::size_t c = 0; c < out.size(); ++c) out[c] *= si;
}

inline void neighbor_sum_row(const Graph& g, const Matrix& x, Matrix& y, std::size_t i) {
    auto out = y.row(i);
    std::fill(out.begin(), out.end(), 0.0);
    for (NodeId j : g.neighbors(static_cast<NodeId>(i))) {
        auto xj = x.row(j);
        for (std::size_t c = 0; c < out.size(); ++c) out[c] += xj[c];
    }
}

inline void mean_row(const Graph& g, const Matrix& x, Matrix& y, std::size_t i) {
    neighbor_sum_row(g, x, y, i);
    const auto d = g.degree(static_cast<NodeId>(i));
    if (d == 0) return;
    const double inv = 1.0 / static_cast<double>(d);
    for (double& v : y.row(i)) v *= inv;
}

inline void mean_adjoint_row(const Graph& g, const Matrix& x, Matrix& y, std::size_t j) {
    auto out = y.row(j);
    std::fill(out.begin(), out.end(), 0.0);
    for (NodeId i : g.neighbors(static_cast<NodeId>(j))) {
        const double inv = 1.0 / static_cast<double>(g.degree(i));
        auto xi = x.row(i);
        for (std::size_t c = 0; c < out.size(); ++c) out[c] += xi[c] * inv;
    }
}

// Overlap of row i with its higher-indexed neighbors, so every edge is
// counted once.
inline double overlap_row(const Graph& g, const Matrix& p, std::size_t i) {
    auto pi = p.row(i);
    double acc = 0.0;
    for (NodeId j : g.neighbors(static_cast<NodeId>(i))) {
        if (static_cast<std::size_t>(j) <= i) continue;
        auto pj = p.row(j);
        double dot = 0.0;
        for (std::size_t c = 0; c < pi.size(); ++c) dot += pi[c] * pj[c];
        acc += dot;
    }
    return acc;
}

inline double ordered_sum(const std::vector<double>& parts) {
    double total = 0.0;
    for (double v : parts) total += v;
    return total;
}

/// Backtracking search state for counting proper colorings. Vertices are
/// visited in an order where each next vertex has the most already-placed
/// neighbors, which prunes improper branches early.
class ColoringCounter {
public:
    ColoringCounter(const Graph& g, int q);

    std::size_t depth() const noexcept { return order_.size(); }

    /// Counts completions after fixing the first `prefix.size()` vertices of
    /// the visit order to the given colors. Returns 0 if the prefix already
    /// clashes.
    std::uint64_t count_with_prefix(std::span<const int> prefix) const;

private:
    std::uint64_t extend(std::vector<int>& colors, std::size_t pos) const;

    int q_;
    std::vector<NodeId> order_;
    // earlier_[pos] lists visit positions of already-placed neighbors.
    std::vector<std::vector<std::size_t>> earlier_;
};

} // namespace picolor::kernels::detail
