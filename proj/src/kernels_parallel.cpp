#include "picolor/kernels.hpp"

#include "kernels_common.hpp"

#include <omp.h>

namespace picolor::kernels::parallel {

namespace {

// Row loops below this many rows are not worth a parallel region.
constexpr std::size_t kMinParallelRows = 64;

bool worth_it(std::size_t rows) { return rows >= kMinParallelRows; }

} // namespace

void gemm(const Matrix& a, const Matrix& b, Matrix& c) {
    const auto rows = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for schedule(static) if (worth_it(a.rows()))
    for (std::int64_t i = 0; i < rows; ++i) detail::gemm_row(a, b, c, static_cast<std::size_t>(i));
}

void gemm_tn(const Matrix& a, const Matrix& b, Matrix& c) {
    const auto rows = static_cast<std::int64_t>(a.cols());
#pragma omp parallel for schedule(static) if (worth_it(a.cols()))
    for (std::int64_t i = 0; i < rows; ++i) detail::gemm_tn_row(a, b, c, static_cast<std::size_t>(i));
}

void gemm_nt(const Matrix& a, const Matrix& b, Matrix& c) {
    const auto rows = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for schedule(static) if (worth_it(a.rows()))
    for (std::int64_t i = 0; i < rows; ++i) detail::gemm_nt_row(a, b, c, static_cast<std::size_t>(i));
}

void gcn_propagate(const Graph& g, std::span<const double> scale, const Matrix& x, Matrix& y) {
    const auto n = static_cast<std::int64_t>(g.node_count());
#pragma omp parallel for schedule(dynamic, 64) if (worth_it(g.node_count()))
    for (std::int64_t i = 0; i < n; ++i) detail::gcn_row(g, scale, x, y, static_cast<std::size_t>(i));
}

void mean_aggregate(const Graph& g, const Matrix& x, Matrix& y) {
    const auto n = static_cast<std::int64_t>(g.node_count());
#pragma omp parallel for schedule(dynamic, 64) if (worth_it(g.node_count()))
    for (std::int64_t i = 0; i < n; ++i) detail::mean_row(g, x, y, static_cast<std::size_t>(i));
}

void mean_aggregate_adjoint(const Graph& g, const Matrix& x, Matrix& y) {
    const auto n = static_cast<std::int64_t>(g.node_count());
#pragma omp parallel for schedule(dynamic, 64) if (worth_it(g.node_count()))
    for (std::int64_t i = 0; i < n; ++i) detail::mean_adjoint_row(g, x, y, static_cast<std::size_t>(i));
}

void neighbor_sum(const Graph& g, const Matrix& x, Matrix& y) {
    const auto n = static_cast<std::int64_t>(g.node_count());
#pragma omp parallel for schedule(dynamic, 64) if (worth_it(g.node_count()))
    for (std::int64_t i = 0; i < n; ++i) detail::neighbor_sum_row(g, x, y, static_cast<std::size_t>(i));
}

double edge_overlap(const Graph& g, const Matrix& p) {
    const auto n = static_cast<std::int64_t>(g.node_count());
    std::vector<double> parts(g.node_count());
#pragma omp parallel for schedule(dynamic, 64) if (worth_it(g.node_count()))
    for (std::int64_t i = 0; i < n; ++i) parts[i] = detail::overlap_row(g, p, static_cast<std::size_t>(i));
    return detail::ordered_sum(parts);
}

std::uint64_t count_colorings(const Graph& g, int q) {
    if (g.node_count() == 0) return 1;
    if (q <= 0) return 0;
    detail::ColoringCounter counter(g, q);
    const std::size_t prefix_len = std::min<std::size_t>(2, counter.depth());
    std::int64_t tasks = 1;
    for (std::size_t i = 0; i < prefix_len; ++i) tasks *= q;

    std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : total)
    for (std::int64_t t = 0; t < tasks; ++t) {
        int prefix[2] = {0, 0};
        std::int64_t rest = t;
        for (std::size_t i = 0; i < prefix_len; ++i) {
            prefix[i] = static_cast<int>(rest % q);
            rest /= q;
        }
        total += counter.count_with_prefix(std::span<const int>(prefix, prefix_len));
    }
    return total;
}

} // namespace picolor::kernels::parallel
