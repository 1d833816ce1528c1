// Times the serial reference kernels against the OpenMP ones on queens
// graphs and a random sparse graph, and checks they agree bitwise.

#include "picolor/graph.hpp"
#include "picolor/kernels.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

namespace {

using namespace picolor;
using clock_type = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn, int reps) {
    fn();
    const auto t0 = clock_type::now();
    for (int i = 0; i < reps; ++i) fn();
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count() / reps;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m(rows, cols);
    for (double& v : m.flat()) v = u(rng);
    return m;
}

Graph random_graph(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < m; ++i) edges.emplace_back(pick(rng), pick(rng));
    return Graph(n, edges);
}

void report(const char* name, double serial_ms, double parallel_ms, bool same) {
    std::printf("%-28s serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, same ? "bitwise-equal" : "MISMATCH");
}

void run_case(const char* label, const Graph& g, std::size_t width, std::size_t out_width, int reps) {
    std::mt19937_64 rng(7);
    const auto n = g.node_count();
    Matrix x = random_matrix(n, width, rng);
    Matrix w = random_matrix(width, out_width, rng);
    std::vector<double> scale(n);
    for (std::size_t v = 0; v < n; ++v) scale[v] = 1.0 / std::sqrt(g.degree(static_cast<NodeId>(v)) + 1.0);

    std::printf("\n%s: n=%zu |E|=%zu width=%zu -> %zu, threads=%d\n", label, n, g.edge_count(), width, out_width,
                omp_get_max_threads());

    Matrix ys(n, out_width), yp(n, out_width);
    report("gemm", time_ms([&] { kernels::serial::gemm(x, w, ys); }, reps),
           time_ms([&] { kernels::parallel::gemm(x, w, yp); }, reps), ys == yp);

    Matrix gs(width, out_width), gp(width, out_width);
    report("gemm_tn", time_ms([&] { kernels::serial::gemm_tn(x, ys, gs); }, reps),
           time_ms([&] { kernels::parallel::gemm_tn(x, ys, gp); }, reps), gs == gp);

    Matrix bs(n, width), bp(n, width);
    report("gemm_nt", time_ms([&] { kernels::serial::gemm_nt(ys, w, bs); }, reps),
           time_ms([&] { kernels::parallel::gemm_nt(ys, w, bp); }, reps), bs == bp);

    Matrix as(n, width), ap(n, width);
    report("gcn_propagate", time_ms([&] { kernels::serial::gcn_propagate(g, scale, x, as); }, reps),
           time_ms([&] { kernels::parallel::gcn_propagate(g, scale, x, ap); }, reps), as == ap);
    report("mean_aggregate", time_ms([&] { kernels::serial::mean_aggregate(g, x, as); }, reps),
           time_ms([&] { kernels::parallel::mean_aggregate(g, x, ap); }, reps), as == ap);
    report("mean_aggregate_adjoint", time_ms([&] { kernels::serial::mean_aggregate_adjoint(g, x, as); }, reps),
           time_ms([&] { kernels::parallel::mean_aggregate_adjoint(g, x, ap); }, reps), as == ap);

    double ls = 0.0, lp = 0.0;
    report("edge_overlap", time_ms([&] { ls = kernels::serial::edge_overlap(g, x); }, reps),
           time_ms([&] { lp = kernels::parallel::edge_overlap(g, x); }, reps), ls == lp);
}

} // namespace

int main() {
    using namespace picolor;
    run_case("queen13-13", queen_graph(13, 13), 112, 199, 50);
    std::mt19937_64 rng(11);
    run_case("random sparse", random_graph(20000, 45000, rng), 64, 64, 5);

    const Graph small = queen_graph(4, 5);
    std::uint64_t cs = 0, cp = 0;
    std::printf("\ncount_colorings queen4-5, q=5\n");
    report("count_colorings", time_ms([&] { cs = kernels::serial::count_colorings(small, 5); }, 1),
           time_ms([&] { cp = kernels::parallel::count_colorings(small, 5); }, 1), cs == cp);
    return 0;
}
