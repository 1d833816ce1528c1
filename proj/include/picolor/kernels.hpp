#pragma once

// Data-parallel inner loops of the solver.
//
// Every kernel exists twice with identical signatures: `serial` is the plain
// reference kept for testing and benchmarking, `parallel` splits output rows
// across OpenMP threads. Each output row is computed with the same operation
// order in both, so the two agree bitwise. Reductions over rows go through a
// per-row buffer that is summed serially.

#include "picolor/graph.hpp"
#include "picolor/matrix.hpp"

#include <cstdint>
#include <span>

namespace picolor::kernels {

namespace serial {

/// C = A B
void gemm(const Matrix& a, const Matrix& b, Matrix& c);
/// C = A^T B
void gemm_tn(const Matrix& a, const Matrix& b, Matrix& c);
/// C = A B^T
void gemm_nt(const Matrix& a, const Matrix& b, Matrix& c);

/// Y = Â X with Â = D̃^{-1/2}(A + I)D̃^{-1/2}, where scale[i] = 1/sqrt(d_i + 1).
/// Â is symmetric, so the same kernel is its own adjoint.
void gcn_propagate(const Graph& g, std::span<const double> scale, const Matrix& x, Matrix& y);

/// Y_i = mean of X_j over j in N(i); zero row when N(i) is empty.
void mean_aggregate(const Graph& g, const Matrix& x, Matrix& y);

/// Adjoint of mean_aggregate: Y_j = sum over i in N(j) of X_i / d_i.
void mean_aggregate_adjoint(const Graph& g, const Matrix& x, Matrix& y);

/// Y_i = sum of X_j over j in N(i).
void neighbor_sum(const Graph& g, const Matrix& x, Matrix& y);

/// Sum over edges (i, j) of the row inner product <P_i, P_j>.
double edge_overlap(const Graph& g, const Matrix& p);

/// Number of proper q-colorings, by exhaustive backtracking.
std::uint64_t count_colorings(const Graph& g, int q);

} // namespace serial

namespace parallel {

void gemm(const Matrix& a, const Matrix& b, Matrix& c);
void gemm_tn(const Matrix& a, const Matrix& b, Matrix& c);
void gemm_nt(const Matrix& a, const Matrix& b, Matrix& c);
void gcn_propagate(const Graph& g, std::span<const double> scale, const Matrix& x, Matrix& y);
void mean_aggregate(const Graph& g, const Matrix& x, Matrix& y);
void mean_aggregate_adjoint(const Graph& g, const Matrix& x, Matrix& y);
void neighbor_sum(const Graph& g, const Matrix& x, Matrix& y);
double edge_overlap(const Graph& g, const Matrix& p);

/// Splits the search over the colors of the first two vertices.
std::uint64_t count_colorings(const Graph& g, int q);

} // namespace parallel

} // namespace picolor::kernels
