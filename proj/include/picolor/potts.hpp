#pragma once

#include "picolor/graph.hpp"
#include "picolor/matrix.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace picolor {

/// Hard assignment of one of `num_colors` colors (0-based) per node.
struct Coloring {
    std::vector<int> assignment;
    int num_colors = 0;

    std::size_t size() const noexcept { return assignment.size(); }

    /// Number of distinct colors actually used.
    int colors_used() const;

    /// Throws InputError if any entry is outside [0, num_colors).
    void validate() const;

    friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// Row-stochastic n x q matrix of per-node color probabilities.
using SoftAssignment = Matrix;

/// Uniform coupling J on every edge. J = -1 (antiferromagnetic) makes the
/// energy count clashing edges.
struct UniformCoupling {
    double j = -1.0;
};

/// Symmetric pair couplings J_ij = sparse_ij - rank_one_scale * v_i v_j.
///
/// The sparse part lists each unordered pair once. The optional rank-one
/// term is kept implicit so that dense couplings such as modularity cost
/// O(|E| + n q) to evaluate instead of O(n^2).
///
/// Energies sum over ordered pairs i != j, so every unordered pair
/// contributes twice and the diagonal is excluded:
///     H = -sum_{i != j} J_ij delta(s_i, s_j).
/// This matches the standard modularity normalization and is twice the
/// value an unordered summation would give.
struct WeightedCoupling {
    struct Entry {
        NodeId i;
        NodeId j;
        double weight;
    };
    std::size_t node_count = 0;
    std::vector<Entry> sparse;
    std::vector<double> rank_one_vector;
    double rank_one_scale = 0.0;

    /// J_ij for any pair, including the diagonal (which energies skip).
    double coupling(NodeId i, NodeId j) const;
};

using Couplings = std::variant<UniformCoupling, WeightedCoupling>;

/// Potts energy of a hard coloring. For UniformCoupling{-1} this is the
/// number of monochromatic edges. Throws InputError on length mismatch.
double hard_energy(const Graph& g, const Coloring& c, const Couplings& j = UniformCoupling{});

/// Exact clash count: edges whose endpoints share a color.
std::int64_t conflict_count(const Graph& g, const Coloring& c);

/// Relaxed energy: the hard energy with delta(s_i, s_j) replaced by the
/// inner product of the soft rows. Equal to hard_energy on one-hot input.
/// Rows must sum to 1 within `row_tolerance`.
double soft_loss(const Graph& g, const SoftAssignment& p, const Couplings& j = UniformCoupling{},
                 double row_tolerance = 1e-9);

/// dL/dP, before any softmax backward step.
Matrix soft_loss_gradient(const Graph& g, const SoftAssignment& p, const Couplings& j = UniformCoupling{},
                          double row_tolerance = 1e-9);

/// Throws InputError unless p is n x q with entries in [0,1] and rows
/// summing to 1 within `tolerance`.
void check_soft_assignment(const Graph& g, const SoftAssignment& p, double tolerance = 1e-9);

/// Modularity couplings J_ij = (A_ij - d_i d_j / 2m) / 2m. Throws
/// DomainError on an edgeless graph.
WeightedCoupling modularity_couplings(const Graph& g);

constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

/// Number of proper q-colorings (the chromatic polynomial at q), by
/// exhaustive search. Refuses with SizeError when q^n exceeds the budget.
std::uint64_t count_proper_colorings(const Graph& g, int q,
                                     std::uint64_t budget = kDefaultEnumerationBudget);

/// Smallest q with a proper q-coloring; 0 for the empty graph.
int chromatic_number_exact(const Graph& g, std::uint64_t budget = kDefaultEnumerationBudget);

/// energy / edge_count. Throws DomainError when edge_count is 0.
double normalized_error(double energy, std::size_t edge_count);

/// One-hot matrix for a coloring.
SoftAssignment one_hot(const Coloring& c);

} // namespace picolor
