#include "picolor/potts.hpp"

#include "picolor/errors.hpp"
#include "picolor/kernels.hpp"

#include <cmath>
#include <string>

namespace picolor {

int Coloring::colors_used() const {
    std::vector<bool> seen(static_cast<std::size_t>(std::max(num_colors, 0)), false);
    int used = 0;
    for (int c : assignment) {
        if (c >= 0 && c < num_colors && !seen[c]) {
            seen[c] = true;
            ++used;
        }
    }
    return used;
}

void Coloring::validate() const {
    for (std::size_t v = 0; v < assignment.size(); ++v) {
        if (assignment[v] < 0 || assignment[v] >= num_colors) {
            throw InputError("node " + std::to_string(v) + " has color " + std::to_string(assignment[v]) +
                             " outside [0, " + std::to_string(num_colors) + ")");
        }
    }
}

double WeightedCoupling::coupling(NodeId i, NodeId j) const {
    double value = 0.0;
    for (const auto& e : sparse) {
        if ((e.i == i && e.j == j) || (e.i == j && e.j == i)) value += e.weight;
    }
    if (!rank_one_vector.empty()) value -= rank_one_scale * (rank_one_vector[i] * rank_one_vector[j]);
    return value;
}

namespace {

void check_length(const Graph& g, std::size_t rows) {
    if (rows != g.node_count()) {
        throw InputError("assignment has " + std::to_string(rows) + " rows, graph has " +
                         std::to_string(g.node_count()) + " nodes");
    }
}

void check_weighted(const Graph& g, const WeightedCoupling& w) {
    if (w.node_count != g.node_count()) throw InputError("couplings sized for a different graph");
    if (!w.rank_one_vector.empty() && w.rank_one_vector.size() != g.node_count()) {
        throw InputError("rank-one coupling vector has the wrong length");
    }
    for (const auto& e : w.sparse) {
        if (e.i < 0 || e.j < 0 || static_cast<std::size_t>(e.i) >= w.node_count ||
            static_cast<std::size_t>(e.j) >= w.node_count) {
            throw InputError("coupling entry (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                             ") out of range");
        }
    }
}

} // namespace

std::int64_t conflict_count(const Graph& g, const Coloring& c) {
    check_length(g, c.size());
    std::int64_t clashes = 0;
    for (auto [a, b] : g.edges()) clashes += c.assignment[a] == c.assignment[b];
    return clashes;
}

double hard_energy(const Graph& g, const Coloring& c, const Couplings& j) {
    check_length(g, c.size());
    if (const auto* uniform = std::get_if<UniformCoupling>(&j)) {
        return -uniform->j * static_cast<double>(conflict_count(g, c));
    }
    const auto& w = std::get<WeightedCoupling>(j);
    check_weighted(g, w);
    double pair_part = 0.0;
    for (const auto& e : w.sparse) {
        if (e.i != e.j && c.assignment[e.i] == c.assignment[e.j]) pair_part += e.weight;
    }
    double rank_part = 0.0;
    if (!w.rank_one_vector.empty()) {
        c.validate();
        std::vector<double> class_sum(static_cast<std::size_t>(c.num_colors), 0.0);
        double diagonal = 0.0;
        for (std::size_t v = 0; v < c.size(); ++v) {
            class_sum[c.assignment[v]] += w.rank_one_vector[v];
            diagonal += w.rank_one_vector[v] * w.rank_one_vector[v];
        }
        double squares = 0.0;
        for (double s : class_sum) squares += s * s;
        rank_part = w.rank_one_scale * (squares - diagonal);
    }
    return -(2.0 * pair_part - rank_part);
}

void check_soft_assignment(const Graph& g, const SoftAssignment& p, double tolerance) {
    check_length(g, p.rows());
    for (std::size_t i = 0; i < p.rows(); ++i) {
        double sum = 0.0;
        for (double v : p.row(i)) {
            if (!(v >= 0.0 && v <= 1.0)) throw InputError("row " + std::to_string(i) + " has entry outside [0,1]");
            sum += v;
        }
        if (std::abs(sum - 1.0) > tolerance) {
            throw InputError("row " + std::to_string(i) + " sums to " + std::to_string(sum));
        }
    }
}

double soft_loss(const Graph& g, const SoftAssignment& p, const Couplings& j, double row_tolerance) {
    check_soft_assignment(g, p, row_tolerance);
    if (const auto* uniform = std::get_if<UniformCoupling>(&j)) {
        return -uniform->j * kernels::parallel::edge_overlap(g, p);
    }
    const auto& w = std::get<WeightedCoupling>(j);
    check_weighted(g, w);
    const auto q = p.cols();
    double pair_part = 0.0;
    for (const auto& e : w.sparse) {
        if (e.i == e.j) continue;
        auto pi = p.row(e.i);
        auto pj = p.row(e.j);
        double dot = 0.0;
        for (std::size_t c = 0; c < q; ++c) dot += pi[c] * pj[c];
        pair_part += e.weight * dot;
    }
    double rank_part = 0.0;
    if (!w.rank_one_vector.empty()) {
        std::vector<double> class_sum(q, 0.0);
        double diagonal = 0.0;
        for (std::size_t v = 0; v < p.rows(); ++v) {
            const double x = w.rank_one_vector[v];
            double norm2 = 0.0;
            for (std::size_t c = 0; c < q; ++c) {
                class_sum[c] += x * p(v, c);
                norm2 += p(v, c) * p(v, c);
            }
            diagonal += x * x * norm2;
        }
        double squares = 0.0;
        for (double s : class_sum) squares += s * s;
        rank_part = w.rank_one_scale * (squares - diagonal);
    }
    return -(2.0 * pair_part - rank_part);
}

Matrix soft_loss_gradient(const Graph& g, const SoftAssignment& p, const Couplings& j, double row_tolerance) {
    check_soft_assignment(g, p, row_tolerance);
    Matrix grad(p.rows(), p.cols());
    if (const auto* uniform = std::get_if<UniformCoupling>(&j)) {
        kernels::parallel::neighbor_sum(g, p, grad);
        const double scale = -uniform->j;
        for (double& v : grad.flat()) v *= scale;
        return grad;
    }
    const auto& w = std::get<WeightedCoupling>(j);
    check_weighted(g, w);
    const auto q = p.cols();
    for (const auto& e : w.sparse) {
        if (e.i == e.j) continue;
        for (std::size_t c = 0; c < q; ++c) {
            grad(e.i, c) -= 2.0 * e.weight * p(e.j, c);
            grad(e.j, c) -= 2.0 * e.weight * p(e.i, c);
        }
    }
    if (!w.rank_one_vector.empty()) {
        std::vector<double> class_sum(q, 0.0);
        for (std::size_t v = 0; v < p.rows(); ++v)
            for (std::size_t c = 0; c < q; ++c) class_sum[c] += w.rank_one_vector[v] * p(v, c);
        for (std::size_t v = 0; v < p.rows(); ++v) {
            const double x = w.rank_one_vector[v];
            for (std::size_t c = 0; c < q; ++c) {
                grad(v, c) += w.rank_one_scale * 2.0 * x * (class_sum[c] - x * p(v, c));
            }
        }
    }
    return grad;
}

WeightedCoupling modularity_couplings(const Graph& g) {
    if (g.edge_count() == 0) throw DomainError("modularity couplings need at least one edge");
    const double two_m = 2.0 * static_cast<double>(g.edge_count());
    WeightedCoupling w;
    w.node_count = g.node_count();
    w.sparse.reserve(g.edge_count());
    for (auto [a, b] : g.edges()) w.sparse.push_back({a, b, 1.0 / two_m});
    w.rank_one_vector.resize(g.node_count());
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        w.rank_one_vector[v] = static_cast<double>(g.degree(static_cast<NodeId>(v)));
    }
    w.rank_one_scale = 1.0 / (two_m * two_m);
    return w;
}

std::uint64_t count_proper_colorings(const Graph& g, int q, std::uint64_t budget) {
    if (q < 0) throw DomainError("number of colors must be non-negative");
    std::uint64_t states = 1;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        if (q == 0) {
            states = 0;
            break;
        }
        if (states > budget / static_cast<std::uint64_t>(q)) {
            throw SizeError(std::to_string(q) + "^" + std::to_string(g.node_count()) +
                            " colorings exceed the enumeration budget of " + std::to_string(budget));
        }
        states *= static_cast<std::uint64_t>(q);
    }
    return kernels::parallel::count_colorings(g, q);
}

int chromatic_number_exact(const Graph& g, std::uint64_t budget) {
    if (g.node_count() == 0) return 0;
    for (int q = 1;; ++q) {
        if (count_proper_colorings(g, q, budget) > 0) return q;
    }
}

double normalized_error(double energy, std::size_t edge_count) {
    if (edge_count == 0) throw DomainError("normalized error undefined for a graph without edges");
    return energy / static_cast<double>(edge_count);
}

SoftAssignment one_hot(const Coloring& c) {
    c.validate();
    SoftAssignment p(c.size(), static_cast<std::size_t>(c.num_colors));
    for (std::size_t v = 0; v < c.size(); ++v) p(v, c.assignment[v]) = 1.0;
    return p;
}

} // namespace picolor
