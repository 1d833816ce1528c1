#include "picolor/errors.hpp"
#include "picolor/potts.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace picolor;

namespace {

// Relaxed tolerance so finite-difference probes may leave the simplex.
constexpr double kProbeTolerance = 1e-3;

Coloring queen5_proper() {
    Coloring c{std::vector<int>(25), 5};
    for (int r = 0; r < 5; ++r)
        for (int col = 0; col < 5; ++col) c.assignment[r * 5 + col] = (2 * r + col) % 5;
    return c;
}

// -sum_{i != j} J_ij delta(s_i, s_j), straight from the pair couplings.
double brute_weighted_energy(const WeightedCoupling& w, const Coloring& c) {
    double h = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j)
            if (i != j && c.assignment[i] == c.assignment[j])
                h -= w.coupling(static_cast<NodeId>(i), static_cast<NodeId>(j));
    return h;
}

double brute_weighted_soft(const WeightedCoupling& w, const Matrix& p) {
    double h = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.rows(); ++j) {
            if (i == j) continue;
            double dot = 0.0;
            for (std::size_t c = 0; c < p.cols(); ++c) dot += p(i, c) * p(j, c);
            h -= w.coupling(static_cast<NodeId>(i), static_cast<NodeId>(j)) * dot;
        }
    return h;
}

void check_fd_gradient(const Graph& g, const Matrix& p, const Couplings& j, double h, double rel) {
    const Matrix analytic = soft_loss_gradient(g, p, j);
    const Matrix numeric =
        testing::finite_difference(p, [&](const Matrix& x) { return soft_loss(g, x, j, kProbeTolerance); }, h);
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        CHECK(testing::close(analytic.flat()[i], numeric.flat()[i], rel, 1e-9));
    }
}

} // namespace

TEST_CASE("hard_energy counts clashing edges under J = -1") {
    const Graph k3 = complete_graph(3);
    CHECK(hard_energy(k3, Coloring{{0, 0, 0}, 1}) == 3.0);
    CHECK(hard_energy(queen_graph(5, 5), queen5_proper()) == 0.0);
    CHECK(hard_energy(path_graph(3), Coloring{{0, 1, 0}, 2}) == 0.0);
    CHECK(hard_energy(k3, Coloring{{0, 0, 0}, 1}, UniformCoupling{-2.0}) == 6.0);
    CHECK_THROWS_AS(hard_energy(k3, Coloring{{0, 0}, 1}), InputError);
}

TEST_CASE("soft_loss examples") {
    std::mt19937_64 rng(1);
    const Graph g = testing::random_graph(20, 0.3, rng);
    for (int q : {2, 3, 7}) {
        const Matrix uniform(20, static_cast<std::size_t>(q), 1.0 / q);
        CHECK(soft_loss(g, uniform) == doctest::Approx(static_cast<double>(g.edge_count()) / q));
    }
    CHECK(soft_loss(queen_graph(5, 5), one_hot(queen5_proper())) == 0.0);
    CHECK(soft_loss(complete_graph(3), one_hot(Coloring{{0, 0, 0}, 2})) == 3.0);

    Matrix bad(3, 2, 0.4);
    CHECK_THROWS_AS(soft_loss(complete_graph(3), bad), InputError);
    CHECK_THROWS_AS(soft_loss(complete_graph(3), Matrix(2, 2, 0.5)), InputError);
}

TEST_CASE("relaxation is exact on one-hot assignments") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const Graph g = testing::random_graph(5 + trial % 20, 0.3, rng);
        const int q = 1 + trial % 6;
        const Coloring c = testing::random_coloring(g.node_count(), q, rng);
        CHECK(soft_loss(g, one_hot(c)) == hard_energy(g, c));
        if (g.edge_count() > 0) {
            const auto mod = modularity_couplings(g);
            CHECK(soft_loss(g, one_hot(c), mod) == doctest::Approx(hard_energy(g, c, mod)).epsilon(1e-12));
        }
    }
}

TEST_CASE("soft_loss_gradient examples") {
    const std::vector<Edge> one_edge{{0, 1}};
    const Graph g(3, one_edge);
    Matrix p(3, 2);
    p(0, 0) = 0.3, p(0, 1) = 0.7;
    p(1, 0) = 0.9, p(1, 1) = 0.1;
    p(2, 0) = 0.5, p(2, 1) = 0.5;
    const Matrix grad = soft_loss_gradient(g, p);
    CHECK(grad(0, 0) == 0.9);
    CHECK(grad(0, 1) == 0.1);
    CHECK(grad(1, 0) == 0.3);
    CHECK(grad(1, 1) == 0.7);
    CHECK(grad(2, 0) == 0.0);
    CHECK(grad(2, 1) == 0.0);
}

TEST_CASE("soft_loss_gradient matches finite differences, n = 12") {
    std::mt19937_64 rng(3);
    const Graph g = testing::random_graph(12, 0.4, rng);
    const Matrix p = testing::random_stochastic(12, 4, rng);
    check_fd_gradient(g, p, UniformCoupling{}, 1e-5, 1e-6);
}

TEST_CASE("gradient property: uniform and modularity couplings on random graphs") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t n = 4 + (trial * 7) % 27;
        const std::size_t q = 2 + trial % 5;
        Graph g = testing::random_graph(n, 0.25, rng);
        if (g.edge_count() == 0) g = path_graph(n);
        const Matrix p = testing::random_stochastic(n, q, rng);
        check_fd_gradient(g, p, UniformCoupling{}, 1e-5, 1e-4);
        check_fd_gradient(g, p, modularity_couplings(g), 1e-5, 1e-4);
    }
}

TEST_CASE("q = 2 energies reduce to the MaxCut form") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const Graph g = testing::random_graph(12, 0.35, rng);
        const Coloring c = testing::random_coloring(12, 2, rng);
        double maxcut_form = 0.0;
        for (auto [a, b] : g.edges()) {
            const int za = 1 - 2 * c.assignment[a];
            const int zb = 1 - 2 * c.assignment[b];
            maxcut_form += (1 + za * zb) / 2.0;
        }
        CHECK(hard_energy(g, c) == maxcut_form);
    }
}

TEST_CASE("modularity couplings") {
    const std::vector<Edge> one_edge{{0, 1}};
    const auto single = modularity_couplings(Graph(2, one_edge));
    CHECK(single.coupling(0, 1) == doctest::Approx(0.25));

    const auto k3 = modularity_couplings(complete_graph(3));
    // d_i = d_j = 2, 2m = 6: (1/6)(1 - 4/6).
    CHECK(k3.coupling(0, 1) == doctest::Approx(1.0 / 18.0));
    CHECK(k3.coupling(1, 2) == doctest::Approx(1.0 / 18.0));

    CHECK_THROWS_AS(modularity_couplings(Graph(4, {})), DomainError);

    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 5 + trial * 3;
        Graph g = testing::random_graph(n, 0.3, rng);
        if (g.edge_count() == 0) g = path_graph(n);
        const auto w = modularity_couplings(g);
        double total = 0.0;
        for (NodeId i = 0; i < static_cast<NodeId>(n); ++i)
            for (NodeId j = 0; j < static_cast<NodeId>(n); ++j) {
                total += w.coupling(i, j);
                CHECK(w.coupling(i, j) == w.coupling(j, i));
            }
        CHECK(std::abs(total) <= 1e-12 * static_cast<double>(n * n));

        const Coloring c = testing::random_coloring(n, 3, rng);
        CHECK(hard_energy(g, c, w) == doctest::Approx(brute_weighted_energy(w, c)).epsilon(1e-12));
        const Matrix p = testing::random_stochastic(n, 3, rng);
        CHECK(soft_loss(g, p, w) == doctest::Approx(brute_weighted_soft(w, p)).epsilon(1e-12));
    }
}

TEST_CASE("single-community modularity is zero") {
    // Everyone in one class: sum over i != j of J_ij = -sum_i J_ii.
    const Graph g = queen_graph(3, 3);
    const auto w = modularity_couplings(g);
    Coloring all_same{std::vector<int>(9, 0), 1};
    double diagonal = 0.0;
    for (NodeId i = 0; i < 9; ++i) diagonal += w.coupling(i, i);
    CHECK(hard_energy(g, all_same, w) == doctest::Approx(diagonal));
}

TEST_CASE("count_proper_colorings examples and oracle cross-check") {
    CHECK(count_proper_colorings(complete_graph(3), 3) == 6);
    CHECK(testing::odometer_count(complete_graph(3), 3) == 6);
    CHECK(count_proper_colorings(path_graph(3), 2) == 2);
    CHECK(testing::odometer_count(path_graph(3), 2) == 2);
    CHECK(count_proper_colorings(complete_graph(3), 2) == 0);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 15; ++trial) {
        const Graph g = testing::random_graph(3 + trial % 6, 0.5, rng);
        for (int q = 0; q <= 4; ++q) CHECK(count_proper_colorings(g, q) == testing::odometer_count(g, q));
    }
}

TEST_CASE("chromatic polynomial closed forms") {
    for (std::size_t n = 1; n <= 8; ++n) {
        for (int q = 0; q <= 6; ++q) {
            std::int64_t falling = 1;
            for (std::size_t i = 0; i < n; ++i) falling *= q - static_cast<std::int64_t>(i);
            if (falling < 0) falling = 0;
            CHECK(count_proper_colorings(complete_graph(n), q) == static_cast<std::uint64_t>(falling));
            if (n >= 3) {
                std::int64_t cycle = 1;
                for (std::size_t i = 0; i < n; ++i) cycle *= q - 1;
                cycle += (n % 2 == 0 ? 1 : -1) * (q - 1);
                CHECK(count_proper_colorings(cycle_graph(n), q) == static_cast<std::uint64_t>(cycle));
            }
        }
    }
}

TEST_CASE("count_proper_colorings is monotone in q") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = testing::random_graph(7, 0.5, rng);
        std::uint64_t previous = 0;
        for (int q = 0; q <= 6; ++q) {
            const auto count = count_proper_colorings(g, q);
            CHECK(count >= previous);
            previous = count;
        }
    }
}

TEST_CASE("enumeration budget is enforced") {
    CHECK_THROWS_AS(count_proper_colorings(path_graph(30), 3), SizeError);
    CHECK_THROWS_AS(count_proper_colorings(path_graph(5), 3, 100), SizeError);
    CHECK(count_proper_colorings(path_graph(5), 3, 243) == 48);
    CHECK_THROWS_AS(chromatic_number_exact(queen_graph(5, 5)), SizeError);
    CHECK_THROWS_AS(count_proper_colorings(path_graph(2), -1), DomainError);
}

TEST_CASE("chromatic_number_exact") {
    CHECK(chromatic_number_exact(complete_graph(4)) == 4);
    CHECK(chromatic_number_exact(cycle_graph(5)) == 3);
    CHECK(testing::odometer_chromatic(cycle_graph(5)) == 3);
    CHECK(chromatic_number_exact(Graph(7, {})) == 1);
    CHECK(chromatic_number_exact(Graph(0, {})) == 0);
    CHECK(chromatic_number_exact(myciel_graph(3)) == 4);
}

TEST_CASE("normalized_error") {
    CHECK(normalized_error(26, 3328) == doctest::Approx(0.0078).epsilon(0.01));
    CHECK(normalized_error(17, 1980) == doctest::Approx(0.0086).epsilon(0.01));
    CHECK(normalized_error(0, 10) == 0.0);
    CHECK_THROWS_AS(normalized_error(1, 0), DomainError);
}

TEST_CASE("coloring helpers") {
    Coloring c{{0, 2, 2}, 4};
    CHECK(c.colors_used() == 2);
    CHECK_NOTHROW(c.validate());
    CHECK_THROWS_AS((Coloring{{0, 4}, 4}.validate()), InputError);
    const Matrix p = one_hot(c);
    CHECK(p(1, 2) == 1.0);
    CHECK(p(1, 0) == 0.0);
}
