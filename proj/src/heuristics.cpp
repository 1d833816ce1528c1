#include "picolor/heuristics.hpp"

#include "picolor/errors.hpp"
#include "picolor/random.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

namespace picolor {

namespace {

// Kempe chain swap for a vertex that would need a new color. Tries color
// pairs (a, b), a < b <= top, in lexicographic order. The chain is the
// {a, b} component grown from v's a-colored neighbors; if it holds none of
// v's b-colored neighbors, swapping a and b on it frees a for v.
// Returns the freed color, or -1.
int try_interchange(const Graph& g, std::vector<int>& color, NodeId v, int top, std::vector<char>& in_chain) {
    std::vector<NodeId> chain;
    for (int a = 0; a < top; ++a) {
        for (int b = a + 1; b <= top; ++b) {
            chain.clear();
            for (NodeId u : g.neighbors(v)) {
                if (color[u] == a) {
                    in_chain[u] = 1;
                    chain.push_back(u);
                }
            }
            for (std::size_t i = 0; i < chain.size(); ++i) {
                const NodeId x = chain[i];
                const int other = color[x] == a ? b : a;
                for (NodeId y : g.neighbors(x)) {
                    if (color[y] == other && !in_chain[y]) {
                        in_chain[y] = 1;
                        chain.push_back(y);
                    }
                }
            }
            bool blocked = false;
            for (NodeId u : g.neighbors(v)) blocked = blocked || (color[u] == b && in_chain[u]);
            for (NodeId x : chain) in_chain[x] = 0;
            if (!blocked) {
                for (NodeId x : chain) color[x] = color[x] == a ? b : a;
                return a;
            }
        }
    }
    return -1;
}

} // namespace

GreedyResult greedy_coloring(const Graph& g, std::span<const NodeId> order, GreedyRule rule) {
    const auto n = g.node_count();
    if (order.size() != n) throw InputError("greedy order must list every node once");
    std::vector<char> seen(n, 0);
    for (NodeId v : order) {
        if (v < 0 || static_cast<std::size_t>(v) >= n || seen[v]) throw InputError("greedy order must list every node once");
        seen[v] = 1;
    }
    GreedyResult r;
    auto& color = r.coloring.assignment;
    color.assign(n, -1);
    std::vector<NodeId> stamp(n + 1, -1);
    std::vector<char> in_chain(n, 0);
    int top = 0;  // highest color index handed out so far
    for (NodeId v : order) {
        for (NodeId u : g.neighbors(v)) {
            if (color[u] >= 0) stamp[color[u]] = v;
        }
        int c = 0;
        while (stamp[c] == v) ++c;
        if (c > top && rule == GreedyRule::Interchange) {
            const int freed = try_interchange(g, color, v, top, in_chain);
            if (freed >= 0) c = freed;
        }
        color[v] = c;
        top = std::max(top, c);
    }
    r.coloring.num_colors = n == 0 ? 0 : top + 1;
    r.chi_upper = r.coloring.num_colors;
    return r;
}

GreedyResult greedy_coloring(const Graph& g, GreedyRule rule) {
    std::vector<NodeId> order(g.node_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&g](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });
    return greedy_coloring(g, order, rule);
}

namespace {

/// Per-vertex neighbor color histogram (the Tabucol gamma table) plus the
/// set of conflicted vertices, maintained incrementally under recoloring.
class ConflictTable {
public:
    ConflictTable(const Graph& g, int q, std::vector<int> colors)
        : g_(g), q_(q), colors_(std::move(colors)), counts_(g.node_count() * static_cast<std::size_t>(q), 0),
          position_(g.node_count(), npos) {
        for (std::size_t v = 0; v < g.node_count(); ++v) {
            for (NodeId u : g.neighbors(static_cast<NodeId>(v))) ++at(static_cast<NodeId>(v), colors_[u]);
        }
        for (std::size_t v = 0; v < g.node_count(); ++v) {
            const auto node = static_cast<NodeId>(v);
            cost_ += at(node, colors_[v]);
            refresh(node);
        }
        cost_ /= 2;
    }

    int& at(NodeId v, int c) { return counts_[static_cast<std::size_t>(v) * q_ + c]; }
    int at(NodeId v, int c) const { return counts_[static_cast<std::size_t>(v) * q_ + c]; }

    std::int64_t cost() const { return cost_; }
    const std::vector<int>& colors() const { return colors_; }
    const std::vector<NodeId>& conflicted() const { return conflicted_; }

    void recolor(NodeId v, int c) {
        const int old = colors_[v];
        if (old == c) return;
        cost_ += at(v, c) - at(v, old);
        colors_[v] = c;
        for (NodeId u : g_.neighbors(v)) {
            --at(u, old);
            ++at(u, c);
            refresh(u);
        }
        refresh(v);
    }

private:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    void refresh(NodeId v) {
        const bool in_conflict = at(v, colors_[v]) > 0;
        if (in_conflict && position_[v] == npos) {
            position_[v] = conflicted_.size();
            conflicted_.push_back(v);
        } else if (!in_conflict && position_[v] != npos) {
            const NodeId last = conflicted_.back();
            conflicted_[position_[v]] = last;
            position_[last] = position_[v];
            conflicted_.pop_back();
            position_[v] = npos;
        }
    }

    const Graph& g_;
    int q_;
    std::vector<int> colors_;
    std::vector<int> counts_;
    std::vector<NodeId> conflicted_;
    std::vector<std::size_t> position_;
    std::int64_t cost_ = 0;
};

} // namespace

TabucolResult tabucol(const Graph& g, int q, const TabucolConfig& cfg) {
    if (q < 1) throw InputError("tabucol needs at least one color");
    if (cfg.max_iterations < 1) throw InputError("tabucol needs max_iterations >= 1");
    const auto n = g.node_count();
    Rng rng(cfg.seed);
    std::uniform_int_distribution<int> any_color(0, q - 1);
    std::uniform_int_distribution<int> tenure_jitter(0, cfg.tenure_random);

    std::vector<int> start(n);
    for (auto& c : start) c = any_color(rng);
    ConflictTable table(g, q, std::move(start));

    TabucolResult r;
    r.coloring = {table.colors(), q};
    r.cost = table.cost();
    std::vector<std::int64_t> tabu_until(n * static_cast<std::size_t>(q), 0);

    std::int64_t iter = 0;
    for (; iter < cfg.max_iterations && r.cost > 0 && q > 1; ++iter) {
        int best_delta = std::numeric_limits<int>::max();
        NodeId move_vertex = -1;
        int move_color = -1;
        int ties = 0;
        for (NodeId v : table.conflicted()) {
            const int cv = table.colors()[v];
            const int current = table.at(v, cv);
            for (int c = 0; c < q; ++c) {
                if (c == cv) continue;
                const int delta = table.at(v, c) - current;
                if (delta > best_delta) continue;
                const bool is_tabu = tabu_until[static_cast<std::size_t>(v) * q + c] > iter;
                if (is_tabu && table.cost() + delta >= r.cost) continue;
                if (delta < best_delta) {
                    best_delta = delta;
                    ties = 0;
                }
                // Uniform choice among equally good moves.
                if (std::uniform_int_distribution<int>(0, ties++)(rng) == 0) {
                    move_vertex = v;
                    move_color = c;
                }
            }
        }
        if (move_vertex < 0) {
            const auto& conflicted = table.conflicted();
            move_vertex = conflicted[std::uniform_int_distribution<std::size_t>(0, conflicted.size() - 1)(rng)];
            move_color = std::uniform_int_distribution<int>(0, q - 2)(rng);
            if (move_color >= table.colors()[move_vertex]) ++move_color;
        }

        const int old = table.colors()[move_vertex];
        table.recolor(move_vertex, move_color);
        const auto tenure = static_cast<std::int64_t>(cfg.tenure_base + tenure_jitter(rng) +
                                                      cfg.tenure_conflict_scale * table.conflicted().size());
        tabu_until[static_cast<std::size_t>(move_vertex) * q + old] = iter + 1 + tenure;

        if (table.cost() < r.cost) {
            r.cost = table.cost();
            r.coloring.assignment = table.colors();
        }
    }
    r.iterations_used = iter;
    return r;
}

PurifyResult purify(const Graph& g, const Coloring& c, std::uint64_t seed, int max_rounds) {
    if (c.size() != g.node_count()) throw InputError("coloring length does not match the graph");
    c.validate();
    Rng rng(seed);
    PurifyResult r;
    r.coloring = c;
    auto& colors = r.coloring.assignment;

    std::vector<Edge> clashes;
    auto collect = [&] {
        clashes.clear();
        for (auto e : g.edges())
            if (colors[e.first] == colors[e.second]) clashes.push_back(e);
    };
    collect();
    std::vector<char> touches_fresh(g.node_count());
    while (!clashes.empty() && r.rounds < max_rounds) {
        const int fresh = r.coloring.num_colors++;
        ++r.rounds;
        std::fill(touches_fresh.begin(), touches_fresh.end(), 0);
        std::shuffle(clashes.begin(), clashes.end(), rng);
        for (auto [a, b] : clashes) {
            if (colors[a] != colors[b]) continue;
            NodeId eligible[2];
            int count = 0;
            if (!touches_fresh[a]) eligible[count++] = a;
            if (!touches_fresh[b]) eligible[count++] = b;
            if (count == 0) continue;
            const NodeId moved = count == 1 ? eligible[0] : eligible[std::uniform_int_distribution<int>(0, 1)(rng)];
            colors[moved] = fresh;
            for (NodeId u : g.neighbors(moved)) touches_fresh[u] = 1;
        }
        collect();
    }
    r.feasible = clashes.empty();
    r.colors_used = r.coloring.colors_used();
    return r;
}

namespace {

std::int64_t clashes_at(const Graph& g, const std::vector<int>& colors, NodeId v, int c) {
    std::int64_t k = 0;
    for (NodeId u : g.neighbors(v)) k += colors[u] == c;
    return k;
}

} // namespace

LocalFlipResult local_flip_refine(const Graph& g, const Coloring& c, int q) {
    if (c.size() != g.node_count()) throw InputError("coloring length does not match the graph");
    if (q < 1) throw InputError("local_flip_refine needs at least one color");
    LocalFlipResult r;
    r.coloring = c;
    r.coloring.num_colors = std::max(q, c.num_colors);
    auto& colors = r.coloring.assignment;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < g.node_count(); ++i) {
            const auto v = static_cast<NodeId>(i);
            const std::int64_t current = clashes_at(g, colors, v, colors[v]);
            if (current == 0) continue;
            for (int color = 0; color < q; ++color) {
                if (color != colors[v] && clashes_at(g, colors, v, color) < current) {
                    colors[v] = color;
                    changed = true;
                    break;
                }
            }
        }
    }
    r.cost = conflict_count(g, r.coloring);
    r.is_local_opt = true;
    return r;
}

bool is_local_optimum(const Graph& g, const Coloring& c, int q) {
    std::vector<int> colors = c.assignment;
    const std::int64_t base = conflict_count(g, c);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        const int original = colors[i];
        for (int color = 0; color < q; ++color) {
            if (color == original) continue;
            colors[i] = color;
            if (conflict_count(g, Coloring{colors, std::max(q, c.num_colors)}) < base) return false;
        }
        colors[i] = original;
    }
    return true;
}

} // namespace picolor
