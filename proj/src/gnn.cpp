#include "picolor/gnn.hpp"

#include "picolor/errors.hpp"
#include "picolor/heuristics.hpp"
#include "picolor/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace picolor {

namespace k = kernels::parallel;

namespace {
ForwardObserver g_forward_observer;
} // namespace

void set_forward_observer(ForwardObserver observer) { g_forward_observer = std::move(observer); }

void Hyperparams::validate() const {
    if (embedding_dim <= 0) throw InputError("embedding_dim must be positive");
    if (hidden_dims.empty()) throw InputError("hidden_dims must list at least one layer");
    for (int d : hidden_dims)
        if (d <= 0) throw InputError("hidden_dims entries must be positive");
    if (num_colors <= 0) throw InputError("num_colors must be positive");
    if (!(learning_rate > 0.0)) throw InputError("learning_rate must be positive");
    if (!(dropout >= 0.0 && dropout < 1.0)) throw InputError("dropout must lie in [0, 1)");
    if (max_epochs <= 0) throw InputError("max_epochs must be positive");
    if (patience <= 0) throw InputError("patience must be positive");
    if (!(tolerance >= 0.0)) throw InputError("tolerance must be non-negative");
    if (!(weight_decay >= 0.0)) throw InputError("weight_decay must be non-negative");
    if (q_regularization != 0.0) throw InputError("q_regularization is not supported");
}

std::vector<Matrix*> Parameters::tensors() {
    std::vector<Matrix*> out{&embeddings};
    for (auto& layer : layers) {
        out.push_back(&layer.self);
        if (layer.neigh.size() > 0) out.push_back(&layer.neigh);
    }
    return out;
}

std::vector<const Matrix*> Parameters::tensors() const {
    std::vector<const Matrix*> out{&embeddings};
    for (const auto& layer : layers) {
        out.push_back(&layer.self);
        if (layer.neigh.size() > 0) out.push_back(&layer.neigh);
    }
    return out;
}

namespace {

std::vector<int> layer_dims(const Hyperparams& hp) {
    std::vector<int> dims{hp.embedding_dim};
    dims.insert(dims.end(), hp.hidden_dims.begin(), hp.hidden_dims.end());
    dims.push_back(hp.num_colors);
    return dims;
}

void fill_uniform(Matrix& m, double bound, Rng& rng) {
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (double& v : m.flat()) v = dist(rng);
}

Parameters zeros_like(const Parameters& p) {
    Parameters z;
    z.embeddings = Matrix(p.embeddings.rows(), p.embeddings.cols());
    for (const auto& layer : p.layers) {
        z.layers.push_back({Matrix(layer.self.rows(), layer.self.cols()),
                            Matrix(layer.neigh.rows(), layer.neigh.cols())});
    }
    return z;
}

std::vector<double> gcn_scale(const Graph& g) {
    std::vector<double> s(g.node_count());
    for (std::size_t v = 0; v < s.size(); ++v) {
        s[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(static_cast<NodeId>(v)) + 1));
    }
    return s;
}

void check_shapes(const Model& m, const Graph& g, const Hyperparams& hp) {
    const auto dims = layer_dims(hp);
    bool ok = m.params.embeddings.rows() == g.node_count() &&
              m.params.embeddings.cols() == static_cast<std::size_t>(hp.embedding_dim) &&
              m.params.layers.size() + 1 == dims.size();
    for (std::size_t l = 0; ok && l < m.params.layers.size(); ++l) {
        const auto& layer = m.params.layers[l];
        ok = layer.self.rows() == static_cast<std::size_t>(dims[l]) &&
             layer.self.cols() == static_cast<std::size_t>(dims[l + 1]);
        if (hp.model_kind == ModelKind::SageStyle) ok = ok && layer.neigh.same_shape(layer.self);
    }
    if (!ok) throw std::logic_error("model dimensions do not match graph and hyperparameters");
}

void softmax_rows(Matrix& z) {
    for (std::size_t i = 0; i < z.rows(); ++i) {
        auto row = z.row(i);
        const double peak = *std::max_element(row.begin(), row.end());
        double sum = 0.0;
        for (double& v : row) {
            v = std::exp(v - peak);
            sum += v;
        }
        for (double& v : row) v /= sum;
    }
}

void add_inplace(Matrix& a, const Matrix& b) {
    auto x = a.flat();
    auto y = b.flat();
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
}

} // namespace

Model init_model(const Graph& g, const Hyperparams& hp) {
    hp.validate();
    if (g.node_count() == 0) throw InputError("cannot build a model for an empty graph");
    Rng rng(hp.seed);
    Model m;
    m.params.embeddings = Matrix(g.node_count(), static_cast<std::size_t>(hp.embedding_dim));
    fill_uniform(m.params.embeddings, 1.0 / std::sqrt(static_cast<double>(hp.embedding_dim)), rng);
    const auto dims = layer_dims(hp);
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(dims[l]));
        LayerWeights layer;
        layer.self = Matrix(static_cast<std::size_t>(dims[l]), static_cast<std::size_t>(dims[l + 1]));
        fill_uniform(layer.self, bound, rng);
        if (hp.model_kind == ModelKind::SageStyle) {
            layer.neigh = Matrix(layer.self.rows(), layer.self.cols());
            fill_uniform(layer.neigh, bound, rng);
        }
        m.params.layers.push_back(std::move(layer));
    }
    for (const Matrix* t : m.params.tensors()) {
        m.optimizer.first_moment.emplace_back(t->rows(), t->cols());
        m.optimizer.second_moment.emplace_back(t->rows(), t->cols());
    }
    return m;
}

ForwardTrace forward_trace(const Model& m, const Graph& g, const Hyperparams& hp, bool train_mode, Rng& rng) {
    check_shapes(m, g, hp);
    const auto n = g.node_count();
    const auto scale = hp.model_kind == ModelKind::GcnStyle ? gcn_scale(g) : std::vector<double>{};
    const bool use_dropout = train_mode && hp.dropout > 0.0;
    std::bernoulli_distribution keep(1.0 - hp.dropout);
    const double keep_scale = 1.0 / (1.0 - hp.dropout);

    ForwardTrace t;
    Matrix x = m.params.embeddings;
    for (std::size_t l = 0; l < m.params.layers.size(); ++l) {
        const auto& layer = m.params.layers[l];
        Matrix agg(n, x.cols());
        Matrix z(n, layer.self.cols());
        if (hp.model_kind == ModelKind::GcnStyle) {
            k::gcn_propagate(g, scale, x, agg);
            k::gemm(agg, layer.self, z);
        } else {
            k::mean_aggregate(g, x, agg);
            Matrix zn(n, layer.self.cols());
            k::gemm(x, layer.self, z);
            k::gemm(agg, layer.neigh, zn);
            add_inplace(z, zn);
        }
        t.inputs.push_back(std::move(x));
        t.aggregated.push_back(std::move(agg));
        t.pre_activations.push_back(z);

        const bool last = l + 1 == m.params.layers.size();
        if (last) {
            softmax_rows(z);
            if (g_forward_observer) g_forward_observer(z);
            t.output = std::move(z);
            break;
        }
        for (double& v : z.flat()) v = std::max(v, 0.0);
        if (use_dropout) {
            Matrix mask(z.rows(), z.cols());
            for (double& v : mask.flat()) v = keep(rng) ? keep_scale : 0.0;
            auto zs = z.flat();
            auto ms = mask.flat();
            for (std::size_t i = 0; i < zs.size(); ++i) zs[i] *= ms[i];
            t.dropout_masks.push_back(std::move(mask));
        }
        x = std::move(z);
    }
    return t;
}

SoftAssignment forward(const Model& m, const Graph& g, const Hyperparams& hp, bool train_mode, Rng& rng) {
    return forward_trace(m, g, hp, train_mode, rng).output;
}

BackwardResult backward(const Model& m, const Graph& g, const Hyperparams& hp, Rng& rng,
                        const Couplings& couplings, bool train_mode) {
    ForwardTrace t = forward_trace(m, g, hp, train_mode, rng);
    const auto n = g.node_count();
    const auto scale = hp.model_kind == ModelKind::GcnStyle ? gcn_scale(g) : std::vector<double>{};

    BackwardResult r;
    r.loss = soft_loss(g, t.output, couplings);
    r.grads = zeros_like(m.params);

    // Softmax backward: dZ = P * (dP - <dP, P>) row-wise.
    Matrix delta = soft_loss_gradient(g, t.output, couplings);
    for (std::size_t i = 0; i < n; ++i) {
        auto p = t.output.row(i);
        auto d = delta.row(i);
        double dot = 0.0;
        for (std::size_t c = 0; c < p.size(); ++c) dot += p[c] * d[c];
        for (std::size_t c = 0; c < p.size(); ++c) d[c] = p[c] * (d[c] - dot);
    }

    for (std::size_t l = m.params.layers.size(); l-- > 0;) {
        const auto& layer = m.params.layers[l];
        auto& grad_layer = r.grads.layers[l];
        const Matrix& x = t.inputs[l];
        Matrix grad_x(n, x.cols());
        if (hp.model_kind == ModelKind::GcnStyle) {
            k::gemm_tn(t.aggregated[l], delta, grad_layer.self);
            Matrix grad_agg(n, x.cols());
            k::gemm_nt(delta, layer.self, grad_agg);
            k::gcn_propagate(g, scale, grad_agg, grad_x);
        } else {
            k::gemm_tn(x, delta, grad_layer.self);
            k::gemm_tn(t.aggregated[l], delta, grad_layer.neigh);
            k::gemm_nt(delta, layer.self, grad_x);
            Matrix grad_agg(n, x.cols());
            k::gemm_nt(delta, layer.neigh, grad_agg);
            Matrix back(n, x.cols());
            k::mean_aggregate_adjoint(g, grad_agg, back);
            add_inplace(grad_x, back);
        }
        if (l == 0) {
            r.grads.embeddings = std::move(grad_x);
            break;
        }
        // x is the (dropped-out) rectified output of layer l-1.
        auto gx = grad_x.flat();
        auto pre = t.pre_activations[l - 1].flat();
        const Matrix* mask = t.dropout_masks.empty() ? nullptr : &t.dropout_masks[l - 1];
        for (std::size_t i = 0; i < gx.size(); ++i) {
            if (mask) gx[i] *= mask->flat()[i];
            if (!(pre[i] > 0.0)) gx[i] = 0.0;
        }
        delta = std::move(grad_x);
    }
    r.output = std::move(t.output);
    return r;
}

void optimizer_step(Model& m, const Gradients& grads, const Hyperparams& hp) {
    constexpr double beta1 = 0.9;
    constexpr double beta2 = 0.999;
    constexpr double eps = 1e-8;
    auto& st = m.optimizer;
    ++st.step;
    const double correction1 = 1.0 - std::pow(beta1, static_cast<double>(st.step));
    const double correction2 = 1.0 - std::pow(beta2, static_cast<double>(st.step));
    const double decay = hp.optimizer_kind == OptimizerKind::AdamW ? hp.learning_rate * hp.weight_decay : 0.0;

    auto params = m.params.tensors();
    auto grad_tensors = grads.tensors();
    if (grad_tensors.size() != params.size() || st.first_moment.size() != params.size()) {
        throw std::logic_error("gradient layout does not match the model");
    }
    for (std::size_t t = 0; t < params.size(); ++t) {
        auto theta = params[t]->flat();
        auto g = grad_tensors[t]->flat();
        auto m1 = st.first_moment[t].flat();
        auto m2 = st.second_moment[t].flat();
        // Tensor 0 is the embedding table, which is never decayed.
        const double shrink = t == 0 ? 1.0 : 1.0 - decay;
        for (std::size_t i = 0; i < theta.size(); ++i) {
            m1[i] = beta1 * m1[i] + (1.0 - beta1) * g[i];
            m2[i] = beta2 * m2[i] + (1.0 - beta2) * g[i] * g[i];
            const double m_hat = m1[i] / correction1;
            const double v_hat = m2[i] / correction2;
            theta[i] = theta[i] * shrink - hp.learning_rate * m_hat / (std::sqrt(v_hat) + eps);
        }
    }
}

Coloring project_argmax(const SoftAssignment& p) {
    Coloring c;
    c.num_colors = static_cast<int>(p.cols());
    c.assignment.resize(p.rows());
    for (std::size_t i = 0; i < p.rows(); ++i) {
        auto row = p.row(i);
        c.assignment[i] = static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
    }
    return c;
}

std::string to_string(StopReason r) {
    switch (r) {
    case StopReason::Patience: return "PATIENCE";
    case StopReason::MaxEpochs: return "MAX_EPOCHS";
    case StopReason::ZeroCost: return "ZERO_COST";
    case StopReason::Deadline: return "DEADLINE";
    }
    return "UNKNOWN";
}

TrainResult train(const Graph& g, const Hyperparams& hp, const Couplings& couplings, const TrainOptions& options) {
    hp.validate();
    TrainResult r;
    if (g.node_count() == 0) {
        r.best_coloring.num_colors = hp.num_colors;
        r.best_soft = SoftAssignment(0, static_cast<std::size_t>(hp.num_colors));
        r.stop_reason = StopReason::ZeroCost;
        return r;
    }
    Model model = init_model(g, hp);
    Rng dropout_rng(hp.seed ^ 0x9e3779b97f4a7c15ULL);
    const bool clash_objective = std::holds_alternative<UniformCoupling>(couplings);

    double best_loss = std::numeric_limits<double>::infinity();
    double patience_anchor = std::numeric_limits<double>::infinity();
    int since_improvement = 0;
    bool have_snapshot = false;
    double snapshot_loss = 0.0;

    r.stop_reason = StopReason::MaxEpochs;
    for (int epoch = 0; epoch < hp.max_epochs; ++epoch) {
        BackwardResult step = backward(model, g, hp, dropout_rng, couplings);
        r.loss_history.push_back(step.loss);
        r.epochs_run = epoch + 1;
        best_loss = std::min(best_loss, step.loss);

        Coloring projected = project_argmax(step.output);
        const std::int64_t cost = conflict_count(g, projected);
        if (!have_snapshot || cost < r.best_cost || (cost == r.best_cost && step.loss < snapshot_loss)) {
            have_snapshot = true;
            r.best_cost = cost;
            snapshot_loss = step.loss;
            r.best_epoch = epoch;
            r.best_soft = step.output;
            r.best_coloring = std::move(projected);
        }
        if (clash_objective && cost == 0) {
            r.stop_reason = StopReason::ZeroCost;
            break;
        }

        if (step.loss < patience_anchor - hp.tolerance) {
            patience_anchor = step.loss;
            since_improvement = 0;
        } else if (++since_improvement >= hp.patience) {
            r.stop_reason = StopReason::Patience;
            break;
        }
        if (options.deadline && std::chrono::steady_clock::now() >= *options.deadline) {
            r.stop_reason = StopReason::Deadline;
            break;
        }
        optimizer_step(model, step.grads, hp);
    }
    r.best_loss = best_loss;
    return r;
}

namespace {

struct Probe {
    bool feasible = false;
    int colors = 0;
    Coloring coloring;
    std::int64_t cost = 0;
};

Probe probe_q(const Graph& g, const Hyperparams& hp_template, int q, const QSearchOptions& options,
              std::vector<QAttempt>& log, Coloring& best_infeasible, std::int64_t& best_infeasible_cost) {
    Probe best;
    best.colors = std::numeric_limits<int>::max();
    for (int s = 0; s < std::max(options.seeds, 1); ++s) {
        Hyperparams hp = hp_template;
        hp.num_colors = q;
        hp.seed = hp_template.seed + static_cast<std::uint64_t>(s);
        TrainResult tr = train(g, hp, UniformCoupling{}, options.train);
        QAttempt attempt{q, hp.seed, tr.best_cost, tr.epochs_run, std::nullopt};
        if (tr.best_cost == 0) {
            log.push_back(attempt);
            if (!best.feasible || q < best.colors) best = {true, q, tr.best_coloring, 0};
            break;
        }
        if (tr.best_cost < best_infeasible_cost) {
            best_infeasible_cost = tr.best_cost;
            best_infeasible = tr.best_coloring;
        }
        if (options.purify) {
            PurifyResult pr = purify(g, tr.best_coloring, hp.seed, options.purify_rounds);
            if (pr.feasible) {
                attempt.purified_colors = pr.colors_used;
                if (!best.feasible || pr.colors_used < best.colors) best = {true, pr.colors_used, pr.coloring, 0};
            }
        }
        log.push_back(attempt);
    }
    return best;
}

} // namespace

QSearchResult find_q_upper(const Graph& g, const Hyperparams& hp_template, SearchStrategy strategy, int q_max,
                           const QSearchOptions& options) {
    if (q_max < 1) throw InputError("q_max must be at least 1");
    QSearchResult result;
    if (g.edge_count() == 0) {
        result.q = g.node_count() == 0 ? 0 : 1;
        result.coloring.num_colors = result.q;
        result.coloring.assignment.assign(g.node_count(), 0);
        return result;
    }

    Coloring best_infeasible;
    std::int64_t best_infeasible_cost = std::numeric_limits<std::int64_t>::max();
    std::optional<Probe> found;
    auto consider = [&](const Probe& p) {
        if (p.feasible && p.colors <= q_max && (!found || p.colors < found->colors)) found = p;
    };

    if (strategy == SearchStrategy::Sequential) {
        for (int q = 1; q <= q_max; ++q) {
            if (found && q >= found->colors) break;
            Probe p = probe_q(g, hp_template, q, options, result.attempts, best_infeasible, best_infeasible_cost);
            consider(p);
            if (p.feasible && p.colors == q) break;
        }
    } else {
        int lo = 1;
        int hi = q_max;
        while (lo <= hi) {
            const int mid = lo + (hi - lo) / 2;
            Probe p = probe_q(g, hp_template, mid, options, result.attempts, best_infeasible, best_infeasible_cost);
            consider(p);
            if (p.feasible) {
                hi = std::min(mid, p.colors) - 1;
            } else {
                lo = mid + 1;
            }
        }
    }

    if (!found) {
        throw SearchExhausted("no proper coloring found with at most " + std::to_string(q_max) + " colors",
                              std::move(best_infeasible), best_infeasible_cost, std::move(result.attempts));
    }
    result.q = found->colors;
    result.coloring = std::move(found->coloring);
    return result;
}

} // namespace picolor
