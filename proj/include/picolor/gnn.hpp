#pragma once

#include "picolor/graph.hpp"
#include "picolor/matrix.hpp"
#include "picolor/potts.hpp"
#include "picolor/random.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace picolor {

enum class ModelKind { GcnStyle, SageStyle };
enum class OptimizerKind { Adam, AdamW };

struct Hyperparams {
    ModelKind model_kind = ModelKind::SageStyle;
    int embedding_dim = 16;
    std::vector<int> hidden_dims{16};
    int num_colors = 3;
    double learning_rate = 0.01;
    double dropout = 0.0;
    int max_epochs = 100000;
    int patience = 500;
    double tolerance = 1e-4;
    std::uint64_t seed = 0;
    OptimizerKind optimizer_kind = OptimizerKind::AdamW;
    double weight_decay = 0.01;
    /// Penalty on the number of colors. Not supported; must stay 0.
    double q_regularization = 0.0;

    /// Throws InputError on non-positive dims, dropout outside [0,1), etc.
    void validate() const;
};

/// Weights of one message-passing layer, stored fan_in x fan_out.
/// GCN-style layers use only `self`; SAGE-style layers use both.
struct LayerWeights {
    Matrix self;
    Matrix neigh;
};

/// Every trainable tensor. Gradients share this shape.
struct Parameters {
    Matrix embeddings;
    std::vector<LayerWeights> layers;

    /// Flat view of all tensors in a fixed order: embeddings, then each
    /// layer's self and (if present) neigh weights.
    std::vector<Matrix*> tensors();
    std::vector<const Matrix*> tensors() const;
};

using Gradients = Parameters;

struct OptimizerState {
    std::vector<Matrix> first_moment;
    std::vector<Matrix> second_moment;
    std::int64_t step = 0;
};

struct Model {
    Parameters params;
    OptimizerState optimizer;
};

/// Intermediate values of one forward pass, kept for the backward pass.
struct ForwardTrace {
    std::vector<Matrix> inputs;      ///< input to each layer
    std::vector<Matrix> aggregated;  ///< Â X (GCN) or mean-aggregated X (SAGE)
    std::vector<Matrix> pre_activations;
    std::vector<Matrix> dropout_masks;  ///< scaled keep masks; empty when not training
    SoftAssignment output;
};

/// Random model: embeddings uniform on ±1/sqrt(d0), weights uniform on
/// ±1/sqrt(fan_in). Fully determined by hp.seed.
Model init_model(const Graph& g, const Hyperparams& hp);

ForwardTrace forward_trace(const Model& m, const Graph& g, const Hyperparams& hp, bool train_mode, Rng& rng);

/// Called with every softmax output the network produces. Must be
/// thread-safe if forward passes run concurrently. Set before any run starts.
using ForwardObserver = std::function<void(const SoftAssignment&)>;
void set_forward_observer(ForwardObserver observer);

/// Soft color assignment from the network. Rows are softmax outputs.
SoftAssignment forward(const Model& m, const Graph& g, const Hyperparams& hp, bool train_mode, Rng& rng);

struct BackwardResult {
    double loss = 0.0;
    Gradients grads;
    SoftAssignment output;  ///< the train-mode forward output the loss was taken on
};

/// Train-mode forward, relaxed Potts loss, and exact reverse-mode
/// gradients for every parameter. One dropout mask is drawn per call.
BackwardResult backward(const Model& m, const Graph& g, const Hyperparams& hp, Rng& rng,
                        const Couplings& couplings = UniformCoupling{}, bool train_mode = true);

/// Adam update (beta 0.9/0.999, eps 1e-8). AdamW additionally applies
/// decoupled weight decay to layer weights, never to embeddings.
void optimizer_step(Model& m, const Gradients& grads, const Hyperparams& hp);

/// Per-row argmax; ties go to the smallest color index.
Coloring project_argmax(const SoftAssignment& p);

enum class StopReason { Patience, MaxEpochs, ZeroCost, Deadline };

std::string to_string(StopReason r);

struct TrainResult {
    SoftAssignment best_soft;
    Coloring best_coloring;
    std::int64_t best_cost = 0;  ///< clash count of best_coloring
    double best_loss = 0.0;      ///< lowest loss seen in any epoch
    int best_epoch = 0;          ///< epoch of the best_soft snapshot
    int epochs_run = 0;
    std::vector<double> loss_history;
    StopReason stop_reason = StopReason::MaxEpochs;
};

struct TrainOptions {
    /// Wall-clock cutoff; the run ends with StopReason::Deadline when hit.
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Full-graph training. The snapshot returned is the epoch with the fewest
/// projected clashes, ties broken by lower loss.
TrainResult train(const Graph& g, const Hyperparams& hp, const Couplings& couplings = UniformCoupling{},
                  const TrainOptions& options = {});

enum class SearchStrategy { Sequential, Binary };

struct QAttempt {
    int q = 0;
    std::uint64_t seed = 0;
    std::int64_t cost = 0;
    int epochs = 0;
    /// Colors after purification, when it was run and succeeded.
    std::optional<int> purified_colors;
};

struct QSearchOptions {
    bool purify = false;
    int purify_rounds = 64;
    int seeds = 1;
    TrainOptions train;
};

struct QSearchResult {
    int q = 0;  ///< upper bound on the chromatic number
    Coloring coloring;
    std::vector<QAttempt> attempts;
};

/// No zero-cost coloring was found for any q <= q_max.
class SearchExhausted : public std::runtime_error {
public:
    SearchExhausted(const std::string& what, Coloring best, std::int64_t best_cost, std::vector<QAttempt> attempts)
        : std::runtime_error(what), best(std::move(best)), best_cost(best_cost), attempts(std::move(attempts)) {}

    Coloring best;
    std::int64_t best_cost;
    std::vector<QAttempt> attempts;
};

/// Heuristic upper bound on the chromatic number: smallest q <= q_max for
/// which training (plus optional purification) produced a proper coloring.
/// A failed q does not prove infeasibility, so Binary is a heuristic too.
QSearchResult find_q_upper(const Graph& g, const Hyperparams& hp_template, SearchStrategy strategy, int q_max,
                           const QSearchOptions& options = {});

} // namespace picolor
