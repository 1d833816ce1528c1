#pragma once

#include "picolor/gnn.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace picolor {

// Hyperparameter files are flat `key = value` documents, one key per line,
// `#` starting a comment. Recognized keys:
//
//   model_kind      GCN_STYLE | SAGE_STYLE
//   embedding_dim   integer
//   hidden_dims     [d1, d2, ...]
//   num_colors      integer
//   learning_rate   real
//   dropout         real in [0, 1)
//   max_epochs      integer
//   patience        integer
//   tolerance       real
//   seed            unsigned 64-bit integer
//   optimizer_kind  ADAM | ADAMW
//   weight_decay    real
//
// Missing keys keep their defaults. Unknown keys are an error.

Hyperparams parse_hyperparams(std::string_view text);
Hyperparams load_hyperparams(const std::string& path);
std::string render_hyperparams(const Hyperparams& hp);

std::string to_string(ModelKind kind);
std::string to_string(OptimizerKind kind);

/// Named presets: one per COLOR instance (SAGE-style, AdamW) and one per
/// citation graph (GCN-style, Adam).
const std::vector<std::string>& preset_names();

/// Throws InputError for an unknown name.
Hyperparams preset(std::string_view name);

} // namespace picolor
