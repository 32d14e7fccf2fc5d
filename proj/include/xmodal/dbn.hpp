#pragma once

#include <span>
#include <vector>

#include "xmodal/rbm.hpp"

namespace xmodal {

enum class Modality { image, text };

const char* to_string(Modality m);

/// Greedy layerwise stack of RBMs. The first layer's visible family follows
/// the modality (gaussian for image features, replicated softmax for text
/// counts); upper layers are bernoulli over mean-field activations.
struct DbnModel {
    std::vector<RbmParams> layers;
    Modality modality = Modality::image;

    std::size_t input_dim() const { return layers.empty() ? 0 : layers.front().visible_dim(); }
    std::size_t output_dim() const { return layers.empty() ? 0 : layers.back().hidden_dim(); }
    void validate() const;
};

DbnModel init_dbn(std::size_t input_dim, std::span<const std::size_t> hidden_dims,
                  Modality modality, SeededRng& rng);

// Trains each layer with CD on the frozen mean-field output of the stack
// below it. `hidden_dims` must be nonempty.
DbnModel train_dbn(const Matrix& data, std::span<const std::size_t> hidden_dims, Modality modality,
                   const CdConfig& cfg, SeededRng& rng);

// Deterministic mean-field forward pass through every layer.
Matrix dbn_forward(const DbnModel& model, const Matrix& x);

}  // namespace xmodal
