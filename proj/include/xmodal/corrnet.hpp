#pragma once

#include <optional>
#include <vector>

#include "xmodal/dbn.hpp"
#include "xmodal/nn.hpp"

namespace xmodal {

/// Two-pathway network linked at the top code layer. Each pathway is a
/// three-layer encoder plus a mirrored decoder; training jointly minimizes
/// per-pathway reconstruction error and the cross-pathway correlation error
/// (squared L2 between the two code layers).
struct CorrNet {
    Mlp image_encoder, image_decoder;
    Mlp text_encoder, text_decoder;
    std::size_t code_dim = 0;

    void validate() const;
};

// Encoder: input -> width -> width -> width (code); decoder mirrors back to
// the input width. Square layers start as identities, biases at zero.
CorrNet make_corrnet(std::size_t image_dim, std::size_t text_dim, std::size_t width,
                     Activation act, SeededRng& rng);

struct CorrLossReport {
    double total = 0.0;
    double recon_image = 0.0;
    double recon_text = 0.0;
    double correlation = 0.0;
};

// Loss on a paired batch: batch-mean squared reconstruction error per
// pathway plus batch-mean squared code distance. total is the exact sum of
// the three parts.
CorrLossReport corrnet_loss(const CorrNet& net, const Matrix& q_image, const Matrix& q_text);

struct CorrTrainConfig {
    double learning_rate = 0.1;
    std::size_t batch_size = 32;
    int epochs = 50;
    double momentum = 0.0;
    // Ablation switches: reconstruction terms (intra-modality) and the
    // correlation term (inter-modality).
    bool use_reconstruction = true;
    bool use_correlation = true;

    void validate() const;
};

struct CorrNetGrads {
    Mlp::Grads image_encoder, image_decoder, text_encoder, text_decoder;
};

// Analytic gradient of the (enabled terms of the) loss for a paired batch.
// Returns the loss value actually optimized.
double corrnet_gradients(const CorrNet& net, const Matrix& q_image, const Matrix& q_text,
                         const CorrTrainConfig& cfg, CorrNetGrads& grads);

struct CorrTrainHistory {
    std::vector<double> train_loss;  // per epoch, enabled terms
    std::vector<double> val_loss;    // per epoch when a validation pair is given
};

// Minibatch SGD with momentum. Throws DivergenceError naming the epoch if
// the loss goes non-finite.
CorrTrainHistory corrnet_train(CorrNet& net, const Matrix& q_image, const Matrix& q_text,
                               const CorrTrainConfig& cfg, SeededRng& rng,
                               const Matrix* val_image = nullptr, const Matrix* val_text = nullptr);

// Code-layer activations of the requested pathway.
Matrix corrnet_encode(const CorrNet& net, const Matrix& q, Modality modality);

// Full encode-decode pass (reconstruction) of one pathway.
Matrix corrnet_reconstruct(const CorrNet& net, const Matrix& q, Modality modality);

}  // namespace xmodal
