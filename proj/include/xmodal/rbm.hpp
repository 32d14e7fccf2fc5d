#pragma once

#include <span>
#include <vector>

#include "xmodal/matrix.hpp"
#include "xmodal/rng.hpp"

namespace xmodal {

enum class VisibleKind { gaussian, bernoulli, replicated_softmax };

const char* to_string(VisibleKind kind);

/// One RBM: visible bias a, hidden bias b, weights W (d_v x d_h), and the
/// visible unit family. Gaussian visibles assume unit variance (inputs are
/// standardized per feature). Replicated-softmax visibles are nonnegative
/// word-count vectors whose hidden bias contribution scales with the
/// document length D = sum_i v_i.
struct RbmParams {
    std::vector<double> visible_bias;  // d_v
    std::vector<double> hidden_bias;   // d_h
    Matrix weights;                    // d_v x d_h
    VisibleKind visible_kind = VisibleKind::bernoulli;

    std::size_t visible_dim() const { return visible_bias.size(); }
    std::size_t hidden_dim() const { return hidden_bias.size(); }
    void validate() const;  // throws ShapeError / DomainError
};

RbmParams init_rbm(std::size_t visible, std::size_t hidden, VisibleKind kind, SeededRng& rng,
                   double weight_stddev = 0.01);

struct CdConfig {
    int k = 1;
    double learning_rate = 0.05;
    std::size_t batch_size = 32;
    int epochs = 10;
    double momentum = 0.5;
    double weight_decay = 0.0;
    // When set, the negative phase runs on mean-field values instead of
    // binary samples; the whole update becomes deterministic.
    bool mean_field = false;

    void validate() const;
};

// Energy E(v, h). Bernoulli: -a'v - b'h - v'Wh. Gaussian visibles replace
// -a'v with (v-a)'(v-a)/2 (unit variance). Replicated softmax scales the
// hidden bias term by the document length D = sum_i v_i.
double rbm_energy(const RbmParams& params, std::span<const double> v, std::span<const double> h);

// P(h_j = 1 | v) for every row of V. Gaussian/bernoulli: sigmoid(b + vW);
// replicated softmax: sigmoid(D*b + vW). Throws DomainError on negative
// replicated-softmax counts.
Matrix hidden_activations(const RbmParams& params, const Matrix& v);

// Mean-field visible reconstruction given hidden rows. Gaussian: a + Wh.
// Bernoulli: sigmoid(a + Wh). Replicated softmax: expected counts
// D * softmax(a + Wh), with per-row document lengths supplied by the caller.
Matrix visible_activations(const RbmParams& params, const Matrix& h,
                           std::span<const double> doc_lengths = {});

// Stochastic companions.
Matrix sample_bernoulli(const Matrix& probs, SeededRng& rng);
Matrix sample_visible(const RbmParams& params, const Matrix& h, SeededRng& rng,
                      std::span<const double> doc_lengths = {});

// Per-row sums (replicated-softmax document lengths).
std::vector<double> row_sums(const Matrix& v);

/// CD-k with momentum and weight decay. Velocity state persists across
/// update() calls, so one trainer drives one training run.
class CdTrainer {
public:
    CdTrainer(RbmParams params, CdConfig cfg);

    // One CD-k parameter update on a batch; returns the mean squared error
    // between the batch and its one-step mean-field reconstruction.
    double update(const Matrix& batch, SeededRng& rng);

    const RbmParams& params() const { return params_; }
    RbmParams take_params() { return std::move(params_); }

private:
    RbmParams params_;
    CdConfig cfg_;
    Matrix w_vel_;
    std::vector<double> a_vel_, b_vel_;
};

// Single CD-k update (fresh velocity), per the spec's operation contract.
// Returns the reconstruction error; params are updated in place.
double cd_k_update(RbmParams& params, const Matrix& batch, const CdConfig& cfg, SeededRng& rng);

// Epochs of minibatch CD over `data` (rows shuffled per epoch from rng).
// Returns the mean reconstruction error per epoch. Throws DivergenceError
// (naming the epoch) if the parameters or the error go non-finite.
std::vector<double> train_rbm(RbmParams& params, const Matrix& data, const CdConfig& cfg,
                              SeededRng& rng);

}  // namespace xmodal
