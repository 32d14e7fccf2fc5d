#pragma once

#include <vector>

#include "xmodal/matrix.hpp"
#include "xmodal/rng.hpp"

namespace xmodal {

enum class Activation { sigmoid, relu, identity };

struct DenseLayer {
    Matrix weights;  // in x out
    std::vector<double> bias;
    Activation act = Activation::sigmoid;

    std::size_t in_dim() const { return weights.rows(); }
    std::size_t out_dim() const { return weights.cols(); }
};

// Identity weights when square (zero bias), otherwise uniform noise scaled
// by fan-in.
DenseLayer init_dense(std::size_t in, std::size_t out, Activation act, SeededRng& rng);

Matrix dense_forward(const DenseLayer& layer, const Matrix& x);

/// Plain fully-connected stack. Backward recomputes nothing: activations are
/// cached by forward_cached and activation derivatives are derived from the
/// outputs (valid for sigmoid, relu and identity).
struct Mlp {
    std::vector<DenseLayer> layers;

    std::size_t in_dim() const { return layers.front().in_dim(); }
    std::size_t out_dim() const { return layers.back().out_dim(); }
    std::size_t parameter_count() const;

    Matrix forward(const Matrix& x) const;

    struct Cache {
        std::vector<Matrix> activations;  // [input, a_1, ..., a_n] (pre-mask)
        // Optional inverted-dropout masks, one per non-final layer output;
        // empty matrix = no mask. Entries are 0 or 1/keep_rate.
        std::vector<Matrix> masks;

        const Matrix& output() const { return activations.back(); }
        // Layer input after the previous layer's mask (the value the layer
        // actually consumed).
        Matrix layer_input(std::size_t layer) const;
    };

    Cache forward_cached(const Matrix& x, std::vector<Matrix> masks = {}) const;

    struct Grads {
        std::vector<Matrix> d_weights;
        std::vector<std::vector<double>> d_bias;

        void accumulate(const Grads& other, double scale = 1.0);
        void scale_all(double s);
    };

    Grads zero_grads() const;

    // Backpropagates d_out (gradient w.r.t. the final, pre-mask output),
    // accumulating into `grads`; returns the gradient w.r.t. the input.
    Matrix backward(const Cache& cache, const Matrix& d_out, Grads& grads) const;

    // Flat parameter views used by the gradient-oracle tests.
    std::vector<double> flatten_params() const;
    void unflatten_params(std::span<const double> flat);
    static std::vector<double> flatten_grads(const Grads& grads);
};

// Builds dims.size()-1 layers; all hidden layers use `hidden_act`, the last
// layer uses `final_act`.
Mlp make_mlp(std::span<const std::size_t> dims, Activation hidden_act, Activation final_act,
             SeededRng& rng);

/// SGD with momentum over an Mlp.
class SgdState {
public:
    explicit SgdState(const Mlp& net);
    void apply(Mlp& net, const Mlp::Grads& grads, double learning_rate, double momentum);

private:
    Mlp::Grads velocity_;
};

}  // namespace xmodal
