#include "xmodal/nn.hpp"

#include <cmath>

#include "xmodal/errors.hpp"

namespace xmodal {

namespace {

Matrix apply_activation(Matrix pre, Activation act) {
    switch (act) {
        case Activation::sigmoid:
            for (double& v : pre.data()) v = sigmoid(v);
            break;
        case Activation::relu:
            for (double& v : pre.data()) v = v > 0.0 ? v : 0.0;
            break;
        case Activation::identity:
            break;
    }
    return pre;
}

// d(act)/d(pre) expressed through the activation output.
double activation_derivative(double out, Activation act) {
    switch (act) {
        case Activation::sigmoid: return out * (1.0 - out);
        case Activation::relu: return out > 0.0 ? 1.0 : 0.0;
        case Activation::identity: return 1.0;
    }
    return 1.0;
}

}  // namespace

DenseLayer init_dense(std::size_t in, std::size_t out, Activation act, SeededRng& rng) {
    DenseLayer layer;
    if (in == out) {
        layer.weights = Matrix::identity(in);
    } else {
        const double s = 1.0 / std::sqrt(static_cast<double>(in));
        layer.weights = rng.uniform_matrix(in, out, -s, s);
    }
    layer.bias.assign(out, 0.0);
    layer.act = act;
    return layer;
}

Matrix dense_forward(const DenseLayer& layer, const Matrix& x) {
    if (x.cols() != layer.in_dim()) {
        throw ShapeError("dense_forward: input width " + std::to_string(x.cols()) +
                         " vs layer in dim " + std::to_string(layer.in_dim()));
    }
    Matrix pre = matmul(x, layer.weights);
    add_row_vector(pre, layer.bias);
    return apply_activation(std::move(pre), layer.act);
}

std::size_t Mlp::parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.weights.size() + l.bias.size();
    return n;
}

Matrix Mlp::forward(const Matrix& x) const {
    Matrix a = x;
    for (const auto& layer : layers) a = dense_forward(layer, a);
    return a;
}

Matrix Mlp::Cache::layer_input(std::size_t layer) const {
    const Matrix& raw = activations[layer];
    if (layer == 0 || layer - 1 >= masks.size() || masks[layer - 1].empty()) return raw;
    return hadamard(raw, masks[layer - 1]);
}

Mlp::Cache Mlp::forward_cached(const Matrix& x, std::vector<Matrix> masks) const {
    Cache cache;
    cache.masks = std::move(masks);
    cache.activations.reserve(layers.size() + 1);
    cache.activations.push_back(x);
    for (std::size_t i = 0; i < layers.size(); ++i) {
        cache.activations.push_back(dense_forward(layers[i], cache.layer_input(i)));
    }
    return cache;
}

void Mlp::Grads::accumulate(const Grads& other, double scale) {
    for (std::size_t i = 0; i < d_weights.size(); ++i) {
        for (std::size_t k = 0; k < d_weights[i].size(); ++k)
            d_weights[i].data()[k] += scale * other.d_weights[i].data()[k];
        for (std::size_t k = 0; k < d_bias[i].size(); ++k)
            d_bias[i][k] += scale * other.d_bias[i][k];
    }
}

void Mlp::Grads::scale_all(double s) {
    for (auto& w : d_weights)
        for (double& v : w.data()) v *= s;
    for (auto& b : d_bias)
        for (double& v : b) v *= s;
}

Mlp::Grads Mlp::zero_grads() const {
    Grads g;
    for (const auto& layer : layers) {
        g.d_weights.emplace_back(layer.in_dim(), layer.out_dim());
        g.d_bias.emplace_back(layer.out_dim(), 0.0);
    }
    return g;
}

Matrix Mlp::backward(const Cache& cache, const Matrix& d_out, Grads& grads) const {
    Matrix d_act = d_out;
    for (std::size_t li = layers.size(); li-- > 0;) {
        const Matrix& raw_out = cache.activations[li + 1];
        // Chain through the dropout mask applied to this layer's output.
        if (li < cache.masks.size() && !cache.masks[li].empty()) {
            d_act = hadamard(d_act, cache.masks[li]);
        }
        Matrix delta = d_act;  // elementwise: d_act * act'(out)
        for (std::size_t k = 0; k < delta.size(); ++k) {
            delta.data()[k] *= activation_derivative(raw_out.data()[k], layers[li].act);
        }
        const Matrix input = cache.layer_input(li);
        grads.d_weights[li] = add(grads.d_weights[li], matmul_at_b(input, delta));
        const auto bias_grad = column_sums(delta);
        for (std::size_t k = 0; k < bias_grad.size(); ++k) grads.d_bias[li][k] += bias_grad[k];
        d_act = matmul_a_bt(delta, layers[li].weights);
    }
    return d_act;
}

std::vector<double> Mlp::flatten_params() const {
    std::vector<double> flat;
    flat.reserve(parameter_count());
    for (const auto& l : layers) {
        flat.insert(flat.end(), l.weights.data().begin(), l.weights.data().end());
        flat.insert(flat.end(), l.bias.begin(), l.bias.end());
    }
    return flat;
}

void Mlp::unflatten_params(std::span<const double> flat) {
    std::size_t pos = 0;
    for (auto& l : layers) {
        std::copy(flat.begin() + pos, flat.begin() + pos + l.weights.size(),
                  l.weights.data().begin());
        pos += l.weights.size();
        std::copy(flat.begin() + pos, flat.begin() + pos + l.bias.size(), l.bias.begin());
        pos += l.bias.size();
    }
    if (pos != flat.size()) {
        throw ShapeError("unflatten_params: got " + std::to_string(flat.size()) +
                         " values, expected " + std::to_string(pos));
    }
}

std::vector<double> Mlp::flatten_grads(const Grads& grads) {
    std::vector<double> flat;
    for (std::size_t i = 0; i < grads.d_weights.size(); ++i) {
        flat.insert(flat.end(), grads.d_weights[i].data().begin(), grads.d_weights[i].data().end());
        flat.insert(flat.end(), grads.d_bias[i].begin(), grads.d_bias[i].end());
    }
    return flat;
}

Mlp make_mlp(std::span<const std::size_t> dims, Activation hidden_act, Activation final_act,
             SeededRng& rng) {
    if (dims.size() < 2) throw ConfigError("make_mlp: need at least input and output dims");
    Mlp net;
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
        const Activation act = (i + 2 == dims.size()) ? final_act : hidden_act;
        net.layers.push_back(init_dense(dims[i], dims[i + 1], act, rng));
    }
    return net;
}

SgdState::SgdState(const Mlp& net) : velocity_(net.zero_grads()) {}

void SgdState::apply(Mlp& net, const Mlp::Grads& grads, double learning_rate, double momentum) {
    for (std::size_t i = 0; i < net.layers.size(); ++i) {
        auto& layer = net.layers[i];
        auto& wv = velocity_.d_weights[i];
        for (std::size_t k = 0; k < layer.weights.size(); ++k) {
            wv.data()[k] = momentum * wv.data()[k] - grads.d_weights[i].data()[k];
            layer.weights.data()[k] += learning_rate * wv.data()[k];
        }
        auto& bv = velocity_.d_bias[i];
        for (std::size_t k = 0; k < layer.bias.size(); ++k) {
            bv[k] = momentum * bv[k] - grads.d_bias[i][k];
            layer.bias[k] += learning_rate * bv[k];
        }
    }
}

}  // namespace xmodal
