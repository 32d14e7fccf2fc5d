#include "xmodal/dbn.hpp"

#include "xmodal/errors.hpp"

namespace xmodal {

const char* to_string(Modality m) {
    return m == Modality::image ? "image" : "text";
}

void DbnModel::validate() const {
    for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
        if (layers[i].hidden_dim() != layers[i + 1].visible_dim()) {
            throw ShapeError("DbnModel: layer " + std::to_string(i) + " hidden dim " +
                             std::to_string(layers[i].hidden_dim()) + " does not chain into layer " +
                             std::to_string(i + 1) + " visible dim " +
                             std::to_string(layers[i + 1].visible_dim()));
        }
    }
    for (const auto& layer : layers) layer.validate();
}

DbnModel init_dbn(std::size_t input_dim, std::span<const std::size_t> hidden_dims,
                  Modality modality, SeededRng& rng) {
    if (hidden_dims.empty()) throw ConfigError("init_dbn: layer dimension list must be nonempty");
    DbnModel model;
    model.modality = modality;
    std::size_t below = input_dim;
    for (std::size_t i = 0; i < hidden_dims.size(); ++i) {
        const VisibleKind kind =
            i > 0 ? VisibleKind::bernoulli
                  : (modality == Modality::image ? VisibleKind::gaussian
                                                 : VisibleKind::replicated_softmax);
        model.layers.push_back(init_rbm(below, hidden_dims[i], kind, rng));
        below = hidden_dims[i];
    }
    return model;
}

DbnModel train_dbn(const Matrix& data, std::span<const std::size_t> hidden_dims, Modality modality,
                   const CdConfig& cfg, SeededRng& rng) {
    DbnModel model = init_dbn(data.cols(), hidden_dims, modality, rng);
    Matrix level_input = data;
    for (std::size_t i = 0; i < model.layers.size(); ++i) {
        try {
            train_rbm(model.layers[i], level_input, cfg, rng);
        } catch (const DivergenceError& e) {
            throw DivergenceError("dbn layer " + std::to_string(i) + ": " + e.what());
        }
        if (i + 1 < model.layers.size()) {
            level_input = hidden_activations(model.layers[i], level_input);
        }
    }
    return model;
}

Matrix dbn_forward(const DbnModel& model, const Matrix& x) {
    Matrix h = x;
    for (const auto& layer : model.layers) h = hidden_activations(layer, h);
    return h;
}

}  // namespace xmodal
