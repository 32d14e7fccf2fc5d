#include "xmodal/corrnet.hpp"

#include <cmath>
#include <numeric>

#include "xmodal/errors.hpp"

namespace xmodal {

void CorrNet::validate() const {
    if (image_encoder.out_dim() != code_dim || text_encoder.out_dim() != code_dim) {
        throw ShapeError("CorrNet: pathway code widths disagree with code_dim");
    }
    if (image_decoder.out_dim() != image_encoder.in_dim() ||
        text_decoder.out_dim() != text_encoder.in_dim()) {
        throw ShapeError("CorrNet: decoder output width must mirror encoder input width");
    }
}

CorrNet make_corrnet(std::size_t image_dim, std::size_t text_dim, std::size_t width,
                     Activation act, SeededRng& rng) {
    CorrNet net;
    net.code_dim = width;
    const std::size_t enc_i[] = {image_dim, width, width, width};
    const std::size_t dec_i[] = {width, width, width, image_dim};
    const std::size_t enc_t[] = {text_dim, width, width, width};
    const std::size_t dec_t[] = {width, width, width, text_dim};
    net.image_encoder = make_mlp(enc_i, act, act, rng);
    net.image_decoder = make_mlp(dec_i, act, act, rng);
    net.text_encoder = make_mlp(enc_t, act, act, rng);
    net.text_decoder = make_mlp(dec_t, act, act, rng);
    return net;
}

void CorrTrainConfig::validate() const {
    if (!(learning_rate >= 0.0)) throw ConfigError("CorrTrainConfig: learning_rate must be >= 0");
    if (batch_size < 1) throw ConfigError("CorrTrainConfig: batch_size must be >= 1");
    if (epochs < 0) throw ConfigError("CorrTrainConfig: epochs must be >= 0");
    if (!use_reconstruction && !use_correlation) {
        throw ConfigError("CorrTrainConfig: at least one loss term must be enabled");
    }
}

namespace {

void require_paired(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows()) {
        throw PairingError(std::string(what) + ": unpaired batches (" + std::to_string(a.rows()) +
                           " vs " + std::to_string(b.rows()) + " rows)");
    }
}

}  // namespace

CorrLossReport corrnet_loss(const CorrNet& net, const Matrix& q_image, const Matrix& q_text) {
    require_paired(q_image, q_text, "corrnet_loss");
    const Matrix code_i = net.image_encoder.forward(q_image);
    const Matrix code_t = net.text_encoder.forward(q_text);
    CorrLossReport report;
    report.recon_image = mean_row_sq_distance(q_image, net.image_decoder.forward(code_i));
    report.recon_text = mean_row_sq_distance(q_text, net.text_decoder.forward(code_t));
    report.correlation = mean_row_sq_distance(code_i, code_t);
    report.total = report.recon_image + report.recon_text + report.correlation;
    return report;
}

double corrnet_gradients(const CorrNet& net, const Matrix& q_image, const Matrix& q_text,
                         const CorrTrainConfig& cfg, CorrNetGrads& grads) {
    require_paired(q_image, q_text, "corrnet_gradients");
    const double inv_n = 1.0 / static_cast<double>(q_image.rows());

    const auto enc_i = net.image_encoder.forward_cached(q_image);
    const auto enc_t = net.text_encoder.forward_cached(q_text);
    const Matrix& code_i = enc_i.output();
    const Matrix& code_t = enc_t.output();

    double loss = 0.0;
    Matrix d_code_i(code_i.rows(), code_i.cols());
    Matrix d_code_t(code_t.rows(), code_t.cols());

    if (cfg.use_reconstruction) {
        const auto dec_i = net.image_decoder.forward_cached(code_i);
        const auto dec_t = net.text_decoder.forward_cached(code_t);
        loss += mean_row_sq_distance(q_image, dec_i.output());
        loss += mean_row_sq_distance(q_text, dec_t.output());
        const Matrix d_recon_i = scale(sub(dec_i.output(), q_image), 2.0 * inv_n);
        const Matrix d_recon_t = scale(sub(dec_t.output(), q_text), 2.0 * inv_n);
        d_code_i = net.image_decoder.backward(dec_i, d_recon_i, grads.image_decoder);
        d_code_t = net.text_decoder.backward(dec_t, d_recon_t, grads.text_decoder);
    }
    if (cfg.use_correlation) {
        loss += mean_row_sq_distance(code_i, code_t);
        const Matrix diff = scale(sub(code_i, code_t), 2.0 * inv_n);
        d_code_i = add(d_code_i, diff);
        d_code_t = sub(d_code_t, diff);
    }
    net.image_encoder.backward(enc_i, d_code_i, grads.image_encoder);
    net.text_encoder.backward(enc_t, d_code_t, grads.text_encoder);
    return loss;
}

namespace {

double enabled_loss(const CorrLossReport& report, const CorrTrainConfig& cfg) {
    double loss = 0.0;
    if (cfg.use_reconstruction) loss += report.recon_image + report.recon_text;
    if (cfg.use_correlation) loss += report.correlation;
    return loss;
}

}  // namespace

CorrTrainHistory corrnet_train(CorrNet& net, const Matrix& q_image, const Matrix& q_text,
                               const CorrTrainConfig& cfg, SeededRng& rng, const Matrix* val_image,
                               const Matrix* val_text) {
    cfg.validate();
    require_paired(q_image, q_text, "corrnet_train");
    net.validate();

    SgdState sgd_enc_i(net.image_encoder), sgd_dec_i(net.image_decoder);
    SgdState sgd_enc_t(net.text_encoder), sgd_dec_t(net.text_decoder);

    CorrTrainHistory history;
    std::vector<std::size_t> order(q_image.rows());
    std::iota(order.begin(), order.end(), 0);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        double loss_sum = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
            const auto idx = std::span(order).subspan(start, stop - start);
            const Matrix bi = take_rows(q_image, idx);
            const Matrix bt = take_rows(q_text, idx);
            CorrNetGrads grads{net.image_encoder.zero_grads(), net.image_decoder.zero_grads(),
                               net.text_encoder.zero_grads(), net.text_decoder.zero_grads()};
            loss_sum += corrnet_gradients(net, bi, bt, cfg, grads);
            sgd_enc_i.apply(net.image_encoder, grads.image_encoder, cfg.learning_rate, cfg.momentum);
            sgd_dec_i.apply(net.image_decoder, grads.image_decoder, cfg.learning_rate, cfg.momentum);
            sgd_enc_t.apply(net.text_encoder, grads.text_encoder, cfg.learning_rate, cfg.momentum);
            sgd_dec_t.apply(net.text_decoder, grads.text_decoder, cfg.learning_rate, cfg.momentum);
            ++batches;
        }
        const double epoch_loss = batches == 0 ? 0.0 : loss_sum / static_cast<double>(batches);
        if (!std::isfinite(epoch_loss)) {
            throw DivergenceError("corrnet training diverged at epoch " + std::to_string(epoch + 1));
        }
        history.train_loss.push_back(epoch_loss);
        if (val_image && val_text) {
            history.val_loss.push_back(enabled_loss(corrnet_loss(net, *val_image, *val_text), cfg));
        }
    }
    return history;
}

Matrix corrnet_encode(const CorrNet& net, const Matrix& q, Modality modality) {
    return modality == Modality::image ? net.image_encoder.forward(q)
                                       : net.text_encoder.forward(q);
}

Matrix corrnet_reconstruct(const CorrNet& net, const Matrix& q, Modality modality) {
    return modality == Modality::image
               ? net.image_decoder.forward(net.image_encoder.forward(q))
               : net.text_decoder.forward(net.text_encoder.forward(q));
}

}  // namespace xmodal
