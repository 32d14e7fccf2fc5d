#include "xmodal/rbm.hpp"

#include <cmath>
#include <numeric>

#include "xmodal/errors.hpp"

namespace xmodal {

const char* to_string(VisibleKind kind) {
    switch (kind) {
        case VisibleKind::gaussian: return "gaussian";
        case VisibleKind::bernoulli: return "bernoulli";
        case VisibleKind::replicated_softmax: return "replicated-softmax";
    }
    return "?";
}

void RbmParams::validate() const {
    if (visible_bias.size() != weights.rows() || hidden_bias.size() != weights.cols()) {
        throw ShapeError("RbmParams: bias/weight shape mismatch (|a|=" +
                         std::to_string(visible_bias.size()) + ", |b|=" +
                         std::to_string(hidden_bias.size()) + ", W=" +
                         std::to_string(weights.rows()) + "x" + std::to_string(weights.cols()) + ")");
    }
    for (double v : visible_bias)
        if (!std::isfinite(v)) throw DomainError("RbmParams: non-finite visible bias");
    for (double v : hidden_bias)
        if (!std::isfinite(v)) throw DomainError("RbmParams: non-finite hidden bias");
    if (!weights.is_finite()) throw DomainError("RbmParams: non-finite weights");
}

RbmParams init_rbm(std::size_t visible, std::size_t hidden, VisibleKind kind, SeededRng& rng,
                   double weight_stddev) {
    RbmParams p;
    p.visible_bias.assign(visible, 0.0);
    p.hidden_bias.assign(hidden, 0.0);
    p.weights = rng.normal_matrix(visible, hidden, weight_stddev);
    p.visible_kind = kind;
    return p;
}

void CdConfig::validate() const {
    if (k < 1) throw ConfigError("CdConfig: k must be >= 1");
    if (!(learning_rate >= 0.0)) throw ConfigError("CdConfig: learning_rate must be >= 0");
    if (batch_size < 1) throw ConfigError("CdConfig: batch_size must be >= 1");
    if (epochs < 0) throw ConfigError("CdConfig: epochs must be >= 0");
}

double rbm_energy(const RbmParams& params, std::span<const double> v, std::span<const double> h) {
    const Matrix& w = params.weights;
    if (v.size() != w.rows() || h.size() != w.cols()) {
        throw ShapeError("rbm_energy: shape mismatch (|v|=" + std::to_string(v.size()) +
                         ", |h|=" + std::to_string(h.size()) + ", W=" + std::to_string(w.rows()) +
                         "x" + std::to_string(w.cols()) + ")");
    }
    double visible_term = 0.0;
    if (params.visible_kind == VisibleKind::gaussian) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double d = v[i] - params.visible_bias[i];
            visible_term += 0.5 * d * d;
        }
    } else {
        for (std::size_t i = 0; i < v.size(); ++i) visible_term -= params.visible_bias[i] * v[i];
    }
    double bias_scale = 1.0;
    if (params.visible_kind == VisibleKind::replicated_softmax) {
        bias_scale = std::accumulate(v.begin(), v.end(), 0.0);
    }
    double hidden_term = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) hidden_term -= bias_scale * params.hidden_bias[j] * h[j];
    double interaction = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0.0) continue;
        const auto wrow = w.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < h.size(); ++j) acc += wrow[j] * h[j];
        interaction -= v[i] * acc;
    }
    return visible_term + hidden_term + interaction;
}

std::vector<double> row_sums(const Matrix& v) {
    std::vector<double> sums(v.rows(), 0.0);
    for (std::size_t i = 0; i < v.rows(); ++i) {
        const auto row = v.row(i);
        sums[i] = std::accumulate(row.begin(), row.end(), 0.0);
    }
    return sums;
}

Matrix hidden_activations(const RbmParams& params, const Matrix& v) {
    if (v.cols() != params.weights.rows()) {
        throw ShapeError("hidden_activations: shape mismatch (V=" + std::to_string(v.rows()) + "x" +
                         std::to_string(v.cols()) + " vs W=" + std::to_string(params.weights.rows()) +
                         "x" + std::to_string(params.weights.cols()) + ")");
    }
    if (params.visible_kind == VisibleKind::replicated_softmax) {
        for (double x : v.data()) {
            if (x < 0.0) throw DomainError("hidden_activations: negative replicated-softmax count");
        }
    }
    Matrix pre = matmul(v, params.weights);
    if (params.visible_kind == VisibleKind::replicated_softmax) {
        const auto lengths = row_sums(v);
        for (std::size_t i = 0; i < pre.rows(); ++i) {
            auto row = pre.row(i);
            for (std::size_t j = 0; j < row.size(); ++j) row[j] += lengths[i] * params.hidden_bias[j];
        }
    } else {
        add_row_vector(pre, params.hidden_bias);
    }
    return sigmoid(pre);
}

namespace {

Matrix visible_preactivation(const RbmParams& params, const Matrix& h) {
    if (h.cols() != params.weights.cols()) {
        throw ShapeError("visible_activations: shape mismatch (H=" + std::to_string(h.rows()) + "x" +
                         std::to_string(h.cols()) + " vs W=" + std::to_string(params.weights.rows()) +
                         "x" + std::to_string(params.weights.cols()) + ")");
    }
    Matrix pre = matmul_a_bt(h, params.weights);  // h W^T, rows are visible vectors
    add_row_vector(pre, params.visible_bias);
    return pre;
}

void require_doc_lengths(const Matrix& h, std::span<const double> doc_lengths) {
    if (doc_lengths.size() != h.rows()) {
        throw ShapeError("visible_activations: replicated softmax needs one document length per row (" +
                         std::to_string(doc_lengths.size()) + " vs " + std::to_string(h.rows()) + ")");
    }
}

}  // namespace

Matrix visible_activations(const RbmParams& params, const Matrix& h,
                           std::span<const double> doc_lengths) {
    Matrix pre = visible_preactivation(params, h);
    switch (params.visible_kind) {
        case VisibleKind::gaussian:
            return pre;
        case VisibleKind::bernoulli:
            return sigmoid(pre);
        case VisibleKind::replicated_softmax: {
            require_doc_lengths(h, doc_lengths);
            Matrix probs = softmax_rows(pre);
            for (std::size_t i = 0; i < probs.rows(); ++i) {
                auto row = probs.row(i);
                for (double& x : row) x *= doc_lengths[i];
            }
            return probs;
        }
    }
    throw DomainError("visible_activations: unknown visible kind");
}

Matrix sample_bernoulli(const Matrix& probs, SeededRng& rng) {
    Matrix s = probs;
    for (double& v : s.data()) v = rng.bernoulli(v) ? 1.0 : 0.0;
    return s;
}

Matrix sample_visible(const RbmParams& params, const Matrix& h, SeededRng& rng,
                      std::span<const double> doc_lengths) {
    Matrix pre = visible_preactivation(params, h);
    switch (params.visible_kind) {
        case VisibleKind::gaussian: {
            for (double& v : pre.data()) v += rng.normal();
            return pre;
        }
        case VisibleKind::bernoulli:
            return sample_bernoulli(sigmoid(pre), rng);
        case VisibleKind::replicated_softmax: {
            require_doc_lengths(h, doc_lengths);
            Matrix probs = softmax_rows(pre);
            Matrix counts(probs.rows(), probs.cols());
            for (std::size_t i = 0; i < probs.rows(); ++i) {
                const auto draws = static_cast<std::size_t>(std::llround(doc_lengths[i]));
                const auto sampled = rng.multinomial(draws, probs.row(i));
                std::copy(sampled.begin(), sampled.end(), counts.row(i).begin());
            }
            return counts;
        }
    }
    throw DomainError("sample_visible: unknown visible kind");
}

CdTrainer::CdTrainer(RbmParams params, CdConfig cfg) : params_(std::move(params)), cfg_(cfg) {
    params_.validate();
    cfg_.validate();
    w_vel_ = Matrix(params_.visible_dim(), params_.hidden_dim());
    a_vel_.assign(params_.visible_dim(), 0.0);
    b_vel_.assign(params_.hidden_dim(), 0.0);
}

double CdTrainer::update(const Matrix& batch, SeededRng& rng) {
    if (batch.cols() != params_.visible_dim()) {
        throw ShapeError("cd update: batch width " + std::to_string(batch.cols()) +
                         " vs visible dim " + std::to_string(params_.visible_dim()));
    }
    const double n = static_cast<double>(batch.rows());
    const bool rsm = params_.visible_kind == VisibleKind::replicated_softmax;
    const std::vector<double> lengths = rsm ? row_sums(batch) : std::vector<double>{};

    // Positive phase on the data.
    Matrix h0 = hidden_activations(params_, batch);
    Matrix pos_w = matmul_at_b(batch, h0);
    std::vector<double> pos_a = column_sums(batch);
    std::vector<double> pos_b(params_.hidden_dim(), 0.0);
    {
        // Replicated softmax ties the hidden bias gradient to document length.
        for (std::size_t i = 0; i < h0.rows(); ++i) {
            const double s = rsm ? lengths[i] : 1.0;
            const auto row = h0.row(i);
            for (std::size_t j = 0; j < row.size(); ++j) pos_b[j] += s * row[j];
        }
    }

    // Negative phase: k Gibbs steps from the data-driven hidden state.
    Matrix h_state = cfg_.mean_field ? h0 : sample_bernoulli(h0, rng);
    Matrix v_neg;
    Matrix h_neg;
    for (int step = 0; step < cfg_.k; ++step) {
        v_neg = cfg_.mean_field ? visible_activations(params_, h_state, lengths)
                                : sample_visible(params_, h_state, rng, lengths);
        h_neg = hidden_activations(params_, v_neg);
        if (step + 1 < cfg_.k) {
            h_state = cfg_.mean_field ? h_neg : sample_bernoulli(h_neg, rng);
        }
    }
    Matrix neg_w = matmul_at_b(v_neg, h_neg);
    std::vector<double> neg_a = column_sums(v_neg);
    std::vector<double> neg_b(params_.hidden_dim(), 0.0);
    {
        const std::vector<double> neg_lengths = rsm ? row_sums(v_neg) : std::vector<double>{};
        for (std::size_t i = 0; i < h_neg.rows(); ++i) {
            const double s = rsm ? neg_lengths[i] : 1.0;
            const auto row = h_neg.row(i);
            for (std::size_t j = 0; j < row.size(); ++j) neg_b[j] += s * row[j];
        }
    }

    // Velocity update, then apply.
    for (std::size_t i = 0; i < w_vel_.size(); ++i) {
        const double grad = (pos_w.data()[i] - neg_w.data()[i]) / n -
                            cfg_.weight_decay * params_.weights.data()[i];
        w_vel_.data()[i] = cfg_.momentum * w_vel_.data()[i] + grad;
        params_.weights.data()[i] += cfg_.learning_rate * w_vel_.data()[i];
    }
    for (std::size_t i = 0; i < a_vel_.size(); ++i) {
        a_vel_[i] = cfg_.momentum * a_vel_[i] + (pos_a[i] - neg_a[i]) / n;
        params_.visible_bias[i] += cfg_.learning_rate * a_vel_[i];
    }
    for (std::size_t j = 0; j < b_vel_.size(); ++j) {
        b_vel_[j] = cfg_.momentum * b_vel_[j] + (pos_b[j] - neg_b[j]) / n;
        params_.hidden_bias[j] += cfg_.learning_rate * b_vel_[j];
    }

    // One-step mean-field reconstruction error.
    const Matrix recon = visible_activations(params_, h0, lengths);
    return mean_squared_error(batch, recon);
}

double cd_k_update(RbmParams& params, const Matrix& batch, const CdConfig& cfg, SeededRng& rng) {
    CdTrainer trainer(std::move(params), cfg);
    const double err = trainer.update(batch, rng);
    params = trainer.take_params();
    return err;
}

std::vector<double> train_rbm(RbmParams& params, const Matrix& data, const CdConfig& cfg,
                              SeededRng& rng) {
    cfg.validate();
    CdTrainer trainer(std::move(params), cfg);
    std::vector<double> epoch_errors;
    std::vector<std::size_t> order(data.rows());
    std::iota(order.begin(), order.end(), 0);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        double err_sum = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
            const Matrix batch = take_rows(data, std::span(order).subspan(start, stop - start));
            err_sum += trainer.update(batch, rng);
            ++batches;
        }
        const double epoch_err = batches == 0 ? 0.0 : err_sum / static_cast<double>(batches);
        if (!std::isfinite(epoch_err) || !trainer.params().weights.is_finite()) {
            throw DivergenceError("cd training diverged at epoch " + std::to_string(epoch + 1));
        }
        epoch_errors.push_back(epoch_err);
    }
    params = trainer.take_params();
    return epoch_errors;
}

}  // namespace xmodal
