#pragma once

#include <vector>

#include "xmodal/rbm.hpp"

namespace xmodal {

/// Per-instance patch feature set (one row per patch).
struct PatchGroup {
    std::size_t instance_id = 0;
    Matrix patch_features;

    std::size_t patch_count() const { return patch_features.rows(); }
};

// Coordinatewise mean over patch rows. Throws DomainError on an empty group.
std::vector<double> average_fuse(const Matrix& patch_rows);

/// Joint RBM fusing a coarse-grained pathway (over T_origin) and a
/// fine-grained pathway (over T_patch) under one shared top RBM on the
/// concatenated pathway hiddens. All units bernoulli; inference is
/// mean-field throughout.
struct JointFusionRbm {
    RbmParams pathway_origin;
    RbmParams pathway_patch;
    RbmParams top;

    std::size_t output_dim() const { return top.hidden_dim(); }
    void validate() const;
};

struct FusionDims {
    std::size_t pathway_hidden = 1024;
    std::size_t output_dim = 2048;
};

// CD trains each pathway RBM on its input, then the top RBM on the
// concatenated pathway mean-field hiddens. Inputs must be row-aligned.
JointFusionRbm train_fusion(const CdConfig& cfg, const Matrix& t_origin, const Matrix& t_patch,
                            const FusionDims& dims, SeededRng& rng);

// Separate representation S: mean-field top hiddens for the given rows.
// Deterministic (never samples).
Matrix fuse(const JointFusionRbm& model, const Matrix& t_origin, const Matrix& t_patch);

}  // namespace xmodal
