// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include <string>

#include "pstts/error.hpp"
#include "pstts/synthetic_bench.hpp"

namespace pstts::synth {

void ModelDims::validate() const {
    if (layers == 0 || embed_dim == 0 || !(mlp_ratio > 0.0) || frames == 0 || tokens_per_frame == 0) {
        throw ArgumentError("model dimensions must be positive");
    }
    if (dense_layers > layers) {
        throw ArgumentError("dense_layers exceeds layers");
    }
}

BlockFlops block_flops(double tokens, const ModelDims& dims) {
    const auto d = static_cast<double>(dims.embed_dim);
    BlockFlops f;
    f.attention_linear = 4.0 * tokens * d * d;
    f.attention_quadratic = 2.0 * tokens * tokens * d;
    f.mlp = 2.0 * tokens * d * (dims.mlp_ratio * d);
    return f;
}

FlopsReport flops_report(std::span<const double> keep_ratios, const ModelDims& dims) {
    dims.validate();
    if (keep_ratios.size() != dims.frames) {
        throw ArgumentError("expected keep ratios for " + std::to_string(dims.frames) + " frames, got " +
                            std::to_string(keep_ratios.size()));
    }
    FlopsReport report;
    const auto n = static_cast<double>(dims.tokens_per_frame);
    for (double r : keep_ratios) {
        if (!(r >= 0.0 && r <= 1.0)) {
            throw ArgumentError("keep ratio outside [0, 1]");
        }
        report.tokens_per_frame.push_back(r * n);
        report.kept_tokens += r * n;
    }
    report.dense_tokens = n * static_cast<double>(dims.frames);
    report.sparse_block = block_flops(report.kept_tokens, dims);
    report.dense_block = block_flops(report.dense_tokens, dims);

    const auto dense_layers = static_cast<double>(dims.dense_layers);
    const auto sparse_layers = static_cast<double>(dims.layers - dims.dense_layers);
    report.dense_flops = static_cast<double>(dims.layers) * report.dense_block.total();
    report.total_flops = dense_layers * report.dense_block.total() + sparse_layers * report.sparse_block.total();
    report.reduction = 1.0 - report.total_flops / report.dense_flops;
    return report;
}

FlopsReport flops_report(const SelectionResult& selection, const ModelDims& dims) {
    return flops_report(selection.frame_keep_ratios(), dims);
}

}  // namespace pstts::synth
