// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include "pstts/error.hpp"
#include "pstts/synthetic_bench.hpp"

namespace pstts::synth {

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
    if (den == 0) {
        return std::nullopt;
    }
    return static_cast<double>(num) / static_cast<double>(den);
}

void check_layout(const SelectionResult& selection, const GroundTruth& truth) {
    if (selection.grid_rows != truth.grid_rows || selection.grid_cols != truth.grid_cols ||
        selection.frames.size() != truth.frames.size()) {
        throw ArgumentError("selection layout does not match the ground-truth grid");
    }
}

}  // namespace

std::optional<double> DenoiseMetrics::noise_drop_rate() const {
    return ratio(noise_dropped, noise_patches);
}

std::optional<double> DenoiseMetrics::noise_precision() const {
    if (noise_patches == 0) {
        return std::nullopt;
    }
    return ratio(noise_dropped, noise_dropped + active_dropped);
}

std::optional<double> DenoiseMetrics::active_keep_rate() const {
    return ratio(active_kept, active_patches);
}

std::optional<double> RedundancyMetrics::redundant_drop_rate() const {
    return ratio(redundant_dropped, redundant_patches);
}

std::optional<double> RedundancyMetrics::redundancy_precision() const {
    return ratio(stage2_dropped_redundant, stage2_dropped);
}

std::optional<double> RedundancyMetrics::fresh_keep_rate() const {
    return ratio(fresh_final_kept, fresh_stage1_kept);
}

std::optional<double> RedundancyMetrics::fresh_end_to_end_keep_rate() const {
    return ratio(fresh_final_kept, fresh_patches);
}

DenoiseMetrics evaluate_denoising(const SelectionResult& selection, const GroundTruth& truth) {
    check_layout(selection, truth);
    DenoiseMetrics m;
    for (std::size_t k = 0; k < truth.frames.size(); ++k) {
        const auto& kept = selection.frames[k].stage1.mask.kept;
        for (std::size_t cell = 0; cell < truth.frames[k].size(); ++cell) {
            switch (truth.frames[k][cell]) {
            case PatchLabel::noise_only:
                ++m.noise_patches;
                m.noise_dropped += kept[cell] ? 0 : 1;
                break;
            case PatchLabel::active:
            case PatchLabel::redundant:
                ++m.active_patches;
                if (kept[cell]) {
                    ++m.active_kept;
                } else {
                    ++m.active_dropped;
                }
                break;
            case PatchLabel::empty:
                break;
            }
        }
    }
    return m;
}

RedundancyMetrics evaluate_redundancy(const SelectionResult& selection, const GroundTruth& truth) {
    check_layout(selection, truth);
    RedundancyMetrics m;
    for (std::size_t k = 1; k < truth.frames.size(); ++k) {
        const auto& stage1 = selection.frames[k].stage1.mask.kept;
        const auto& final_kept = selection.frames[k].final_kept;
        for (std::size_t cell = 0; cell < truth.frames[k].size(); ++cell) {
            const auto label = truth.frames[k][cell];
            if (stage1[cell] && !final_kept[cell]) {
                ++m.stage2_dropped;
                m.stage2_dropped_redundant += label == PatchLabel::redundant ? 1 : 0;
            }
            if (label == PatchLabel::redundant) {
                ++m.redundant_patches;
                m.redundant_dropped += final_kept[cell] ? 0 : 1;
            } else if (label == PatchLabel::active) {
                ++m.fresh_patches;
                m.fresh_stage1_kept += stage1[cell] ? 1 : 0;
                m.fresh_final_kept += final_kept[cell] ? 1 : 0;
            }
        }
    }
    return m;
}

}  // namespace pstts::synth
