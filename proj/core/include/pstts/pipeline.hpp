// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pstts/event_model.hpp"
#include "pstts/spatial_purification.hpp"
#include "pstts/temporal_selection.hpp"

namespace pstts {

struct PipelineConfig {
    events::Timestamp interval_us = 250'000;
    std::optional<std::size_t> max_frames;
    std::size_t bins = 8;
    std::size_t patch_size = 16;
    spatial::LifParams lif;
    spatial::StcParams stc;
    temporal::TtsConfig tts;
    temporal::SelectionStrategy strategy;
    /// Worker threads; 0 picks PSTTS_THREADS or the logical core count.
    std::size_t threads = 0;

    void validate() const;
};

struct FrameResult {
    spatial::Stage1Result stage1;
    temporal::RetainedPatches patches;
    temporal::Stage2Scores scores;
    spatial::KeepMask final_kept;
    std::size_t final_count = 0;
    double score_threshold = 0.0;
    double keep_ratio = 0.0;

    /// Row-major cell indices of the stage-1 survivors.
    std::vector<std::size_t> stage1_indices() const;
    /// Row-major cell indices of the final survivors.
    std::vector<std::size_t> final_indices() const;
};

struct SelectionResult {
    std::size_t grid_rows = 0;
    std::size_t grid_cols = 0;
    std::vector<FrameResult> frames;
    double keep_ratio = 1.0;

    std::size_t cells_per_frame() const noexcept {
        return grid_rows * grid_cols;
    }
    std::vector<double> frame_keep_ratios() const;
};

/// Per-token L2 norms for one frame, indexed by row-major grid cell. Empty means all ones.
using TokenNorms = std::vector<double>;

/// Resolves the worker count: explicit value, else PSTTS_THREADS, else hardware concurrency.
std::size_t resolve_threads(std::size_t requested);

/// Segments the stream and bins each of the (optionally capped) frames.
std::vector<events::DensitySequence> frame_densities(const events::EventStream& stream, const PipelineConfig& config);

/// Both sparsification stages over precomputed per-frame densities.
SelectionResult run_selection(std::span<const events::DensitySequence> densities, const PipelineConfig& config,
                              std::span<const TokenNorms> l2 = {});

/// Ingested stream -> densities -> both stages.
SelectionResult run_selection(const events::EventStream& stream, const PipelineConfig& config,
                              std::span<const TokenNorms> l2 = {});

}  // namespace pstts
