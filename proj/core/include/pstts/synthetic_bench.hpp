// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "pstts/event_model.hpp"
#include "pstts/pipeline.hpp"
#include "pstts/spatial_purification.hpp"

namespace pstts::synth {

// ---------------------------------------------------------------------------------------------
// Scene description
// ---------------------------------------------------------------------------------------------

enum class Orientation { horizontal, vertical };

/// Axis-aligned bar that emits events while it sweeps across the sensor.
/// A horizontal edge spans columns [span_begin, span_end) and moves along y; a vertical edge
/// spans rows and moves along x. `position` is the leading row/column at t = 0.
struct MovingEdge {
    Orientation orientation = Orientation::horizontal;
    double position = 0.0;
    double velocity = 0.0;  // px/s
    int thickness = 1;
    int span_begin = 0;
    int span_end = -1;  // -1: to the sensor edge
    double rate = 0.0;  // events / px / s while covered
    events::Timestamp t_on = 0;
    events::Timestamp t_off = -1;  // -1: until the end of the scene
};

/// Stationary flickering region [x0, x1) x [y0, y1). With period > 0 only pixels on diagonal
/// stripes ((x - x0) + (y - y0)) mod period < duty fire; period 0 fires the whole region.
struct StaticTexture {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;
    double rate = 0.0;
    int period = 0;
    int duty = 1;
    events::Timestamp t_on = 0;
    events::Timestamp t_off = -1;
};

struct SceneSpec {
    events::Geometry geometry{128, 128};
    events::Timestamp duration_us = 1'000'000;
    events::Timestamp time_step_us = 1'000;
    /// Frame and patch layout the ground truth is labelled on.
    events::Timestamp frame_interval_us = 250'000;
    std::size_t patch_size = 16;
    std::vector<MovingEdge> edges;
    std::vector<StaticTexture> textures;
    std::uint64_t seed = 1;

    void validate() const;
};

struct NoiseSpec {
    double shot_noise_rate = 0.0;  // events / px / s, uniform over the sensor
    std::size_t hot_pixels = 0;
    double hot_pixel_rate = 0.0;  // events / s per hot pixel
    std::uint64_t seed = 2;

    void validate() const;
};

enum class PatchLabel : std::uint8_t { empty, noise_only, active, redundant };

std::string_view to_string(PatchLabel label);

struct GroundTruth {
    std::size_t grid_rows = 0;
    std::size_t grid_cols = 0;
    std::vector<std::vector<PatchLabel>> frames;  // [k][row-major cell]
    std::vector<std::pair<std::uint32_t, std::uint32_t>> hot_pixels;  // (x, y)
};

struct Scene {
    events::EventStream stream;
    GroundTruth truth;
};

/// Poisson-samples the scene elements and noise. Identical specs give identical streams.
Scene generate_scene(const SceneSpec& spec, const NoiseSpec& noise);

// ---------------------------------------------------------------------------------------------
// Reference stage 1
// ---------------------------------------------------------------------------------------------

struct OracleStage1 {
    spatial::TcMap tc;
    spatial::ScoreMap stc;
    spatial::ScoreMap stc_down;
    spatial::Stage1Mask mask;
    double sigma_t = 0.0;
};

/// Unoptimised nested-loop evaluation of the whole first stage, written independently of
/// the spatial module so the two can be cross-checked.
OracleStage1 oracle_stage1(const events::DensitySequence& density, const spatial::LifParams& lif,
                           const spatial::StcParams& stc, std::size_t patch_size);

// ---------------------------------------------------------------------------------------------
// Transformer cost model
// ---------------------------------------------------------------------------------------------

struct ModelDims {
    std::size_t layers = 12;
    std::size_t embed_dim = 768;
    double mlp_ratio = 4.0;
    std::size_t frames = 8;
    std::size_t tokens_per_frame = 196;
    /// Leading blocks that still see every token; sparsification applies after them.
    std::size_t dense_layers = 0;

    void validate() const;
};

/// FLOPs of one block at a given sequence length N (multiply-add counted as 2).
struct BlockFlops {
    double attention_linear = 0.0;     // 4 N d^2 (QKV + output projections)
    double attention_quadratic = 0.0;  // 2 N^2 d (scores + weighted sum)
    double mlp = 0.0;                  // 2 N d (m d)

    double total() const noexcept {
        return attention_linear + attention_quadratic + mlp;
    }
};

BlockFlops block_flops(double tokens, const ModelDims& dims);

struct FlopsReport {
    std::vector<double> tokens_per_frame;  // kept tokens n_k fed to the sparse blocks
    double kept_tokens = 0.0;
    double dense_tokens = 0.0;
    BlockFlops sparse_block;
    BlockFlops dense_block;
    double total_flops = 0.0;
    double dense_flops = 0.0;
    double reduction = 0.0;  // 1 - total / dense, in [0, 1]
};

/// n_k = keep_ratio_k * tokens_per_frame for each of the dims.frames frames.
FlopsReport flops_report(std::span<const double> keep_ratios, const ModelDims& dims);
FlopsReport flops_report(const SelectionResult& selection, const ModelDims& dims);

// ---------------------------------------------------------------------------------------------
// Evaluation against ground truth
// ---------------------------------------------------------------------------------------------

struct DenoiseMetrics {
    std::size_t noise_patches = 0;
    std::size_t noise_dropped = 0;
    std::size_t active_patches = 0;  // active + redundant
    std::size_t active_kept = 0;
    std::size_t active_dropped = 0;

    /// Fraction of noise-only patches removed by stage 1 (recall of noise removal).
    std::optional<double> noise_drop_rate() const;
    /// Noise-only share of the non-empty patches stage 1 removed.
    std::optional<double> noise_precision() const;
    std::optional<double> active_keep_rate() const;
};

struct RedundancyMetrics {
    std::size_t redundant_patches = 0;  // frames k >= 2 only
    std::size_t redundant_dropped = 0;  // not in the final mask
    std::size_t stage2_dropped = 0;     // stage-1 survivors removed by stage 2
    std::size_t stage2_dropped_redundant = 0;
    std::size_t fresh_patches = 0;  // active, not redundant, k >= 2
    std::size_t fresh_stage1_kept = 0;
    std::size_t fresh_final_kept = 0;

    std::optional<double> redundant_drop_rate() const;
    /// Redundant share of the tokens stage 2 removed.
    std::optional<double> redundancy_precision() const;
    /// Share of stage-1-kept fresh patches that stage 2 also keeps.
    std::optional<double> fresh_keep_rate() const;
    /// Share of all fresh patches surviving both stages.
    std::optional<double> fresh_end_to_end_keep_rate() const;
};

DenoiseMetrics evaluate_denoising(const SelectionResult& selection, const GroundTruth& truth);
RedundancyMetrics evaluate_redundancy(const SelectionResult& selection, const GroundTruth& truth);

}  // namespace pstts::synth
