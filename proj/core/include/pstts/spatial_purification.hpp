// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "pstts/event_model.hpp"
#include "pstts/grid.hpp"

namespace pstts::spatial {

/// Leaky integrate-and-fire neuron, stepped once per temporal bin.
struct LifParams {
    double tau = 2.0;
    double v_th = 1.0;
    double v_reset = 0.0;

    void validate() const;
};

/// Joint spatial / continuity-difference weighting used to smooth the TC map.
struct StcParams {
    int radius = 2;
    double sigma_s = 2.0;
    /// Continuity bandwidth. Unset means max(std(TC over the frame), 1e-6).
    std::optional<double> sigma_t;

    void validate() const;
};

inline constexpr double k_min_sigma_t = 1e-6;

using TcMap = Grid<std::uint32_t>;
using ScoreMap = Grid<double>;
using KeepMask = Grid<std::uint8_t>;

struct ContinuityMaps {
    TcMap tc;
    ScoreMap stc;
    ScoreMap stc_down;
    std::size_t patch_size = 0;
    double sigma_t = 0.0;  // bandwidth actually used
};

struct Stage1Mask {
    KeepMask kept;
    double alpha = 0.0;
    std::size_t kept_count = 0;
};

/// Per-pixel spike count over the B bins of a density sequence.
TcMap lif_continuity(const events::DensitySequence& density, const LifParams& params);

/// Population standard deviation of the TC map, floored at k_min_sigma_t.
double adaptive_sigma_t(const TcMap& tc);

/// Edge-preserving weighted average of TC over a clipped (2r+1)^2 window.
ScoreMap stc_map(const TcMap& tc, const StcParams& params);

/// Non-overlapping p x p mean pooling; right/bottom edges are zero-padded to a multiple of p.
ScoreMap pool_stc(const ScoreMap& stc, std::size_t patch_size);

/// Keeps every cell whose pooled score is not below the grid mean.
Stage1Mask purify(const ScoreMap& stc_down);

/// Adaptive mean threshold shared by both selection stages: the arithmetic mean of `values`,
/// clamped into [min, max] so that a constant input keeps every element.
double mean_threshold(std::span<const double> values);

struct Stage1Result {
    ContinuityMaps maps;
    Stage1Mask mask;
};

/// lif_continuity -> stc_map -> pool_stc -> purify for one segment.
Stage1Result run_stage1(const events::DensitySequence& density, const LifParams& lif, const StcParams& stc,
                        std::size_t patch_size);

}  // namespace pstts::spatial
