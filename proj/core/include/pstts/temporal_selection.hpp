// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "pstts/grid.hpp"
#include "pstts/spatial_purification.hpp"

namespace pstts::temporal {

struct GridCoord {
    std::size_t row = 0;
    std::size_t col = 0;

    bool operator==(const GridCoord&) const = default;
};

/// STC patches of one frame at the cells kept by stage 1, in row-major cell order.
struct RetainedPatches {
    std::size_t patch_size = 0;
    std::size_t frame = 0;
    std::size_t grid_cols = 0;
    std::vector<GridCoord> coords;
    std::vector<double> values;  // M * p * p, patch-major

    std::size_t count() const noexcept {
        return coords.size();
    }
    std::span<const double> patch(std::size_t i) const {
        const auto area = patch_size * patch_size;
        return std::span<const double>(values).subspan(i * area, area);
    }
    std::size_t flat_index(std::size_t i) const {
        return coords[i].row * grid_cols + coords[i].col;
    }
};

/// How the per-pair similarity MMS * TSS is reduced over the previous frame's patches.
enum class Aggregation { max, mean, same_position };

std::string_view to_string(Aggregation aggregation);
Aggregation aggregation_from_string(std::string_view name);

inline constexpr double k_default_epsilon = 1e-8;

struct TtsConfig {
    Aggregation aggregation = Aggregation::max;
    double epsilon = k_default_epsilon;
    bool use_stc = true;
    bool use_l2 = true;

    void validate() const;
};

struct Stage2Scores {
    std::vector<double> mms;
    std::vector<double> tss;
    std::vector<double> tmr;
    std::vector<double> l2;
    std::vector<double> score;
};

/// Cuts the p x p STC patch under every kept cell. Cells overhanging the map read as zero.
RetainedPatches extract_patches(const spatial::ScoreMap& stc, const spatial::Stage1Mask& mask,
                                std::size_t patch_size, std::size_t frame = 0);

/// Motion magnitude similarity of two patches: (2 mu_a mu_b + eps) / (mu_a^2 + mu_b^2 + eps).
double pairwise_mms(std::span<const double> a, std::span<const double> b, double epsilon = k_default_epsilon);

/// Trajectory shape similarity: (cov(a, b) + eps) / (sd_a * sd_b + eps), population moments.
double pairwise_tss(std::span<const double> a, std::span<const double> b, double epsilon = k_default_epsilon);

struct RedundancyTerms {
    std::vector<double> mms;
    std::vector<double> tss;
    std::vector<double> tmr;
};

/// Temporal motion redundancy of each current patch against the previous frame's retained set.
/// With no previous patches every token is fully novel (TMR = 1, MMS = TSS = 0).
RedundancyTerms frame_tmr(const RetainedPatches& current, const RetainedPatches* previous, const TtsConfig& cfg);

/// score_i = (stc_i or 1) * tmr_i * (l2_i or 1) depending on the config flags. An empty l2 means all ones.
std::vector<double> token_scores(std::span<const double> stc_down_kept, std::span<const double> tmr,
                                 std::span<const double> l2, const TtsConfig& cfg);

struct SelectionStrategy {
    enum class Kind { adaptive_mean, fixed_ratio };
    Kind kind = Kind::adaptive_mean;
    double ratio = 1.0;

    static SelectionStrategy adaptive() {
        return {};
    }
    static SelectionStrategy fixed(double r);

    void validate() const;
};

struct TemporalSelection {
    std::vector<std::size_t> kept;  // positions into the score vector, ascending
    double threshold = 0.0;         // mean cut-off, or lowest kept score for fixed ratio
};

/// Picks the surviving tokens. Scores are assumed to be in row-major cell order so that
/// fixed-ratio ties resolve to the lower grid index.
TemporalSelection select_temporal(std::span<const double> scores, const SelectionStrategy& strategy);

}  // namespace pstts::temporal
