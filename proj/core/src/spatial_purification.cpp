// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include "pstts/spatial_purification.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pstts/error.hpp"

namespace pstts::spatial {

void LifParams::validate() const {
    if (!(tau > 0.0)) {
        throw ArgumentError("lif.tau must be positive");
    }
    if (!(v_th > v_reset)) {
        throw ArgumentError("lif.v_th must exceed lif.v_reset");
    }
}

void StcParams::validate() const {
    if (radius < 1) {
        throw ArgumentError("stc.radius must be at least 1");
    }
    if (!(sigma_s > 0.0)) {
        throw ArgumentError("stc.sigma_s must be positive");
    }
    if (sigma_t && !(*sigma_t > 0.0)) {
        throw ArgumentError("stc.sigma_t must be positive");
    }
}

TcMap lif_continuity(const events::DensitySequence& density, const LifParams& params) {
    params.validate();
    const std::size_t h = density.height();
    const std::size_t w = density.width();
    const std::size_t plane = h * w;
    const auto counts = density.counts();

    TcMap tc(h, w, 0);
    std::vector<double> v(plane, params.v_reset);
    auto spikes = tc.values();
    // Bin-major sweep keeps the inner loop contiguous; each pixel's recurrence is independent.
    for (std::size_t b = 0; b < density.bins(); ++b) {
        const auto* a = counts.data() + b * plane;
        for (std::size_t i = 0; i < plane; ++i) {
            double vi = v[i];
            vi = vi + (static_cast<double>(a[i]) - (vi - params.v_reset)) / params.tau;
            if (vi >= params.v_th) {
                ++spikes[i];
                vi = params.v_reset;
            }
            v[i] = vi;
        }
    }
    return tc;
}

double adaptive_sigma_t(const TcMap& tc) {
    if (tc.empty()) {
        return k_min_sigma_t;
    }
    const auto n = static_cast<double>(tc.size());
    double sum = 0.0;
    for (auto value : tc.values()) {
        sum += static_cast<double>(value);
    }
    const double mean = sum / n;
    double sq = 0.0;
    for (auto value : tc.values()) {
        const double d = static_cast<double>(value) - mean;
        sq += d * d;
    }
    return std::max(std::sqrt(sq / n), k_min_sigma_t);
}

ScoreMap stc_map(const TcMap& tc, const StcParams& params) {
    params.validate();
    const auto h = static_cast<int>(tc.rows());
    const auto w = static_cast<int>(tc.cols());
    const int r = params.radius;
    const double sigma_t = params.sigma_t.value_or(adaptive_sigma_t(tc));

    const int side = 2 * r + 1;
    std::vector<double> spatial(static_cast<std::size_t>(side * side));
    for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
            spatial[static_cast<std::size_t>((dy + r) * side + dx + r)] =
                std::exp(-static_cast<double>(dx * dx + dy * dy) / (2.0 * params.sigma_s * params.sigma_s));
        }
    }
    std::uint32_t tc_max = 0;
    for (auto value : tc.values()) {
        tc_max = std::max(tc_max, value);
    }
    std::vector<double> range(static_cast<std::size_t>(tc_max) + 1);
    for (std::size_t d = 0; d < range.size(); ++d) {
        const auto dd = static_cast<double>(d);
        range[d] = std::exp(-dd * dd / (2.0 * sigma_t * sigma_t));
    }

    ScoreMap stc(tc.rows(), tc.cols(), 0.0);
    for (int y = 0; y < h; ++y) {
        const int y0 = std::max(0, y - r);
        const int y1 = std::min(h - 1, y + r);
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - r);
            const int x1 = std::min(w - 1, x + r);
            const auto center = tc(static_cast<std::size_t>(y), static_cast<std::size_t>(x));
            double num = 0.0;
            double den = 0.0;
            for (int yy = y0; yy <= y1; ++yy) {
                const auto row = tc.row(static_cast<std::size_t>(yy));
                const double* sw = spatial.data() + (yy - y + r) * side + (x0 - x + r);
                for (int xx = x0; xx <= x1; ++xx, ++sw) {
                    const auto neighbour = row[static_cast<std::size_t>(xx)];
                    const auto diff = neighbour > center ? neighbour - center : center - neighbour;
                    const double weight = *sw * range[diff];
                    num += weight * static_cast<double>(neighbour);
                    den += weight;
                }
            }
            stc(static_cast<std::size_t>(y), static_cast<std::size_t>(x)) = num / den;
        }
    }
    return stc;
}

ScoreMap pool_stc(const ScoreMap& stc, std::size_t patch_size) {
    if (patch_size == 0) {
        throw ArgumentError("patch size must be at least 1");
    }
    const std::size_t gh = (stc.rows() + patch_size - 1) / patch_size;
    const std::size_t gw = (stc.cols() + patch_size - 1) / patch_size;
    ScoreMap pooled(gh, gw, 0.0);
    for (std::size_t y = 0; y < stc.rows(); ++y) {
        const auto row = stc.row(y);
        for (std::size_t x = 0; x < stc.cols(); ++x) {
            pooled(y / patch_size, x / patch_size) += row[x];
        }
    }
    const auto area = static_cast<double>(patch_size * patch_size);
    for (auto& cell : pooled.values()) {
        cell /= area;
    }
    return pooled;
}

double mean_threshold(std::span<const double> values) {
    if (values.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    double lo = values.front();
    double hi = values.front();
    for (double v : values) {
        sum += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return std::clamp(sum / static_cast<double>(values.size()), lo, hi);
}

Stage1Mask purify(const ScoreMap& stc_down) {
    if (stc_down.empty()) {
        throw ArgumentError("cannot purify an empty score grid");
    }
    Stage1Mask mask;
    mask.alpha = mean_threshold(stc_down.values());
    mask.kept = KeepMask(stc_down.rows(), stc_down.cols(), 0);
    for (std::size_t i = 0; i < stc_down.size(); ++i) {
        // Strictly-below removal: ties at alpha survive.
        if (stc_down[i] >= mask.alpha) {
            mask.kept[i] = 1;
            ++mask.kept_count;
        }
    }
    return mask;
}

Stage1Result run_stage1(const events::DensitySequence& density, const LifParams& lif, const StcParams& stc,
                        std::size_t patch_size) {
    Stage1Result result;
    result.maps.patch_size = patch_size;
    result.maps.tc = lif_continuity(density, lif);
    result.maps.sigma_t = stc.sigma_t.value_or(adaptive_sigma_t(result.maps.tc));
    StcParams resolved = stc;
    resolved.sigma_t = result.maps.sigma_t;
    result.maps.stc = stc_map(result.maps.tc, resolved);
    result.maps.stc_down = pool_stc(result.maps.stc, patch_size);
    result.mask = purify(result.maps.stc_down);
    return result;
}

}  // namespace pstts::spatial
