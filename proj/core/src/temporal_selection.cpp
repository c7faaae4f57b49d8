// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include "pstts/temporal_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pstts/error.hpp"

namespace pstts::temporal {

namespace {

struct PatchMoments {
    double mean = 0.0;
    double sd = 0.0;
    std::vector<double> centered;
};

PatchMoments moments(std::span<const double> patch) {
    PatchMoments m;
    const auto n = static_cast<double>(patch.size());
    m.mean = std::accumulate(patch.begin(), patch.end(), 0.0) / n;
    m.centered.resize(patch.size());
    double sq = 0.0;
    for (std::size_t i = 0; i < patch.size(); ++i) {
        m.centered[i] = patch[i] - m.mean;
        sq += m.centered[i] * m.centered[i];
    }
    m.sd = std::sqrt(sq / n);
    return m;
}

double mms_from_means(double a, double b, double eps) {
    return (2.0 * a * b + eps) / (a * a + b * b + eps);
}

double tss_from_moments(const PatchMoments& a, const PatchMoments& b, double eps) {
    double cov = 0.0;
    for (std::size_t i = 0; i < a.centered.size(); ++i) {
        cov += a.centered[i] * b.centered[i];
    }
    cov /= static_cast<double>(a.centered.size());
    return (cov + eps) / (a.sd * b.sd + eps);
}

void check_same_shape(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw ArgumentError("patches must be non-empty and of equal shape");
    }
}

}  // namespace

std::string_view to_string(Aggregation aggregation) {
    switch (aggregation) {
    case Aggregation::max:
        return "max";
    case Aggregation::mean:
        return "mean";
    case Aggregation::same_position:
        return "same_position";
    }
    return "max";
}

Aggregation aggregation_from_string(std::string_view name) {
    if (name == "max") {
        return Aggregation::max;
    }
    if (name == "mean") {
        return Aggregation::mean;
    }
    if (name == "same_position") {
        return Aggregation::same_position;
    }
    throw ArgumentError("unknown aggregation '" + std::string(name) + "' (max, mean, same_position)");
}

void TtsConfig::validate() const {
    if (!(epsilon > 0.0)) {
        throw ArgumentError("tts.epsilon must be positive");
    }
}

SelectionStrategy SelectionStrategy::fixed(double r) {
    SelectionStrategy s;
    s.kind = Kind::fixed_ratio;
    s.ratio = r;
    s.validate();
    return s;
}

void SelectionStrategy::validate() const {
    if (kind == Kind::fixed_ratio && !(ratio > 0.0 && ratio <= 1.0)) {
        throw ArgumentError("fixed ratio must lie in (0, 1], got " + std::to_string(ratio));
    }
}

RetainedPatches extract_patches(const spatial::ScoreMap& stc, const spatial::Stage1Mask& mask,
                                std::size_t patch_size, std::size_t frame) {
    if (patch_size == 0) {
        throw ArgumentError("patch size must be at least 1");
    }
    const std::size_t gh = (stc.rows() + patch_size - 1) / patch_size;
    const std::size_t gw = (stc.cols() + patch_size - 1) / patch_size;
    if (mask.kept.rows() != gh || mask.kept.cols() != gw) {
        throw ArgumentError("mask grid " + std::to_string(mask.kept.rows()) + "x" + std::to_string(mask.kept.cols()) +
                            " does not match map " + std::to_string(stc.rows()) + "x" + std::to_string(stc.cols()) +
                            " at patch size " + std::to_string(patch_size));
    }

    RetainedPatches out;
    out.patch_size = patch_size;
    out.frame = frame;
    out.grid_cols = gw;
    out.coords.reserve(mask.kept_count);
    out.values.reserve(mask.kept_count * patch_size * patch_size);
    for (std::size_t gy = 0; gy < gh; ++gy) {
        for (std::size_t gx = 0; gx < gw; ++gx) {
            if (!mask.kept(gy, gx)) {
                continue;
            }
            out.coords.push_back({gy, gx});
            for (std::size_t dy = 0; dy < patch_size; ++dy) {
                const std::size_t y = gy * patch_size + dy;
                for (std::size_t dx = 0; dx < patch_size; ++dx) {
                    const std::size_t x = gx * patch_size + dx;
                    out.values.push_back(y < stc.rows() && x < stc.cols() ? stc(y, x) : 0.0);
                }
            }
        }
    }
    return out;
}

double pairwise_mms(std::span<const double> a, std::span<const double> b, double epsilon) {
    check_same_shape(a, b);
    const auto n = static_cast<double>(a.size());
    const double mu_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mu_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
    return mms_from_means(mu_a, mu_b, epsilon);
}

double pairwise_tss(std::span<const double> a, std::span<const double> b, double epsilon) {
    check_same_shape(a, b);
    return tss_from_moments(moments(a), moments(b), epsilon);
}

RedundancyTerms frame_tmr(const RetainedPatches& current, const RetainedPatches* previous, const TtsConfig& cfg) {
    cfg.validate();
    const std::size_t m = current.count();
    RedundancyTerms out;
    out.mms.assign(m, 0.0);
    out.tss.assign(m, 0.0);
    out.tmr.assign(m, 1.0);
    if (previous == nullptr || previous->count() == 0 || m == 0) {
        return out;
    }
    if (previous->patch_size != current.patch_size) {
        throw ArgumentError("adjacent frames use different patch sizes");
    }

    std::vector<PatchMoments> prev(previous->count());
    for (std::size_t j = 0; j < prev.size(); ++j) {
        prev[j] = moments(previous->patch(j));
    }

    for (std::size_t i = 0; i < m; ++i) {
        const auto cur = moments(current.patch(i));
        double best = 0.0;
        double best_mms = 0.0;
        double best_tss = 0.0;
        switch (cfg.aggregation) {
        case Aggregation::max: {
            best = -std::numeric_limits<double>::infinity();
            for (const auto& p : prev) {
                const double mms = mms_from_means(cur.mean, p.mean, cfg.epsilon);
                const double tss = tss_from_moments(cur, p, cfg.epsilon);
                if (mms * tss > best) {
                    best = mms * tss;
                    best_mms = mms;
                    best_tss = tss;
                }
            }
            break;
        }
        case Aggregation::mean: {
            double sum_mms = 0.0;
            double sum_tss = 0.0;
            double sum = 0.0;
            for (const auto& p : prev) {
                const double mms = mms_from_means(cur.mean, p.mean, cfg.epsilon);
                const double tss = tss_from_moments(cur, p, cfg.epsilon);
                sum_mms += mms;
                sum_tss += tss;
                sum += mms * tss;
            }
            const auto n = static_cast<double>(prev.size());
            best = sum / n;
            best_mms = sum_mms / n;
            best_tss = sum_tss / n;
            break;
        }
        case Aggregation::same_position: {
            const auto& coord = current.coords[i];
            const auto it = std::find(previous->coords.begin(), previous->coords.end(), coord);
            if (it != previous->coords.end()) {
                const auto& p = prev[static_cast<std::size_t>(it - previous->coords.begin())];
                best_mms = mms_from_means(cur.mean, p.mean, cfg.epsilon);
                best_tss = tss_from_moments(cur, p, cfg.epsilon);
                best = best_mms * best_tss;
            }
            break;
        }
        }
        out.mms[i] = best_mms;
        out.tss[i] = best_tss;
        out.tmr[i] = 1.0 - best;
    }
    return out;
}

std::vector<double> token_scores(std::span<const double> stc_down_kept, std::span<const double> tmr,
                                 std::span<const double> l2, const TtsConfig& cfg) {
    if (stc_down_kept.size() != tmr.size() || (!l2.empty() && l2.size() != tmr.size())) {
        throw ArgumentError("token score inputs differ in length: stc " + std::to_string(stc_down_kept.size()) +
                            ", tmr " + std::to_string(tmr.size()) + ", l2 " + std::to_string(l2.size()));
    }
    std::vector<double> score(tmr.size());
    for (std::size_t i = 0; i < score.size(); ++i) {
        const double s = cfg.use_stc ? stc_down_kept[i] : 1.0;
        const double n = cfg.use_l2 && !l2.empty() ? l2[i] : 1.0;
        score[i] = s * tmr[i] * n;
    }
    return score;
}

TemporalSelection select_temporal(std::span<const double> scores, const SelectionStrategy& strategy) {
    strategy.validate();
    TemporalSelection out;
    if (scores.empty()) {
        return out;
    }
    if (strategy.kind == SelectionStrategy::Kind::adaptive_mean) {
        out.threshold = spatial::mean_threshold(scores);
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (scores[i] >= out.threshold) {
                out.kept.push_back(i);
            }
        }
        return out;
    }

    // ceil(r * M) with a small tolerance so that e.g. (2/3) * 3 keeps exactly 2.
    const auto m = static_cast<double>(scores.size());
    auto keep = static_cast<std::size_t>(std::ceil(strategy.ratio * m - 1e-9));
    keep = std::clamp<std::size_t>(keep, 1, scores.size());

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });
    order.resize(keep);
    out.threshold = scores[order.back()];
    std::sort(order.begin(), order.end());
    out.kept = std::move(order);
    return out;
}

}  // namespace pstts::temporal
