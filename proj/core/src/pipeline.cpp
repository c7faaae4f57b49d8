// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include "pstts/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "pstts/error.hpp"

namespace pstts {

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
    const std::size_t workers = std::min(threads, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

std::vector<std::size_t> mask_indices(const spatial::KeepMask& mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) {
            out.push_back(i);
        }
    }
    return out;
}

}  // namespace

void PipelineConfig::validate() const {
    if (interval_us <= 0) {
        throw ArgumentError("interval_us must be positive");
    }
    if (max_frames && *max_frames < 1) {
        throw ArgumentError("frames must be at least 1 when given");
    }
    if (bins < 1) {
        throw ArgumentError("bins must be at least 1");
    }
    if (patch_size < 1) {
        throw ArgumentError("patch_size must be at least 1");
    }
    lif.validate();
    stc.validate();
    tts.validate();
    strategy.validate();
}

std::vector<std::size_t> FrameResult::stage1_indices() const {
    return mask_indices(stage1.mask.kept);
}

std::vector<std::size_t> FrameResult::final_indices() const {
    return mask_indices(final_kept);
}

std::vector<double> SelectionResult::frame_keep_ratios() const {
    std::vector<double> out;
    out.reserve(frames.size());
    for (const auto& f : frames) {
        out.push_back(f.keep_ratio);
    }
    return out;
}

std::size_t resolve_threads(std::size_t requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("PSTTS_THREADS")) {
        try {
            const long value = std::stol(env);
            if (value > 0) {
                return static_cast<std::size_t>(value);
            }
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<events::DensitySequence> frame_densities(const events::EventStream& stream, const PipelineConfig& config) {
    config.validate();
    auto segments = events::segment_stream(stream, config.interval_us);
    if (config.max_frames && segments.size() > *config.max_frames) {
        segments.resize(*config.max_frames);
    }
    std::vector<events::DensitySequence> densities(segments.size());
    parallel_for(segments.size(), resolve_threads(config.threads), [&](std::size_t k) {
        densities[k] = events::bin_density(segments[k], config.bins, stream.geometry());
    });
    return densities;
}

SelectionResult run_selection(std::span<const events::DensitySequence> densities, const PipelineConfig& config,
                              std::span<const TokenNorms> l2) {
    config.validate();
    if (densities.empty()) {
        throw ArgumentError("no frames to process");
    }
    const auto& geometry = densities.front().geometry();
    for (const auto& d : densities) {
        if (!(d.geometry() == geometry)) {
            throw ArgumentError("frames differ in sensor geometry");
        }
    }

    SelectionResult result;
    result.grid_rows = (geometry.height + config.patch_size - 1) / config.patch_size;
    result.grid_cols = (geometry.width + config.patch_size - 1) / config.patch_size;
    const std::size_t cells = result.cells_per_frame();
    if (!l2.empty() && l2.size() != densities.size()) {
        throw ArgumentError("expected L2 norms for " + std::to_string(densities.size()) + " frames, got " +
                            std::to_string(l2.size()));
    }
    for (std::size_t k = 0; k < l2.size(); ++k) {
        if (!l2[k].empty() && l2[k].size() != cells) {
            throw ArgumentError("frame " + std::to_string(k) + " has " + std::to_string(l2[k].size()) +
                                " L2 norms, expected " + std::to_string(cells));
        }
    }

    const std::size_t threads = resolve_threads(config.threads);
    result.frames.resize(densities.size());

    parallel_for(densities.size(), threads, [&](std::size_t k) {
        auto& frame = result.frames[k];
        frame.stage1 = spatial::run_stage1(densities[k], config.lif, config.stc, config.patch_size);
        frame.patches = temporal::extract_patches(frame.stage1.maps.stc, frame.stage1.mask, config.patch_size, k);
    });

    // Stage 2 of frame k only reads the stage-1 outputs of frames k and k-1.
    parallel_for(densities.size(), threads, [&](std::size_t k) {
        auto& frame = result.frames[k];
        const auto* previous = k > 0 ? &result.frames[k - 1].patches : nullptr;
        auto terms = temporal::frame_tmr(frame.patches, previous, config.tts);

        const std::size_t m = frame.patches.count();
        std::vector<double> stc_kept(m);
        std::vector<double> norms(m, 1.0);
        for (std::size_t i = 0; i < m; ++i) {
            const auto cell = frame.patches.flat_index(i);
            stc_kept[i] = frame.stage1.maps.stc_down[cell];
            if (k < l2.size() && !l2[k].empty()) {
                norms[i] = l2[k][cell];
            }
        }
        frame.scores.mms = std::move(terms.mms);
        frame.scores.tss = std::move(terms.tss);
        frame.scores.tmr = std::move(terms.tmr);
        frame.scores.score = temporal::token_scores(stc_kept, frame.scores.tmr, norms, config.tts);
        frame.scores.l2 = std::move(norms);

        const auto selection = temporal::select_temporal(frame.scores.score, config.strategy);
        frame.score_threshold = selection.threshold;
        frame.final_kept = spatial::KeepMask(result.grid_rows, result.grid_cols, 0);
        for (auto i : selection.kept) {
            frame.final_kept[frame.patches.flat_index(i)] = 1;
        }
        frame.final_count = selection.kept.size();
        frame.keep_ratio = static_cast<double>(frame.final_count) / static_cast<double>(cells);
    });

    std::size_t kept_total = 0;
    for (const auto& f : result.frames) {
        kept_total += f.final_count;
    }
    result.keep_ratio = static_cast<double>(kept_total) / static_cast<double>(cells * result.frames.size());
    return result;
}

SelectionResult run_selection(const events::EventStream& stream, const PipelineConfig& config,
                              std::span<const TokenNorms> l2) {
    const auto densities = frame_densities(stream, config);
    return run_selection(densities, config, l2);
}

}  // namespace pstts
