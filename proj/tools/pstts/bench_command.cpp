// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "commands.hpp"
#include "pstts/synthetic_bench.hpp"

namespace pstts::cli {

namespace {

struct BoundCheck {
    std::string name;
    std::optional<double> value;
    double bound;
    bool upper;
};

bool satisfied(const BoundCheck& c) {
    if (!c.value) {
        return true;  // empty class: nothing to regress
    }
    return c.upper ? *c.value <= c.bound : *c.value >= c.bound;
}

}  // namespace

int bench_command(const BenchOptions& options) {
    auto kv = KeyValueConfig::load(options.scene);
    const auto scene_spec = scene_spec_from(kv);

    auto noise_spec = noise_spec_from(kv, "noise.");
    if (options.noise) {
        const auto noise_kv = KeyValueConfig::load(*options.noise);
        noise_spec = noise_spec_from(noise_kv);
        noise_kv.reject_unknown();
    }

    auto rc = run_config_from(kv);
    if (!kv.contains("interval_us")) {
        rc.pipeline.interval_us = scene_spec.frame_interval_us;
    }
    if (options.threads) {
        rc.pipeline.threads = *options.threads;
    }
    const auto expect = bench_expectations_from(kv);
    kv.reject_unknown();
    rc.pipeline.validate();

    const auto scene = synth::generate_scene(scene_spec, noise_spec);
    const auto result = run_selection(scene.stream, rc.pipeline);
    const auto denoise = synth::evaluate_denoising(result, scene.truth);
    const auto redundancy = synth::evaluate_redundancy(result, scene.truth);

    auto dims = rc.model;
    dims.frames = result.frames.size();
    if (!rc.tokens_per_frame_given) {
        dims.tokens_per_frame = result.cells_per_frame();
    }
    const auto flops = synth::flops_report(result, dims);

    std::printf("scene %s: %zu events, %zu frames, grid %zux%zu\n", options.scene.c_str(), scene.stream.size(),
                result.frames.size(), result.grid_rows, result.grid_cols);
    std::printf("noise removal       precision %s  recall %s  (%zu noise-only patches)\n",
                format_rate(denoise.noise_precision()).c_str(), format_rate(denoise.noise_drop_rate()).c_str(),
                denoise.noise_patches);
    std::printf("active retention    %s  (%zu active patches)\n", format_rate(denoise.active_keep_rate()).c_str(),
                denoise.active_patches);
    std::printf("redundancy removal  precision %s  recall %s  (%zu redundant patches)\n",
                format_rate(redundancy.redundancy_precision()).c_str(),
                format_rate(redundancy.redundant_drop_rate()).c_str(), redundancy.redundant_patches);
    std::printf("fresh retention     stage 2 %s  end to end %s  (%zu fresh patches)\n",
                format_rate(redundancy.fresh_keep_rate()).c_str(),
                format_rate(redundancy.fresh_end_to_end_keep_rate()).c_str(), redundancy.fresh_patches);
    std::printf("keep ratio          %.4f\n", result.keep_ratio);
    std::printf("FLOPs reduction     %.2f%%\n", 100.0 * flops.reduction);

    std::vector<BoundCheck> checks;
    const auto add = [&](const char* name, std::optional<double> value, std::optional<double> bound, bool upper) {
        if (bound) {
            checks.push_back({name, value, *bound, upper});
        }
    };
    add("noise drop rate", denoise.noise_drop_rate(), expect.noise_drop_min, false);
    add("active keep rate", denoise.active_keep_rate(), expect.active_keep_min, false);
    add("redundant drop rate", redundancy.redundant_drop_rate(), expect.redundant_drop_min, false);
    add("fresh keep rate", redundancy.fresh_keep_rate(), expect.fresh_keep_min, false);
    add("keep ratio", result.keep_ratio, expect.keep_ratio_max, true);

    int status = exit_ok;
    for (const auto& c : checks) {
        const bool ok = satisfied(c);
        std::printf("%s %s %s %s %.4f\n", ok ? "ok  " : "FAIL", c.name.c_str(), format_rate(c.value).c_str(),
                    c.upper ? "<=" : ">=", c.bound);
        if (!ok) {
            status = exit_regression;
        }
    }
    return status;
}

}  // namespace pstts::cli
