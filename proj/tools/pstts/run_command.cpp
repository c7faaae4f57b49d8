// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "commands.hpp"
#include "pstts/pgm.hpp"
#include "pstts/pipeline.hpp"
#include "pstts/report.hpp"

namespace pstts::cli {

namespace {

// Final token score at every stage-1 survivor, zero elsewhere.
Grid<double> score_grid(const SelectionResult& result, const FrameResult& frame) {
    Grid<double> grid(result.grid_rows, result.grid_cols, 0.0);
    for (std::size_t i = 0; i < frame.scores.score.size(); ++i) {
        grid[frame.patches.flat_index(i)] = frame.scores.score[i];
    }
    return grid;
}

void write_maps(const std::filesystem::path& dir, const SelectionResult& result) {
    std::filesystem::create_directories(dir);
    for (std::size_t k = 0; k < result.frames.size(); ++k) {
        const auto& frame = result.frames[k];
        char stem[32];
        std::snprintf(stem, sizeof(stem), "frame_%03zu_", k + 1);
        const auto path = [&](const char* name) {
            return (dir / (std::string(stem) + name + ".pgm")).string();
        };
        std::ofstream tc(path("tc"), std::ios::binary);
        write_pgm(tc, frame.stage1.maps.tc);
        write_pgm(path("stc"), frame.stage1.maps.stc);
        write_pgm(path("stc_down"), frame.stage1.maps.stc_down);
        write_pgm(path("score"), score_grid(result, frame));
    }
}

}  // namespace

int run_command(const RunOptions& options) {
    auto kv = load_config(options.config);
    auto rc = run_config_from(kv);
    kv.reject_unknown();
    if (options.fixed_ratio) {
        rc.pipeline.strategy = temporal::SelectionStrategy::fixed(*options.fixed_ratio);
    }
    if (options.threads) {
        rc.pipeline.threads = *options.threads;
    }
    rc.pipeline.validate();

    const auto stream = load_events(options.input, rc.geometry);
    const auto result = run_selection(stream, rc.pipeline);

    auto dims = rc.model;
    dims.frames = result.frames.size();
    if (!rc.tokens_per_frame_given) {
        dims.tokens_per_frame = result.cells_per_frame();
    }
    const auto flops = synth::flops_report(result, dims);

    const std::filesystem::path out(options.out);
    std::filesystem::create_directories(out);
    write_text((out / "masks.json").string(), mask_json(result));
    write_text((out / "stats.json").string(), stats_json(result, flops));
    if (options.maps || rc.output.write_maps) {
        write_maps(out / "maps", result);
    }

    std::printf("frames %zu  grid %zux%zu  keep ratio %.4f  FLOPs reduction %.2f%%\n", result.frames.size(),
                result.grid_rows, result.grid_cols, result.keep_ratio, 100.0 * flops.reduction);
    return exit_ok;
}

}  // namespace pstts::cli
