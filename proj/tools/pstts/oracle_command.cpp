// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "commands.hpp"
#include "pstts/pipeline.hpp"
#include "pstts/synthetic_bench.hpp"

namespace pstts::cli {

namespace {

double max_abs_diff(const Grid<double>& a, const Grid<double>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return INFINITY;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

}  // namespace

int oracle_command(const OracleOptions& options) {
    const auto kv = load_config(options.config);
    const auto rc = run_config_from(kv);
    kv.reject_unknown();
    const auto& cfg = rc.pipeline;

    const auto stream = load_events(options.input, rc.geometry);
    const auto densities = frame_densities(stream, cfg);

    int status = exit_ok;
    for (std::size_t k = 0; k < densities.size(); ++k) {
        const auto fast = spatial::run_stage1(densities[k], cfg.lif, cfg.stc, cfg.patch_size);
        const auto slow = synth::oracle_stage1(densities[k], cfg.lif, cfg.stc, cfg.patch_size);

        const bool tc_equal = fast.maps.tc == slow.tc;
        const double stc_err = max_abs_diff(fast.maps.stc, slow.stc);
        const double down_err = max_abs_diff(fast.maps.stc_down, slow.stc_down);
        const double alpha_err = std::abs(fast.mask.alpha - slow.mask.alpha);
        const bool mask_equal = fast.mask.kept == slow.mask.kept;
        const bool ok = tc_equal && mask_equal && stc_err <= options.tolerance && down_err <= options.tolerance &&
                        alpha_err <= options.tolerance;
        std::printf("frame %zu: %s  tc %s  stc %.3g  stc_down %.3g  alpha %.3g  mask %s\n", k + 1,
                    ok ? "agree" : "DISAGREE", tc_equal ? "equal" : "differ", stc_err, down_err, alpha_err,
                    mask_equal ? "equal" : "differ");
        if (!ok) {
            status = exit_disagreement;
        }
    }
    return status;
}

}  // namespace pstts::cli
