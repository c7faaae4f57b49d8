// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "pstts/pipeline.hpp"
#include "pstts/synthetic_bench.hpp"

namespace pstts {

/// {"grid": [Hp, Wp], "frames": [{"stage1": [...], "final": [...]}]} with row-major cell indices.
std::string mask_json(const SelectionResult& result);

/// {"frames", "per_frame": [{"m_stage1", "m_final", "alpha", "score_threshold", ...}], "keep_ratio", "flops"}.
std::string stats_json(const SelectionResult& result, const synth::FlopsReport& flops);

/// {"grid": [Hp, Wp], "frames": [[label, ...], ...], "hot_pixels": [[x, y], ...]}.
std::string ground_truth_json(const synth::GroundTruth& truth);

}  // namespace pstts
