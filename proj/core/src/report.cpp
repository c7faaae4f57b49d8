// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include "pstts/report.hpp"

#include <json.hpp>

namespace pstts {

using nlohmann::ordered_json;

std::string mask_json(const SelectionResult& result) {
    ordered_json doc;
    doc["grid"] = {result.grid_rows, result.grid_cols};
    doc["frames"] = ordered_json::array();
    for (const auto& f : result.frames) {
        ordered_json frame;
        frame["stage1"] = f.stage1_indices();
        frame["final"] = f.final_indices();
        doc["frames"].push_back(std::move(frame));
    }
    return doc.dump() + "\n";
}

std::string stats_json(const SelectionResult& result, const synth::FlopsReport& flops) {
    ordered_json doc;
    doc["frames"] = result.frames.size();
    doc["grid"] = {result.grid_rows, result.grid_cols};
    doc["per_frame"] = ordered_json::array();
    for (const auto& f : result.frames) {
        ordered_json frame;
        frame["m_stage1"] = f.stage1.mask.kept_count;
        frame["m_final"] = f.final_count;
        frame["alpha"] = f.stage1.mask.alpha;
        frame["score_threshold"] = f.score_threshold;
        frame["keep_ratio"] = f.keep_ratio;
        frame["sigma_t"] = f.stage1.maps.sigma_t;
        doc["per_frame"].push_back(std::move(frame));
    }
    doc["keep_ratio"] = result.keep_ratio;

    const auto block = [](const synth::BlockFlops& b) {
        return ordered_json{{"attention_linear", b.attention_linear},
                            {"attention_quadratic", b.attention_quadratic},
                            {"mlp", b.mlp}};
    };
    ordered_json f;
    f["tokens_per_frame"] = flops.tokens_per_frame;
    f["kept_tokens"] = flops.kept_tokens;
    f["dense_tokens"] = flops.dense_tokens;
    f["sparse_block"] = block(flops.sparse_block);
    f["dense_block"] = block(flops.dense_block);
    f["total_flops"] = flops.total_flops;
    f["dense_flops"] = flops.dense_flops;
    f["reduction"] = flops.reduction;
    doc["flops"] = std::move(f);
    return doc.dump(2) + "\n";
}

std::string ground_truth_json(const synth::GroundTruth& truth) {
    ordered_json doc;
    doc["grid"] = {truth.grid_rows, truth.grid_cols};
    doc["frames"] = ordered_json::array();
    for (const auto& frame : truth.frames) {
        ordered_json labels = ordered_json::array();
        for (auto label : frame) {
            labels.push_back(synth::to_string(label));
        }
        doc["frames"].push_back(std::move(labels));
    }
    doc["hot_pixels"] = ordered_json::array();
    for (const auto& [x, y] : truth.hot_pixels) {
        doc["hot_pixels"].push_back({x, y});
    }
    return doc.dump() + "\n";
}

}  // namespace pstts
