// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "pstts/pgm.hpp"
#include "pstts/report.hpp"

using namespace pstts;
using nlohmann::json;

namespace {

SelectionResult two_cell_result() {
    SelectionResult r;
    r.grid_rows = 1;
    r.grid_cols = 2;
    FrameResult f;
    f.stage1.mask.kept = spatial::KeepMask(1, 2, 1);
    f.stage1.mask.kept_count = 2;
    f.stage1.mask.alpha = 0.25;
    f.final_kept = spatial::KeepMask(1, 2, 0);
    f.final_kept[1] = 1;
    f.final_count = 1;
    f.score_threshold = 0.5;
    f.keep_ratio = 0.5;
    r.frames.push_back(f);
    r.keep_ratio = 0.5;
    return r;
}

}  // namespace

TEST(Report, MaskJsonLayout) {
    const auto doc = json::parse(mask_json(two_cell_result()));
    EXPECT_EQ(doc["grid"], json::array({1, 2}));
    EXPECT_EQ(doc["frames"][0]["stage1"], json::array({0, 1}));
    EXPECT_EQ(doc["frames"][0]["final"], json::array({1}));
}

TEST(Report, StatsJsonHasStableKeys) {
    const auto r = two_cell_result();
    synth::ModelDims dims;
    dims.frames = 1;
    dims.tokens_per_frame = 2;
    const auto doc = json::parse(stats_json(r, synth::flops_report(r, dims)));
    for (const char* key : {"frames", "per_frame", "keep_ratio", "flops"}) {
        EXPECT_TRUE(doc.contains(key)) << key;
    }
    for (const char* key : {"m_stage1", "m_final", "alpha", "score_threshold"}) {
        EXPECT_TRUE(doc["per_frame"][0].contains(key)) << key;
    }
    EXPECT_EQ(doc["per_frame"][0]["m_final"], 1);
    EXPECT_DOUBLE_EQ(doc["flops"]["reduction"].get<double>(), synth::flops_report(r, dims).reduction);
}

TEST(Report, GroundTruthJson) {
    synth::GroundTruth t;
    t.grid_rows = 1;
    t.grid_cols = 2;
    t.frames = {{synth::PatchLabel::active, synth::PatchLabel::noise_only}};
    t.hot_pixels = {{3, 4}};
    const auto doc = json::parse(ground_truth_json(t));
    EXPECT_EQ(doc["frames"][0], json::array({"active", "noise_only"}));
    EXPECT_EQ(doc["hot_pixels"][0], json::array({3, 4}));
}

TEST(Pgm, MinMaxNormalised) {
    Grid<double> m(1, 3);
    m[0] = 1.0;
    m[1] = 2.0;
    m[2] = 3.0;
    std::ostringstream out;
    write_pgm(out, m);
    const auto s = out.str();
    ASSERT_EQ(s.substr(0, 11), "P5\n3 1\n255\n");
    EXPECT_EQ(static_cast<unsigned char>(s[11]), 0);
    EXPECT_EQ(static_cast<unsigned char>(s[13]), 255);
}

TEST(Pgm, ConstantMapIsBlack) {
    std::ostringstream out;
    write_pgm(out, Grid<std::uint32_t>(2, 2, 7));
    const auto s = out.str();
    EXPECT_EQ(s.substr(s.size() - 4), std::string(4, '\0'));
}
