// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pstts/pipeline.hpp"
#include "pstts/synthetic_bench.hpp"

namespace pstts {

/// Flat TOML-style key/value file.
///
///     # comment
///     bins = 8
///     [lif]            # following keys are read as lif.<key>
///     tau = 2.0
///     [edge.0]
///     orientation = "horizontal"
///
/// Values are kept as text and converted on access. Every accessed key is recorded so that
/// leftovers can be reported as unknown.
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::istream& in);
    static KeyValueConfig parse(std::string_view text);
    static KeyValueConfig load(const std::string& path);

    /// Inserts or replaces a value (command-line overrides).
    void set(const std::string& key, std::string value);
    bool contains(const std::string& key) const;

    std::optional<std::string> get_string(const std::string& key) const;
    std::optional<std::int64_t> get_int(const std::string& key) const;
    std::optional<double> get_double(const std::string& key) const;
    std::optional<bool> get_bool(const std::string& key) const;

    /// Distinct N for keys shaped `<prefix>.<N>.<field>`, ascending.
    std::vector<std::size_t> indices(const std::string& prefix) const;

    /// Throws ArgumentError naming every key that no getter has read.
    void reject_unknown() const;

private:
    std::map<std::string, std::string> m_values;
    mutable std::set<std::string> m_used;
};

/// Output-side options of a pipeline run.
struct OutputOptions {
    bool write_maps = false;
};

struct RunConfig {
    PipelineConfig pipeline;
    synth::ModelDims model;
    bool tokens_per_frame_given = false;
    OutputOptions output;
    std::optional<events::Geometry> geometry;  // fallback for header-less CSV input
};

/// Reads the pipeline keys (interval_us, frames, bins, patch_size, lif.*, stc.*, tts.*, selection,
/// fixed_ratio, threads, model.*, output.maps, width, height). Missing keys keep their defaults.
RunConfig run_config_from(const KeyValueConfig& kv);

synth::SceneSpec scene_spec_from(const KeyValueConfig& kv);

/// Reads noise keys under `prefix` ("" for a standalone noise file, "noise." inside a scene file).
synth::NoiseSpec noise_spec_from(const KeyValueConfig& kv, const std::string& prefix = "");

/// Regression bounds a bench scene must meet. Unset bounds are not checked.
struct BenchExpectations {
    std::optional<double> noise_drop_min;
    std::optional<double> active_keep_min;
    std::optional<double> redundant_drop_min;
    std::optional<double> fresh_keep_min;
    std::optional<double> keep_ratio_max;
};

BenchExpectations bench_expectations_from(const KeyValueConfig& kv);

}  // namespace pstts
