// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "commands.hpp"
#include "pstts/error.hpp"
#include "pstts/report.hpp"
#include "pstts/synthetic_bench.hpp"

namespace pstts::cli {

int generate_command(const GenerateOptions& options) {
    const auto kv = KeyValueConfig::load(options.scene);
    const auto scene_spec = scene_spec_from(kv);
    auto noise_spec = noise_spec_from(kv, "noise.");
    if (options.noise) {
        const auto noise_kv = KeyValueConfig::load(*options.noise);
        noise_spec = noise_spec_from(noise_kv);
        noise_kv.reject_unknown();
    }

    const auto scene = synth::generate_scene(scene_spec, noise_spec);
    const bool binary = options.format == "binary";

    const std::filesystem::path out(options.out);
    std::filesystem::create_directories(out);
    const auto events_path = out / (binary ? "events.bin" : "events.csv");
    std::ofstream sink(events_path, std::ios::binary);
    events::write_events(sink, scene.stream, binary ? events::EventFormat::binary : events::EventFormat::csv);
    if (!sink) {
        throw Error("cannot write '" + events_path.string() + "'");
    }
    write_text((out / "ground_truth.json").string(), ground_truth_json(scene.truth));

    std::printf("wrote %zu events to %s\n", scene.stream.size(), events_path.string().c_str());
    return exit_ok;
}

}  // namespace pstts::cli
