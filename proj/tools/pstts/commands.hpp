// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "pstts/config.hpp"
#include "pstts/event_model.hpp"

namespace pstts::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_error = 1,
    exit_usage = 2,
    exit_regression = 3,
    exit_disagreement = 4,
};

struct RunOptions {
    std::optional<std::string> config;
    std::string input;
    std::string out;
    bool maps = false;
    std::optional<double> fixed_ratio;
    std::optional<std::size_t> threads;
};

struct BenchOptions {
    std::string scene;
    std::optional<std::string> noise;
    std::optional<std::size_t> threads;
};

struct OracleOptions {
    std::string input;
    std::optional<std::string> config;
    double tolerance = 1e-9;
};

struct GenerateOptions {
    std::string scene;
    std::optional<std::string> noise;
    std::string out;
    std::string format = "csv";
};

int run_command(const RunOptions& options);
int bench_command(const BenchOptions& options);
int oracle_command(const OracleOptions& options);
int generate_command(const GenerateOptions& options);

// Shared helpers.
KeyValueConfig load_config(const std::optional<std::string>& path);
events::EventStream load_events(const std::string& path, std::optional<events::Geometry> fallback);
void write_text(const std::string& path, const std::string& text);
std::string format_rate(const std::optional<double>& value);

}  // namespace pstts::cli
