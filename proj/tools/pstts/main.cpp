// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "pstts/error.hpp"

using namespace pstts::cli;

int main(int argc, char** argv) {
    CLI::App app{"Event-stream token sparsification"};
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Run both stages over an event file and write masks and stats");
    run_cmd->add_option("--config", run.config, "Pipeline config file")->check(CLI::ExistingFile);
    run_cmd->add_option("--input", run.input, "Event file (.csv, .bin)")->required();
    run_cmd->add_option("--out", run.out, "Output directory")->required();
    run_cmd->add_flag("--maps", run.maps, "Write per-frame PGM score maps");
    run_cmd->add_option("--fixed-ratio", run.fixed_ratio, "Keep a fixed share of stage-1 tokens per frame")
        ->check(CLI::Range(0.0, 1.0));
    run_cmd->add_option("--threads", run.threads, "Worker threads (default: PSTTS_THREADS or core count)");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Evaluate a synthetic scene against its ground truth");
    bench_cmd->add_option("--scene", bench.scene, "Scene description file")->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--noise", bench.noise, "Noise description file")->check(CLI::ExistingFile);
    bench_cmd->add_option("--threads", bench.threads, "Worker threads");

    OracleOptions oracle;
    auto* oracle_cmd = app.add_subcommand("oracle", "Cross-check stage 1 against the reference implementation");
    oracle_cmd->add_option("--input", oracle.input, "Event file (.csv, .bin)")->required();
    oracle_cmd->add_option("--config", oracle.config, "Pipeline config file")->check(CLI::ExistingFile);
    oracle_cmd->add_option("--tolerance", oracle.tolerance, "Absolute tolerance on real-valued maps");

    GenerateOptions generate;
    auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic scene and its ground truth");
    generate_cmd->add_option("--scene", generate.scene, "Scene description file")->required()->check(CLI::ExistingFile);
    generate_cmd->add_option("--noise", generate.noise, "Noise description file")->check(CLI::ExistingFile);
    generate_cmd->add_option("--out", generate.out, "Output directory")->required();
    generate_cmd->add_option("--format", generate.format, "Event file format")
        ->check(CLI::IsMember({"csv", "binary"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*run_cmd) {
            return run_command(run);
        }
        if (*bench_cmd) {
            return bench_command(bench);
        }
        if (*oracle_cmd) {
            return oracle_command(oracle);
        }
        return generate_command(generate);
    } catch (const pstts::ArgumentError& e) {
        std::cerr << "pstts: invalid configuration: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "pstts: error: " << e.what() << "\n";
        return exit_error;
    }
}
