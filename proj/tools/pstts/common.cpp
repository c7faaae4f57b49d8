// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <fstream>

#include "commands.hpp"
#include "pstts/error.hpp"

namespace pstts::cli {

KeyValueConfig load_config(const std::optional<std::string>& path) {
    if (!path) {
        return {};
    }
    return KeyValueConfig::load(*path);
}

events::EventStream load_events(const std::string& path, std::optional<events::Geometry> fallback) {
    const auto format = events::format_for_path(path);
    std::ifstream in(path, format == events::EventFormat::binary ? std::ios::binary : std::ios::in);
    if (!in) {
        throw Error("cannot open event file '" + path + "'");
    }
    return events::parse_events(in, format, fallback);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
}

std::string format_rate(const std::optional<double>& value) {
    if (!value) {
        return "N/A";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", *value);
    return buf;
}

}  // namespace pstts::cli
