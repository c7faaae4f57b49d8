// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include "pstts/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "pstts/error.hpp"

namespace pstts {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') {
            quoted = !quoted;
        } else if (line[i] == '#' && !quoted) {
            return line.substr(0, i);
        }
    }
    return line;
}

std::string numeric_text(const std::string& key, const std::string& raw) {
    std::string text;
    for (char c : raw) {
        if (c != '_') {
            text.push_back(c);
        }
    }
    if (!text.empty() && text.front() == '+') {
        text.erase(0, 1);
    }
    if (text.empty()) {
        throw ArgumentError("config key '" + key + "' has an empty value");
    }
    return text;
}

std::size_t get_size(const KeyValueConfig& kv, const std::string& key, std::size_t fallback, std::int64_t min) {
    const auto v = kv.get_int(key);
    if (!v) {
        return fallback;
    }
    if (*v < min) {
        throw ArgumentError("config key '" + key + "' must be at least " + std::to_string(min));
    }
    return static_cast<std::size_t>(*v);
}

template <typename T>
void read_into(const std::optional<T>& v, T& out) {
    if (v) {
        out = *v;
    }
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
    KeyValueConfig kv;
    std::string prefix;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(strip_comment(raw));
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ParseError("malformed section header", line_no);
            }
            prefix = trim(std::string_view(line).substr(1, line.size() - 2)) + ".";
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected 'key = value'", line_no);
        }
        const auto key = trim(std::string_view(line).substr(0, eq));
        auto value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) {
            throw ParseError("empty key", line_no);
        }
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        const auto full = prefix + key;
        if (kv.m_values.contains(full)) {
            throw ParseError("duplicate key '" + full + "'", line_no);
        }
        kv.m_values.emplace(full, std::move(value));
    }
    return kv;
}

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse(in);
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open config file '" + path + "'");
    }
    return parse(in);
}

void KeyValueConfig::set(const std::string& key, std::string value) {
    m_values[key] = std::move(value);
}

bool KeyValueConfig::contains(const std::string& key) const {
    return m_values.contains(key);
}

std::optional<std::string> KeyValueConfig::get_string(const std::string& key) const {
    const auto it = m_values.find(key);
    if (it == m_values.end()) {
        return std::nullopt;
    }
    m_used.insert(key);
    return it->second;
}

std::optional<std::int64_t> KeyValueConfig::get_int(const std::string& key) const {
    const auto raw = get_string(key);
    if (!raw) {
        return std::nullopt;
    }
    const auto text = numeric_text(key, *raw);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ArgumentError("config key '" + key + "' expects an integer, got '" + *raw + "'");
    }
    return value;
}

std::optional<double> KeyValueConfig::get_double(const std::string& key) const {
    const auto raw = get_string(key);
    if (!raw) {
        return std::nullopt;
    }
    const auto text = numeric_text(key, *raw);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ArgumentError("config key '" + key + "' expects a number, got '" + *raw + "'");
    }
    return value;
}

std::optional<bool> KeyValueConfig::get_bool(const std::string& key) const {
    const auto raw = get_string(key);
    if (!raw) {
        return std::nullopt;
    }
    if (*raw == "true" || *raw == "1") {
        return true;
    }
    if (*raw == "false" || *raw == "0") {
        return false;
    }
    throw ArgumentError("config key '" + key + "' expects true or false, got '" + *raw + "'");
}

std::vector<std::size_t> KeyValueConfig::indices(const std::string& prefix) const {
    std::vector<std::size_t> out;
    const auto head = prefix + ".";
    for (const auto& [key, value] : m_values) {
        if (key.rfind(head, 0) != 0) {
            continue;
        }
        const auto rest = std::string_view(key).substr(head.size());
        const auto dot = rest.find('.');
        if (dot == std::string_view::npos) {
            continue;
        }
        std::size_t n = 0;
        const auto digits = rest.substr(0, dot);
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
        if (ec == std::errc() && ptr == digits.data() + digits.size()) {
            out.push_back(n);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void KeyValueConfig::reject_unknown() const {
    std::string unknown;
    for (const auto& [key, value] : m_values) {
        if (!m_used.contains(key)) {
            unknown += (unknown.empty() ? "" : ", ") + key;
        }
    }
    if (!unknown.empty()) {
        throw ArgumentError("unknown config key(s): " + unknown);
    }
}

RunConfig run_config_from(const KeyValueConfig& kv) {
    RunConfig rc;
    auto& p = rc.pipeline;

    if (const auto v = kv.get_int("interval_us")) {
        if (*v <= 0) {
            throw ArgumentError("config key 'interval_us' must be positive");
        }
        p.interval_us = *v;
    }
    if (kv.contains("frames")) {
        p.max_frames = get_size(kv, "frames", 0, 1);
    }
    p.bins = get_size(kv, "bins", p.bins, 1);
    p.patch_size = get_size(kv, "patch_size", p.patch_size, 1);

    read_into(kv.get_double("lif.tau"), p.lif.tau);
    read_into(kv.get_double("lif.v_th"), p.lif.v_th);
    read_into(kv.get_double("lif.v_reset"), p.lif.v_reset);

    p.stc.radius = static_cast<int>(get_size(kv, "stc.radius", static_cast<std::size_t>(p.stc.radius), 1));
    read_into(kv.get_double("stc.sigma_s"), p.stc.sigma_s);
    if (const auto s = kv.get_string("stc.sigma_t"); s && *s != "auto") {
        p.stc.sigma_t = kv.get_double("stc.sigma_t");
    }

    if (const auto a = kv.get_string("tts.aggregation")) {
        p.tts.aggregation = temporal::aggregation_from_string(*a);
    }
    read_into(kv.get_double("tts.epsilon"), p.tts.epsilon);
    read_into(kv.get_bool("tts.use_stc"), p.tts.use_stc);
    read_into(kv.get_bool("tts.use_l2"), p.tts.use_l2);

    const auto ratio = kv.get_double("fixed_ratio");
    const auto selection = kv.get_string("selection").value_or(ratio ? "fixed_ratio" : "adaptive_mean");
    if (selection == "adaptive_mean") {
        p.strategy = temporal::SelectionStrategy::adaptive();
    } else if (selection == "fixed_ratio") {
        if (!ratio) {
            throw ArgumentError("selection = fixed_ratio requires fixed_ratio = <r>");
        }
        p.strategy = temporal::SelectionStrategy::fixed(*ratio);
    } else {
        throw ArgumentError("unknown selection '" + selection + "' (adaptive_mean, fixed_ratio)");
    }
    p.threads = get_size(kv, "threads", 0, 0);

    auto& m = rc.model;
    m.layers = get_size(kv, "model.layers", m.layers, 1);
    m.embed_dim = get_size(kv, "model.embed_dim", m.embed_dim, 1);
    read_into(kv.get_double("model.mlp_ratio"), m.mlp_ratio);
    rc.tokens_per_frame_given = kv.contains("model.tokens_per_frame");
    m.tokens_per_frame = get_size(kv, "model.tokens_per_frame", m.tokens_per_frame, 1);
    m.dense_layers = get_size(kv, "model.dense_layers", m.dense_layers, 0);

    read_into(kv.get_bool("output.maps"), rc.output.write_maps);

    const auto width = kv.get_int("width");
    const auto height = kv.get_int("height");
    if (width || height) {
        if (!width || !height || *width <= 0 || *height <= 0) {
            throw ArgumentError("width and height must both be given and positive");
        }
        rc.geometry = events::Geometry{static_cast<std::uint32_t>(*width), static_cast<std::uint32_t>(*height)};
    }

    p.validate();
    return rc;
}

synth::SceneSpec scene_spec_from(const KeyValueConfig& kv) {
    synth::SceneSpec s;
    s.geometry.width = static_cast<std::uint32_t>(get_size(kv, "width", s.geometry.width, 1));
    s.geometry.height = static_cast<std::uint32_t>(get_size(kv, "height", s.geometry.height, 1));
    read_into(kv.get_int("duration_us"), s.duration_us);
    read_into(kv.get_int("time_step_us"), s.time_step_us);
    read_into(kv.get_int("frame_interval_us"), s.frame_interval_us);
    s.patch_size = get_size(kv, "patch_size", s.patch_size, 1);
    if (const auto seed = kv.get_int("seed")) {
        s.seed = static_cast<std::uint64_t>(*seed);
    }

    for (auto i : kv.indices("edge")) {
        const auto k = "edge." + std::to_string(i) + ".";
        synth::MovingEdge e;
        const auto orientation = kv.get_string(k + "orientation").value_or("horizontal");
        if (orientation == "horizontal") {
            e.orientation = synth::Orientation::horizontal;
        } else if (orientation == "vertical") {
            e.orientation = synth::Orientation::vertical;
        } else {
            throw ArgumentError("edge orientation must be horizontal or vertical, got '" + orientation + "'");
        }
        read_into(kv.get_double(k + "position"), e.position);
        read_into(kv.get_double(k + "velocity"), e.velocity);
        if (const auto v = kv.get_int(k + "thickness")) {
            e.thickness = static_cast<int>(*v);
        }
        if (const auto v = kv.get_int(k + "span_begin")) {
            e.span_begin = static_cast<int>(*v);
        }
        if (const auto v = kv.get_int(k + "span_end")) {
            e.span_end = static_cast<int>(*v);
        }
        read_into(kv.get_double(k + "rate"), e.rate);
        read_into(kv.get_int(k + "t_on"), e.t_on);
        read_into(kv.get_int(k + "t_off"), e.t_off);
        s.edges.push_back(e);
    }

    for (auto i : kv.indices("texture")) {
        const auto k = "texture." + std::to_string(i) + ".";
        synth::StaticTexture t;
        const auto geti = [&](const char* name, int& out) {
            if (const auto v = kv.get_int(k + name)) {
                out = static_cast<int>(*v);
            }
        };
        geti("x0", t.x0);
        geti("y0", t.y0);
        geti("x1", t.x1);
        geti("y1", t.y1);
        geti("period", t.period);
        geti("duty", t.duty);
        read_into(kv.get_double(k + "rate"), t.rate);
        read_into(kv.get_int(k + "t_on"), t.t_on);
        read_into(kv.get_int(k + "t_off"), t.t_off);
        s.textures.push_back(t);
    }
    s.validate();
    return s;
}

synth::NoiseSpec noise_spec_from(const KeyValueConfig& kv, const std::string& prefix) {
    synth::NoiseSpec n;
    read_into(kv.get_double(prefix + "shot_noise_rate"), n.shot_noise_rate);
    n.hot_pixels = get_size(kv, prefix + "hot_pixels", n.hot_pixels, 0);
    read_into(kv.get_double(prefix + "hot_pixel_rate"), n.hot_pixel_rate);
    if (const auto seed = kv.get_int(prefix + "seed")) {
        n.seed = static_cast<std::uint64_t>(*seed);
    }
    n.validate();
    return n;
}

BenchExpectations bench_expectations_from(const KeyValueConfig& kv) {
    BenchExpectations e;
    e.noise_drop_min = kv.get_double("expect.noise_drop_min");
    e.active_keep_min = kv.get_double("expect.active_keep_min");
    e.redundant_drop_min = kv.get_double("expect.redundant_drop_min");
    e.fresh_keep_min = kv.get_double("expect.fresh_keep_min");
    e.keep_ratio_max = kv.get_double("expect.keep_ratio_max");
    return e;
}

}  // namespace pstts
