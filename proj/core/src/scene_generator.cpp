// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <string>

#include "pstts/counter_rng.hpp"
#include "pstts/error.hpp"
#include "pstts/synthetic_bench.hpp"

namespace pstts::synth {

namespace {

using events::Event;
using events::Timestamp;

constexpr std::uint64_t k_stream_shot = 1;
constexpr std::uint64_t k_stream_hot_pick = 2;
constexpr std::uint64_t k_stream_hot_events = 3;
constexpr std::uint64_t k_stream_edge = 100;
constexpr std::uint64_t k_stream_texture = 10'000;

struct Rect {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;

    bool empty() const {
        return x1 <= x0 || y1 <= y0;
    }
};

Rect clip(Rect r, const events::Geometry& g) {
    r.x0 = std::max(r.x0, 0);
    r.y0 = std::max(r.y0, 0);
    r.x1 = std::min(r.x1, static_cast<int>(g.width));
    r.y1 = std::min(r.y1, static_cast<int>(g.height));
    return r;
}

bool live_at(Timestamp t, Timestamp on, Timestamp off) {
    return t >= on && (off < 0 || t < off);
}

Rect edge_footprint(const MovingEdge& e, Timestamp t, const events::Geometry& g) {
    const double pos = e.position + e.velocity * static_cast<double>(t) * 1e-6;
    const int lead = static_cast<int>(std::floor(pos));
    const int span_end =
        e.span_end < 0 ? static_cast<int>(e.orientation == Orientation::horizontal ? g.width : g.height) : e.span_end;
    Rect r;
    if (e.orientation == Orientation::horizontal) {
        r = {e.span_begin, lead, span_end, lead + e.thickness};
    } else {
        r = {lead, e.span_begin, lead + e.thickness, span_end};
    }
    return clip(r, g);
}

bool texture_fires(const StaticTexture& tex, int x, int y) {
    if (tex.period <= 0) {
        return true;
    }
    return ((x - tex.x0) + (y - tex.y0)) % tex.period < tex.duty;
}

class SceneBuilder {
public:
    SceneBuilder(const SceneSpec& spec)
        : m_spec(spec),
          m_width(spec.geometry.width),
          m_height(spec.geometry.height),
          m_frames(static_cast<std::size_t>(
              std::max<Timestamp>(1, (spec.duration_us + spec.frame_interval_us - 1) / spec.frame_interval_us))),
          m_grid_rows((m_height + spec.patch_size - 1) / spec.patch_size),
          m_grid_cols((m_width + spec.patch_size - 1) / spec.patch_size),
          m_occupancy(m_frames * m_width * m_height, 0),
          m_noise_hits(m_frames * m_grid_rows * m_grid_cols, 0) {}

    std::size_t frame_of(Timestamp t) const {
        return std::min(static_cast<std::size_t>(t / m_spec.frame_interval_us), m_frames - 1);
    }

    std::size_t cell_of(std::size_t x, std::size_t y) const {
        return (y / m_spec.patch_size) * m_grid_cols + x / m_spec.patch_size;
    }

    void emit(CounterRng& rng, const Rect& r, double lambda, Timestamp t0, Timestamp t1, bool mark,
              const StaticTexture* tex = nullptr) {
        const std::size_t k = frame_of(t0);
        auto* occ = m_occupancy.data() + k * m_width * m_height;
        for (int y = r.y0; y < r.y1; ++y) {
            for (int x = r.x0; x < r.x1; ++x) {
                if (tex != nullptr && !texture_fires(*tex, x, y)) {
                    continue;
                }
                if (mark) {
                    occ[static_cast<std::size_t>(y) * m_width + static_cast<std::size_t>(x)] = 1;
                }
                const auto n = rng.poisson(lambda);
                for (std::uint64_t i = 0; i < n; ++i) {
                    push(rng, static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y), t0, t1);
                }
            }
        }
    }

    void push(CounterRng& rng, std::uint32_t x, std::uint32_t y, Timestamp t0, Timestamp t1) {
        const auto t = t0 + static_cast<Timestamp>(rng.below(static_cast<std::uint64_t>(t1 - t0)));
        const auto p = static_cast<std::int8_t>(rng.next() & 1 ? 1 : -1);
        m_events.push_back(Event{t, x, y, p});
    }

    void push_noise(CounterRng& rng, std::uint32_t x, std::uint32_t y, Timestamp t0, Timestamp t1) {
        push(rng, x, y, t0, t1);
        ++m_noise_hits[frame_of(m_events.back().t) * m_grid_rows * m_grid_cols + cell_of(x, y)];
    }

    bool patch_ever_occupied(std::size_t cell) const {
        const std::size_t gy = cell / m_grid_cols;
        const std::size_t gx = cell % m_grid_cols;
        const std::size_t p = m_spec.patch_size;
        for (std::size_t k = 0; k < m_frames; ++k) {
            const auto* occ = m_occupancy.data() + k * m_width * m_height;
            for (std::size_t y = gy * p; y < std::min(m_height, (gy + 1) * p); ++y) {
                for (std::size_t x = gx * p; x < std::min(m_width, (gx + 1) * p); ++x) {
                    if (occ[y * m_width + x]) {
                        return true;
                    }
                }
            }
        }
        return false;
    }

    GroundTruth label() const {
        GroundTruth truth;
        truth.grid_rows = m_grid_rows;
        truth.grid_cols = m_grid_cols;
        truth.frames.assign(m_frames, std::vector<PatchLabel>(m_grid_rows * m_grid_cols, PatchLabel::empty));
        const std::size_t p = m_spec.patch_size;
        for (std::size_t k = 0; k < m_frames; ++k) {
            const auto* occ = m_occupancy.data() + k * m_width * m_height;
            const auto* prev = k > 0 ? occ - m_width * m_height : nullptr;
            for (std::size_t cell = 0; cell < m_grid_rows * m_grid_cols; ++cell) {
                const std::size_t gy = cell / m_grid_cols;
                const std::size_t gx = cell % m_grid_cols;
                bool active = false;
                bool same = prev != nullptr;
                for (std::size_t y = gy * p; y < std::min(m_height, (gy + 1) * p); ++y) {
                    for (std::size_t x = gx * p; x < std::min(m_width, (gx + 1) * p); ++x) {
                        const auto i = y * m_width + x;
                        active = active || occ[i];
                        same = same && occ[i] == prev[i];
                    }
                }
                auto& out = truth.frames[k][cell];
                if (active) {
                    out = same ? PatchLabel::redundant : PatchLabel::active;
                } else if (m_noise_hits[k * m_grid_rows * m_grid_cols + cell] > 0) {
                    out = PatchLabel::noise_only;
                }
            }
        }
        return truth;
    }

    std::vector<Event> take_events() {
        return std::move(m_events);
    }

    std::size_t width() const {
        return m_width;
    }
    std::size_t height() const {
        return m_height;
    }
    std::size_t grid_cols() const {
        return m_grid_cols;
    }
    std::size_t cells() const {
        return m_grid_rows * m_grid_cols;
    }

private:
    const SceneSpec& m_spec;
    std::size_t m_width;
    std::size_t m_height;
    std::size_t m_frames;
    std::size_t m_grid_rows;
    std::size_t m_grid_cols;
    std::vector<std::uint8_t> m_occupancy;  // [k][y][x]
    std::vector<std::uint32_t> m_noise_hits;  // [k][cell]
    std::vector<Event> m_events;
};

}  // namespace

void SceneSpec::validate() const {
    if (geometry.width == 0 || geometry.height == 0) {
        throw ArgumentError("scene geometry must be non-empty");
    }
    if (duration_us <= 0 || time_step_us <= 0 || frame_interval_us <= 0) {
        throw ArgumentError("scene duration, time step and frame interval must be positive");
    }
    if (patch_size == 0) {
        throw ArgumentError("scene patch size must be at least 1");
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        if (e.rate < 0.0 || e.thickness < 1 || e.span_begin < 0 ||
            (e.span_end >= 0 && e.span_end <= e.span_begin) || !std::isfinite(e.velocity)) {
            throw ArgumentError("edge " + std::to_string(i) + " is invalid");
        }
    }
    for (std::size_t i = 0; i < textures.size(); ++i) {
        const auto& t = textures[i];
        if (t.rate < 0.0 || t.x0 < 0 || t.y0 < 0 || t.x1 <= t.x0 || t.y1 <= t.y0 ||
            t.x1 > static_cast<int>(geometry.width) || t.y1 > static_cast<int>(geometry.height) || t.period < 0 ||
            t.duty < 0) {
            throw ArgumentError("texture " + std::to_string(i) + " is invalid or outside the sensor");
        }
    }
}

void NoiseSpec::validate() const {
    if (shot_noise_rate < 0.0 || hot_pixel_rate < 0.0) {
        throw ArgumentError("noise rates must be non-negative");
    }
}

std::string_view to_string(PatchLabel label) {
    switch (label) {
    case PatchLabel::empty:
        return "empty";
    case PatchLabel::noise_only:
        return "noise_only";
    case PatchLabel::active:
        return "active";
    case PatchLabel::redundant:
        return "redundant";
    }
    return "empty";
}

Scene generate_scene(const SceneSpec& spec, const NoiseSpec& noise) {
    spec.validate();
    noise.validate();
    SceneBuilder builder(spec);

    std::vector<CounterRng> edge_rng;
    for (std::size_t i = 0; i < spec.edges.size(); ++i) {
        edge_rng.emplace_back(spec.seed, k_stream_edge + i);
    }
    std::vector<CounterRng> texture_rng;
    for (std::size_t i = 0; i < spec.textures.size(); ++i) {
        texture_rng.emplace_back(spec.seed, k_stream_texture + i);
    }

    // Scene elements; occupancy is sampled at the start of every time step. Silent elements
    // (rate 0) leave no footprint in the ground truth.
    for (Timestamp t0 = 0; t0 < spec.duration_us; t0 += spec.time_step_us) {
        const Timestamp t1 = std::min(t0 + spec.time_step_us, spec.duration_us);
        const double dt = static_cast<double>(t1 - t0) * 1e-6;
        for (std::size_t i = 0; i < spec.edges.size(); ++i) {
            const auto& e = spec.edges[i];
            if (!live_at(t0, e.t_on, e.t_off)) {
                continue;
            }
            const auto r = edge_footprint(e, t0, spec.geometry);
            if (!r.empty()) {
                builder.emit(edge_rng[i], r, e.rate * dt, t0, t1, e.rate > 0.0);
            }
        }
        for (std::size_t i = 0; i < spec.textures.size(); ++i) {
            const auto& tex = spec.textures[i];
            if (!live_at(t0, tex.t_on, tex.t_off)) {
                continue;
            }
            builder.emit(texture_rng[i], Rect{tex.x0, tex.y0, tex.x1, tex.y1}, tex.rate * dt, t0, t1, tex.rate > 0.0,
                         &tex);
        }
    }

    GroundTruth hot_truth;
    if (noise.hot_pixels > 0) {
        std::vector<std::size_t> free_cells;
        for (std::size_t cell = 0; cell < builder.cells(); ++cell) {
            if (!builder.patch_ever_occupied(cell)) {
                free_cells.push_back(cell);
            }
        }
        if (free_cells.size() < noise.hot_pixels) {
            throw ArgumentError("only " + std::to_string(free_cells.size()) +
                                " patches are free of scene elements; cannot place " +
                                std::to_string(noise.hot_pixels) + " hot pixels");
        }
        CounterRng pick(noise.seed, k_stream_hot_pick);
        for (std::size_t i = 0; i < noise.hot_pixels; ++i) {
            const auto j = i + static_cast<std::size_t>(pick.below(free_cells.size() - i));
            std::swap(free_cells[i], free_cells[j]);
            const std::size_t cell = free_cells[i];
            const std::size_t gx = cell % builder.grid_cols();
            const std::size_t gy = cell / builder.grid_cols();
            const std::size_t x0 = gx * spec.patch_size;
            const std::size_t y0 = gy * spec.patch_size;
            const std::size_t pw = std::min(spec.patch_size, builder.width() - x0);
            const std::size_t ph = std::min(spec.patch_size, builder.height() - y0);
            const auto x = static_cast<std::uint32_t>(x0 + pick.below(pw));
            const auto y = static_cast<std::uint32_t>(y0 + pick.below(ph));
            hot_truth.hot_pixels.emplace_back(x, y);
        }
    }

    CounterRng shot(noise.seed, k_stream_shot);
    CounterRng hot(noise.seed, k_stream_hot_events);
    const double sensor_px = static_cast<double>(builder.width() * builder.height());
    for (Timestamp t0 = 0; t0 < spec.duration_us; t0 += spec.time_step_us) {
        const Timestamp t1 = std::min(t0 + spec.time_step_us, spec.duration_us);
        const double dt = static_cast<double>(t1 - t0) * 1e-6;
        if (noise.shot_noise_rate > 0.0) {
            const auto n = shot.poisson(noise.shot_noise_rate * sensor_px * dt);
            for (std::uint64_t i = 0; i < n; ++i) {
                const auto x = static_cast<std::uint32_t>(shot.below(builder.width()));
                const auto y = static_cast<std::uint32_t>(shot.below(builder.height()));
                builder.push_noise(shot, x, y, t0, t1);
            }
        }
        for (const auto& [x, y] : hot_truth.hot_pixels) {
            const auto n = hot.poisson(noise.hot_pixel_rate * dt);
            for (std::uint64_t i = 0; i < n; ++i) {
                builder.push_noise(hot, x, y, t0, t1);
            }
        }
    }

    Scene scene;
    scene.truth = builder.label();
    scene.truth.hot_pixels = std::move(hot_truth.hot_pixels);
    scene.stream = events::EventStream(spec.geometry, builder.take_events(), 0, spec.duration_us);
    return scene;
}

}  // namespace pstts::synth
