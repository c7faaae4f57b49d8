// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace pstts::events {

using Timestamp = std::int64_t;  // microseconds

struct Event {
    Timestamp t = 0;
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    std::int8_t p = 1;  // -1 or +1

    bool operator==(const Event&) const = default;
};

struct Geometry {
    std::uint32_t width = 0;
    std::uint32_t height = 0;

    bool contains(std::uint32_t x, std::uint32_t y) const noexcept {
        return x < width && y < height;
    }
    bool operator==(const Geometry&) const = default;
};

/// Time-ordered events on a fixed sensor geometry.
///
/// Construction validates coordinates and polarity and stably sorts by timestamp.
/// The time span defaults to [min t, max t] (or [0, 0] when empty) and may be widened
/// explicitly, e.g. when a recording is known to start before its first event.
class EventStream {
public:
    EventStream() = default;
    EventStream(Geometry geometry, std::vector<Event> events);
    EventStream(Geometry geometry, std::vector<Event> events, Timestamp t_start, Timestamp t_end);

    const Geometry& geometry() const noexcept {
        return m_geometry;
    }
    std::span<const Event> events() const noexcept {
        return m_events;
    }
    std::size_t size() const noexcept {
        return m_events.size();
    }
    bool empty() const noexcept {
        return m_events.empty();
    }
    Timestamp t_start() const noexcept {
        return m_t_start;
    }
    Timestamp t_end() const noexcept {
        return m_t_end;
    }

    bool operator==(const EventStream&) const = default;

private:
    Geometry m_geometry;
    std::vector<Event> m_events;
    Timestamp m_t_start = 0;
    Timestamp m_t_end = 0;
};

/// Events of one fixed-interval window [t_begin, t_begin + duration).
/// The final segment of a stream additionally owns events stamped exactly at its right edge.
struct EventSegment {
    std::vector<Event> events;
    std::size_t index = 1;  // 1-based position k in the stream
    Timestamp t_begin = 0;
    Timestamp duration = 0;
};

/// B x H x W per-pixel event counts for one segment, both polarities accumulated.
class DensitySequence {
public:
    DensitySequence() = default;
    DensitySequence(std::size_t bins, Geometry geometry, double bin_duration);

    std::size_t bins() const noexcept {
        return m_bins;
    }
    std::size_t height() const noexcept {
        return m_geometry.height;
    }
    std::size_t width() const noexcept {
        return m_geometry.width;
    }
    const Geometry& geometry() const noexcept {
        return m_geometry;
    }
    /// Nominal bin width in microseconds (may be fractional for non-divisible durations).
    double bin_duration() const noexcept {
        return m_bin_duration;
    }

    std::uint32_t& at(std::size_t b, std::size_t y, std::size_t x) {
        return m_counts[(b * m_geometry.height + y) * m_geometry.width + x];
    }
    std::uint32_t at(std::size_t b, std::size_t y, std::size_t x) const {
        return m_counts[(b * m_geometry.height + y) * m_geometry.width + x];
    }

    /// Flat [b][y][x] storage.
    std::span<const std::uint32_t> counts() const noexcept {
        return m_counts;
    }
    std::span<std::uint32_t> counts() noexcept {
        return m_counts;
    }

    std::uint64_t total() const noexcept;

    bool operator==(const DensitySequence&) const = default;

private:
    std::size_t m_bins = 0;
    Geometry m_geometry;
    double m_bin_duration = 0.0;
    std::vector<std::uint32_t> m_counts;
};

enum class EventFormat { csv, binary };

/// Reads an event stream.
///
/// CSV: optional header `# W=<int> H=<int>`, then `t,x,y,p` per line. Blank lines and other
/// `#` comment lines are skipped. Binary: "EVS1", u32 W, u32 H, u64 count, then count packed
/// records of (u64 t, u16 x, u16 y, i8 p), all little-endian.
///
/// Polarity 0 is read as -1. `fallback` supplies the geometry when a CSV has no header.
EventStream parse_events(std::istream& source, EventFormat format,
                         std::optional<Geometry> fallback = std::nullopt);
EventStream parse_events(std::string_view text, EventFormat format,
                         std::optional<Geometry> fallback = std::nullopt);

void write_events(std::ostream& sink, const EventStream& stream, EventFormat format);

/// Guesses the format from the file extension: ".bin"/".evs" are binary, everything else CSV.
EventFormat format_for_path(std::string_view path);

/// Splits a stream into K = max(1, ceil((t_end - t_start) / interval)) windows.
/// Windows with no events are still emitted.
std::vector<EventSegment> segment_stream(const EventStream& stream, Timestamp interval);

/// Accumulates a segment into `bins` equal-width temporal bins over its window.
DensitySequence bin_density(const EventSegment& segment, std::size_t bins, Geometry geometry);

}  // namespace pstts::events
