// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include "pstts/event_model.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstring>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>

#include "pstts/error.hpp"

namespace pstts::events {

namespace {

constexpr std::array<char, 4> k_binary_magic = {'E', 'V', 'S', '1'};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

template <typename Int>
bool parse_int(std::string_view field, Int& out) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') {
        field.remove_prefix(1);
    }
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, out);
    return ec == std::errc() && ptr == end && !field.empty();
}

std::int8_t normalize_polarity(long long raw, std::size_t line) {
    switch (raw) {
    case 1:
        return 1;
    case 0:
    case -1:
        return -1;
    default:
        throw ValueError("line " + std::to_string(line) + ": polarity " + std::to_string(raw) +
                         " not in {-1, 0, 1}");
    }
}

void check_bounds(const Geometry& geometry, std::uint32_t x, std::uint32_t y, std::size_t line) {
    if (!geometry.contains(x, y)) {
        throw BoundsError("line " + std::to_string(line) + ": event (" + std::to_string(x) + ", " +
                          std::to_string(y) + ") outside " + std::to_string(geometry.width) + "x" +
                          std::to_string(geometry.height) + " sensor");
    }
}

// Returns true and fills `out` when the line is a `# W=<int> H=<int>` header.
bool parse_header(std::string_view line, Geometry& out) {
    line = trim(line);
    if (line.empty() || line.front() != '#') {
        return false;
    }
    line.remove_prefix(1);
    std::optional<std::uint32_t> w;
    std::optional<std::uint32_t> h;
    std::istringstream tokens{std::string(line)};
    std::string token;
    while (tokens >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) {
            continue;
        }
        std::uint32_t value = 0;
        if (!parse_int(std::string_view(token).substr(eq + 1), value)) {
            continue;
        }
        const auto key = token.substr(0, eq);
        if (key == "W") {
            w = value;
        } else if (key == "H") {
            h = value;
        }
    }
    if (w && h) {
        out = Geometry{*w, *h};
        return true;
    }
    return false;
}

EventStream parse_csv(std::istream& source, std::optional<Geometry> fallback) {
    std::optional<Geometry> geometry;
    std::vector<Event> events;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(source, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            Geometry header;
            if (events.empty() && !geometry && parse_header(line, header)) {
                geometry = header;
            }
            continue;
        }
        if (!geometry) {
            if (!fallback) {
                throw ParseError("no '# W=<int> H=<int>' header and no geometry supplied", line_no);
            }
            geometry = fallback;
        }

        std::array<std::string_view, 4> fields;
        std::size_t n_fields = 0;
        std::string_view rest = line;
        while (true) {
            const auto comma = rest.find(',');
            if (n_fields == fields.size()) {
                throw ParseError("expected 4 fields t,x,y,p", line_no);
            }
            fields[n_fields++] = rest.substr(0, comma);
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
        if (n_fields != fields.size()) {
            throw ParseError("expected 4 fields t,x,y,p", line_no);
        }

        Timestamp t = 0;
        std::uint32_t x = 0;
        std::uint32_t y = 0;
        long long p = 0;
        if (!parse_int(fields[0], t) || t < 0) {
            throw ParseError("bad timestamp '" + std::string(trim(fields[0])) + "'", line_no);
        }
        if (!parse_int(fields[1], x) || !parse_int(fields[2], y)) {
            throw ParseError("bad coordinate", line_no);
        }
        if (!parse_int(fields[3], p)) {
            throw ParseError("bad polarity '" + std::string(trim(fields[3])) + "'", line_no);
        }
        check_bounds(*geometry, x, y, line_no);
        events.push_back(Event{t, x, y, normalize_polarity(p, line_no)});
    }
    if (!geometry) {
        if (!fallback) {
            throw ParseError("no '# W=<int> H=<int>' header and no geometry supplied", line_no);
        }
        geometry = fallback;
    }
    return EventStream(*geometry, std::move(events));
}

template <typename T>
T load_le(const unsigned char* bytes) {
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        value |= static_cast<T>(static_cast<T>(bytes[i]) << (8 * i));
    }
    return value;
}

template <typename T>
void store_le(std::ostream& sink, T value) {
    std::array<char, sizeof(T)> bytes{};
    using U = std::make_unsigned_t<T>;
    auto u = static_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        bytes[i] = static_cast<char>(u & 0xFF);
        u = static_cast<U>(u >> 8);
    }
    sink.write(bytes.data(), bytes.size());
}

EventStream parse_binary(std::istream& source) {
    constexpr std::size_t header_size = 4 + 4 + 4 + 8;
    constexpr std::size_t record_size = 8 + 2 + 2 + 1;

    std::array<unsigned char, header_size> header{};
    source.read(reinterpret_cast<char*>(header.data()), header.size());
    if (source.gcount() != static_cast<std::streamsize>(header.size())) {
        throw ParseError("truncated binary header", 0);
    }
    if (std::memcmp(header.data(), k_binary_magic.data(), k_binary_magic.size()) != 0) {
        throw ParseError("bad magic, expected \"EVS1\"", 0);
    }
    const Geometry geometry{load_le<std::uint32_t>(header.data() + 4), load_le<std::uint32_t>(header.data() + 8)};
    const auto count = load_le<std::uint64_t>(header.data() + 12);

    std::vector<Event> events;
    events.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 24)));
    std::array<unsigned char, record_size> rec{};
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto record_no = static_cast<std::size_t>(i + 1);
        source.read(reinterpret_cast<char*>(rec.data()), rec.size());
        if (source.gcount() != static_cast<std::streamsize>(rec.size())) {
            throw ParseError("truncated record", record_no);
        }
        const auto t = load_le<std::uint64_t>(rec.data());
        if (t > static_cast<std::uint64_t>(std::numeric_limits<Timestamp>::max())) {
            throw ParseError("timestamp overflow", record_no);
        }
        const auto x = load_le<std::uint16_t>(rec.data() + 8);
        const auto y = load_le<std::uint16_t>(rec.data() + 10);
        const auto p = static_cast<std::int8_t>(rec[12]);
        check_bounds(geometry, x, y, record_no);
        events.push_back(Event{static_cast<Timestamp>(t), x, y, normalize_polarity(p, record_no)});
    }
    return EventStream(geometry, std::move(events));
}

void validate(const Geometry& geometry, std::span<const Event> events) {
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        if (!geometry.contains(e.x, e.y)) {
            throw BoundsError("event " + std::to_string(i) + " at (" + std::to_string(e.x) + ", " +
                              std::to_string(e.y) + ") outside sensor geometry");
        }
        if (e.p != 1 && e.p != -1) {
            throw ValueError("event " + std::to_string(i) + " has polarity " + std::to_string(e.p));
        }
        if (e.t < 0) {
            throw ValueError("event " + std::to_string(i) + " has negative timestamp");
        }
    }
}

}  // namespace

EventStream::EventStream(Geometry geometry, std::vector<Event> events)
    : m_geometry(geometry),
      m_events(std::move(events)) {
    validate(m_geometry, m_events);
    std::stable_sort(m_events.begin(), m_events.end(), [](const Event& a, const Event& b) {
        return a.t < b.t;
    });
    if (!m_events.empty()) {
        m_t_start = m_events.front().t;
        m_t_end = m_events.back().t;
    }
}

EventStream::EventStream(Geometry geometry, std::vector<Event> events, Timestamp t_start, Timestamp t_end)
    : EventStream(geometry, std::move(events)) {
    if (t_start > t_end) {
        throw ArgumentError("t_start after t_end");
    }
    if (!m_events.empty() && (m_events.front().t < t_start || m_events.back().t > t_end)) {
        throw ArgumentError("events outside [t_start, t_end]");
    }
    m_t_start = t_start;
    m_t_end = t_end;
}

DensitySequence::DensitySequence(std::size_t bins, Geometry geometry, double bin_duration)
    : m_bins(bins),
      m_geometry(geometry),
      m_bin_duration(bin_duration),
      m_counts(bins * geometry.width * geometry.height, 0) {}

std::uint64_t DensitySequence::total() const noexcept {
    return std::accumulate(m_counts.begin(), m_counts.end(), std::uint64_t{0});
}

EventStream parse_events(std::istream& source, EventFormat format, std::optional<Geometry> fallback) {
    if (format == EventFormat::binary) {
        return parse_binary(source);
    }
    return parse_csv(source, fallback);
}

EventStream parse_events(std::string_view text, EventFormat format, std::optional<Geometry> fallback) {
    std::istringstream in{std::string(text)};
    return parse_events(in, format, fallback);
}

void write_events(std::ostream& sink, const EventStream& stream, EventFormat format) {
    const auto& g = stream.geometry();
    if (format == EventFormat::csv) {
        sink << "# W=" << g.width << " H=" << g.height << '\n';
        for (const auto& e : stream.events()) {
            sink << e.t << ',' << e.x << ',' << e.y << ',' << static_cast<int>(e.p) << '\n';
        }
        return;
    }
    if (g.width > 0xFFFF + 1u || g.height > 0xFFFF + 1u) {
        throw ArgumentError("binary format stores 16-bit coordinates");
    }
    sink.write(k_binary_magic.data(), k_binary_magic.size());
    store_le<std::uint32_t>(sink, g.width);
    store_le<std::uint32_t>(sink, g.height);
    store_le<std::uint64_t>(sink, stream.size());
    for (const auto& e : stream.events()) {
        store_le<std::uint64_t>(sink, static_cast<std::uint64_t>(e.t));
        store_le<std::uint16_t>(sink, static_cast<std::uint16_t>(e.x));
        store_le<std::uint16_t>(sink, static_cast<std::uint16_t>(e.y));
        store_le<std::int8_t>(sink, e.p);
    }
}

EventFormat format_for_path(std::string_view path) {
    const auto dot = path.rfind('.');
    if (dot != std::string_view::npos) {
        const auto ext = path.substr(dot);
        if (ext == ".bin" || ext == ".evs") {
            return EventFormat::binary;
        }
    }
    return EventFormat::csv;
}

std::vector<EventSegment> segment_stream(const EventStream& stream, Timestamp interval) {
    if (interval <= 0) {
        throw ArgumentError("segment interval must be positive, got " + std::to_string(interval));
    }
    const Timestamp span = stream.t_end() - stream.t_start();
    const auto k_count = static_cast<std::size_t>(std::max<Timestamp>(1, (span + interval - 1) / interval));

    std::vector<EventSegment> segments(k_count);
    for (std::size_t k = 0; k < k_count; ++k) {
        segments[k].index = k + 1;
        segments[k].t_begin = stream.t_start() + static_cast<Timestamp>(k) * interval;
        segments[k].duration = interval;
    }
    for (const auto& e : stream.events()) {
        const auto k = std::min(static_cast<std::size_t>((e.t - stream.t_start()) / interval), k_count - 1);
        segments[k].events.push_back(e);
    }
    return segments;
}

DensitySequence bin_density(const EventSegment& segment, std::size_t bins, Geometry geometry) {
    if (bins == 0) {
        throw ArgumentError("bin count must be at least 1");
    }
    if (segment.duration <= 0) {
        throw ArgumentError("segment duration must be positive");
    }
    DensitySequence density(bins, geometry, static_cast<double>(segment.duration) / static_cast<double>(bins));
    const auto duration = static_cast<std::uint64_t>(segment.duration);
    for (const auto& e : segment.events) {
        const Timestamp offset = e.t - segment.t_begin;
        if (offset < 0 || offset > segment.duration) {
            throw ArgumentError("event at t=" + std::to_string(e.t) + " outside segment window");
        }
        if (!geometry.contains(e.x, e.y)) {
            throw BoundsError("event (" + std::to_string(e.x) + ", " + std::to_string(e.y) +
                              ") outside sensor geometry");
        }
        // Half-open equal-width bins; t == window end falls into the last bin.
        const auto b = std::min<std::uint64_t>(static_cast<std::uint64_t>(offset) * bins / duration, bins - 1);
        ++density.at(static_cast<std::size_t>(b), e.y, e.x);
    }
    return density;
}

}  // namespace pstts::events
