// Copyright (C) 2026 The pstts Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "pstts/error.hpp"
#include "pstts/event_model.hpp"

using namespace pstts;
using namespace pstts::events;

namespace {

EventStream random_stream(std::mt19937_64& rng, std::size_t n, Geometry g, Timestamp t_max) {
    std::uniform_int_distribution<Timestamp> t(0, t_max - 1);
    std::uniform_int_distribution<std::uint32_t> x(0, g.width - 1);
    std::uniform_int_distribution<std::uint32_t> y(0, g.height - 1);
    std::vector<Event> ev;
    for (std::size_t i = 0; i < n; ++i) {
        ev.push_back({t(rng), x(rng), y(rng), static_cast<std::int8_t>(i % 2 ? 1 : -1)});
    }
    return EventStream(g, std::move(ev));
}

std::vector<Event> list(const EventStream& s) {
    return {s.events().begin(), s.events().end()};
}

}  // namespace

TEST(ParseEvents, CsvBodyMapsFields) {
    const auto s = parse_events("# W=8 H=8\n100,3,4,1\n200,3,4,-1", EventFormat::csv);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s.geometry(), (Geometry{8, 8}));
    EXPECT_EQ(s.events()[0], (Event{100, 3, 4, 1}));
    EXPECT_EQ(s.events()[1], (Event{200, 3, 4, -1}));
    EXPECT_EQ(s.t_start(), 100);
    EXPECT_EQ(s.t_end(), 200);
}

TEST(ParseEvents, EmptyBodyWithHeader) {
    const auto s = parse_events("# W=8 H=8\n", EventFormat::csv);
    EXPECT_TRUE(s.empty());
    EXPECT_EQ(s.t_start(), 0);
    EXPECT_EQ(s.t_end(), 0);
}

TEST(ParseEvents, SortsByTimestamp) {
    const auto s = parse_events("# W=8 H=8\n200,1,1,1\n100,2,2,1\n", EventFormat::csv);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s.events()[0].t, 100);
    EXPECT_EQ(s.events()[1].t, 200);
}

TEST(ParseEvents, PolarityZeroMapsToNegative) {
    const auto s = parse_events("# W=4 H=4\n1,0,0,0\n2,0,0,1\n", EventFormat::csv);
    EXPECT_EQ(s.events()[0].p, -1);
    EXPECT_EQ(s.events()[1].p, 1);
}

TEST(ParseEvents, HeaderlessCsvUsesFallbackGeometry) {
    const auto s = parse_events("5,1,2,1\n", EventFormat::csv, Geometry{4, 4});
    EXPECT_EQ(s.geometry(), (Geometry{4, 4}));
    EXPECT_THROW(parse_events("5,1,2,1\n", EventFormat::csv), ParseError);
}

TEST(ParseEvents, MalformedLineReportsLineNumber) {
    try {
        parse_events("# W=8 H=8\n1,1,1,1\n2,1,x,1\n", EventFormat::csv);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(ParseEvents, RejectsOutOfBoundsAndBadPolarity) {
    EXPECT_THROW(parse_events("# W=8 H=8\n1,8,0,1\n", EventFormat::csv), BoundsError);
    EXPECT_THROW(parse_events("# W=8 H=8\n1,0,0,2\n", EventFormat::csv), ValueError);
}

TEST(ParseEvents, BinaryRoundTrip) {
    std::mt19937_64 rng(5);
    const auto s = random_stream(rng, 300, Geometry{64, 48}, 100000);
    std::stringstream buf;
    write_events(buf, s, EventFormat::binary);
    const auto bytes = buf.str();
    ASSERT_EQ(bytes.substr(0, 4), "EVS1");
    EXPECT_EQ(bytes.size(), 4u + 4 + 4 + 8 + 300u * 13);
    const auto back = parse_events(bytes, EventFormat::binary);
    EXPECT_EQ(back.geometry(), s.geometry());
    EXPECT_EQ(list(back), list(s));
}

TEST(ParseEvents, CsvRoundTrip) {
    std::mt19937_64 rng(6);
    const auto s = random_stream(rng, 200, Geometry{32, 32}, 5000);
    std::stringstream buf;
    write_events(buf, s, EventFormat::csv);
    const auto back = parse_events(buf.str(), EventFormat::csv);
    EXPECT_EQ(list(back), list(s));
}

TEST(ParseEvents, TruncatedBinaryIsRejected) {
    std::mt19937_64 rng(7);
    const auto s = random_stream(rng, 10, Geometry{16, 16}, 100);
    std::stringstream buf;
    write_events(buf, s, EventFormat::binary);
    auto bytes = buf.str();
    bytes.resize(bytes.size() - 5);
    EXPECT_THROW(parse_events(bytes, EventFormat::binary), ParseError);
    EXPECT_THROW(parse_events(std::string("EVS2") + bytes.substr(4), EventFormat::binary), ParseError);
}

TEST(FormatForPath, ChoosesByExtension) {
    EXPECT_EQ(format_for_path("a/b.csv"), EventFormat::csv);
    EXPECT_EQ(format_for_path("a/b.bin"), EventFormat::binary);
    EXPECT_EQ(format_for_path("a/b.evs"), EventFormat::binary);
}

TEST(SegmentStream, WindowArithmetic) {
    const EventStream s(Geometry{4, 4}, {{0, 0, 0, 1}, {100, 0, 0, 1}, {250, 0, 0, 1}});
    const auto segs = segment_stream(s, 100);
    ASSERT_EQ(segs.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        ASSERT_EQ(segs[k].events.size(), 1u);
        EXPECT_EQ(segs[k].index, k + 1);
        EXPECT_EQ(segs[k].duration, 100);
    }
    EXPECT_EQ(segs[0].events[0].t, 0);
    EXPECT_EQ(segs[1].events[0].t, 100);
    EXPECT_EQ(segs[2].events[0].t, 250);
}

TEST(SegmentStream, SingleEventGivesOneSegment) {
    const EventStream s(Geometry{4, 4}, {{0, 1, 1, 1}});
    EXPECT_EQ(segment_stream(s, 500).size(), 1u);
}

TEST(SegmentStream, EmptyStreamGivesOneEmptySegment) {
    const EventStream s(Geometry{4, 4}, {});
    const auto segs = segment_stream(s, 500);
    ASSERT_EQ(segs.size(), 1u);
    EXPECT_TRUE(segs[0].events.empty());
}

TEST(SegmentStream, EmptyTrailingWindowsAreKept) {
    const EventStream s(Geometry{4, 4}, {{0, 0, 0, 1}}, 0, 1000);
    const auto segs = segment_stream(s, 250);
    ASSERT_EQ(segs.size(), 4u);
    EXPECT_EQ(segs[3].events.size(), 0u);
}

TEST(SegmentStream, RejectsNonPositiveInterval) {
    const EventStream s(Geometry{4, 4}, {{0, 0, 0, 1}});
    EXPECT_THROW(segment_stream(s, 0), ArgumentError);
}

TEST(SegmentStream, RandomStreamMatchesBruteForceAssignment) {
    std::mt19937_64 rng(42);
    const auto s = random_stream(rng, 10000, Geometry{32, 32}, 1'000'000);
    const Timestamp interval = 250'000;
    const auto segs = segment_stream(s, interval);
    ASSERT_EQ(segs.size(), 4u);

    const auto k_of = [&](Timestamp t) {
        const auto k = static_cast<std::size_t>((t - s.t_start()) / interval);
        return std::min<std::size_t>(k, segs.size() - 1);
    };
    std::vector<std::vector<Event>> expected(segs.size());
    for (const auto& e : s.events()) {
        expected[k_of(e.t)].push_back(e);
    }
    std::size_t total = 0;
    for (std::size_t k = 0; k < segs.size(); ++k) {
        EXPECT_EQ(segs[k].events, expected[k]);
        total += segs[k].events.size();
    }
    EXPECT_EQ(total, 10000u);
}

TEST(BinDensity, ConservesEvents) {
    EventSegment seg;
    seg.t_begin = 0;
    seg.duration = 100;
    seg.events = {{10, 2, 2, 1}, {60, 2, 2, -1}, {99, 2, 2, 1}};
    const auto d = bin_density(seg, 2, Geometry{4, 4});
    EXPECT_EQ(d.at(0, 2, 2) + d.at(1, 2, 2), 3u);
    EXPECT_EQ(d.total(), 3u);
}

TEST(BinDensity, EmptySegmentIsAllZero) {
    EventSegment seg;
    seg.duration = 100;
    const auto d = bin_density(seg, 4, Geometry{4, 4});
    EXPECT_EQ(d.total(), 0u);
    EXPECT_EQ(d.bins(), 4u);
}

TEST(BinDensity, LastBinIncludesWindowEnd) {
    EventSegment seg;
    seg.t_begin = 0;
    seg.duration = 100;
    seg.events = {{100, 0, 0, 1}};
    const auto d = bin_density(seg, 4, Geometry{2, 2});
    EXPECT_EQ(d.at(3, 0, 0), 1u);
}

TEST(BinDensity, MatchesPerEventLoop) {
    std::mt19937_64 rng(3);
    const Geometry g{8, 8};
    const auto s = random_stream(rng, 1000, g, 4000);
    const auto segs = segment_stream(s, 4000);
    ASSERT_EQ(segs.size(), 1u);
    const auto d = bin_density(segs[0], 4, g);

    std::vector<std::uint32_t> expected(4 * 8 * 8, 0);
    for (const auto& e : segs[0].events) {
        const double width = static_cast<double>(segs[0].duration) / 4.0;
        auto b = static_cast<std::size_t>(static_cast<double>(e.t - segs[0].t_begin) / width);
        b = std::min<std::size_t>(b, 3);
        ++expected[(b * 8 + e.y) * 8 + e.x];
    }
    EXPECT_EQ(std::vector<std::uint32_t>(d.counts().begin(), d.counts().end()), expected);
}

TEST(BinDensity, OrderInsensitive) {
    std::mt19937_64 rng(9);
    const Geometry g{16, 16};
    const auto s = random_stream(rng, 500, g, 1000);
    auto shuffled = list(s);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const EventStream t(g, shuffled);
    const auto a = segment_stream(s, 300);
    const auto b = segment_stream(t, 300);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(bin_density(a[k], 5, g), bin_density(b[k], 5, g));
    }
}

TEST(EventStream, RejectsInvalidEvents) {
    EXPECT_THROW(EventStream(Geometry{4, 4}, {{0, 4, 0, 1}}), BoundsError);
    EXPECT_THROW(EventStream(Geometry{4, 4}, {{0, 0, 0, 0}}), ValueError);
}
