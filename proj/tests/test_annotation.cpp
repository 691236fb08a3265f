#include <doctest.h>

#include <random>

#include "banos/annotation.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace banos;
using testutil::series_of;

TEST_CASE("segments_from_frames extracts maximal non-background runs") {
    CHECK(segments_from_frames(series_of({0, 0, 0})).segments.empty());

    const SegmentList two = segments_from_frames(series_of({1, 1, 2, 2, 2, 0}));
    REQUIRE(two.segments.size() == 2);
    CHECK(two.segments[0] == Segment{1, 0, 2});
    CHECK(two.segments[1] == Segment{2, 2, 5});
    CHECK(two.series_length == 6);

    const SegmentList split = segments_from_frames(series_of({1, 0, 1}));
    REQUIRE(split.segments.size() == 2);
    CHECK(split.segments[0] == Segment{1, 0, 1});
    CHECK(split.segments[1] == Segment{1, 2, 3});
}

TEST_CASE("frames_from_segments inverts extraction") {
    const FrameSeries empty = series_of({0, 0, 0});
    const FrameSeries back =
        frames_from_segments({{}, 3}, empty.label_set, empty.timebase);
    CHECK(back.labels == std::vector<LabelId>{0, 0, 0});

    const FrameSeries src = series_of({1, 1, 2, 2, 2, 0});
    const FrameSeries round = frames_from_segments(segments_from_frames(src),
                                                   src.label_set, src.timebase);
    CHECK(round.labels == src.labels);
}

TEST_CASE("frames_from_segments rejects cross-label overlap") {
    const FrameSeries proto = series_of({0}, 2);
    const SegmentList bad{{{1, 0, 4}, {2, 2, 6}}, 8};
    CHECK_THROWS_WITH_AS(
        frames_from_segments(bad, proto.label_set, proto.timebase),
        doctest::Contains("share frame"), Error);
}

TEST_CASE("binarize masks other labels and keeps the target") {
    CHECK(binarize(series_of({1, 2, 1}), 1).labels == std::vector<LabelId>{1, 0, 1});
    CHECK(binarize(series_of({0, 0}, 1), 1).labels == std::vector<LabelId>{0, 0});
    CHECK(binarize(series_of({1, 1}), 1).labels == std::vector<LabelId>{1, 1});

    CHECK_THROWS_AS(binarize(series_of({1, 2, 1}), 0), Error);   // background
    CHECK_THROWS_AS(binarize(series_of({1, 2, 1}), 99), Error);  // out of range
}

TEST_CASE("binarize is idempotent on its own output") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const FrameSeries s = oracle::random_series(rng, 200, 4);
        for (LabelId target = 1; target < static_cast<LabelId>(s.label_set.size());
             ++target) {
            const FrameSeries once = binarize(s, target);
            CHECK(binarize(once, target).labels == once.labels);
        }
    }
}

TEST_CASE("round-trip holds on random series") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const FrameSeries s = oracle::random_series(rng, 300, 5);
        const FrameSeries back = frames_from_segments(segments_from_frames(s),
                                                      s.label_set, s.timebase);
        REQUIRE(back.labels == s.labels);
    }
}

TEST_CASE("extraction agrees with the independent edge-scan oracle") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 300; ++trial) {
        const FrameSeries s = oracle::random_series(rng, 250, 4);
        const SegmentList got = segments_from_frames(s);
        const SegmentList want = oracle::oracle_segments(s);
        REQUIRE(got.segments == want.segments);
        REQUIRE(got.series_length == want.series_length);

        // segment count equals transitions into a non-background run
        std::size_t entries = 0;
        for (std::size_t i = 0; i < s.labels.size(); ++i) {
            const bool fore = s.labels[i] != 0;
            const bool boundary = i == 0 || s.labels[i - 1] != s.labels[i];
            entries += fore && boundary;
        }
        REQUIRE(got.segments.size() == entries);

        validate(got);  // start < end, sorted, per-label disjoint
    }
}

TEST_CASE("label set enforces its invariants") {
    CHECK_THROWS_AS(LabelSet(std::vector<std::string>{}), Error);
    CHECK_THROWS_AS(LabelSet({"bg", "a", "a"}), Error);
    CHECK_THROWS_AS(LabelSet({"bg", ""}), Error);
    CHECK_THROWS_AS(LabelSet({"bg", "a"}, 2), Error);

    const LabelSet ls({"other", "attack"});
    CHECK(ls.find("attack") == LabelId{1});
    CHECK(!ls.find("mount"));
    CHECK(ls.name(0) == "other");
    CHECK(ls.background() == 0);
}

TEST_CASE("timebase validation") {
    CHECK_THROWS_AS(validate(Timebase{0.0, {}}), Error);
    CHECK_THROWS_AS(validate(Timebase{25.0, -1.0}), Error);
    CHECK_NOTHROW(validate(Timebase{25.0, 10.0}));
}
