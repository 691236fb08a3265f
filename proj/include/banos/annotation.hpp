#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "banos/errors.hpp"

namespace banos {

using LabelId = std::int32_t;
using FrameIndex = std::int64_t;

// The ethogram: ordered behavior names plus one index reserved for
// "no annotated behavior". Index 0 is the conventional background.
class LabelSet {
public:
    LabelSet() : names_{"background"}, background_(0) {}
    LabelSet(std::vector<std::string> names, std::size_t background_index = 0);

    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return names_.size(); }
    LabelId background() const { return static_cast<LabelId>(background_); }
    bool is_background(LabelId id) const { return id == background(); }
    bool valid(LabelId id) const {
        return id >= 0 && static_cast<std::size_t>(id) < names_.size();
    }
    const std::string& name(LabelId id) const;
    std::optional<LabelId> find(std::string_view name) const;

    bool operator==(const LabelSet&) const = default;

private:
    std::vector<std::string> names_;
    std::size_t background_;
};

// Recording metadata: temporal resolution, optional spatial scale.
struct Timebase {
    double fps = 25.0;
    std::optional<double> px_per_cm;

    bool operator==(const Timebase&) const = default;
};

void validate(const Timebase& tb);

// Per-frame behavior labels. The raw annotation.
struct FrameSeries {
    std::vector<LabelId> labels;
    Timebase timebase;
    LabelSet label_set;

    FrameIndex size() const { return static_cast<FrameIndex>(labels.size()); }
};

void validate(const FrameSeries& series);

// One bout: a half-open frame interval [start, end) carrying a
// non-background label.
struct Segment {
    LabelId label = 0;
    FrameIndex start = 0;
    FrameIndex end = 0;

    FrameIndex length() const { return end - start; }
    bool operator==(const Segment&) const = default;
};

// Bouts sorted by start. Same-label segments never overlap; segments of
// different labels may (overlapping annotation regimes).
struct SegmentList {
    std::vector<Segment> segments;
    FrameIndex series_length = 0;
};

void validate(const SegmentList& segs);

// Maximal runs of identical non-background labels, in start order.
SegmentList segments_from_frames(const FrameSeries& series);

// Exact inverse of segments_from_frames. Throws ErrorCode::overlap when two
// segments claim the same frame.
FrameSeries frames_from_segments(const SegmentList& segs, const LabelSet& label_set,
                                 const Timebase& timebase);

// Collapse every label except `target` to background. Keeps the label set
// and index values, so the result feeds any per-label operation unchanged.
FrameSeries binarize(const FrameSeries& series, LabelId target);

} // namespace banos
