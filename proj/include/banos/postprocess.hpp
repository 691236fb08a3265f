#pragma once

#include <optional>

#include "banos/annotation.hpp"

namespace banos {

// Segmentation-fidelity knobs. Neutral defaults leave the series untouched.
struct PostprocessConfig {
    FrameIndex max_gap = 0;                    // merge same-label bouts separated by <= this
    FrameIndex min_duration = 1;               // drop shorter bouts
    std::optional<FrameIndex> max_duration;    // split longer bouts
    FrameIndex smooth_window = 1;              // odd, centered modal filter
};

void validate(const PostprocessConfig& cfg);

// Fuse consecutive same-label segments whose gap is <= max_gap, left to
// right, transitively. Different labels never merge.
SegmentList merge_gaps(const SegmentList& segs, FrameIndex max_gap);

// Remove segments shorter than min_duration.
SegmentList filter_min_duration(const SegmentList& segs, FrameIndex min_duration);

// Partition over-long segments into consecutive pieces of length
// <= max_duration; the last piece carries the remainder. Total covered
// frames are preserved exactly.
SegmentList split_max_duration(const SegmentList& segs, FrameIndex max_duration);

// Centered modal filter, window truncated at the boundaries. A tie for the
// modal label keeps the frame's original label.
FrameSeries mode_smooth(const FrameSeries& series, FrameIndex window);

// Fixed order: smooth -> extract -> merge -> min-filter -> max-split.
// Smoothing fixes frame noise before bouts exist; merging runs before the
// duration filter so a long bout fragmented by dropouts is not discarded.
SegmentList apply_pipeline(const FrameSeries& series, const PostprocessConfig& cfg);

} // namespace banos
