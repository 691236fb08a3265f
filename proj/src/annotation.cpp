#include "banos/annotation.hpp"

#include <algorithm>
#include <unordered_set>

namespace banos {

LabelSet::LabelSet(std::vector<std::string> names, std::size_t background_index)
    : names_(std::move(names)), background_(background_index) {
    if (names_.empty())
        throw Error(ErrorCode::invalid_config, "label set must not be empty");
    if (background_ >= names_.size())
        throw Error(ErrorCode::invalid_config, "background index out of range");
    std::unordered_set<std::string_view> seen;
    for (const auto& n : names_) {
        if (n.empty())
            throw Error(ErrorCode::invalid_config, "label names must not be empty");
        if (!seen.insert(n).second)
            throw Error(ErrorCode::invalid_config, "duplicate label name '" + n + "'");
    }
}

const std::string& LabelSet::name(LabelId id) const {
    if (!valid(id))
        throw Error(ErrorCode::unknown_label,
                    "label index " + std::to_string(id) + " out of range");
    return names_[static_cast<std::size_t>(id)];
}

std::optional<LabelId> LabelSet::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return static_cast<LabelId>(i);
    return std::nullopt;
}

void validate(const Timebase& tb) {
    if (!(tb.fps > 0.0))
        throw Error(ErrorCode::invalid_config, "fps must be positive");
    if (tb.px_per_cm && !(*tb.px_per_cm > 0.0))
        throw Error(ErrorCode::invalid_config, "px_per_cm must be positive");
}

void validate(const FrameSeries& series) {
    validate(series.timebase);
    for (LabelId id : series.labels)
        if (!series.label_set.valid(id))
            throw Error(ErrorCode::unknown_label,
                        "frame label index " + std::to_string(id) + " out of range");
}

void validate(const SegmentList& segs) {
    FrameIndex prev_start = -1;
    for (const Segment& s : segs.segments) {
        if (s.start < 0 || s.start >= s.end)
            throw Error(ErrorCode::invalid_config, "segment must satisfy 0 <= start < end");
        if (s.end > segs.series_length)
            throw Error(ErrorCode::invalid_config, "segment extends past series length");
        if (s.start < prev_start)
            throw Error(ErrorCode::invalid_config, "segments must be sorted by start");
        prev_start = s.start;
    }
    // same-label segments must be pairwise disjoint
    std::vector<Segment> sorted = segs.segments;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Segment& a, const Segment& b) {
        return a.label != b.label ? a.label < b.label : a.start < b.start;
    });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].label == sorted[i - 1].label && sorted[i].start < sorted[i - 1].end)
            throw Error(ErrorCode::overlap, "same-label segments overlap");
}

SegmentList segments_from_frames(const FrameSeries& series) {
    SegmentList out;
    out.series_length = series.size();
    const auto& labels = series.labels;
    const LabelId bg = series.label_set.background();
    std::size_t i = 0;
    const std::size_t n = labels.size();
    while (i < n) {
        if (labels[i] == bg) {
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j < n && labels[j] == labels[i])
            ++j;
        out.segments.push_back({labels[i], static_cast<FrameIndex>(i),
                                static_cast<FrameIndex>(j)});
        i = j;
    }
    return out;
}

FrameSeries frames_from_segments(const SegmentList& segs, const LabelSet& label_set,
                                 const Timebase& timebase) {
    validate(segs);
    FrameSeries out;
    out.timebase = timebase;
    out.label_set = label_set;
    out.labels.assign(static_cast<std::size_t>(segs.series_length),
                      label_set.background());
    for (const Segment& s : segs.segments) {
        if (!label_set.valid(s.label) || label_set.is_background(s.label))
            throw Error(ErrorCode::unknown_label,
                        "segment label " + std::to_string(s.label) + " invalid");
        for (FrameIndex f = s.start; f < s.end; ++f) {
            LabelId& cell = out.labels[static_cast<std::size_t>(f)];
            if (cell != label_set.background() && cell != s.label)
                throw Error(ErrorCode::overlap,
                            "segments of different labels share frame " + std::to_string(f));
            cell = s.label;
        }
    }
    return out;
}

FrameSeries binarize(const FrameSeries& series, LabelId target) {
    if (!series.label_set.valid(target) || series.label_set.is_background(target))
        throw Error(ErrorCode::unknown_label,
                    "binarize target must be a valid non-background label");
    FrameSeries out = series;
    const LabelId bg = series.label_set.background();
    for (LabelId& id : out.labels)
        if (id != target)
            id = bg;
    return out;
}

} // namespace banos
