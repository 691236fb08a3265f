#include "banos/postprocess.hpp"

#include <algorithm>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace banos {

namespace {

constexpr FrameIndex kParallelCutoff = 1 << 14;

LabelId modal_label(const std::vector<std::int64_t>& counts, LabelId original) {
    std::int64_t best = 0;
    LabelId best_label = original;
    int ties = 0;
    for (std::size_t l = 0; l < counts.size(); ++l) {
        if (counts[l] > best) {
            best = counts[l];
            best_label = static_cast<LabelId>(l);
            ties = 1;
        } else if (counts[l] == best && counts[l] > 0) {
            ++ties;
        }
    }
    return ties == 1 ? best_label : original;
}

// Sliding-histogram smoothing of frames [lo, hi). One histogram update per
// step instead of a full window recount.
void smooth_range(const std::vector<LabelId>& in, std::vector<LabelId>& out,
                  FrameIndex lo, FrameIndex hi, FrameIndex half,
                  std::size_t label_count) {
    const FrameIndex n = static_cast<FrameIndex>(in.size());
    if (lo >= hi)
        return;
    std::vector<std::int64_t> counts(label_count, 0);
    const FrameIndex wlo = std::max<FrameIndex>(0, lo - half);
    const FrameIndex whi = std::min(n, lo + half + 1);
    for (FrameIndex f = wlo; f < whi; ++f)
        counts[static_cast<std::size_t>(in[static_cast<std::size_t>(f)])]++;
    for (FrameIndex i = lo; i < hi; ++i) {
        out[static_cast<std::size_t>(i)] =
            modal_label(counts, in[static_cast<std::size_t>(i)]);
        const FrameIndex leaving = i - half;
        if (leaving >= 0)
            counts[static_cast<std::size_t>(in[static_cast<std::size_t>(leaving)])]--;
        const FrameIndex entering = i + half + 1;
        if (entering < n)
            counts[static_cast<std::size_t>(in[static_cast<std::size_t>(entering)])]++;
    }
}

bool mergeable(const Segment& a, const Segment& b, FrameIndex max_gap) {
    return a.label == b.label && b.start - a.end <= max_gap;
}

void sort_by_start(std::vector<Segment>& segments) {
    std::sort(segments.begin(), segments.end(), [](const Segment& a, const Segment& b) {
        if (a.start != b.start) return a.start < b.start;
        if (a.end != b.end) return a.end < b.end;
        return a.label < b.label;
    });
}

} // namespace

void validate(const PostprocessConfig& cfg) {
    if (cfg.max_gap < 0)
        throw Error(ErrorCode::invalid_config, "max_gap must be >= 0");
    if (cfg.min_duration < 1)
        throw Error(ErrorCode::invalid_config, "min_duration must be >= 1");
    if (cfg.max_duration && *cfg.max_duration < 1)
        throw Error(ErrorCode::invalid_config, "max_duration must be >= 1");
    if (cfg.max_duration && cfg.min_duration > *cfg.max_duration)
        throw Error(ErrorCode::invalid_config, "min_duration must be <= max_duration");
    if (cfg.smooth_window < 1 || cfg.smooth_window % 2 == 0)
        throw Error(ErrorCode::invalid_config, "smooth_window must be odd and >= 1");
}

SegmentList merge_gaps(const SegmentList& segs, FrameIndex max_gap) {
    SegmentList out;
    out.series_length = segs.series_length;
    std::vector<Segment> by_label = segs.segments;
    std::stable_sort(by_label.begin(), by_label.end(),
                     [](const Segment& a, const Segment& b) {
                         return a.label != b.label ? a.label < b.label : a.start < b.start;
                     });
    for (const Segment& s : by_label) {
        if (!out.segments.empty() && mergeable(out.segments.back(), s, max_gap))
            out.segments.back().end = std::max(out.segments.back().end, s.end);
        else
            out.segments.push_back(s);
    }
    sort_by_start(out.segments);
    return out;
}

SegmentList filter_min_duration(const SegmentList& segs, FrameIndex min_duration) {
    if (min_duration < 1)
        throw Error(ErrorCode::invalid_config, "min_duration must be >= 1");
    SegmentList out;
    out.series_length = segs.series_length;
    for (const Segment& s : segs.segments)
        if (s.length() >= min_duration)
            out.segments.push_back(s);
    return out;
}

SegmentList split_max_duration(const SegmentList& segs, FrameIndex max_duration) {
    if (max_duration < 1)
        throw Error(ErrorCode::invalid_config, "max_duration must be >= 1");
    SegmentList out;
    out.series_length = segs.series_length;
    for (const Segment& s : segs.segments) {
        FrameIndex start = s.start;
        while (s.end - start > max_duration) {
            out.segments.push_back({s.label, start, start + max_duration});
            start += max_duration;
        }
        out.segments.push_back({s.label, start, s.end});
    }
    sort_by_start(out.segments);
    return out;
}

FrameSeries mode_smooth(const FrameSeries& series, FrameIndex window) {
    if (window < 1 || window % 2 == 0)
        throw Error(ErrorCode::invalid_config, "smooth window must be odd and >= 1");
    FrameSeries out = series;
    const FrameIndex n = series.size();
    if (window == 1 || n == 0)
        return out;
    const FrameIndex half = window / 2;
    const std::size_t label_count = series.label_set.size();
#ifdef _OPENMP
    if (n > kParallelCutoff) {
#pragma omp parallel
        {
            const FrameIndex threads = omp_get_num_threads();
            const FrameIndex chunk = (n + threads - 1) / threads;
            const FrameIndex lo = std::min<FrameIndex>(n, omp_get_thread_num() * chunk);
            const FrameIndex hi = std::min<FrameIndex>(n, lo + chunk);
            smooth_range(series.labels, out.labels, lo, hi, half, label_count);
        }
        return out;
    }
#endif
    smooth_range(series.labels, out.labels, 0, n, half, label_count);
    return out;
}

SegmentList apply_pipeline(const FrameSeries& series, const PostprocessConfig& cfg) {
    validate(cfg);
    const FrameSeries smoothed = mode_smooth(series, cfg.smooth_window);
    SegmentList segs = segments_from_frames(smoothed);
    segs = merge_gaps(segs, cfg.max_gap);
    segs = filter_min_duration(segs, cfg.min_duration);
    if (cfg.max_duration)
        segs = split_max_duration(segs, *cfg.max_duration);
    return segs;
}

} // namespace banos
