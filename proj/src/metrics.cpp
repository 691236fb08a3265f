#include "banos/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace banos {

namespace {

constexpr FrameIndex kParallelCutoff = 1 << 14;

std::optional<double> ratio(std::int64_t num, std::int64_t den) {
    if (den == 0)
        return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

void require_comparable(const FrameSeries& pred, const FrameSeries& gt) {
    if (pred.size() != gt.size())
        throw Error(ErrorCode::length_mismatch,
                    "series lengths differ (" + std::to_string(pred.size()) + " vs " +
                        std::to_string(gt.size()) + ")");
    if (!(pred.label_set == gt.label_set))
        throw Error(ErrorCode::label_set_mismatch, "series label sets differ");
}

FrameIndex intersection_length(const Segment& a, const Segment& b) {
    return std::max<FrameIndex>(0, std::min(a.end, b.end) - std::max(a.start, b.start));
}

struct Candidate {
    std::size_t gi = 0;
    std::size_t pi = 0;
    FrameIndex inter = 0;
    FrameIndex uni = 0;
};

// Exact rational tiou comparison; doubles would make the greedy order
// depend on rounding.
bool tiou_greater(const Candidate& a, const Candidate& b) {
    return static_cast<__int128>(a.inter) * b.uni > static_cast<__int128>(b.inter) * a.uni;
}

std::vector<Segment> with_label(const SegmentList& segs, LabelId label) {
    std::vector<Segment> out;
    for (const Segment& s : segs.segments)
        if (s.label == label)
            out.push_back(s);
    return out;
}

std::optional<double> mean_or_null(double sum, std::int64_t count) {
    if (count == 0)
        return std::nullopt;
    return sum / static_cast<double>(count);
}

} // namespace

ConfusionCounts frame_confusion(const FrameSeries& pred, const FrameSeries& gt,
                                LabelId label) {
    require_comparable(pred, gt);
    const FrameIndex n = pred.size();
    std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : tp, fp, fn, tn) \
    if (n > kParallelCutoff)
#endif
    for (FrameIndex i = 0; i < n; ++i) {
        const bool p = pred.labels[static_cast<std::size_t>(i)] == label;
        const bool g = gt.labels[static_cast<std::size_t>(i)] == label;
        tp += p && g;
        fp += p && !g;
        fn += !p && g;
        tn += !p && !g;
    }
    return {tp, fp, fn, tn};
}

FrameMetrics frame_metrics(const ConfusionCounts& c) {
    FrameMetrics m;
    m.accuracy = ratio(c.tp + c.tn, c.total());
    m.precision = ratio(c.tp, c.tp + c.fp);
    m.recall = ratio(c.tp, c.tp + c.fn);
    m.specificity = ratio(c.tn, c.tn + c.fp);
    m.f1 = ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn);
    return m;
}

double tiou(const Segment& a, const Segment& b) {
    const FrameIndex inter = intersection_length(a, b);
    const FrameIndex uni = a.length() + b.length() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

MatchedPairs match_segments(const SegmentList& pred, const SegmentList& gt,
                            LabelId label) {
    const std::vector<Segment> preds = with_label(pred, label);
    const std::vector<Segment> gts = with_label(gt, label);

    // Same-label segments are disjoint and start-sorted, so the preds
    // overlapping each gt form one contiguous window.
    std::vector<Candidate> cands;
    std::size_t lo = 0;
    for (std::size_t gi = 0; gi < gts.size(); ++gi) {
        while (lo < preds.size() && preds[lo].end <= gts[gi].start)
            ++lo;
        for (std::size_t pi = lo; pi < preds.size() && preds[pi].start < gts[gi].end;
             ++pi) {
            const FrameIndex inter = intersection_length(gts[gi], preds[pi]);
            if (inter > 0)
                cands.push_back({gi, pi, inter,
                                 gts[gi].length() + preds[pi].length() - inter});
        }
    }

    std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
        if (tiou_greater(a, b)) return true;
        if (tiou_greater(b, a)) return false;
        if (gts[a.gi].start != gts[b.gi].start)
            return gts[a.gi].start < gts[b.gi].start;
        return preds[a.pi].start < preds[b.pi].start;
    });

    MatchedPairs out;
    std::vector<bool> used_gt(gts.size(), false), used_pred(preds.size(), false);
    for (const Candidate& c : cands) {
        if (used_gt[c.gi] || used_pred[c.pi])
            continue;
        used_gt[c.gi] = used_pred[c.pi] = true;
        out.pairs.push_back({gts[c.gi], preds[c.pi],
                             static_cast<double>(c.inter) / static_cast<double>(c.uni)});
    }
    for (std::size_t gi = 0; gi < gts.size(); ++gi)
        if (!used_gt[gi])
            out.unmatched_gt.push_back(gts[gi]);
    for (std::size_t pi = 0; pi < preds.size(); ++pi)
        if (!used_pred[pi])
            out.unmatched_pred.push_back(preds[pi]);
    return out;
}

std::optional<double> detection_accuracy(const MatchedPairs& m) {
    const auto tp = static_cast<std::int64_t>(m.pairs.size());
    const auto fp = static_cast<std::int64_t>(m.unmatched_pred.size());
    const auto fn = static_cast<std::int64_t>(m.unmatched_gt.size());
    return ratio(2 * tp, 2 * tp + fp + fn);
}

std::optional<double> segment_overlap(const MatchedPairs& m, OverlapScope scope) {
    double sum = 0.0;
    for (const MatchedPair& p : m.pairs)
        sum += p.tiou;
    const std::int64_t denom = scope == OverlapScope::all_gt
                                   ? m.gt_count()
                                   : static_cast<std::int64_t>(m.pairs.size());
    return mean_or_null(sum, denom);
}

std::optional<double> temporal_precision(const MatchedPairs& m, FrameIndex tolerance) {
    if (tolerance < 0)
        throw Error(ErrorCode::invalid_config, "tolerance must be >= 0");
    if (m.pairs.empty())
        return std::nullopt;
    std::int64_t hits = 0;
    for (const MatchedPair& p : m.pairs)
        hits += std::llabs(p.pred.start - p.gt.start) <= tolerance &&
                std::llabs(p.pred.end - p.gt.end) <= tolerance;
    return static_cast<double>(hits) / static_cast<double>(m.pairs.size());
}

std::optional<double> intra_bout_continuity(const FrameSeries& pred,
                                            const SegmentList& gt_segments,
                                            LabelId label, ContinuityWeight weight) {
    double sum = 0.0;
    double weight_sum = 0.0;
    std::int64_t bouts = 0;
    for (const Segment& s : gt_segments.segments) {
        if (s.label != label)
            continue;
        if (s.end > pred.size())
            throw Error(ErrorCode::length_mismatch,
                        "prediction does not cover ground-truth bout frames");
        const FrameIndex len = s.length();
        double continuity = 1.0;
        if (len > 1) {
            std::int64_t transitions = 0;
            for (FrameIndex t = s.start + 1; t < s.end; ++t)
                transitions += pred.labels[static_cast<std::size_t>(t)] !=
                               pred.labels[static_cast<std::size_t>(t - 1)];
            continuity = 1.0 - static_cast<double>(transitions) /
                                   static_cast<double>(len - 1);
        }
        const double w =
            weight == ContinuityWeight::bouts ? 1.0 : static_cast<double>(len);
        sum += continuity * w;
        weight_sum += w;
        ++bouts;
    }
    if (bouts == 0)
        return std::nullopt;
    return sum / weight_sum;
}

BanosScores banos_scores(const FrameSeries& pred, const FrameSeries& gt, LabelId label,
                  const MetricOptions& opt) {
    require_comparable(pred, gt);
    const SegmentList pred_segs = segments_from_frames(pred);
    const SegmentList gt_segs = segments_from_frames(gt);
    const MatchedPairs m = match_segments(pred_segs, gt_segs, label);

    BanosScores scores;
    scores.detection_accuracy = detection_accuracy(m);
    scores.segment_overlap = segment_overlap(m, opt.overlap_scope);
    scores.temporal_precision = temporal_precision(m, opt.tolerance);
    scores.intra_bout_continuity =
        intra_bout_continuity(pred, gt_segs, label, opt.continuity_weight);
    return scores;
}

std::vector<CurvePoint> detection_f1_curve(const SegmentList& pred,
                                           const SegmentList& gt, LabelId label,
                                           const std::vector<double>& thresholds) {
    for (double t : thresholds)
        if (!(t > 0.0 && t <= 1.0))
            throw Error(ErrorCode::invalid_config, "iou thresholds must lie in (0,1]");

    const MatchedPairs m = match_segments(pred, gt, label);
    std::vector<CurvePoint> curve;
    curve.reserve(thresholds.size());
    for (double t : thresholds) {
        std::int64_t kept = 0;
        for (const MatchedPair& p : m.pairs)
            kept += p.tiou >= t;
        const std::int64_t demoted = static_cast<std::int64_t>(m.pairs.size()) - kept;
        const std::int64_t fp = static_cast<std::int64_t>(m.unmatched_pred.size()) + demoted;
        const std::int64_t fn = static_cast<std::int64_t>(m.unmatched_gt.size()) + demoted;
        curve.push_back({t, ratio(2 * kept, 2 * kept + fp + fn)});
    }
    return curve;
}

LabelEvaluation evaluate_label(const FrameSeries& pred, const FrameSeries& gt,
                               LabelId label, const MetricOptions& opt,
                               const std::vector<double>& curve_thresholds) {
    require_comparable(pred, gt);
    LabelEvaluation eval;
    eval.frame = frame_metrics(frame_confusion(pred, gt, label));

    const SegmentList pred_segs = segments_from_frames(pred);
    const SegmentList gt_segs = segments_from_frames(gt);
    const MatchedPairs m = match_segments(pred_segs, gt_segs, label);
    eval.banos.detection_accuracy = detection_accuracy(m);
    eval.banos.segment_overlap = segment_overlap(m, opt.overlap_scope);
    eval.banos.temporal_precision = temporal_precision(m, opt.tolerance);
    eval.banos.intra_bout_continuity =
        intra_bout_continuity(pred, gt_segs, label, opt.continuity_weight);
    eval.counts = {m.gt_count(), m.pred_count(),
                   static_cast<std::int64_t>(m.pairs.size())};
    if (!curve_thresholds.empty())
        eval.iou_curve = detection_f1_curve(pred_segs, gt_segs, label, curve_thresholds);
    return eval;
}

LabelEvaluation macro_aggregate(const std::vector<LabelEvaluation>& per_label) {
    if (per_label.empty())
        throw Error(ErrorCode::invalid_config, "macro aggregate needs at least one label");

    auto mean_field = [&](auto getter) -> std::optional<double> {
        double sum = 0.0;
        std::int64_t n = 0;
        for (const LabelEvaluation& e : per_label) {
            if (const std::optional<double> v = getter(e)) {
                sum += *v;
                ++n;
            }
        }
        return mean_or_null(sum, n);
    };

    LabelEvaluation macro;
    macro.frame.accuracy = mean_field([](const auto& e) { return e.frame.accuracy; });
    macro.frame.precision = mean_field([](const auto& e) { return e.frame.precision; });
    macro.frame.recall = mean_field([](const auto& e) { return e.frame.recall; });
    macro.frame.specificity =
        mean_field([](const auto& e) { return e.frame.specificity; });
    macro.frame.f1 = mean_field([](const auto& e) { return e.frame.f1; });
    macro.banos.detection_accuracy =
        mean_field([](const auto& e) { return e.banos.detection_accuracy; });
    macro.banos.segment_overlap =
        mean_field([](const auto& e) { return e.banos.segment_overlap; });
    macro.banos.temporal_precision =
        mean_field([](const auto& e) { return e.banos.temporal_precision; });
    macro.banos.intra_bout_continuity =
        mean_field([](const auto& e) { return e.banos.intra_bout_continuity; });
    for (const LabelEvaluation& e : per_label) {
        macro.counts.gt_bouts += e.counts.gt_bouts;
        macro.counts.pred_bouts += e.counts.pred_bouts;
        macro.counts.matched += e.counts.matched;
    }
    return macro;
}

} // namespace banos
