#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "banos/annotation.hpp"

namespace banos {

// One-vs-background frame counts for a single label.
struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    std::int64_t tn = 0;

    std::int64_t total() const { return tp + fp + fn + tn; }
    bool operator==(const ConfusionCounts&) const = default;
};

// Classical frame-based metrics. A 0/0 ratio is undefined (nullopt),
// never reported as 0.
struct FrameMetrics {
    std::optional<double> accuracy;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> specificity;
    std::optional<double> f1;
};

struct MatchedPair {
    Segment gt;
    Segment pred;
    double tiou = 0.0;
};

// One-to-one bout matching result for a single label. Every gt segment of
// the label appears exactly once, matched or unmatched; same for pred.
struct MatchedPairs {
    std::vector<MatchedPair> pairs;
    std::vector<Segment> unmatched_gt;
    std::vector<Segment> unmatched_pred;

    std::int64_t gt_count() const {
        return static_cast<std::int64_t>(pairs.size() + unmatched_gt.size());
    }
    std::int64_t pred_count() const {
        return static_cast<std::int64_t>(pairs.size() + unmatched_pred.size());
    }
};

// The four segment-level scores for one label, each in [0,1] when defined.
struct BanosScores {
    std::optional<double> detection_accuracy;
    std::optional<double> segment_overlap;
    std::optional<double> temporal_precision;
    std::optional<double> intra_bout_continuity;
};

enum class OverlapScope { all_gt, matched };
enum class ContinuityWeight { bouts, frames };

struct MetricOptions {
    FrameIndex tolerance = 0;
    OverlapScope overlap_scope = OverlapScope::all_gt;
    ContinuityWeight continuity_weight = ContinuityWeight::bouts;
};

ConfusionCounts frame_confusion(const FrameSeries& pred, const FrameSeries& gt,
                                LabelId label);

FrameMetrics frame_metrics(const ConfusionCounts& c);

// Temporal intersection over union of two half-open frame intervals.
// 1 iff identical, 0 iff disjoint (touching intervals are disjoint).
double tiou(const Segment& a, const Segment& b);

// Greedy one-to-one matching over same-label pairs with tiou > 0, in
// descending tiou order (exact rational comparison); ties break on earlier
// gt start, then earlier pred start. Threshold-free by design.
MatchedPairs match_segments(const SegmentList& pred, const SegmentList& gt,
                            LabelId label);

// Segment-level F1: 2*TP / (2*TP + FP + FN) with TP = matched pairs,
// FP = unmatched pred, FN = unmatched gt. Undefined when all three are 0.
std::optional<double> detection_accuracy(const MatchedPairs& m);

// Mean tiou over ground-truth bouts, counting unmatched ones as 0
// (OverlapScope::matched restricts the mean to matched pairs instead).
// Undefined when the reference set is empty.
std::optional<double> segment_overlap(const MatchedPairs& m,
                                      OverlapScope scope = OverlapScope::all_gt);

// Fraction of matched pairs whose boundaries agree within `tolerance`
// frames on both ends. Undefined when nothing matched.
std::optional<double> temporal_precision(const MatchedPairs& m,
                                         FrameIndex tolerance = 0);

// Per gt bout of length L: 1 when L = 1, else 1 - transitions/(L-1) where
// transitions counts predicted-label changes inside the bout. Averaged over
// gt bouts (equal weight, or per-frame weight with ContinuityWeight::frames).
// Undefined when the label has no gt bouts.
std::optional<double> intra_bout_continuity(const FrameSeries& pred,
                                            const SegmentList& gt_segments,
                                            LabelId label,
                                            ContinuityWeight weight = ContinuityWeight::bouts);

// All four segment-level scores for one label.
BanosScores banos_scores(const FrameSeries& pred, const FrameSeries& gt, LabelId label,
                  const MetricOptions& opt = {});

struct CurvePoint {
    double threshold = 0.0;
    std::optional<double> f1;
};

// JABS-style detection F1 as a function of tIoU threshold: matched pairs
// below the threshold are demoted to one FP plus one FN.
std::vector<CurvePoint> detection_f1_curve(const SegmentList& pred,
                                           const SegmentList& gt, LabelId label,
                                           const std::vector<double>& thresholds);

struct BoutCounts {
    std::int64_t gt_bouts = 0;
    std::int64_t pred_bouts = 0;
    std::int64_t matched = 0;

    bool operator==(const BoutCounts&) const = default;
};

// Everything the report carries for one label.
struct LabelEvaluation {
    FrameMetrics frame;
    BanosScores banos;
    BoutCounts counts;
    std::vector<CurvePoint> iou_curve;  // empty unless a curve was requested
};

LabelEvaluation evaluate_label(const FrameSeries& pred, const FrameSeries& gt,
                               LabelId label, const MetricOptions& opt = {},
                               const std::vector<double>& curve_thresholds = {});

// Unweighted per-field mean over labels, skipping undefined values; a field
// undefined for every label stays undefined. Counts are summed.
LabelEvaluation macro_aggregate(const std::vector<LabelEvaluation>& per_label);

} // namespace banos
