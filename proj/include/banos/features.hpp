#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "banos/annotation.hpp"
#include "banos/pose.hpp"

namespace banos {

enum class Unit { centimeters, centimeters_per_second, radians };

const char* unit_name(Unit unit);

// Per-frame scalar feature. NaN marks frames where the value is undefined
// (low-likelihood keypoints, degenerate geometry); classifiers treat those
// frames as background.
struct FeatureSeries {
    std::string name;
    Unit unit = Unit::centimeters;
    Timebase timebase;
    std::vector<double> values;

    FrameIndex size() const { return static_cast<FrameIndex>(values.size()); }
};

inline bool feature_defined(double v) { return !std::isnan(v); }

struct FeatureOptions {
    // Frames where any required keypoint falls below this likelihood get a
    // NaN feature value.
    double min_likelihood = 0.5;
};

// Reference point selector: a named keypoint, or the per-frame centroid of
// all keypoints when empty.
using RefKeypoint = std::optional<std::string>;

// Euclidean distance between the reference points of two animals, in cm.
// Requires equal frame counts, matching timebases, and a spatial scale.
FeatureSeries interanimal_distance(const PoseTable& a, const PoseTable& b,
                                   const RefKeypoint& ref = std::nullopt,
                                   const FeatureOptions& opt = {});

// Frame-to-frame displacement of the reference point, in cm/s. Frame 0 is
// backfilled with frame 1's value so the series keeps the pose length.
FeatureSeries speed(const PoseTable& a, const RefKeypoint& ref = std::nullopt,
                    const FeatureOptions& opt = {});

// Unsigned angle in [0, pi] between animal a's heading (tail -> nose) and
// the vector from a's nose to b's target point. NaN where the heading or
// the target vector degenerates to zero length.
FeatureSeries facing_angle(const PoseTable& a, const PoseTable& b,
                           const std::string& nose_kp, const std::string& tail_kp,
                           const RefKeypoint& target = std::nullopt,
                           const FeatureOptions& opt = {});

struct HeuristicRule {
    enum class Kind { proximity, approach };
    Kind kind = Kind::proximity;
    double distance_threshold_cm = 5.0;        // SIPEC-style close-proximity default
    double approach_speed_threshold_cm_s = 0.0;
    LabelId emitted_label = 1;
};

void validate(const HeuristicRule& rule);

// Frame positive iff distance <= threshold (boundary inclusive).
FrameSeries proximity_classifier(const FeatureSeries& dist_cm, double threshold_cm,
                                 LabelId label, const LabelSet& label_set);

// Frame positive iff the distance strictly decreased since the previous
// frame AND dist <= rule.distance_threshold_cm AND the subject's speed is
// >= rule.approach_speed_threshold_cm_s. Frame 0 is always background.
FrameSeries approach_classifier(const FeatureSeries& dist_cm,
                                const FeatureSeries& speed_a,
                                const HeuristicRule& rule, const LabelSet& label_set);

} // namespace banos
