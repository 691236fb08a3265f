#include "banos/features.hpp"

#include <cmath>
#include <limits>

namespace banos {

namespace {

constexpr FrameIndex kParallelCutoff = 1 << 14;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct RefPoint {
    // nullopt = centroid of all keypoints
    std::optional<std::size_t> kp;
};

RefPoint resolve_ref(const PoseTable& pose, const RefKeypoint& ref) {
    if (!ref || ref->empty())
        return {};
    auto idx = pose.keypoint_index(*ref);
    if (!idx)
        throw Error(ErrorCode::missing_keypoint,
                    "keypoint '" + *ref + "' not in pose table for animal '" +
                        pose.animal_id + "'");
    return {idx};
}

// Reference point of one frame; NaNs when any required keypoint falls below
// the likelihood floor.
void ref_point(const PoseTable& pose, FrameIndex frame, const RefPoint& ref,
               double min_likelihood, double& out_x, double& out_y) {
    if (ref.kp) {
        if (pose.likelihood(frame, *ref.kp) < min_likelihood) {
            out_x = out_y = kNan;
            return;
        }
        out_x = pose.x(frame, *ref.kp);
        out_y = pose.y(frame, *ref.kp);
        return;
    }
    double sx = 0.0, sy = 0.0;
    const std::size_t k = pose.keypoint_count();
    for (std::size_t i = 0; i < k; ++i) {
        if (pose.likelihood(frame, i) < min_likelihood) {
            out_x = out_y = kNan;
            return;
        }
        sx += pose.x(frame, i);
        sy += pose.y(frame, i);
    }
    out_x = sx / static_cast<double>(k);
    out_y = sy / static_cast<double>(k);
}

double require_scale(const PoseTable& pose) {
    if (!pose.timebase.px_per_cm)
        throw Error(ErrorCode::missing_scale,
                    "px_per_cm missing for animal '" + pose.animal_id + "'");
    return *pose.timebase.px_per_cm;
}

void require_same_clock(const PoseTable& a, const PoseTable& b) {
    if (a.frames() != b.frames())
        throw Error(ErrorCode::length_mismatch,
                    "pose tables disagree on frame count (" +
                        std::to_string(a.frames()) + " vs " +
                        std::to_string(b.frames()) + ")");
    if (a.timebase.fps != b.timebase.fps)
        throw Error(ErrorCode::precondition, "pose tables disagree on fps");
    if (a.timebase.px_per_cm != b.timebase.px_per_cm)
        throw Error(ErrorCode::precondition, "pose tables disagree on spatial scale");
}

void require_unit(const FeatureSeries& f, Unit unit) {
    if (f.unit != unit)
        throw Error(ErrorCode::unit_mismatch,
                    "feature '" + f.name + "' is in " + unit_name(f.unit) +
                        ", expected " + unit_name(unit));
}

} // namespace

const char* unit_name(Unit unit) {
    switch (unit) {
        case Unit::centimeters: return "cm";
        case Unit::centimeters_per_second: return "cm/s";
        case Unit::radians: return "rad";
    }
    return "?";
}

void validate(const HeuristicRule& rule) {
    if (!(rule.distance_threshold_cm > 0.0))
        throw Error(ErrorCode::invalid_config, "distance threshold must be positive");
    if (rule.kind == HeuristicRule::Kind::approach &&
        !(rule.approach_speed_threshold_cm_s > 0.0))
        throw Error(ErrorCode::invalid_config, "approach speed threshold must be positive");
}

FeatureSeries interanimal_distance(const PoseTable& a, const PoseTable& b,
                                   const RefKeypoint& ref, const FeatureOptions& opt) {
    require_same_clock(a, b);
    const double scale = require_scale(a);
    const RefPoint ra = resolve_ref(a, ref);
    const RefPoint rb = resolve_ref(b, ref);
    const FrameIndex n = a.frames();

    FeatureSeries out;
    out.name = "interanimal_distance";
    out.unit = Unit::centimeters;
    out.timebase = a.timebase;
    out.values.resize(static_cast<std::size_t>(n));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n > kParallelCutoff)
#endif
    for (FrameIndex f = 0; f < n; ++f) {
        double ax, ay, bx, by;
        ref_point(a, f, ra, opt.min_likelihood, ax, ay);
        ref_point(b, f, rb, opt.min_likelihood, bx, by);
        out.values[static_cast<std::size_t>(f)] =
            std::hypot(bx - ax, by - ay) / scale;
    }
    return out;
}

FeatureSeries speed(const PoseTable& a, const RefKeypoint& ref,
                    const FeatureOptions& opt) {
    if (a.frames() < 2)
        throw Error(ErrorCode::precondition, "speed needs at least two frames");
    const double scale = require_scale(a);
    const double fps = a.timebase.fps;
    const RefPoint ra = resolve_ref(a, ref);
    const FrameIndex n = a.frames();

    FeatureSeries out;
    out.name = "speed_" + (a.animal_id.empty() ? std::string("a") : a.animal_id);
    out.unit = Unit::centimeters_per_second;
    out.timebase = a.timebase;
    out.values.resize(static_cast<std::size_t>(n));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n > kParallelCutoff)
#endif
    for (FrameIndex f = 1; f < n; ++f) {
        double px, py, cx, cy;
        ref_point(a, f - 1, ra, opt.min_likelihood, px, py);
        ref_point(a, f, ra, opt.min_likelihood, cx, cy);
        out.values[static_cast<std::size_t>(f)] =
            std::hypot(cx - px, cy - py) * fps / scale;
    }
    out.values[0] = out.values[1];  // backfill keeps the series full length
    return out;
}

FeatureSeries facing_angle(const PoseTable& a, const PoseTable& b,
                           const std::string& nose_kp, const std::string& tail_kp,
                           const RefKeypoint& target, const FeatureOptions& opt) {
    require_same_clock(a, b);
    const RefPoint nose = resolve_ref(a, RefKeypoint(nose_kp));
    const RefPoint tail = resolve_ref(a, RefKeypoint(tail_kp));
    const RefPoint tgt = resolve_ref(b, target);
    const FrameIndex n = a.frames();

    FeatureSeries out;
    out.name = "facing_angle";
    out.unit = Unit::radians;
    out.timebase = a.timebase;
    out.values.resize(static_cast<std::size_t>(n));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n > kParallelCutoff)
#endif
    for (FrameIndex f = 0; f < n; ++f) {
        double nx, ny, tx, ty, gx, gy;
        ref_point(a, f, nose, opt.min_likelihood, nx, ny);
        ref_point(a, f, tail, opt.min_likelihood, tx, ty);
        ref_point(b, f, tgt, opt.min_likelihood, gx, gy);
        const double hx = nx - tx, hy = ny - ty;      // heading: tail -> nose
        const double vx = gx - nx, vy = gy - ny;      // nose -> target
        double value = kNan;
        if ((hx != 0.0 || hy != 0.0) && (vx != 0.0 || vy != 0.0)) {
            const double dot = hx * vx + hy * vy;
            const double cross = hx * vy - hy * vx;
            value = std::atan2(std::fabs(cross), dot);
        }
        out.values[static_cast<std::size_t>(f)] = value;
    }
    return out;
}

FrameSeries proximity_classifier(const FeatureSeries& dist_cm, double threshold_cm,
                                 LabelId label, const LabelSet& label_set) {
    require_unit(dist_cm, Unit::centimeters);
    if (!(threshold_cm > 0.0))
        throw Error(ErrorCode::invalid_config, "proximity threshold must be positive");
    if (!label_set.valid(label) || label_set.is_background(label))
        throw Error(ErrorCode::unknown_label, "emitted label must be valid and non-background");

    FrameSeries out;
    out.timebase = dist_cm.timebase;
    out.label_set = label_set;
    out.labels.resize(dist_cm.values.size(), label_set.background());
    for (std::size_t f = 0; f < dist_cm.values.size(); ++f) {
        const double d = dist_cm.values[f];
        if (feature_defined(d) && d <= threshold_cm)
            out.labels[f] = label;
    }
    return out;
}

FrameSeries approach_classifier(const FeatureSeries& dist_cm,
                                const FeatureSeries& speed_a,
                                const HeuristicRule& rule, const LabelSet& label_set) {
    require_unit(dist_cm, Unit::centimeters);
    require_unit(speed_a, Unit::centimeters_per_second);
    validate(rule);
    if (dist_cm.values.size() != speed_a.values.size())
        throw Error(ErrorCode::length_mismatch, "distance and speed series differ in length");
    if (!label_set.valid(rule.emitted_label) || label_set.is_background(rule.emitted_label))
        throw Error(ErrorCode::unknown_label, "emitted label must be valid and non-background");

    FrameSeries out;
    out.timebase = dist_cm.timebase;
    out.label_set = label_set;
    out.labels.resize(dist_cm.values.size(), label_set.background());
    for (std::size_t f = 1; f < dist_cm.values.size(); ++f) {
        const double d = dist_cm.values[f];
        const double prev = dist_cm.values[f - 1];
        const double v = speed_a.values[f];
        if (feature_defined(d) && feature_defined(prev) && feature_defined(v) &&
            d < prev && d <= rule.distance_threshold_cm &&
            v >= rule.approach_speed_threshold_cm_s)
            out.labels[f] = rule.emitted_label;
    }
    return out;
}

} // namespace banos
