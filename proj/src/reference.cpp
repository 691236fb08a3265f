#include "banos/reference.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace banos::reference {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Frame-level reference point, recomputed from scratch every call.
bool point_at(const PoseTable& pose, FrameIndex frame, const RefKeypoint& ref,
              double min_likelihood, double& x, double& y) {
    if (ref && !ref->empty()) {
        const auto kp = pose.keypoint_index(*ref);
        if (!kp)
            throw Error(ErrorCode::missing_keypoint, "keypoint '" + *ref + "' not found");
        if (pose.likelihood(frame, *kp) < min_likelihood)
            return false;
        x = pose.x(frame, *kp);
        y = pose.y(frame, *kp);
        return true;
    }
    double sx = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < pose.keypoint_count(); ++k) {
        if (pose.likelihood(frame, k) < min_likelihood)
            return false;
        sx += pose.x(frame, k);
        sy += pose.y(frame, k);
    }
    x = sx / static_cast<double>(pose.keypoint_count());
    y = sy / static_cast<double>(pose.keypoint_count());
    return true;
}

double scale_of(const PoseTable& pose) {
    if (!pose.timebase.px_per_cm)
        throw Error(ErrorCode::missing_scale, "px_per_cm missing");
    return *pose.timebase.px_per_cm;
}

} // namespace

ConfusionCounts frame_confusion(const FrameSeries& pred, const FrameSeries& gt,
                                LabelId label) {
    if (pred.size() != gt.size())
        throw Error(ErrorCode::length_mismatch, "series lengths differ");
    if (!(pred.label_set == gt.label_set))
        throw Error(ErrorCode::label_set_mismatch, "series label sets differ");
    ConfusionCounts c;
    for (std::size_t i = 0; i < pred.labels.size(); ++i) {
        if (pred.labels[i] == label) {
            if (gt.labels[i] == label)
                c.tp++;
            else
                c.fp++;
        } else {
            if (gt.labels[i] == label)
                c.fn++;
            else
                c.tn++;
        }
    }
    return c;
}

FrameSeries mode_smooth(const FrameSeries& series, FrameIndex window) {
    if (window < 1 || window % 2 == 0)
        throw Error(ErrorCode::invalid_config, "smooth window must be odd and >= 1");
    FrameSeries out = series;
    const FrameIndex n = series.size();
    const FrameIndex half = window / 2;
    for (FrameIndex i = 0; i < n; ++i) {
        std::map<LabelId, FrameIndex> counts;
        const FrameIndex lo = std::max<FrameIndex>(0, i - half);
        const FrameIndex hi = std::min(n, i + half + 1);
        for (FrameIndex f = lo; f < hi; ++f)
            counts[series.labels[static_cast<std::size_t>(f)]]++;
        FrameIndex best = 0;
        LabelId best_label = series.labels[static_cast<std::size_t>(i)];
        bool tie = false;
        for (const auto& [lbl, cnt] : counts) {
            if (cnt > best) {
                best = cnt;
                best_label = lbl;
                tie = false;
            } else if (cnt == best) {
                tie = true;
            }
        }
        out.labels[static_cast<std::size_t>(i)] =
            tie ? series.labels[static_cast<std::size_t>(i)] : best_label;
    }
    return out;
}

FeatureSeries interanimal_distance(const PoseTable& a, const PoseTable& b,
                                   const RefKeypoint& ref, const FeatureOptions& opt) {
    if (a.frames() != b.frames())
        throw Error(ErrorCode::length_mismatch, "pose tables disagree on frame count");
    const double scale = scale_of(a);
    FeatureSeries out;
    out.name = "interanimal_distance";
    out.unit = Unit::centimeters;
    out.timebase = a.timebase;
    for (FrameIndex f = 0; f < a.frames(); ++f) {
        double ax, ay, bx, by;
        if (point_at(a, f, ref, opt.min_likelihood, ax, ay) &&
            point_at(b, f, ref, opt.min_likelihood, bx, by))
            out.values.push_back(std::sqrt((bx - ax) * (bx - ax) + (by - ay) * (by - ay)) / scale);
        else
            out.values.push_back(kNan);
    }
    return out;
}

FeatureSeries speed(const PoseTable& a, const RefKeypoint& ref,
                    const FeatureOptions& opt) {
    if (a.frames() < 2)
        throw Error(ErrorCode::precondition, "speed needs at least two frames");
    const double scale = scale_of(a);
    FeatureSeries out;
    out.name = "speed_" + (a.animal_id.empty() ? std::string("a") : a.animal_id);
    out.unit = Unit::centimeters_per_second;
    out.timebase = a.timebase;
    out.values.resize(static_cast<std::size_t>(a.frames()), kNan);
    for (FrameIndex f = 1; f < a.frames(); ++f) {
        double px, py, cx, cy;
        if (point_at(a, f - 1, ref, opt.min_likelihood, px, py) &&
            point_at(a, f, ref, opt.min_likelihood, cx, cy))
            out.values[static_cast<std::size_t>(f)] =
                std::sqrt((cx - px) * (cx - px) + (cy - py) * (cy - py)) *
                a.timebase.fps / scale;
    }
    out.values[0] = out.values[1];
    return out;
}

FeatureSeries facing_angle(const PoseTable& a, const PoseTable& b,
                           const std::string& nose_kp, const std::string& tail_kp,
                           const RefKeypoint& target, const FeatureOptions& opt) {
    if (a.frames() != b.frames())
        throw Error(ErrorCode::length_mismatch, "pose tables disagree on frame count");
    FeatureSeries out;
    out.name = "facing_angle";
    out.unit = Unit::radians;
    out.timebase = a.timebase;
    for (FrameIndex f = 0; f < a.frames(); ++f) {
        double nx, ny, tx, ty, gx, gy;
        if (!point_at(a, f, RefKeypoint(nose_kp), opt.min_likelihood, nx, ny) ||
            !point_at(a, f, RefKeypoint(tail_kp), opt.min_likelihood, tx, ty) ||
            !point_at(b, f, target, opt.min_likelihood, gx, gy)) {
            out.values.push_back(kNan);
            continue;
        }
        const double hx = nx - tx, hy = ny - ty;
        const double vx = gx - nx, vy = gy - ny;
        const double hn = std::sqrt(hx * hx + hy * hy);
        const double vn = std::sqrt(vx * vx + vy * vy);
        if (hn == 0.0 || vn == 0.0) {
            out.values.push_back(kNan);
            continue;
        }
        double cosine = (hx * vx + hy * vy) / (hn * vn);
        cosine = std::max(-1.0, std::min(1.0, cosine));
        out.values.push_back(std::acos(cosine));
    }
    return out;
}

} // namespace banos::reference
