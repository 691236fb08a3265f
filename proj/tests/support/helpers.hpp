#pragma once

#include <string>
#include <vector>

#include "banos/annotation.hpp"
#include "banos/pose.hpp"

namespace testutil {

// Series over label set {background, b1..bN}; N defaults to the largest
// index used.
inline banos::FrameSeries series_of(const std::vector<banos::LabelId>& labels,
                                    int label_count = 0, double fps = 25.0) {
    int max_label = label_count;
    for (banos::LabelId l : labels)
        max_label = std::max<int>(max_label, l);
    std::vector<std::string> names{"background"};
    for (int i = 1; i <= std::max(max_label, 1); ++i)
        names.push_back("b" + std::to_string(i));
    banos::FrameSeries out;
    out.label_set = banos::LabelSet(names);
    out.labels = labels;
    out.timebase.fps = fps;
    return out;
}

inline banos::SegmentList segs_of(std::vector<banos::Segment> segments,
                                  banos::FrameIndex series_length) {
    return banos::SegmentList{std::move(segments), series_length};
}

// Single-keypoint pose table from (x, y) per frame, likelihood 1.
inline banos::PoseTable pose_of(const std::vector<std::pair<double, double>>& points,
                                double fps = 25.0, double px_per_cm = 1.0,
                                const std::string& animal = "a",
                                const std::string& keypoint = "nose") {
    banos::PoseTable pose;
    pose.animal_id = animal;
    pose.keypoints = {keypoint};
    pose.timebase.fps = fps;
    pose.timebase.px_per_cm = px_per_cm;
    for (const auto& [x, y] : points) {
        pose.xs.push_back(x);
        pose.ys.push_back(y);
        pose.likelihoods.push_back(1.0);
    }
    return pose;
}

} // namespace testutil
