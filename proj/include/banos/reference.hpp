#pragma once

// Serial reference implementations of the OpenMP kernels. Deliberately
// naive, kept as the correctness baseline for tests and for the benchmark
// tool. Same contracts as the production functions.

#include "banos/annotation.hpp"
#include "banos/features.hpp"
#include "banos/metrics.hpp"

namespace banos::reference {

ConfusionCounts frame_confusion(const FrameSeries& pred, const FrameSeries& gt,
                                LabelId label);

FrameSeries mode_smooth(const FrameSeries& series, FrameIndex window);

FeatureSeries interanimal_distance(const PoseTable& a, const PoseTable& b,
                                   const RefKeypoint& ref = std::nullopt,
                                   const FeatureOptions& opt = {});

FeatureSeries speed(const PoseTable& a, const RefKeypoint& ref = std::nullopt,
                    const FeatureOptions& opt = {});

FeatureSeries facing_angle(const PoseTable& a, const PoseTable& b,
                           const std::string& nose_kp, const std::string& tail_kp,
                           const RefKeypoint& target = std::nullopt,
                           const FeatureOptions& opt = {});

} // namespace banos::reference
