#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "banos/annotation.hpp"

namespace banos {

// Keypoint track for one animal: per frame, per keypoint (x, y, likelihood).
// Coordinates in pixels, likelihood in [0, 1]. Row-major frame x keypoint.
struct PoseTable {
    std::string animal_id;
    std::vector<std::string> keypoints;
    Timebase timebase;
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> likelihoods;

    std::size_t keypoint_count() const { return keypoints.size(); }
    FrameIndex frames() const {
        return keypoints.empty()
                   ? 0
                   : static_cast<FrameIndex>(xs.size() / keypoints.size());
    }
    std::optional<std::size_t> keypoint_index(std::string_view name) const;

    double x(FrameIndex frame, std::size_t kp) const {
        return xs[static_cast<std::size_t>(frame) * keypoints.size() + kp];
    }
    double y(FrameIndex frame, std::size_t kp) const {
        return ys[static_cast<std::size_t>(frame) * keypoints.size() + kp];
    }
    double likelihood(FrameIndex frame, std::size_t kp) const {
        return likelihoods[static_cast<std::size_t>(frame) * keypoints.size() + kp];
    }
};

void validate(const PoseTable& pose);

} // namespace banos
