#include "banos/pose.hpp"

#include <cmath>

namespace banos {

std::optional<std::size_t> PoseTable::keypoint_index(std::string_view name) const {
    for (std::size_t i = 0; i < keypoints.size(); ++i)
        if (keypoints[i] == name)
            return i;
    return std::nullopt;
}

void validate(const PoseTable& pose) {
    validate(pose.timebase);
    if (pose.keypoints.empty())
        throw Error(ErrorCode::invalid_config, "pose table needs at least one keypoint");
    const std::size_t cells = pose.xs.size();
    if (pose.ys.size() != cells || pose.likelihoods.size() != cells ||
        cells % pose.keypoints.size() != 0)
        throw Error(ErrorCode::invalid_config, "pose table storage is ragged");
    for (std::size_t i = 0; i < cells; ++i) {
        if (!std::isfinite(pose.xs[i]) || !std::isfinite(pose.ys[i]))
            throw Error(ErrorCode::non_finite_coordinate, "pose coordinate is not finite");
        if (!(pose.likelihoods[i] >= 0.0 && pose.likelihoods[i] <= 1.0))
            throw Error(ErrorCode::likelihood_range, "likelihood outside [0,1]");
    }
}

} // namespace banos
