#include "banos/errors.hpp"

namespace banos {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::file: return "file";
        case ErrorCode::parse: return "parse";
        case ErrorCode::unknown_label: return "unknown-label";
        case ErrorCode::frame_gap: return "frame-gap";
        case ErrorCode::likelihood_range: return "likelihood-range";
        case ErrorCode::non_finite_coordinate: return "non-finite-coordinate";
        case ErrorCode::overlap: return "overlap";
        case ErrorCode::length_mismatch: return "length-mismatch";
        case ErrorCode::label_set_mismatch: return "label-set-mismatch";
        case ErrorCode::missing_keypoint: return "missing-keypoint";
        case ErrorCode::missing_scale: return "missing-scale";
        case ErrorCode::unit_mismatch: return "unit-mismatch";
        case ErrorCode::precondition: return "precondition";
        case ErrorCode::infeasible_density: return "infeasible-density";
        case ErrorCode::too_large: return "too-large";
        case ErrorCode::invalid_config: return "invalid-config";
    }
    return "unknown";
}

int exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::file: return 3;
        case ErrorCode::parse: return 4;
        case ErrorCode::unknown_label: return 5;
        case ErrorCode::frame_gap: return 6;
        case ErrorCode::likelihood_range: return 7;
        case ErrorCode::non_finite_coordinate: return 8;
        case ErrorCode::overlap: return 9;
        case ErrorCode::length_mismatch: return 10;
        case ErrorCode::label_set_mismatch: return 11;
        case ErrorCode::missing_keypoint: return 12;
        case ErrorCode::missing_scale: return 13;
        case ErrorCode::unit_mismatch: return 14;
        case ErrorCode::precondition: return 15;
        case ErrorCode::infeasible_density: return 16;
        case ErrorCode::too_large: return 17;
        case ErrorCode::invalid_config: return 18;
    }
    return 1;
}

} // namespace banos
