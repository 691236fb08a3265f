#pragma once

#include <stdexcept>
#include <string>

namespace banos {

// Every failure the library reports, one code per contract violation family.
// The CLI maps these 1:1 onto exit codes (see exit_code below).
enum class ErrorCode {
    file = 1,
    parse,
    unknown_label,
    frame_gap,
    likelihood_range,
    non_finite_coordinate,
    overlap,
    length_mismatch,
    label_set_mismatch,
    missing_keypoint,
    missing_scale,
    unit_mismatch,
    precondition,
    infeasible_density,
    too_large,
    invalid_config,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

// Stable nonzero process exit codes, one per error family. 2 is reserved
// for command-line usage errors.
int exit_code(ErrorCode code);

} // namespace banos
