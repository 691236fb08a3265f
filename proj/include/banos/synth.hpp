#pragma once

#include <cstdint>

#include "banos/annotation.hpp"

namespace banos {

// Seeded synthetic annotation generator. Bouts get uniform lengths in
// [bout_min, bout_max] and uniform non-background labels; inter-bout gaps
// are sized so covered frames approximate `density`. Bit-reproducible per
// seed. Density 0 is the degenerate all-background series.
struct SynthConfig {
    std::uint64_t seed = 0;
    FrameIndex length = 1000;
    int label_count = 1;          // non-background labels
    FrameIndex bout_min = 5;
    FrameIndex bout_max = 20;
    double density = 0.2;         // in [0,1)
};

void validate(const SynthConfig& cfg);

FrameSeries generate(const SynthConfig& cfg);

// Controlled corruptions modeling annotation failure modes.
//   boundary_jitter: each bout edge moves by exactly `magnitude` frames,
//                    sign drawn uniformly per edge. Bouts keep at least one
//                    frame and never cross a neighbor.
//   flicker:         each in-bout frame flips to background with
//                    probability `magnitude`.
//   split:           floor(magnitude) single-frame background gaps per bout
//                    at distinct interior positions.
//   drop ("delete"): each bout removed with probability `magnitude`.
//   relabel:         each bout switched to a different uniform label with
//                    probability `magnitude` (identity with < 2 labels).
struct Perturbation {
    enum class Kind { boundary_jitter, flicker, split, drop, relabel };
    Kind kind = Kind::boundary_jitter;
    double magnitude = 0.0;
    std::uint64_t seed = 0;
};

void validate(const Perturbation& p);

FrameSeries perturb(const FrameSeries& series, const Perturbation& p);

} // namespace banos
