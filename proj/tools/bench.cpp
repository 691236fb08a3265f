// Benchmark of the OpenMP kernels against the serial reference
// implementations. Run manually; sizes are command-line overridable:
//   banos_bench [label_frames] [pose_frames]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "banos/features.hpp"
#include "banos/metrics.hpp"
#include "banos/postprocess.hpp"
#include "banos/reference.hpp"
#include "banos/synth.hpp"

using namespace banos;

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& fn) {
    const auto t0 = clock_type::now();
    fn();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* kernel, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-22s %10.1f ms %10.1f ms   x%.2f   %s\n", kernel, serial_ms,
                parallel_ms, serial_ms / parallel_ms, equal ? "match" : "MISMATCH");
}

PoseTable random_pose(std::mt19937_64& rng, FrameIndex frames) {
    PoseTable pose;
    pose.animal_id = "bench";
    pose.keypoints = {"nose", "earL", "earR", "tail"};
    pose.timebase.fps = 25.0;
    pose.timebase.px_per_cm = 12.0;
    std::uniform_real_distribution<double> coord(0.0, 640.0);
    std::uniform_real_distribution<double> lik(0.3, 1.0);
    const std::size_t cells = static_cast<std::size_t>(frames) * pose.keypoints.size();
    pose.xs.reserve(cells);
    pose.ys.reserve(cells);
    pose.likelihoods.reserve(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        pose.xs.push_back(coord(rng));
        pose.ys.push_back(coord(rng));
        pose.likelihoods.push_back(lik(rng));
    }
    return pose;
}

bool same_values(const FeatureSeries& a, const FeatureSeries& b) {
    if (a.values.size() != b.values.size())
        return false;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const bool da = feature_defined(a.values[i]), db = feature_defined(b.values[i]);
        if (da != db)
            return false;
        if (da && std::abs(a.values[i] - b.values[i]) > 1e-9)
            return false;
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    const FrameIndex label_frames = argc > 1 ? std::atoll(argv[1]) : 4'000'000;
    const FrameIndex pose_frames = argc > 2 ? std::atoll(argv[2]) : 1'000'000;
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without openmp; both columns run serially\n");
#endif
    std::printf("label kernels: %lld frames, pose kernels: %lld frames\n\n",
                static_cast<long long>(label_frames),
                static_cast<long long>(pose_frames));
    std::printf("%-22s %13s %13s\n", "kernel", "serial", "parallel");

    SynthConfig cfg;
    cfg.seed = 99;
    cfg.length = label_frames;
    cfg.label_count = 4;
    cfg.bout_min = 10;
    cfg.bout_max = 200;
    cfg.density = 0.4;
    const FrameSeries gt = generate(cfg);
    const FrameSeries pred = perturb(gt, {Perturbation::Kind::flicker, 0.05, 7});

    {
        ConfusionCounts serial, parallel;
        const double s = time_ms([&] { serial = reference::frame_confusion(pred, gt, 1); });
        const double p = time_ms([&] { parallel = frame_confusion(pred, gt, 1); });
        row("frame_confusion", s, p, serial == parallel);
    }
    {
        FrameSeries serial, parallel;
        const double s = time_ms([&] { serial = reference::mode_smooth(pred, 9); });
        const double p = time_ms([&] { parallel = mode_smooth(pred, 9); });
        row("mode_smooth w=9", s, p, serial.labels == parallel.labels);
    }

    std::mt19937_64 rng(1234);
    const PoseTable a = random_pose(rng, pose_frames);
    const PoseTable b = random_pose(rng, pose_frames);
    {
        FeatureSeries serial, parallel;
        const double s = time_ms([&] { serial = reference::interanimal_distance(a, b); });
        const double p = time_ms([&] { parallel = interanimal_distance(a, b); });
        row("interanimal_distance", s, p, same_values(serial, parallel));
    }
    {
        FeatureSeries serial, parallel;
        const double s = time_ms([&] { serial = reference::speed(a); });
        const double p = time_ms([&] { parallel = speed(a); });
        row("speed", s, p, same_values(serial, parallel));
    }
    {
        FeatureSeries serial, parallel;
        const double s = time_ms(
            [&] { serial = reference::facing_angle(a, b, "nose", "tail"); });
        const double p = time_ms([&] { parallel = facing_angle(a, b, "nose", "tail"); });
        row("facing_angle", s, p, same_values(serial, parallel));
    }
    return 0;
}
