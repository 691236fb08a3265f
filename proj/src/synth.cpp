#include "banos/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace banos {

namespace {

FrameIndex draw(std::mt19937_64& rng, FrameIndex lo, FrameIndex hi) {
    return std::uniform_int_distribution<FrameIndex>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

LabelSet synth_label_set(int label_count) {
    std::vector<std::string> names{"background"};
    for (int i = 1; i <= label_count; ++i)
        names.push_back("b" + std::to_string(i));
    return LabelSet(std::move(names));
}

} // namespace

void validate(const SynthConfig& cfg) {
    if (cfg.length < 1)
        throw Error(ErrorCode::invalid_config, "length must be >= 1");
    if (cfg.label_count < 1)
        throw Error(ErrorCode::invalid_config, "label count must be >= 1");
    if (!(cfg.density >= 0.0 && cfg.density < 1.0))
        throw Error(ErrorCode::invalid_config, "density must lie in [0,1)");
    if (cfg.bout_min < 1 || cfg.bout_min > cfg.bout_max)
        throw Error(ErrorCode::invalid_config, "need 1 <= bout_min <= bout_max");
}

FrameSeries generate(const SynthConfig& cfg) {
    validate(cfg);
    if (cfg.density == 0.0) {
        FrameSeries out;
        out.label_set = synth_label_set(cfg.label_count);
        out.labels.assign(static_cast<std::size_t>(cfg.length),
                          out.label_set.background());
        return out;
    }
    const double mean_len = 0.5 * static_cast<double>(cfg.bout_min + cfg.bout_max);
    const double mean_gap = mean_len * (1.0 - cfg.density) / cfg.density;
    if (mean_gap < 1.0)
        throw Error(ErrorCode::infeasible_density,
                    "density too high to keep bouts separated by background");
    const auto gap_lo = std::max<FrameIndex>(1, static_cast<FrameIndex>(mean_gap / 2.0));
    const auto gap_hi =
        std::max(gap_lo, static_cast<FrameIndex>(mean_gap * 1.5));

    FrameSeries out;
    out.label_set = synth_label_set(cfg.label_count);
    out.labels.assign(static_cast<std::size_t>(cfg.length), out.label_set.background());

    std::mt19937_64 rng(cfg.seed);
    FrameIndex pos = draw(rng, gap_lo, gap_hi);
    while (pos + cfg.bout_min <= cfg.length) {
        const FrameIndex len = draw(rng, cfg.bout_min, cfg.bout_max);
        if (pos + len > cfg.length)
            break;  // never truncate: bout lengths stay within [min,max]
        const auto label = static_cast<LabelId>(draw(rng, 1, cfg.label_count));
        std::fill(out.labels.begin() + pos, out.labels.begin() + pos + len, label);
        pos += len + draw(rng, gap_lo, gap_hi);
    }
    return out;
}

void validate(const Perturbation& p) {
    if (p.magnitude < 0.0)
        throw Error(ErrorCode::invalid_config, "magnitude must be >= 0");
    const bool probability_kind = p.kind == Perturbation::Kind::flicker ||
                                  p.kind == Perturbation::Kind::drop ||
                                  p.kind == Perturbation::Kind::relabel;
    if (probability_kind && p.magnitude > 1.0)
        throw Error(ErrorCode::invalid_config, "probability magnitudes must be <= 1");
}

FrameSeries perturb(const FrameSeries& series, const Perturbation& p) {
    validate(p);
    if (p.magnitude == 0.0)
        return series;

    std::mt19937_64 rng(p.seed);
    const SegmentList segs = segments_from_frames(series);
    const LabelId bg = series.label_set.background();
    FrameSeries out = series;

    switch (p.kind) {
        case Perturbation::Kind::boundary_jitter: {
            const auto mag = static_cast<FrameIndex>(std::llround(p.magnitude));
            std::fill(out.labels.begin(), out.labels.end(), bg);
            FrameIndex prev_end = 0;
            for (const Segment& s : segs.segments) {
                const FrameIndex ds = coin(rng, 0.5) ? mag : -mag;
                const FrameIndex de = coin(rng, 0.5) ? mag : -mag;
                FrameIndex start = std::max(s.start + ds, prev_end);
                FrameIndex end = std::min(s.end + de, series.size());
                // keep the bout alive when the shift collapses it
                end = std::max(end, start + 1);
                if (start >= series.size())
                    continue;
                end = std::min(end, series.size());
                std::fill(out.labels.begin() + start, out.labels.begin() + end, s.label);
                prev_end = end;
            }
            break;
        }
        case Perturbation::Kind::flicker: {
            for (std::size_t i = 0; i < out.labels.size(); ++i)
                if (out.labels[i] != bg && coin(rng, p.magnitude))
                    out.labels[i] = bg;
            break;
        }
        case Perturbation::Kind::split: {
            const auto gaps = static_cast<FrameIndex>(p.magnitude);
            for (const Segment& s : segs.segments) {
                const FrameIndex interior = s.length() - 2;
                if (interior < 1)
                    continue;
                const FrameIndex want = std::min(gaps, interior);
                std::set<FrameIndex> offsets;
                while (static_cast<FrameIndex>(offsets.size()) < want)
                    offsets.insert(draw(rng, 1, s.length() - 2));
                for (FrameIndex off : offsets)
                    out.labels[static_cast<std::size_t>(s.start + off)] = bg;
            }
            break;
        }
        case Perturbation::Kind::drop: {
            for (const Segment& s : segs.segments)
                if (coin(rng, p.magnitude))
                    std::fill(out.labels.begin() + s.start, out.labels.begin() + s.end, bg);
            break;
        }
        case Perturbation::Kind::relabel: {
            std::vector<LabelId> behaviors;
            for (LabelId l = 0; l < static_cast<LabelId>(series.label_set.size()); ++l)
                if (l != bg)
                    behaviors.push_back(l);
            if (behaviors.size() < 2)
                break;  // needs a second non-background label
            for (const Segment& s : segs.segments) {
                if (!coin(rng, p.magnitude))
                    continue;
                std::vector<LabelId> candidates;
                for (LabelId l : behaviors)
                    if (l != s.label)
                        candidates.push_back(l);
                const auto pick = static_cast<std::size_t>(
                    draw(rng, 0, static_cast<FrameIndex>(candidates.size()) - 1));
                std::fill(out.labels.begin() + s.start, out.labels.begin() + s.end,
                          candidates[pick]);
            }
            break;
        }
    }
    return out;
}

} // namespace banos
