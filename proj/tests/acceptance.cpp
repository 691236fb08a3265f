// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// binding criterion fails. Criterion 7 is a documented non-binding
// calibration against an externally supplied annotator pair.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "banos/annotation.hpp"
#include "banos/io.hpp"
#include "banos/metrics.hpp"
#include "banos/report.hpp"
#include "banos/synth.hpp"
#include "support/oracles.hpp"

using namespace banos;

namespace {

int g_failures = 0;

void report_line(int criterion, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << criterion << ". " << detail << "\n";
    if (!pass)
        ++g_failures;
}

void skip_line(int criterion, const std::string& detail) {
    std::cout << "[SKIP] " << criterion << ". " << detail << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// criteria 1 + 2: extraction oracle equivalence and exact round-trip on the
// same 1000-series corpus
void criteria_oracle_and_roundtrip() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    bool oracle_ok = true, roundtrip_ok = true;
    for (int trial = 0; trial < 1000; ++trial) {
        const FrameSeries s = oracle::random_series(rng, 500, 5);
        const SegmentList got = segments_from_frames(s);
        const SegmentList want = oracle::oracle_segments(s);
        oracle_ok &= got.segments == want.segments &&
                     got.series_length == want.series_length;
        const FrameSeries back = frames_from_segments(got, s.label_set, s.timebase);
        roundtrip_ok &= back.labels == s.labels;
    }
    const double elapsed = seconds_since(t0);
    std::ostringstream msg1;
    msg1 << "oracle equivalence: segments_from_frames == independent scan on 1000 "
            "series ("
         << elapsed << " s < 5 s)";
    report_line(1, oracle_ok && elapsed < 5.0, msg1.str());
    report_line(2, roundtrip_ok,
                "round-trip: frames_from_segments(segments_from_frames(x)) == x, exact");
}

// criterion 3: pred == gt implies frame F1 and all four scores exactly 1
void criterion_identity() {
    bool ok = true;
    int evaluated = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SynthConfig cfg;
        cfg.seed = seed;
        cfg.length = 400 + static_cast<FrameIndex>(seed % 5) * 100;
        cfg.label_count = 1 + static_cast<int>(seed % 3);
        cfg.bout_min = 3;
        cfg.bout_max = 20;
        cfg.density = 0.3;
        const FrameSeries s = generate(cfg);
        const SegmentList segs = segments_from_frames(s);
        for (LabelId label = 1; label < static_cast<LabelId>(s.label_set.size());
             ++label) {
            bool has_bout = false;
            for (const Segment& seg : segs.segments)
                has_bout |= seg.label == label;
            if (!has_bout)
                continue;
            ++evaluated;
            const LabelEvaluation e = evaluate_label(s, s, label);
            ok &= e.frame.f1 == 1.0 && e.banos.detection_accuracy == 1.0 &&
                  e.banos.segment_overlap == 1.0 && e.banos.temporal_precision == 1.0 &&
                  e.banos.intra_bout_continuity == 1.0;
        }
    }
    std::ostringstream msg;
    msg << "identity: pred == gt gives frame F1 = 1 and BANOS = (1,1,1,1) on "
        << evaluated << " label series";
    report_line(3, ok && evaluated >= 100, msg.str());
}

// criterion 4: fully disjoint pred/gt bouts
void criterion_disjoint() {
    std::vector<LabelId> gt_labels(400, 0), pred_labels(400, 0);
    for (int block = 0; block < 10; ++block) {
        for (int f = 0; f < 10; ++f) {
            gt_labels[static_cast<std::size_t>(block * 40 + f)] = 1;
            pred_labels[static_cast<std::size_t>(block * 40 + 20 + f)] = 1;
        }
    }
    FrameSeries gt, pred;
    gt.label_set = pred.label_set = LabelSet({"background", "b1"});
    gt.labels = gt_labels;
    pred.labels = pred_labels;

    const LabelEvaluation e = evaluate_label(pred, gt, 1);
    const bool ok = e.banos.detection_accuracy == 0.0 &&
                    e.banos.segment_overlap == 0.0 && e.frame.recall == 0.0 &&
                    !e.banos.temporal_precision;
    report_line(4, ok,
                "disjoint bouts: detection 0, overlap 0, recall 0, temporal "
                "precision undefined");
}

// criterion 5: jitter sweep on generated fixtures
void criterion_jitter() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> magnitudes{0, 1, 2, 4, 8};
    std::vector<double> mean_overlap(magnitudes.size(), 0.0);
    std::vector<double> mean_precision(magnitudes.size(), 0.0);
    bool detection_always_one = true;

    const int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
        SynthConfig cfg;
        cfg.seed = 5000 + static_cast<std::uint64_t>(trial);
        cfg.length = 4000;
        cfg.label_count = 1;
        cfg.bout_min = 20;
        cfg.bout_max = 30;
        cfg.density = 0.2;  // mean gap 100 frames, floor 50 > 2 * max jitter
        const FrameSeries clean = generate(cfg);
        for (std::size_t level = 0; level < magnitudes.size(); ++level) {
            Perturbation p;
            p.kind = Perturbation::Kind::boundary_jitter;
            p.magnitude = magnitudes[level];
            p.seed = static_cast<std::uint64_t>(trial) * 31 + level;
            const FrameSeries jittered = perturb(clean, p);
            const LabelEvaluation e = evaluate_label(jittered, clean, 1);
            detection_always_one &= e.banos.detection_accuracy == 1.0;
            mean_overlap[level] += e.banos.segment_overlap.value_or(-1.0) / trials;
            mean_precision[level] += e.banos.temporal_precision.value_or(-1.0) / trials;
        }
    }

    bool strictly_decreasing = true;
    for (std::size_t level = 1; level < magnitudes.size(); ++level)
        strictly_decreasing &= mean_overlap[level] < mean_overlap[level - 1];
    bool precision_collapses = true;
    for (std::size_t level = 1; level < magnitudes.size(); ++level)
        precision_collapses &= mean_precision[level] <= 0.05;

    const double elapsed = seconds_since(t0);
    std::ostringstream msg;
    msg << "jitter sweep: overlap means ";
    for (std::size_t level = 0; level < magnitudes.size(); ++level)
        msg << (level ? " > " : "") << mean_overlap[level];
    msg << ", detection stays 1, temporal precision <= 0.05 for jitter >= 1 ("
        << elapsed << " s < 10 s)";
    report_line(5,
                detection_always_one && strictly_decreasing && precision_collapses &&
                    elapsed < 10.0,
                msg.str());
}

// criterion 6: the flicker demonstration, closed-form values at 1e-9
void criterion_flicker() {
    std::vector<LabelId> gt_labels(200, 0), pred_labels(200, 0);
    for (int f = 50; f < 150; ++f)
        gt_labels[static_cast<std::size_t>(f)] = 1;
    for (int f = 50; f < 150; f += 2)
        pred_labels[static_cast<std::size_t>(f)] = 1;
    FrameSeries gt, pred;
    gt.label_set = pred.label_set = LabelSet({"background", "b1"});
    gt.labels = gt_labels;
    pred.labels = pred_labels;

    const LabelEvaluation e = evaluate_label(pred, gt, 1);
    auto near = [](const std::optional<double>& v, double want) {
        return v && std::fabs(*v - want) <= 1e-9;
    };
    const bool ok = near(e.frame.precision, 1.0) && near(e.frame.recall, 0.5) &&
                    near(e.frame.f1, 2.0 / 3.0) && e.counts.pred_bouts == 50 &&
                    e.counts.matched == 1 &&
                    near(e.banos.detection_accuracy, 2.0 / 51.0) &&
                    near(e.banos.intra_bout_continuity, 0.0);
    report_line(6, ok,
                "flicker: frame F1 = 2/3 while detection = 2/51 and continuity = 0 "
                "(50 predicted bouts, 1 matched)");
}

// criterion 7: non-binding CalMS21 calibration against paper table values
void criterion_calms21() {
    const char* dir = std::getenv("BANOS_CALMS21_DIR");
    if (dir == nullptr || std::string(dir).empty()) {
        skip_line(7,
                  "calibration: BANOS_CALMS21_DIR not set; supply an annotator pair "
                  "(gt.csv, pred.csv) to compute frame F1 and the four scores "
                  "against the published 0.79 / (0.27, 0.15, 0.01, 0.76)");
        return;
    }
    try {
        const std::filesystem::path base(dir);
        io::AnnotationTableSpec gt_spec{base / "gt.csv"};
        io::AnnotationTableSpec pred_spec{base / "pred.csv"};
        std::vector<std::string> names;
        for (const auto& spec : {gt_spec, pred_spec})
            for (const std::string& n : io::scan_label_names(spec))
                if (std::find(names.begin(), names.end(), n) == names.end())
                    names.push_back(n);
        std::sort(names.begin(), names.end());
        const auto other = std::find(names.begin(), names.end(), "other");
        if (other != names.end())
            std::rotate(names.begin(), other, other + 1);
        const LabelSet labels(names);
        const FrameSeries gt = io::parse_annotation_table(gt_spec, labels);
        const FrameSeries pred = io::parse_annotation_table(pred_spec, labels);

        std::vector<LabelEvaluation> evals;
        for (LabelId id = 1; id < static_cast<LabelId>(labels.size()); ++id)
            evals.push_back(evaluate_label(pred, gt, id));
        const LabelEvaluation macro = macro_aggregate(evals);

        const double want_f1 = 0.79, want_det = 0.27, want_ovl = 0.15,
                     want_prec = 0.01, want_cont = 0.76;
        std::ostringstream msg;
        msg << "calibration: frame F1 " << macro.frame.f1.value_or(-1) << " vs 0.79, "
            << "scores (" << macro.banos.detection_accuracy.value_or(-1) << ", "
            << macro.banos.segment_overlap.value_or(-1) << ", "
            << macro.banos.temporal_precision.value_or(-1) << ", "
            << macro.banos.intra_bout_continuity.value_or(-1)
            << ") vs (0.27, 0.15, 0.01, 0.76)";
        auto off = [](const std::optional<double>& v, double want) {
            return !v || std::fabs(*v - want) > 0.10;
        };
        if (off(macro.frame.f1, want_f1) ||
            off(macro.banos.detection_accuracy, want_det) ||
            off(macro.banos.segment_overlap, want_ovl) ||
            off(macro.banos.temporal_precision, want_prec) ||
            off(macro.banos.intra_bout_continuity, want_cont))
            msg << " — beyond ±0.10; see README calibration note on formula "
                   "decisions vs the reference package";
        report_line(7, true, msg.str());  // documented calibration, never binding
    } catch (const std::exception& e) {
        report_line(7, true,
                    std::string("calibration: supplied dataset unusable (") + e.what() +
                        "); non-binding");
    }
}

// criterion 8: hand-computed tIoU cases, exact to 1e-12
void criterion_tiou_suite() {
    struct Case {
        FrameIndex s1, e1, s2, e2;
        double num, den;  // expected = num / den
    };
    const std::vector<Case> cases{
        {0, 10, 0, 10, 1, 1},      // identical
        {0, 10, 10, 20, 0, 1},     // touching
        {0, 5, 10, 15, 0, 1},      // far apart
        {0, 10, 2, 5, 3, 10},      // nested
        {0, 10, 0, 4, 4, 10},      // nested flush left
        {0, 10, 6, 10, 4, 10},     // nested flush right
        {0, 10, 5, 15, 5, 15},     // half shift
        {3, 4, 3, 4, 1, 1},        // single-frame identical
        {0, 10, 4, 5, 1, 10},      // single frame inside
        {0, 10, 9, 10, 1, 10},     // single frame at the edge
        {0, 10, 9, 19, 1, 19},     // one-frame overlap
        {0, 2, 1, 3, 1, 3},
        {0, 100, 50, 150, 50, 150},
        {0, 3, 3, 6, 0, 1},        // touching short
        {5, 9, 5, 9, 1, 1},
        {0, 7, 2, 9, 5, 9},
        {10, 20, 0, 30, 10, 30},   // contained
        {0, 1, 0, 2, 1, 2},
        {0, 1, 1, 2, 0, 1},        // adjacent single frames
        {2, 8, 4, 12, 4, 10},
    };
    bool ok = cases.size() == 20;
    for (const Case& c : cases) {
        const Segment a{1, c.s1, c.e1}, b{1, c.s2, c.e2};
        const double want = c.num / c.den;
        ok &= std::fabs(tiou(a, b) - want) <= 1e-12;
        ok &= std::fabs(tiou(b, a) - want) <= 1e-12;
    }
    report_line(8, ok, "tIoU analytic suite: 20 hand-computed cases exact to 1e-12");
}

// criterion 9: greedy matching vs exhaustive optimum on small instances
void criterion_greedy_vs_optimal() {
    std::mt19937_64 rng(777);
    auto random_side = [&](FrameIndex span) {
        std::vector<Segment> segs;
        FrameIndex pos = 0;
        const int count = std::uniform_int_distribution<int>(0, 8)(rng);
        for (int i = 0; i < count && pos + 1 < span; ++i) {
            pos += std::uniform_int_distribution<FrameIndex>(0, 6)(rng);
            const FrameIndex len = std::uniform_int_distribution<FrameIndex>(1, 8)(rng);
            if (pos + len > span)
                break;
            segs.push_back({1, pos, pos + len});
            pos += len + 1;
        }
        return SegmentList{segs, span};
    };

    int discrepancies = 0;
    bool arithmetic_consistent = true;
    for (int trial = 0; trial < 500; ++trial) {
        const SegmentList pred = random_side(60);
        const SegmentList gt = random_side(60);
        const MatchedPairs greedy = match_segments(pred, gt, 1);
        const MatchedPairs best = oracle::oracle_optimal_matching(pred, gt, 1);
        if (greedy.pairs.size() != best.pairs.size()) {
            ++discrepancies;
            std::cout << "       discrepancy at trial " << trial << ": greedy "
                      << greedy.pairs.size() << " pairs";
            for (const MatchedPair& p : greedy.pairs)
                std::cout << " [gt " << p.gt.start << "," << p.gt.end << ")x(pred "
                          << p.pred.start << "," << p.pred.end << ")";
            std::cout << " vs optimal " << best.pairs.size() << " pairs";
            for (const MatchedPair& p : best.pairs)
                std::cout << " [gt " << p.gt.start << "," << p.gt.end << ")x(pred "
                          << p.pred.start << "," << p.pred.end << ")";
            std::cout << "\n";
            // both matchings must flow through the same F1 arithmetic
            auto f1_of = [](const MatchedPairs& m) {
                return detection_accuracy(m).value_or(-1.0);
            };
            const auto tp_g = static_cast<double>(greedy.pairs.size());
            const auto tp_b = static_cast<double>(best.pairs.size());
            arithmetic_consistent &=
                std::fabs(f1_of(greedy) -
                          2 * tp_g / (2 * tp_g + greedy.unmatched_pred.size() +
                                      greedy.unmatched_gt.size())) <= 1e-12;
            arithmetic_consistent &=
                std::fabs(f1_of(best) - 2 * tp_b / (2 * tp_b + best.unmatched_pred.size() +
                                                    best.unmatched_gt.size())) <= 1e-12;
        }
    }
    std::ostringstream msg;
    msg << "greedy vs optimal matching: " << (500 - discrepancies)
        << "/500 equal pair counts (needs >= 495); discrepancies logged";
    report_line(9, discrepancies <= 5 && arithmetic_consistent, msg.str());
}

// criterion 10: the CLI reproduces committed golden files byte-for-byte and
// maps malformed inputs to the documented exit codes
void criterion_cli_golden() {
    const char* cli = std::getenv("BANOS_CLI");
    const char* fixtures = std::getenv("BANOS_FIXTURES");
    if (cli == nullptr || fixtures == nullptr) {
        report_line(10, false, "cli golden: BANOS_CLI / BANOS_FIXTURES not set");
        return;
    }
    const std::filesystem::path fix(fixtures);
    const std::filesystem::path scratch =
        std::filesystem::temp_directory_path() / "banos_acceptance";
    std::filesystem::remove_all(scratch);
    std::filesystem::create_directories(scratch);

    auto run = [&](const std::string& args) {
        const std::string cmd = "cd '" + fix.string() + "' && '" + std::string(cli) +
                                "' " + args + " >/dev/null 2>&1";
        return WEXITSTATUS(std::system(cmd.c_str()));
    };
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };

    bool ok = true;
    const auto out_json = scratch / "report.json";
    ok &= run("compare --gt gt.csv --pred pred.csv --out " + out_json.string()) == 0;
    ok &= slurp(out_json) == slurp(fix / "golden/report.json");
    const auto out_csv = scratch / "report.csv";
    ok &= run("compare --gt gt.csv --pred pred.csv --format csv --out " +
              out_csv.string()) == 0;
    ok &= slurp(out_csv) == slurp(fix / "golden/report.csv");
    const auto out_curve = scratch / "report_curve.json";
    ok &= run("compare --gt gt.csv --pred pred.csv --iou-curve 0.3,0.5,0.7 "
              "--tolerance 1 --out " +
              out_curve.string()) == 0;
    ok &= slurp(out_curve) == slurp(fix / "golden/report_curve.json");

    ok &= run("compare --gt gt.csv") == 2;
    ok &= run("compare --gt gt.csv --pred missing.csv") == 3;
    ok &= run("compare --gt gt.csv --pred ragged.csv") == 4;
    ok &= run("compare --gt gt.csv --pred bad_label.csv --labels other,attack") == 5;
    ok &= run("segment --in gap.csv --frame-column frame --labels other,attack") == 6;
    ok &= run("compare --gt gt.csv --pred short3.csv") == 10;

    report_line(10, ok,
                "cli golden: byte-identical reports and documented exit codes");
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criteria_oracle_and_roundtrip();
    criterion_identity();
    criterion_disjoint();
    criterion_jitter();
    criterion_flicker();
    criterion_calms21();
    criterion_tiou_suite();
    criterion_greedy_vs_optimal();
    criterion_cli_golden();
    std::cout << (g_failures == 0 ? "ACCEPTANCE OK" : "ACCEPTANCE FAILED") << " ("
              << seconds_since(t0) << " s)\n";
    return g_failures == 0 ? 0 : 1;
}
