#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <random>

#include "banos/io.hpp"
#include "banos/report.hpp"
#include "banos/version.hpp"
#include "support/helpers.hpp"

using namespace banos;
using namespace banos::io;

namespace {

namespace fs = std::filesystem;

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path dir = fs::temp_directory_path() / "banos_io_tests";
    fs::create_directories(dir);
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::file;
}

} // namespace

TEST_CASE("parse_annotation_table maps label names through the label set") {
    const LabelSet ls({"other", "attack"});
    const auto path = write_temp("basic.csv", "label\nattack\nattack\nother\n");
    const FrameSeries s = parse_annotation_table({path}, ls);
    CHECK(s.labels == std::vector<LabelId>{1, 1, 0});
    CHECK(s.timebase.fps == 25.0);  // default when no override

    AnnotationTableSpec with_fps{path};
    with_fps.fps = 30.0;
    CHECK(parse_annotation_table(with_fps, ls).timebase.fps == 30.0);
}

TEST_CASE("parse_annotation_table error contract") {
    const LabelSet ls({"other", "attack"});

    const auto unknown = write_temp("unknown.csv", "label\nmount\n");
    CHECK(code_of([&] { parse_annotation_table({unknown}, ls); }) ==
          ErrorCode::unknown_label);

    const auto header_only = write_temp("empty.csv", "label\n");
    CHECK(parse_annotation_table({header_only}, ls).size() == 0);

    CHECK(code_of([&] {
              parse_annotation_table({fs::path("/nonexistent/x.csv")}, ls);
          }) == ErrorCode::file);

    const auto ragged = write_temp("ragged.csv", "frame,label\n0,attack,extra\n");
    CHECK(code_of([&] { parse_annotation_table({ragged}, ls); }) == ErrorCode::parse);

    const auto gapped = write_temp("gapped.csv", "frame,label\n0,attack\n2,other\n");
    AnnotationTableSpec gap_spec{gapped};
    gap_spec.frame_column = "frame";
    CHECK(code_of([&] { parse_annotation_table(gap_spec, ls); }) == ErrorCode::frame_gap);

    const auto dup = write_temp("dup.csv", "frame,label\n0,attack\n0,other\n");
    AnnotationTableSpec dup_spec{dup};
    dup_spec.frame_column = "frame";
    CHECK(code_of([&] { parse_annotation_table(dup_spec, ls); }) == ErrorCode::frame_gap);
}

TEST_CASE("frame-indexed parsing is order stable") {
    const LabelSet ls({"other", "attack", "mount"});
    const auto sorted = write_temp("sorted.csv",
                                   "frame,label\n0,attack\n1,other\n2,mount\n3,attack\n");
    const auto shuffled = write_temp("shuffled.csv",
                                     "frame,label\n2,mount\n0,attack\n3,attack\n1,other\n");
    AnnotationTableSpec spec_a{sorted};
    spec_a.frame_column = "frame";
    AnnotationTableSpec spec_b{shuffled};
    spec_b.frame_column = "frame";
    CHECK(parse_annotation_table(spec_a, ls).labels ==
          parse_annotation_table(spec_b, ls).labels);
}

TEST_CASE("tsv and json annotation tables parse identically") {
    const LabelSet ls({"other", "attack"});
    const auto tsv = write_temp("ann.tsv", "label\nattack\nother\n");
    AnnotationTableSpec tsv_spec{tsv};
    tsv_spec.format = TableFormat::tsv;
    CHECK(parse_annotation_table(tsv_spec, ls).labels == std::vector<LabelId>{1, 0});

    const auto json = write_temp(
        "ann.json", R"([{"frame": 0, "label": "attack"}, {"frame": 1, "label": "other"}])");
    AnnotationTableSpec json_spec{json};
    json_spec.format = TableFormat::json;
    json_spec.frame_column = "frame";
    CHECK(parse_annotation_table(json_spec, ls).labels == std::vector<LabelId>{1, 0});
}

TEST_CASE("parse_pose_table reads coordinate triplets") {
    const auto path = write_temp(
        "pose.csv", "nose_x,nose_y,nose_likelihood\n10,20,0.99\n11,21,0.98\n");
    PoseTableSpec spec{path};
    spec.keypoints = {"nose"};
    spec.animal_id = "m1";
    spec.fps = 25.0;
    spec.px_per_cm = 10.0;

    const PoseTable pose = parse_pose_table(spec);
    CHECK(pose.frames() == 2);
    CHECK(pose.x(0, 0) == 10.0);
    CHECK(pose.y(1, 0) == 21.0);
    CHECK(pose.likelihood(1, 0) == 0.98);
    CHECK(pose.animal_id == "m1");
}

TEST_CASE("parse_pose_table error contract") {
    PoseTableSpec spec;
    spec.keypoints = {"nose"};

    spec.path = write_temp("badlik.csv", "nose_x,nose_y,nose_likelihood\n1,2,1.5\n");
    CHECK(code_of([&] { parse_pose_table(spec); }) == ErrorCode::likelihood_range);

    spec.path = write_temp("nan.csv", "nose_x,nose_y,nose_likelihood\nNaN,2,0.9\n");
    CHECK(code_of([&] { parse_pose_table(spec); }) == ErrorCode::non_finite_coordinate);

    spec.path = write_temp("missingcol.csv", "nose_x,nose_y\n1,2\n");
    CHECK(code_of([&] { parse_pose_table(spec); }) == ErrorCode::parse);

    spec.path = write_temp("notnum.csv", "nose_x,nose_y,nose_likelihood\nabc,2,0.9\n");
    CHECK(code_of([&] { parse_pose_table(spec); }) == ErrorCode::parse);
}

TEST_CASE("parse_pose_table accepts json row objects") {
    const auto path = write_temp(
        "pose.json",
        R"([{"nose_x": 10, "nose_y": 20, "nose_likelihood": 0.99},
            {"nose_x": 11, "nose_y": 21, "nose_likelihood": 0.98}])");
    PoseTableSpec spec{path};
    spec.format = TableFormat::json;
    spec.keypoints = {"nose"};
    const PoseTable pose = parse_pose_table(spec);
    CHECK(pose.frames() == 2);
    CHECK(pose.x(1, 0) == 11.0);
}

TEST_CASE("sniff_keypoints finds complete column triplets") {
    const auto path = write_temp(
        "sniff.csv",
        "nose_x,nose_y,nose_likelihood,tail_x,tail_y,tail_likelihood,extra_x\n");
    CHECK(sniff_keypoints(path, TableFormat::csv) ==
          std::vector<std::string>{"nose", "tail"});
}

TEST_CASE("annotation csv writer is deterministic and parses back") {
    const FrameSeries s = testutil::series_of({1, 0, 2, 2});
    const std::string text = render_annotation_csv(s);
    CHECK(text == "frame,label\n0,b1\n1,background\n2,b2\n3,b2\n");

    const auto path = write_temp("roundtrip.csv", text);
    AnnotationTableSpec spec{path};
    spec.frame_column = "frame";
    CHECK(parse_annotation_table(spec, s.label_set).labels == s.labels);
}

namespace {

ReportDocument sample_report() {
    LabelEvaluation attack;
    attack.frame = {0.75, 1.0, 0.5, 1.0, 2.0 / 3.0};
    attack.banos = {2.0 / 51.0, 0.01, 0.0, 0.0};
    attack.counts = {1, 50, 1};
    attack.iou_curve = {{0.3, 1.0}, {0.5, std::nullopt}};

    LabelEvaluation quiet;  // label absent from both series
    quiet.frame.accuracy = 1.0;
    quiet.frame.specificity = 1.0;
    quiet.counts = {0, 0, 0};

    return build_report({{"attack", attack}, {"quiet", quiet}},
                        {"gt.csv", "pred.csv", "00ff", kVersion});
}

} // namespace

TEST_CASE("report json round-trips exactly and renders deterministically") {
    const ReportDocument doc = sample_report();
    const std::string once = render_report(doc, ReportFormat::json);
    CHECK(once == render_report(doc, ReportFormat::json));

    const ReportDocument back = parse_report_json(once);
    CHECK(render_report(back, ReportFormat::json) == once);

    REQUIRE(back.labels.size() == 2);
    CHECK(back.labels[0].first == "attack");
    CHECK(*back.labels[0].second.frame.f1 == doctest::Approx(0.666667));
    CHECK(!back.labels[1].second.frame.f1);
    CHECK(back.labels[0].second.iou_curve.size() == 2);
    CHECK(back.macro.counts == BoutCounts{1, 50, 1});
    CHECK(back.provenance.version == std::string(kVersion));

    // metric fields carry exactly six decimals
    CHECK(once.find("\"f1\": 0.666667") != std::string::npos);
    CHECK(once.find("\"detection_accuracy\": 0.039216") != std::string::npos);
}

TEST_CASE("report csv has one row per label plus macro") {
    const std::string csv = render_report(sample_report(), ReportFormat::csv);
    std::size_t rows = 0;
    for (char c : csv)
        rows += c == '\n';
    CHECK(rows == 4);  // header + attack + quiet + macro
    CHECK(csv.find("attack,") != std::string::npos);
    CHECK(csv.find("macro,") != std::string::npos);
    CHECK(csv.rfind("label,accuracy,precision,recall,specificity,f1,", 0) == 0);
}

TEST_CASE("report rejects out-of-range metric values") {
    LabelEvaluation bad;
    bad.frame.f1 = 1.5;
    CHECK_THROWS_AS(build_report({{"x", bad}}, {}), Error);
}

TEST_CASE("fnv1a hash is stable") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("banos") == fnv1a_hex("banos"));
    CHECK(fnv1a_hex("a") != fnv1a_hex("b"));
}
