#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "banos/annotation.hpp"
#include "banos/errors.hpp"
#include "banos/features.hpp"
#include "banos/io.hpp"
#include "banos/metrics.hpp"
#include "banos/postprocess.hpp"
#include "banos/report.hpp"
#include "banos/synth.hpp"
#include "banos/version.hpp"

namespace {

using namespace banos;

std::vector<std::string> split_list(const std::string& text, char delim) {
    std::vector<std::string> out;
    std::string item;
    for (char c : text) {
        if (c == delim) {
            out.push_back(item);
            item.clear();
        } else {
            item += c;
        }
    }
    out.push_back(item);
    return out;
}

io::TableFormat resolve_format(const std::string& flag, const std::string& path) {
    if (!flag.empty()) {
        const auto fmt = io::table_format_from_name(flag);
        if (!fmt)
            throw Error(ErrorCode::invalid_config,
                        "unknown table format '" + flag + "' (csv|tsv|json)");
        return *fmt;
    }
    return io::table_format_for_path(path);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::file, "cannot write '" + out_path + "'");
    out << text;
    if (!out)
        throw Error(ErrorCode::file, "write failed for '" + out_path + "'");
}

std::string format_seconds(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

// ----------------------------------------------------------- config files --
// Flat key=value documents; keys mirror the long flag names without dashes.
// A flag given on the command line always beats the file value.

using ConfigSetter = std::function<void(const std::string&)>;

std::vector<std::pair<std::string, std::string>> load_config_pairs(
    const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::file, "cannot open config '" + path + "'");
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::invalid_config,
                        "config line " + std::to_string(lineno) + " is not key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        pairs.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return pairs;
}

std::int64_t config_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::invalid_config,
                    "config key '" + key + "': bad integer '" + value + "'");
    }
}

double config_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::invalid_config,
                    "config key '" + key + "': bad number '" + value + "'");
    }
}

void apply_config(const CLI::App* sub, const std::string& config_path,
                  const std::map<std::string, ConfigSetter>& setters) {
    if (config_path.empty())
        return;
    for (const auto& [key, value] : load_config_pairs(config_path)) {
        const auto it = setters.find(key);
        if (it == setters.end())
            throw Error(ErrorCode::invalid_config,
                        "unknown config key '" + key + "'");
        const CLI::Option* flag = sub->get_option_no_throw("--" + key);
        if (flag != nullptr && flag->count() > 0)
            continue;  // command line wins
        it->second(value);
    }
}


// ---------------------------------------------------------------- compare --

struct AnnotationArgs {
    std::string table_format;
    std::string labels;
    std::string label_column = "label";
    std::string frame_column;
    double fps = 25.0;
};

void add_annotation_options(CLI::App* sub, AnnotationArgs& args) {
    sub->add_option("--table-format", args.table_format,
                    "input table format: csv|tsv|json (default: by extension)");
    sub->add_option("--labels", args.labels,
                    "comma-separated label set, background first (default: inferred)");
    sub->add_option("--label-column", args.label_column, "label column name");
    sub->add_option("--frame-column", args.frame_column,
                    "frame index column; must cover 0..n-1 when given");
    sub->add_option("--fps", args.fps, "frames per second")->check(CLI::PositiveNumber);
}

std::map<std::string, ConfigSetter> annotation_setters(AnnotationArgs& args) {
    return {
        {"table-format", [&args](const std::string& v) { args.table_format = v; }},
        {"labels", [&args](const std::string& v) { args.labels = v; }},
        {"label-column", [&args](const std::string& v) { args.label_column = v; }},
        {"frame-column", [&args](const std::string& v) { args.frame_column = v; }},
        {"fps", [&args](const std::string& v) { args.fps = config_double("fps", v); }},
    };
}

io::AnnotationTableSpec annotation_spec(const std::string& path,
                                        const AnnotationArgs& args) {
    io::AnnotationTableSpec spec;
    spec.path = path;
    spec.format = resolve_format(args.table_format, path);
    spec.label_column = args.label_column;
    if (!args.frame_column.empty())
        spec.frame_column = args.frame_column;
    spec.fps = args.fps;
    return spec;
}

LabelSet resolve_label_set(const AnnotationArgs& args,
                           const std::vector<io::AnnotationTableSpec>& tables) {
    if (!args.labels.empty())
        return LabelSet(split_list(args.labels, ','));

    std::vector<std::string> names;
    for (const auto& spec : tables)
        for (const std::string& name : io::scan_label_names(spec))
            if (std::find(names.begin(), names.end(), name) == names.end())
                names.push_back(name);
    std::sort(names.begin(), names.end());

    for (const char* candidate : {"background", "none", "other"}) {
        const auto it = std::find(names.begin(), names.end(), candidate);
        if (it != names.end()) {
            std::rotate(names.begin(), it, it + 1);
            return LabelSet(names);
        }
    }
    throw Error(ErrorCode::invalid_config,
                "cannot infer a background label from the files; pass --labels with "
                "the background name first");
}

struct CompareArgs {
    std::string config;
    std::string gt;
    std::string pred;
    std::string out;
    std::string format = "json";
    AnnotationArgs ann;
    std::int64_t tolerance = 0;
    std::string overlap_scope = "all";
    std::string continuity_weight = "bouts";
    std::vector<double> iou_curve;
};

std::map<std::string, ConfigSetter> compare_setters(CompareArgs& args) {
    auto setters = annotation_setters(args.ann);
    setters.emplace("format", [&args](const std::string& v) { args.format = v; });
    setters.emplace("tolerance", [&args](const std::string& v) {
        args.tolerance = config_int("tolerance", v);
    });
    setters.emplace("overlap-scope",
                    [&args](const std::string& v) { args.overlap_scope = v; });
    setters.emplace("continuity-weight",
                    [&args](const std::string& v) { args.continuity_weight = v; });
    setters.emplace("iou-curve", [&args](const std::string& v) {
        args.iou_curve.clear();
        for (const std::string& item : split_list(v, ','))
            args.iou_curve.push_back(config_double("iou-curve", item));
    });
    return setters;
}

std::string compare_config_string(const CompareArgs& args, const LabelSet& labels) {
    std::string cfg;
    cfg += "labels=";
    for (std::size_t i = 0; i < labels.names().size(); ++i)
        cfg += (i ? "," : "") + labels.names()[i];
    cfg += "\nfps=" + format_seconds(args.ann.fps);
    cfg += "\nlabel_column=" + args.ann.label_column;
    cfg += "\nframe_column=" + args.ann.frame_column;
    cfg += "\ntolerance=" + std::to_string(args.tolerance);
    cfg += "\noverlap_scope=" + args.overlap_scope;
    cfg += "\ncontinuity_weight=" + args.continuity_weight;
    cfg += "\niou_curve=";
    for (std::size_t i = 0; i < args.iou_curve.size(); ++i)
        cfg += (i ? "," : "") + format_seconds(args.iou_curve[i]);
    cfg += "\n";
    return cfg;
}

int run_compare(const CompareArgs& args) {
    MetricOptions opt;
    opt.tolerance = args.tolerance;
    if (args.overlap_scope == "matched")
        opt.overlap_scope = OverlapScope::matched;
    else if (args.overlap_scope != "all")
        throw Error(ErrorCode::invalid_config, "--overlap-scope must be all|matched");
    if (args.continuity_weight == "frames")
        opt.continuity_weight = ContinuityWeight::frames;
    else if (args.continuity_weight != "bouts")
        throw Error(ErrorCode::invalid_config, "--continuity-weight must be bouts|frames");

    const io::AnnotationTableSpec gt_spec = annotation_spec(args.gt, args.ann);
    const io::AnnotationTableSpec pred_spec = annotation_spec(args.pred, args.ann);
    const LabelSet labels = resolve_label_set(args.ann, {gt_spec, pred_spec});

    const FrameSeries gt = io::parse_annotation_table(gt_spec, labels);
    const FrameSeries pred = io::parse_annotation_table(pred_spec, labels);

    std::vector<std::pair<std::string, LabelEvaluation>> per_label;
    for (LabelId id = 0; id < static_cast<LabelId>(labels.size()); ++id) {
        if (labels.is_background(id))
            continue;
        per_label.emplace_back(labels.name(id),
                               evaluate_label(pred, gt, id, opt, args.iou_curve));
    }

    io::Provenance prov;
    prov.gt_path = args.gt;
    prov.pred_path = args.pred;
    prov.config_hash = io::fnv1a_hex(compare_config_string(args, labels));
    prov.version = kVersion;

    const io::ReportDocument report = io::build_report(std::move(per_label), prov);
    const io::ReportFormat format =
        args.format == "csv" ? io::ReportFormat::csv : io::ReportFormat::json;
    if (args.format != "csv" && args.format != "json")
        throw Error(ErrorCode::invalid_config, "--format must be json|csv");
    emit(io::render_report(report, format), args.out);
    return 0;
}

// ---------------------------------------------------------------- segment --

struct SegmentArgs {
    std::string config;
    std::string in;
    std::string out;
    AnnotationArgs ann;
    PostprocessConfig cfg;
    std::int64_t max_duration = 0;  // 0 = unlimited
};

std::map<std::string, ConfigSetter> segment_setters(SegmentArgs& args) {
    auto setters = annotation_setters(args.ann);
    setters.emplace("max-gap", [&args](const std::string& v) {
        args.cfg.max_gap = config_int("max-gap", v);
    });
    setters.emplace("min-dur", [&args](const std::string& v) {
        args.cfg.min_duration = config_int("min-dur", v);
    });
    setters.emplace("max-dur", [&args](const std::string& v) {
        args.max_duration = config_int("max-dur", v);
    });
    setters.emplace("window", [&args](const std::string& v) {
        args.cfg.smooth_window = config_int("window", v);
    });
    return setters;
}

int run_segment(const SegmentArgs& args) {
    SegmentArgs local = args;
    if (args.max_duration > 0)
        local.cfg.max_duration = args.max_duration;
    validate(local.cfg);

    const io::AnnotationTableSpec spec = annotation_spec(args.in, args.ann);
    const LabelSet labels = resolve_label_set(args.ann, {spec});
    const FrameSeries series = io::parse_annotation_table(spec, labels);
    const SegmentList bouts = apply_pipeline(series, local.cfg);

    std::string text = "label,start_frame,end_frame,duration_s\n";
    for (const Segment& s : bouts.segments) {
        text += labels.name(s.label);
        text += ',' + std::to_string(s.start);
        text += ',' + std::to_string(s.end);
        text += ',' + format_seconds(static_cast<double>(s.length()) / args.ann.fps);
        text += '\n';
    }
    emit(text, args.out);
    return 0;
}

// --------------------------------------------------------------- features --

struct FeaturesArgs {
    std::string config;
    std::string pose_a;
    std::string pose_b;
    std::string out;
    std::string emit_features;
    std::string table_format;
    std::string keypoints;
    std::string ref_keypoint = "centroid";
    std::string nose_kp;
    std::string tail_kp;
    std::string target_kp = "centroid";
    double fps = 25.0;
    double px_per_cm = 0.0;  // 0 = not provided
    double min_likelihood = 0.5;
    std::vector<std::string> rules;
};

RefKeypoint ref_of(const std::string& name) {
    if (name.empty() || name == "centroid")
        return std::nullopt;
    return name;
}

struct ParsedRule {
    HeuristicRule rule;
    std::string label_name;
};

ParsedRule parse_rule(const std::string& text) {
    const std::vector<std::string> parts = split_list(text, ':');
    auto as_number = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size())
                throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw Error(ErrorCode::invalid_config,
                        "bad number '" + s + "' in rule '" + text + "'");
        }
    };
    ParsedRule out;
    if (parts[0] == "proximity") {
        if (parts.size() < 2 || parts.size() > 3)
            throw Error(ErrorCode::invalid_config,
                        "proximity rule is proximity:<dist_cm>[:<label>]");
        out.rule.kind = HeuristicRule::Kind::proximity;
        out.rule.distance_threshold_cm = as_number(parts[1]);
        out.label_name = parts.size() == 3 ? parts[2] : "proximity";
    } else if (parts[0] == "approach") {
        if (parts.size() < 3 || parts.size() > 4)
            throw Error(ErrorCode::invalid_config,
                        "approach rule is approach:<dist_cm>:<speed_cm_s>[:<label>]");
        out.rule.kind = HeuristicRule::Kind::approach;
        out.rule.distance_threshold_cm = as_number(parts[1]);
        out.rule.approach_speed_threshold_cm_s = as_number(parts[2]);
        out.label_name = parts.size() == 4 ? parts[3] : "approach";
    } else {
        throw Error(ErrorCode::invalid_config,
                    "unknown rule kind '" + parts[0] + "' (proximity|approach)");
    }
    return out;
}

std::string feature_cell(double v) {
    return feature_defined(v) ? format_seconds(v) : std::string();
}

std::map<std::string, ConfigSetter> features_setters(FeaturesArgs& args) {
    return {
        {"table-format", [&args](const std::string& v) { args.table_format = v; }},
        {"keypoints", [&args](const std::string& v) { args.keypoints = v; }},
        {"ref-keypoint", [&args](const std::string& v) { args.ref_keypoint = v; }},
        {"nose-kp", [&args](const std::string& v) { args.nose_kp = v; }},
        {"tail-kp", [&args](const std::string& v) { args.tail_kp = v; }},
        {"target-kp", [&args](const std::string& v) { args.target_kp = v; }},
        {"fps", [&args](const std::string& v) { args.fps = config_double("fps", v); }},
        {"px-per-cm",
         [&args](const std::string& v) { args.px_per_cm = config_double("px-per-cm", v); }},
        {"min-likelihood",
         [&args](const std::string& v) {
             args.min_likelihood = config_double("min-likelihood", v);
         }},
        {"rule", [&args](const std::string& v) { args.rules.push_back(v); }},
    };
}

int run_features(const FeaturesArgs& args) {
    if (args.rules.empty() && args.emit_features.empty())
        throw Error(ErrorCode::invalid_config,
                    "nothing to do: pass --rule and/or --emit-features");

    auto pose_spec = [&](const std::string& path, const std::string& id) {
        io::PoseTableSpec spec;
        spec.path = path;
        spec.format = resolve_format(args.table_format, path);
        spec.keypoints = args.keypoints.empty()
                             ? io::sniff_keypoints(spec.path, spec.format)
                             : split_list(args.keypoints, ',');
        if (spec.keypoints.empty())
            throw Error(ErrorCode::parse,
                        "no keypoint column triplets found in '" + path + "'");
        spec.animal_id = id;
        spec.fps = args.fps;
        if (args.px_per_cm > 0.0)
            spec.px_per_cm = args.px_per_cm;
        return spec;
    };
    const PoseTable a = io::parse_pose_table(pose_spec(args.pose_a, "a"));
    const PoseTable b = io::parse_pose_table(pose_spec(args.pose_b, "b"));

    FeatureOptions fopt;
    fopt.min_likelihood = args.min_likelihood;
    const RefKeypoint ref = ref_of(args.ref_keypoint);

    const FeatureSeries dist = interanimal_distance(a, b, ref, fopt);

    std::vector<ParsedRule> rules;
    bool needs_speed = false;
    for (const std::string& text : args.rules) {
        rules.push_back(parse_rule(text));
        needs_speed |= rules.back().rule.kind == HeuristicRule::Kind::approach;
    }

    std::optional<FeatureSeries> speed_a, speed_b;
    if ((needs_speed || !args.emit_features.empty()) && a.frames() >= 2) {
        speed_a = speed(a, ref, fopt);
        speed_b = speed(b, ref, fopt);
    }
    if (needs_speed && !speed_a)
        throw Error(ErrorCode::precondition, "approach rules need at least two frames");

    std::optional<FeatureSeries> angle;
    if (!args.nose_kp.empty() && !args.tail_kp.empty())
        angle = facing_angle(a, b, args.nose_kp, args.tail_kp, ref_of(args.target_kp), fopt);

    if (!args.emit_features.empty()) {
        std::string text = "frame,distance_cm";
        if (speed_a)
            text += ",speed_a_cm_s,speed_b_cm_s";
        if (angle)
            text += ",facing_angle_rad";
        text += '\n';
        for (FrameIndex f = 0; f < dist.size(); ++f) {
            text += std::to_string(f);
            text += ',' + feature_cell(dist.values[static_cast<std::size_t>(f)]);
            if (speed_a) {
                text += ',' + feature_cell(speed_a->values[static_cast<std::size_t>(f)]);
                text += ',' + feature_cell(speed_b->values[static_cast<std::size_t>(f)]);
            }
            if (angle)
                text += ',' + feature_cell(angle->values[static_cast<std::size_t>(f)]);
            text += '\n';
        }
        emit(text, args.emit_features);
    }

    if (rules.empty())
        return 0;

    // label set: background plus emitted labels in rule order
    std::vector<std::string> names{"background"};
    for (ParsedRule& pr : rules) {
        const auto it = std::find(names.begin(), names.end(), pr.label_name);
        if (it == names.end()) {
            names.push_back(pr.label_name);
            pr.rule.emitted_label = static_cast<LabelId>(names.size() - 1);
        } else {
            pr.rule.emitted_label = static_cast<LabelId>(it - names.begin());
        }
    }
    const LabelSet label_set(names);

    std::vector<FrameSeries> emitted;
    for (const ParsedRule& pr : rules) {
        if (pr.rule.kind == HeuristicRule::Kind::proximity)
            emitted.push_back(proximity_classifier(dist, pr.rule.distance_threshold_cm,
                                                   pr.rule.emitted_label, label_set));
        else
            emitted.push_back(approach_classifier(dist, *speed_a, pr.rule, label_set));
    }

    // first rule wins on conflicting frames
    FrameSeries merged;
    merged.timebase = dist.timebase;
    merged.label_set = label_set;
    merged.labels.assign(static_cast<std::size_t>(dist.size()), label_set.background());
    for (std::size_t f = 0; f < merged.labels.size(); ++f)
        for (const FrameSeries& series : emitted)
            if (series.labels[f] != label_set.background()) {
                merged.labels[f] = series.labels[f];
                break;
            }

    emit(io::render_annotation_csv(merged), args.out);
    return 0;
}

// ------------------------------------------------------------------ synth --

struct SynthArgs {
    std::string config;
    SynthConfig cfg;
    std::string out;
    bool pair = false;
    std::string perturb_spec;
};

Perturbation parse_perturbation(const std::string& text, std::uint64_t default_seed) {
    const std::vector<std::string> parts = split_list(text, ':');
    if (parts.size() < 2 || parts.size() > 3)
        throw Error(ErrorCode::invalid_config,
                    "--perturb is <kind>:<magnitude>[:<seed>]");
    Perturbation p;
    if (parts[0] == "boundary_jitter")
        p.kind = Perturbation::Kind::boundary_jitter;
    else if (parts[0] == "flicker")
        p.kind = Perturbation::Kind::flicker;
    else if (parts[0] == "split")
        p.kind = Perturbation::Kind::split;
    else if (parts[0] == "delete")
        p.kind = Perturbation::Kind::drop;
    else if (parts[0] == "relabel")
        p.kind = Perturbation::Kind::relabel;
    else
        throw Error(ErrorCode::invalid_config,
                    "unknown perturbation '" + parts[0] +
                        "' (boundary_jitter|flicker|split|delete|relabel)");
    try {
        p.magnitude = std::stod(parts[1]);
    } catch (const std::exception&) {
        throw Error(ErrorCode::invalid_config, "bad magnitude '" + parts[1] + "'");
    }
    p.seed = default_seed;
    if (parts.size() == 3) {
        try {
            p.seed = std::stoull(parts[2]);
        } catch (const std::exception&) {
            throw Error(ErrorCode::invalid_config, "bad seed '" + parts[2] + "'");
        }
    }
    return p;
}

std::string derive_pair_path(const std::string& out) {
    const std::filesystem::path p(out);
    std::filesystem::path derived = p.parent_path() / p.stem();
    derived += ".perturbed";
    derived += p.extension();
    return derived.string();
}

std::map<std::string, ConfigSetter> synth_setters(SynthArgs& args) {
    return {
        {"seed",
         [&args](const std::string& v) {
             args.cfg.seed = static_cast<std::uint64_t>(config_int("seed", v));
         }},
        {"length",
         [&args](const std::string& v) { args.cfg.length = config_int("length", v); }},
        {"labels",
         [&args](const std::string& v) {
             args.cfg.label_count = static_cast<int>(config_int("labels", v));
         }},
        {"bout-min",
         [&args](const std::string& v) { args.cfg.bout_min = config_int("bout-min", v); }},
        {"bout-max",
         [&args](const std::string& v) { args.cfg.bout_max = config_int("bout-max", v); }},
        {"density",
         [&args](const std::string& v) { args.cfg.density = config_double("density", v); }},
        {"perturb", [&args](const std::string& v) { args.perturb_spec = v; }},
    };
}

int run_synth(const SynthArgs& args) {
    const FrameSeries clean = generate(args.cfg);

    if (args.pair) {
        if (args.out.empty())
            throw Error(ErrorCode::invalid_config, "--pair needs --out");
        if (args.perturb_spec.empty())
            throw Error(ErrorCode::invalid_config, "--pair needs --perturb");
        const Perturbation p = parse_perturbation(args.perturb_spec, args.cfg.seed + 1);
        emit(io::render_annotation_csv(clean), args.out);
        emit(io::render_annotation_csv(perturb(clean, p)), derive_pair_path(args.out));
        return 0;
    }

    FrameSeries result = clean;
    if (!args.perturb_spec.empty())
        result = perturb(clean, parse_perturbation(args.perturb_spec, args.cfg.seed + 1));
    emit(io::render_annotation_csv(result), args.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bout-level evaluation toolkit for behavioral annotations"};
    app.set_version_flag("--version", std::string("banos ") + banos::kVersion);
    app.require_subcommand(1);

    CompareArgs compare_args;
    CLI::App* compare = app.add_subcommand(
        "compare", "evaluate a predicted annotation against ground truth");
    compare->add_option("--config", compare_args.config,
                        "key=value config file; flags take precedence");
    compare->add_option("--gt", compare_args.gt, "ground-truth annotation table")
        ->required();
    compare->add_option("--pred", compare_args.pred, "predicted annotation table")
        ->required();
    compare->add_option("--out", compare_args.out, "report path (default: stdout)");
    compare->add_option("--format", compare_args.format, "report format: json|csv");
    add_annotation_options(compare, compare_args.ann);
    compare->add_option("--tolerance", compare_args.tolerance,
                        "temporal-precision boundary tolerance in frames")
        ->check(CLI::NonNegativeNumber);
    compare->add_option("--overlap-scope", compare_args.overlap_scope,
                        "segment overlap averages over: all|matched");
    compare->add_option("--continuity-weight", compare_args.continuity_weight,
                        "continuity bout weighting: bouts|frames");
    compare
        ->add_option("--iou-curve", compare_args.iou_curve,
                     "tIoU thresholds for the detection-F1 curve, e.g. 0.3,0.5,0.7")
        ->delimiter(',');

    SegmentArgs segment_args;
    CLI::App* segment =
        app.add_subcommand("segment", "extract post-processed bouts from an annotation");
    segment->add_option("--config", segment_args.config,
                        "key=value config file; flags take precedence");
    segment->add_option("--in", segment_args.in, "annotation table")->required();
    segment->add_option("--out", segment_args.out, "bout table path (default: stdout)");
    add_annotation_options(segment, segment_args.ann);
    segment->add_option("--max-gap", segment_args.cfg.max_gap,
                        "merge same-label bouts separated by at most this many frames")
        ->check(CLI::NonNegativeNumber);
    segment->add_option("--min-dur", segment_args.cfg.min_duration,
                        "drop bouts shorter than this many frames")
        ->check(CLI::PositiveNumber);
    segment->add_option("--max-dur", segment_args.max_duration,
                        "split bouts longer than this many frames (0 = unlimited)")
        ->check(CLI::NonNegativeNumber);
    segment->add_option("--window", segment_args.cfg.smooth_window,
                        "modal smoothing window (odd frame count)")
        ->check(CLI::PositiveNumber);

    FeaturesArgs features_args;
    CLI::App* features = app.add_subcommand(
        "features", "derive social features from two pose tracks and emit annotations");
    features->add_option("--config", features_args.config,
                         "key=value config file; flags take precedence");
    features->add_option("--pose-a", features_args.pose_a, "pose table for animal A")
        ->required();
    features->add_option("--pose-b", features_args.pose_b, "pose table for animal B")
        ->required();
    features->add_option("--out", features_args.out,
                         "emitted annotation csv (default: stdout)");
    features->add_option("--emit-features", features_args.emit_features,
                         "also write raw feature series to this csv path");
    features->add_option("--table-format", features_args.table_format,
                         "pose table format: csv|tsv|json (default: by extension)");
    features->add_option("--keypoints", features_args.keypoints,
                         "comma-separated keypoint names (default: sniff header)");
    features->add_option("--ref-keypoint", features_args.ref_keypoint,
                         "reference keypoint or 'centroid'");
    features->add_option("--nose-kp", features_args.nose_kp,
                         "nose keypoint (enables facing angle)");
    features->add_option("--tail-kp", features_args.tail_kp,
                         "tail keypoint (enables facing angle)");
    features->add_option("--target-kp", features_args.target_kp,
                         "target keypoint on animal B or 'centroid'");
    features->add_option("--fps", features_args.fps, "frames per second")
        ->check(CLI::PositiveNumber);
    features->add_option("--px-per-cm", features_args.px_per_cm, "pixels per centimeter")
        ->check(CLI::PositiveNumber);
    features->add_option("--min-likelihood", features_args.min_likelihood,
                         "keypoint likelihood floor; lower yields null features");
    features->add_option("--rule", features_args.rules,
                         "heuristic rule: proximity:<cm>[:<label>] or "
                         "approach:<cm>:<cm_s>[:<label>]; first match wins");

    SynthArgs synth_args;
    CLI::App* synth =
        app.add_subcommand("synth", "generate seeded synthetic annotations");
    synth->add_option("--config", synth_args.config,
                      "key=value config file; flags take precedence");
    synth->add_option("--seed", synth_args.cfg.seed, "generator seed");
    synth->add_option("--length", synth_args.cfg.length, "series length in frames")
        ->check(CLI::PositiveNumber);
    synth->add_option("--labels", synth_args.cfg.label_count,
                      "number of non-background labels")
        ->check(CLI::PositiveNumber);
    synth->add_option("--bout-min", synth_args.cfg.bout_min, "minimum bout length")
        ->check(CLI::PositiveNumber);
    synth->add_option("--bout-max", synth_args.cfg.bout_max, "maximum bout length")
        ->check(CLI::PositiveNumber);
    synth->add_option("--density", synth_args.cfg.density,
                      "target fraction of annotated frames, in (0,1)");
    synth->add_option("--out", synth_args.out, "output path (default: stdout)");
    synth->add_flag("--pair", synth_args.pair,
                    "write a (clean, perturbed) pair; perturbed goes to "
                    "<out-stem>.perturbed<ext>");
    synth->add_option("--perturb", synth_args.perturb_spec,
                      "perturbation <kind>:<magnitude>[:<seed>], kinds: "
                      "boundary_jitter|flicker|split|delete|relabel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (compare->parsed()) {
            apply_config(compare, compare_args.config, compare_setters(compare_args));
            return run_compare(compare_args);
        }
        if (segment->parsed()) {
            apply_config(segment, segment_args.config, segment_setters(segment_args));
            return run_segment(segment_args);
        }
        if (features->parsed()) {
            apply_config(features, features_args.config, features_setters(features_args));
            return run_features(features_args);
        }
        if (synth->parsed()) {
            apply_config(synth, synth_args.config, synth_setters(synth_args));
            return run_synth(synth_args);
        }
    } catch (const banos::Error& e) {
        std::cerr << "banos: " << banos::error_code_name(e.code()) << ": " << e.what()
                  << "\n";
        return banos::exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "banos: internal: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
