#include "banos/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "banos/errors.hpp"

namespace banos::io {

namespace {

// Fixed 6-decimal formatting keeps report bytes identical across runs and
// platforms; quantizing through the same text makes parse(render(x)) exact.
std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

double quantize_value(double v) {
    return std::strtod(format_value(v).c_str(), nullptr);
}

std::optional<double> quantize_opt(std::optional<double> v) {
    if (!v)
        return std::nullopt;
    return quantize_value(*v);
}

void check_metric_range(const std::optional<double>& v, const char* field) {
    if (v && !(*v >= 0.0 && *v <= 1.0))
        throw Error(ErrorCode::invalid_config,
                    std::string("report metric '") + field + "' outside [0,1]");
}

void quantize_eval(LabelEvaluation& e) {
    e.frame.accuracy = quantize_opt(e.frame.accuracy);
    e.frame.precision = quantize_opt(e.frame.precision);
    e.frame.recall = quantize_opt(e.frame.recall);
    e.frame.specificity = quantize_opt(e.frame.specificity);
    e.frame.f1 = quantize_opt(e.frame.f1);
    e.banos.detection_accuracy = quantize_opt(e.banos.detection_accuracy);
    e.banos.segment_overlap = quantize_opt(e.banos.segment_overlap);
    e.banos.temporal_precision = quantize_opt(e.banos.temporal_precision);
    e.banos.intra_bout_continuity = quantize_opt(e.banos.intra_bout_continuity);
    for (CurvePoint& p : e.iou_curve) {
        p.threshold = quantize_value(p.threshold);
        p.f1 = quantize_opt(p.f1);
    }
    check_metric_range(e.frame.accuracy, "accuracy");
    check_metric_range(e.frame.precision, "precision");
    check_metric_range(e.frame.recall, "recall");
    check_metric_range(e.frame.specificity, "specificity");
    check_metric_range(e.frame.f1, "f1");
    check_metric_range(e.banos.detection_accuracy, "detection_accuracy");
    check_metric_range(e.banos.segment_overlap, "segment_overlap");
    check_metric_range(e.banos.temporal_precision, "temporal_precision");
    check_metric_range(e.banos.intra_bout_continuity, "intra_bout_continuity");
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string opt_json(const std::optional<double>& v) {
    return v ? format_value(*v) : "null";
}

std::string csv_cell(const std::optional<double>& v) {
    return v ? format_value(*v) : "";
}

void append_frame_json(std::string& out, const FrameMetrics& m, const std::string& pad) {
    out += pad + "\"frame\": {\n";
    out += pad + "  \"accuracy\": " + opt_json(m.accuracy) + ",\n";
    out += pad + "  \"precision\": " + opt_json(m.precision) + ",\n";
    out += pad + "  \"recall\": " + opt_json(m.recall) + ",\n";
    out += pad + "  \"specificity\": " + opt_json(m.specificity) + ",\n";
    out += pad + "  \"f1\": " + opt_json(m.f1) + "\n";
    out += pad + "}";
}

void append_banos_json(std::string& out, const BanosScores& b, const std::string& pad) {
    out += pad + "\"banos\": {\n";
    out += pad + "  \"detection_accuracy\": " + opt_json(b.detection_accuracy) + ",\n";
    out += pad + "  \"segment_overlap\": " + opt_json(b.segment_overlap) + ",\n";
    out += pad + "  \"temporal_precision\": " + opt_json(b.temporal_precision) + ",\n";
    out += pad + "  \"intra_bout_continuity\": " + opt_json(b.intra_bout_continuity) + "\n";
    out += pad + "}";
}

void append_counts_json(std::string& out, const BoutCounts& c, const std::string& pad) {
    out += pad + "\"counts\": {\n";
    out += pad + "  \"gt_bouts\": " + std::to_string(c.gt_bouts) + ",\n";
    out += pad + "  \"pred_bouts\": " + std::to_string(c.pred_bouts) + ",\n";
    out += pad + "  \"matched\": " + std::to_string(c.matched) + "\n";
    out += pad + "}";
}

void append_eval_json(std::string& out, const LabelEvaluation& e, const std::string& pad) {
    append_frame_json(out, e.frame, pad);
    out += ",\n";
    append_banos_json(out, e.banos, pad);
    out += ",\n";
    append_counts_json(out, e.counts, pad);
    if (!e.iou_curve.empty()) {
        out += ",\n" + pad + "\"iou_curve\": [\n";
        for (std::size_t i = 0; i < e.iou_curve.size(); ++i) {
            out += pad + "  {\"threshold\": " + format_value(e.iou_curve[i].threshold) +
                   ", \"f1\": " + opt_json(e.iou_curve[i].f1) + "}";
            out += i + 1 < e.iou_curve.size() ? ",\n" : "\n";
        }
        out += pad + "]";
    }
}

std::string render_json(const ReportDocument& report) {
    std::string out = "{\n  \"labels\": {\n";
    for (std::size_t i = 0; i < report.labels.size(); ++i) {
        out += "    \"" + json_escape(report.labels[i].first) + "\": {\n";
        append_eval_json(out, report.labels[i].second, "      ");
        out += "\n    }";
        out += i + 1 < report.labels.size() ? ",\n" : "\n";
    }
    out += "  },\n  \"macro\": {\n";
    append_eval_json(out, report.macro, "    ");
    out += "\n  },\n  \"provenance\": {\n";
    out += "    \"gt\": \"" + json_escape(report.provenance.gt_path) + "\",\n";
    out += "    \"pred\": \"" + json_escape(report.provenance.pred_path) + "\",\n";
    out += "    \"config_hash\": \"" + json_escape(report.provenance.config_hash) + "\",\n";
    out += "    \"version\": \"" + json_escape(report.provenance.version) + "\"\n";
    out += "  }\n}\n";
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void append_csv_row(std::string& out, const std::string& name, const LabelEvaluation& e) {
    out += csv_escape(name);
    out += ',' + csv_cell(e.frame.accuracy);
    out += ',' + csv_cell(e.frame.precision);
    out += ',' + csv_cell(e.frame.recall);
    out += ',' + csv_cell(e.frame.specificity);
    out += ',' + csv_cell(e.frame.f1);
    out += ',' + csv_cell(e.banos.detection_accuracy);
    out += ',' + csv_cell(e.banos.segment_overlap);
    out += ',' + csv_cell(e.banos.temporal_precision);
    out += ',' + csv_cell(e.banos.intra_bout_continuity);
    out += ',' + std::to_string(e.counts.gt_bouts);
    out += ',' + std::to_string(e.counts.pred_bouts);
    out += ',' + std::to_string(e.counts.matched);
    out += '\n';
}

std::string render_csv(const ReportDocument& report) {
    std::string out =
        "label,accuracy,precision,recall,specificity,f1,detection_accuracy,"
        "segment_overlap,temporal_precision,intra_bout_continuity,gt_bouts,"
        "pred_bouts,matched\n";
    for (const auto& [name, eval] : report.labels)
        append_csv_row(out, name, eval);
    append_csv_row(out, "macro", report.macro);
    return out;
}

std::optional<double> opt_from_json(const nlohmann::json& v) {
    if (v.is_null())
        return std::nullopt;
    return v.get<double>();
}

LabelEvaluation eval_from_json(const nlohmann::json& j) {
    LabelEvaluation e;
    const auto& f = j.at("frame");
    e.frame.accuracy = opt_from_json(f.at("accuracy"));
    e.frame.precision = opt_from_json(f.at("precision"));
    e.frame.recall = opt_from_json(f.at("recall"));
    e.frame.specificity = opt_from_json(f.at("specificity"));
    e.frame.f1 = opt_from_json(f.at("f1"));
    const auto& b = j.at("banos");
    e.banos.detection_accuracy = opt_from_json(b.at("detection_accuracy"));
    e.banos.segment_overlap = opt_from_json(b.at("segment_overlap"));
    e.banos.temporal_precision = opt_from_json(b.at("temporal_precision"));
    e.banos.intra_bout_continuity = opt_from_json(b.at("intra_bout_continuity"));
    const auto& c = j.at("counts");
    e.counts.gt_bouts = c.at("gt_bouts").get<std::int64_t>();
    e.counts.pred_bouts = c.at("pred_bouts").get<std::int64_t>();
    e.counts.matched = c.at("matched").get<std::int64_t>();
    if (j.contains("iou_curve"))
        for (const auto& p : j.at("iou_curve"))
            e.iou_curve.push_back({p.at("threshold").get<double>(),
                                   opt_from_json(p.at("f1"))});
    return e;
}

} // namespace

ReportDocument build_report(std::vector<std::pair<std::string, LabelEvaluation>> labels,
                            Provenance provenance) {
    if (labels.empty())
        throw Error(ErrorCode::invalid_config, "report needs at least one label");
    ReportDocument doc;
    doc.labels = std::move(labels);
    std::vector<LabelEvaluation> evals;
    evals.reserve(doc.labels.size());
    for (const auto& [name, eval] : doc.labels)
        evals.push_back(eval);
    doc.macro = macro_aggregate(evals);
    doc.macro.iou_curve.clear();
    doc.provenance = std::move(provenance);
    for (auto& [name, eval] : doc.labels)
        quantize_eval(eval);
    quantize_eval(doc.macro);
    return doc;
}

std::string render_report(const ReportDocument& report, ReportFormat format) {
    return format == ReportFormat::json ? render_json(report) : render_csv(report);
}

void write_report(const ReportDocument& report, const std::filesystem::path& path,
                  ReportFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::file, "cannot write '" + path.string() + "'");
    out << render_report(report, format);
    if (!out)
        throw Error(ErrorCode::file, "write failed for '" + path.string() + "'");
}

ReportDocument parse_report_json(const std::string& text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse, "report parse failed: " + std::string(e.what()));
    }
    try {
        ReportDocument report;
        for (const auto& [name, block] : doc.at("labels").items())
            report.labels.emplace_back(name, eval_from_json(block));
        report.macro = eval_from_json(doc.at("macro"));
        const auto& prov = doc.at("provenance");
        report.provenance.gt_path = prov.at("gt").get<std::string>();
        report.provenance.pred_path = prov.at("pred").get<std::string>();
        report.provenance.config_hash = prov.at("config_hash").get<std::string>();
        report.provenance.version = prov.at("version").get<std::string>();
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse, "report schema mismatch: " + std::string(e.what()));
    }
}

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

} // namespace banos::io
