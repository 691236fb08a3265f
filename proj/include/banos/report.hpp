#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "banos/metrics.hpp"

namespace banos::io {

struct Provenance {
    std::string gt_path;
    std::string pred_path;
    std::string config_hash;
    std::string version;
};

enum class ReportFormat { json, csv };

// The machine-readable evaluation result. Metric values are quantized to
// 6 decimal places at build time, making json serialization byte-stable
// and parse(render(x)) an exact identity.
struct ReportDocument {
    std::vector<std::pair<std::string, LabelEvaluation>> labels;
    LabelEvaluation macro;  // counts summed, metrics averaged, no curve
    Provenance provenance;
};

ReportDocument build_report(std::vector<std::pair<std::string, LabelEvaluation>> labels,
                            Provenance provenance);

std::string render_report(const ReportDocument& report, ReportFormat format);

void write_report(const ReportDocument& report, const std::filesystem::path& path,
                  ReportFormat format);

ReportDocument parse_report_json(const std::string& text);

// FNV-1a 64-bit, hex-encoded. Used for the provenance config hash.
std::string fnv1a_hex(std::string_view data);

} // namespace banos::io
