#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "banos/annotation.hpp"
#include "banos/pose.hpp"

namespace banos::io {

enum class TableFormat { csv, tsv, json };

std::optional<TableFormat> table_format_from_name(std::string_view name);

// Guess from the file extension; csv when unknown.
TableFormat table_format_for_path(const std::filesystem::path& path);

struct AnnotationTableSpec {
    std::filesystem::path path;
    TableFormat format = TableFormat::csv;
    std::string label_column = "label";
    // When set, rows are ordered by this column, which must hold the exact
    // gapless range 0..n-1. When unset, row order is frame order.
    std::optional<std::string> frame_column;
    std::optional<double> fps;  // default 25 when unset
};

struct PoseTableSpec {
    std::filesystem::path path;
    TableFormat format = TableFormat::csv;
    // Column triplets <kp>_x, <kp>_y, <kp>_likelihood per keypoint name.
    std::vector<std::string> keypoints;
    std::string animal_id;
    double fps = 25.0;
    std::optional<double> px_per_cm;
};

FrameSeries parse_annotation_table(const AnnotationTableSpec& spec,
                                   const LabelSet& label_set);

PoseTable parse_pose_table(const PoseTableSpec& spec);

// Keypoint names found in a pose table header (columns with a complete
// _x/_y/_likelihood triplet), in column order.
std::vector<std::string> sniff_keypoints(const std::filesystem::path& path,
                                         TableFormat format);

// Distinct label names present in an annotation table, in first-seen order.
std::vector<std::string> scan_label_names(const AnnotationTableSpec& spec);

// One row per frame: frame,label with label names from the series' set.
void write_annotation_csv(const FrameSeries& series, const std::filesystem::path& path);
std::string render_annotation_csv(const FrameSeries& series);

} // namespace banos::io
