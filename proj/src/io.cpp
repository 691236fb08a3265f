#include "banos/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace banos::io {

namespace {

using Record = std::map<std::string, std::string>;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::file, "cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// One delimited row; supports double-quoted fields with "" escapes.
std::vector<std::string> split_row(const std::string& line, char delim) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
        } else if (c == '"' && cell.empty()) {
            quoted = true;
        } else if (c == delim) {
            cells.push_back(std::move(cell));
            cell.clear();
        } else {
            cell += c;
        }
    }
    cells.push_back(std::move(cell));
    return cells;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty())
        lines.pop_back();
    return lines;
}

std::string json_value_to_text(const nlohmann::json& v) {
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number() || v.is_boolean())
        return v.dump();
    throw Error(ErrorCode::parse, "unsupported json cell type");
}

std::vector<Record> read_records(const std::filesystem::path& path, TableFormat format,
                                 std::vector<std::string>* column_order = nullptr) {
    const std::string text = read_file(path);
    std::vector<Record> records;
    if (format == TableFormat::json) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::parse, "json parse failed: " + std::string(e.what()));
        }
        if (!doc.is_array())
            throw Error(ErrorCode::parse, "expected a top-level json array of row objects");
        for (const auto& row : doc) {
            if (!row.is_object())
                throw Error(ErrorCode::parse, "expected row objects in json table");
            Record rec;
            for (const auto& [key, value] : row.items())
                rec[key] = json_value_to_text(value);
            records.push_back(std::move(rec));
        }
        if (column_order && !doc.empty())
            for (const auto& [key, value] : doc.front().items())
                column_order->push_back(key);
        return records;
    }

    const char delim = format == TableFormat::tsv ? '\t' : ',';
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty())
        throw Error(ErrorCode::parse, "missing header row in '" + path.string() + "'");
    const std::vector<std::string> header = split_row(lines[0], delim);
    if (column_order)
        *column_order = header;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const std::vector<std::string> cells = split_row(lines[r], delim);
        if (cells.size() != header.size())
            throw Error(ErrorCode::parse,
                        "row " + std::to_string(r) + " has " + std::to_string(cells.size()) +
                            " cells, header has " + std::to_string(header.size()));
        Record rec;
        for (std::size_t c = 0; c < header.size(); ++c)
            rec[header[c]] = cells[c];
        records.push_back(std::move(rec));
    }
    return records;
}

const std::string& cell(const Record& rec, const std::string& column) {
    const auto it = rec.find(column);
    if (it == rec.end())
        throw Error(ErrorCode::parse, "missing column '" + column + "'");
    return it->second;
}

double parse_double(const std::string& text, const std::string& column) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw Error(ErrorCode::parse,
                    "cannot parse '" + text + "' in column '" + column + "' as a number");
    return v;
}

std::int64_t parse_frame(const std::string& text, const std::string& column) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw Error(ErrorCode::parse,
                    "cannot parse '" + text + "' in column '" + column + "' as a frame index");
    return v;
}

} // namespace

std::optional<TableFormat> table_format_from_name(std::string_view name) {
    if (name == "csv") return TableFormat::csv;
    if (name == "tsv") return TableFormat::tsv;
    if (name == "json") return TableFormat::json;
    return std::nullopt;
}

TableFormat table_format_for_path(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".tsv") return TableFormat::tsv;
    if (ext == ".json") return TableFormat::json;
    return TableFormat::csv;
}

FrameSeries parse_annotation_table(const AnnotationTableSpec& spec,
                                   const LabelSet& label_set) {
    if (spec.fps && !(*spec.fps > 0.0))
        throw Error(ErrorCode::invalid_config, "fps override must be positive");
    const std::vector<Record> records = read_records(spec.path, spec.format);

    std::vector<std::pair<std::int64_t, const std::string*>> rows;
    rows.reserve(records.size());
    for (std::size_t r = 0; r < records.size(); ++r) {
        const std::string& label = cell(records[r], spec.label_column);
        std::int64_t frame = static_cast<std::int64_t>(r);
        if (spec.frame_column)
            frame = parse_frame(cell(records[r], *spec.frame_column), *spec.frame_column);
        rows.emplace_back(frame, &label);
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    if (spec.frame_column) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].first != static_cast<std::int64_t>(i))
                throw Error(ErrorCode::frame_gap,
                            "frame column must cover 0.." + std::to_string(rows.size() - 1) +
                                " exactly (got " + std::to_string(rows[i].first) +
                                " at position " + std::to_string(i) + ")");
    }

    FrameSeries out;
    out.label_set = label_set;
    out.timebase.fps = spec.fps.value_or(25.0);
    out.labels.reserve(rows.size());
    for (const auto& [frame, label] : rows) {
        const auto id = label_set.find(*label);
        if (!id)
            throw Error(ErrorCode::unknown_label,
                        "label '" + *label + "' not in the label set");
        out.labels.push_back(*id);
    }
    return out;
}

PoseTable parse_pose_table(const PoseTableSpec& spec) {
    if (spec.keypoints.empty())
        throw Error(ErrorCode::invalid_config, "pose spec needs at least one keypoint");
    if (!(spec.fps > 0.0))
        throw Error(ErrorCode::invalid_config, "fps must be positive");
    if (spec.px_per_cm && !(*spec.px_per_cm > 0.0))
        throw Error(ErrorCode::invalid_config, "px_per_cm must be positive");

    const std::vector<Record> records = read_records(spec.path, spec.format);

    PoseTable pose;
    pose.animal_id = spec.animal_id;
    pose.keypoints = spec.keypoints;
    pose.timebase.fps = spec.fps;
    pose.timebase.px_per_cm = spec.px_per_cm;
    const std::size_t cells = records.size() * spec.keypoints.size();
    pose.xs.reserve(cells);
    pose.ys.reserve(cells);
    pose.likelihoods.reserve(cells);

    for (const Record& rec : records) {
        for (const std::string& kp : spec.keypoints) {
            const double x = parse_double(cell(rec, kp + "_x"), kp + "_x");
            const double y = parse_double(cell(rec, kp + "_y"), kp + "_y");
            const double lik =
                parse_double(cell(rec, kp + "_likelihood"), kp + "_likelihood");
            if (!std::isfinite(x) || !std::isfinite(y))
                throw Error(ErrorCode::non_finite_coordinate,
                            "non-finite coordinate for keypoint '" + kp + "'");
            if (!(lik >= 0.0 && lik <= 1.0))
                throw Error(ErrorCode::likelihood_range,
                            "likelihood for keypoint '" + kp + "' outside [0,1]");
            pose.xs.push_back(x);
            pose.ys.push_back(y);
            pose.likelihoods.push_back(lik);
        }
    }
    return pose;
}

std::vector<std::string> sniff_keypoints(const std::filesystem::path& path,
                                         TableFormat format) {
    std::vector<std::string> columns;
    read_records(path, format, &columns);

    std::vector<std::string> keypoints;
    for (const std::string& col : columns) {
        if (col.size() <= 2 || col.substr(col.size() - 2) != "_x")
            continue;
        const std::string kp = col.substr(0, col.size() - 2);
        const bool has_y = std::find(columns.begin(), columns.end(), kp + "_y") != columns.end();
        const bool has_lik =
            std::find(columns.begin(), columns.end(), kp + "_likelihood") != columns.end();
        if (has_y && has_lik)
            keypoints.push_back(kp);
    }
    return keypoints;
}

std::vector<std::string> scan_label_names(const AnnotationTableSpec& spec) {
    const std::vector<Record> records = read_records(spec.path, spec.format);
    std::vector<std::string> names;
    for (const Record& rec : records) {
        const std::string& label = cell(rec, spec.label_column);
        if (std::find(names.begin(), names.end(), label) == names.end())
            names.push_back(label);
    }
    return names;
}

std::string render_annotation_csv(const FrameSeries& series) {
    std::string out = "frame,label\n";
    for (std::size_t i = 0; i < series.labels.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += series.label_set.name(series.labels[i]);
        out += '\n';
    }
    return out;
}

void write_annotation_csv(const FrameSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::file, "cannot write '" + path.string() + "'");
    out << render_annotation_csv(series);
    if (!out)
        throw Error(ErrorCode::file, "write failed for '" + path.string() + "'");
}

} // namespace banos::io
