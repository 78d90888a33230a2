#pragma once

#include <filesystem>
#include <string>

#include "scatgen/types.hpp"

namespace scatgen {

enum class FileFormat { Csv, Json };

// Inferred from the extension (.json -> Json, anything else -> Csv).
FileFormat infer_format(const std::filesystem::path& path);

// CSV: header `x,y`, one point per row. JSON: array of {"x": ..., "y": ...}.
// Parse errors name the offending line. Round-trips are bit-exact: doubles
// are written in their shortest round-trip decimal form.
PointSet read_points(const std::filesystem::path& path, FileFormat format);
void write_points(const PointSet& points, const std::filesystem::path& path, FileFormat format);

std::string points_to_csv(const PointSet& points);
std::string points_to_json(const PointSet& points);
PointSet points_from_csv(const std::string& text);
PointSet points_from_json(const std::string& text);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// Writes content to a temporary sibling file and renames it into place, so a
// failed run never leaves a partial output file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// Standalone SVG: unit-square axes, one circle per point, and a caption
// block listing all nine achieved measures.
std::string render_plot_svg(const PointSet& points, const ScagnosticVector& achieved);
void emit_plot(const PointSet& points, const ScagnosticVector& achieved,
               const std::filesystem::path& path);

}  // namespace scatgen
