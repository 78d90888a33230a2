#include "scatgen/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace scatgen {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

double parse_field(std::string_view field, std::size_t line_no, const char* axis) {
    double value{};
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw InvalidInput("line " + std::to_string(line_no) + ": " + axis +
                           " value is not a number: '" + std::string(field) + "'");
    return value;
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

FileFormat infer_format(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".json" ? FileFormat::Json : FileFormat::Csv;
}

std::string points_to_csv(const PointSet& points) {
    std::string out = "x,y\n";
    for (const Point& p : points) {
        out += format_double(p.x);
        out += ',';
        out += format_double(p.y);
        out += '\n';
    }
    return out;
}

std::string points_to_json(const PointSet& points) {
    std::string out = "[";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) out += ",";
        out += "\n  {\"x\": " + format_double(points[i].x) +
               ", \"y\": " + format_double(points[i].y) + "}";
    }
    out += "\n]\n";
    return out;
}

PointSet points_from_csv(const std::string& text) {
    if (text.empty()) throw InvalidInput("empty input file");
    PointSet points;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line(text.data() + pos,
                              (nl == std::string::npos ? text.size() : nl) - pos);
        pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
        line = strip_cr(line);
        ++line_no;
        if (line_no == 1) {
            if (line != "x,y")
                throw InvalidInput("line 1: expected header 'x,y', got '" + std::string(line) +
                                   "'");
            continue;
        }
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string_view::npos)
            throw InvalidInput("line " + std::to_string(line_no) + ": expected 'x,y' pair");
        const double x = parse_field(line.substr(0, comma), line_no, "x");
        const double y = parse_field(line.substr(comma + 1), line_no, "y");
        points.push_back({x, y});
    }
    if (points.empty()) throw InvalidInput("input contains a header but no points");
    return points;
}

PointSet points_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        throw InvalidInput(std::string("JSON parse error: ") + ex.what());
    }
    if (!doc.is_array()) throw InvalidInput("JSON input must be an array of {x, y} objects");
    PointSet points;
    points.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        if (!item.is_object() || !item.contains("x") || !item.contains("y") ||
            !item["x"].is_number() || !item["y"].is_number())
            throw InvalidInput("JSON element " + std::to_string(i) +
                               " is not an object with numeric x and y");
        points.push_back({item["x"].get<double>(), item["y"].get<double>()});
    }
    if (points.empty()) throw InvalidInput("JSON input contains no points");
    return points;
}

PointSet read_points(const std::filesystem::path& path, FileFormat format) {
    const std::string text = read_file(path);
    return format == FileFormat::Csv ? points_from_csv(text) : points_from_json(text);
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw Error("short write to " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("cannot move " + tmp.string() + " into place: " + ec.message());
    }
}

void write_points(const PointSet& points, const std::filesystem::path& path, FileFormat format) {
    atomic_write(path, format == FileFormat::Csv ? points_to_csv(points)
                                                 : points_to_json(points));
}

std::string render_plot_svg(const PointSet& points, const ScagnosticVector& achieved) {
    if (points.empty()) throw InvalidInput("plot requires at least 1 point");
    constexpr double size = 600.0, margin = 40.0, caption_h = 150.0;
    const double width = size + 2 * margin;
    const double height = size + 2 * margin + caption_h;

    auto px = [&](double x) { return margin + x * size; };
    auto py = [&](double y) { return margin + (1.0 - y) * size; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    svg << "  <rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size
        << "\" height=\"" << size << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    // unit-square tick labels
    svg << "  <text x=\"" << margin << "\" y=\"" << margin + size + 16
        << "\" font-family=\"monospace\" font-size=\"12\">0</text>\n";
    svg << "  <text x=\"" << margin + size - 8 << "\" y=\"" << margin + size + 16
        << "\" font-family=\"monospace\" font-size=\"12\">1</text>\n";
    for (const Point& p : points) {
        svg << "  <circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y)
            << "\" r=\"3\" fill=\"#1f77b4\" fill-opacity=\"0.75\"/>\n";
    }
    double ty = margin + size + 28.0;
    svg << "  <text x=\"" << margin << "\" y=\"" << ty
        << "\" font-family=\"monospace\" font-size=\"13\" font-weight=\"bold\">"
        << "scagnostics</text>\n";
    const auto vals = achieved.as_array();
    const auto names = all_measures();
    for (int i = 0; i < kMeasureCount; ++i) {
        const double col = margin + (i % 3) * (size / 3.0);
        const double row = ty + 18.0 * (i / 3 + 1);
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%s = %.4f", to_string(names[i]),
                      vals[static_cast<std::size_t>(i)]);
        svg << "  <text x=\"" << col << "\" y=\"" << row
            << "\" font-family=\"monospace\" font-size=\"12\">" << buf << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_plot(const PointSet& points, const ScagnosticVector& achieved,
               const std::filesystem::path& path) {
    atomic_write(path, render_plot_svg(points, achieved));
}

}  // namespace scatgen
