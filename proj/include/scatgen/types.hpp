#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scatgen {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
    using Error::Error;
};

struct InsufficientPoints : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct Point {
    double x{0.0};
    double y{0.0};
};

inline bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

using PointSet = std::vector<Point>;

inline bool is_finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// The nine measures, in their canonical order. This ordering is part of the
// public contract: vectors, reports and help text all follow it.
enum class Measure : int {
    Outlying = 0,
    Skewed = 1,
    Clumpy = 2,
    Sparse = 3,
    Striated = 4,
    Convex = 5,
    Skinny = 6,
    Stringy = 7,
    Monotonic = 8,
};

inline constexpr int kMeasureCount = 9;

inline constexpr std::array<Measure, kMeasureCount> all_measures() {
    return {Measure::Outlying, Measure::Skewed,  Measure::Clumpy,
            Measure::Sparse,   Measure::Striated, Measure::Convex,
            Measure::Skinny,   Measure::Stringy, Measure::Monotonic};
}

const char* to_string(Measure m);

// Case-insensitive parse; nullopt for unknown names.
std::optional<Measure> parse_measure(std::string_view name);

// Comma-separated list of the nine canonical names (for diagnostics).
std::string measure_name_list();

struct ScagnosticVector {
    double outlying{0.0};
    double skewed{0.0};
    double clumpy{0.0};
    double sparse{0.0};
    double striated{0.0};
    double convex{0.0};
    double skinny{0.0};
    double stringy{0.0};
    double monotonic{0.0};

    double operator[](Measure m) const;
    double& operator[](Measure m);
    std::array<double, kMeasureCount> as_array() const;
};

}  // namespace scatgen
