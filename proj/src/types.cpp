#include "scatgen/types.hpp"

#include <algorithm>
#include <cctype>

namespace scatgen {

namespace {

constexpr std::array<const char*, kMeasureCount> kNames = {
    "outlying", "skewed", "clumpy", "sparse", "striated",
    "convex",   "skinny", "stringy", "monotonic"};

}  // namespace

const char* to_string(Measure m) { return kNames[static_cast<int>(m)]; }

std::optional<Measure> parse_measure(std::string_view name) {
    std::string lower(name.size(), '\0');
    std::transform(name.begin(), name.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (int i = 0; i < kMeasureCount; ++i) {
        if (lower == kNames[i]) return static_cast<Measure>(i);
    }
    return std::nullopt;
}

std::string measure_name_list() {
    std::string out;
    for (int i = 0; i < kMeasureCount; ++i) {
        if (i) out += ", ";
        out += kNames[i];
    }
    return out;
}

double ScagnosticVector::operator[](Measure m) const {
    switch (m) {
        case Measure::Outlying: return outlying;
        case Measure::Skewed: return skewed;
        case Measure::Clumpy: return clumpy;
        case Measure::Sparse: return sparse;
        case Measure::Striated: return striated;
        case Measure::Convex: return convex;
        case Measure::Skinny: return skinny;
        case Measure::Stringy: return stringy;
        case Measure::Monotonic: return monotonic;
    }
    throw InvalidInput("unknown measure index");
}

double& ScagnosticVector::operator[](Measure m) {
    switch (m) {
        case Measure::Outlying: return outlying;
        case Measure::Skewed: return skewed;
        case Measure::Clumpy: return clumpy;
        case Measure::Sparse: return sparse;
        case Measure::Striated: return striated;
        case Measure::Convex: return convex;
        case Measure::Skinny: return skinny;
        case Measure::Stringy: return stringy;
        case Measure::Monotonic: return monotonic;
    }
    throw InvalidInput("unknown measure index");
}

std::array<double, kMeasureCount> ScagnosticVector::as_array() const {
    return {outlying, skewed, clumpy, sparse, striated, convex, skinny, stringy, monotonic};
}

}  // namespace scatgen
