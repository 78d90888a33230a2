#pragma once

#include <cstdint>

#include "scatgen/geometry.hpp"
#include "scatgen/types.hpp"

namespace scatgen {

struct ScagnosticsOptions {
    bool binning = true;          // hex-bin before measuring when n > bin_threshold
    int bin_threshold = 250;
    int bin_grid = 40;
    double alpha_override = 0.0;  // <= 0: outlier fence of the MST edge lengths
    bool size_correction = false; // Wilkinson-2008 small-n factor on Sparse
};

using MeasureMask = std::uint16_t;

inline constexpr MeasureMask measure_bit(Measure m) {
    return static_cast<MeasureMask>(1u << static_cast<int>(m));
}
inline constexpr MeasureMask kAllMeasureMask = (1u << kMeasureCount) - 1;

struct MstMeasures {
    double outlying{0.0};
    double skewed{0.0};
    double clumpy{0.0};
    double sparse{0.0};
    double striated{0.0};
    double stringy{0.0};
};

// Degeneracy flags and intermediate quantities, for callers that need to
// know why a measure was clamped.
struct ScagnosticsDetail {
    ScagnosticVector values;
    double alpha{0.0};
    bool binned{false};
    bool hull_degenerate{false};
    bool alpha_degenerate{false};
    bool monotonic_degenerate{false};
};

// The nine measures of a point set: normalize, optionally bin, build the
// three graphs, evaluate. Every component is clamped to [0,1]. Requires at
// least 3 points.
ScagnosticVector compute_all(const PointSet& points, const ScagnosticsOptions& opts = {});
ScagnosticsDetail compute_detail(const PointSet& points, const ScagnosticsOptions& opts = {});

// Same pipeline but only the measures in `mask` are guaranteed to be
// populated; graphs that no requested measure needs are skipped.
ScagnosticVector compute_selected(const PointSet& points, MeasureMask mask,
                                  const ScagnosticsOptions& opts = {});
ScagnosticsDetail compute_detail_masked(const PointSet& points, MeasureMask mask,
                                        const ScagnosticsOptions& opts = {});

// area(A) / area(H), clamped to [0,1]. Zero hull area gives 0.
double convex_measure(const PolygonShape& hull, const PolygonShape& alpha);

// 1 - sqrt(4*pi*area(A)) / perimeter(A), clamped to [0,1]. Zero perimeter
// gives 1 (maximally skinny).
double skinny_measure(const PolygonShape& alpha);

// Squared Spearman rank correlation of x vs y with average-rank ties.
// A constant axis gives 0.
double monotonic_measure(const PointSet& points);

// The six MST-derived measures; `points` backs the tree's vertex indices.
MstMeasures mst_edge_measures(const EdgeGraph& tree, const PointSet& points);

}  // namespace scatgen
