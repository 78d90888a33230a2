#include "scatgen/scagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace scatgen {

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// Fence comparisons get a relative guard so that mathematically equal edge
// lengths (differing only in rounding) never count as exceeding the fence.
bool exceeds_fence(double length, double fence) {
    return length > fence + 1e-10 * std::max(fence, length);
}

std::vector<double> sorted_lengths(const EdgeGraph& g) {
    std::vector<double> lengths;
    lengths.reserve(g.edges.size());
    for (const Edge& e : g.edges) lengths.push_back(e.length);
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

// Average ranks (1-based) with ties sharing the mean rank of their run.
std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double convex_measure(const PolygonShape& hull, const PolygonShape& alpha) {
    if (hull.area <= 0.0) return 0.0;
    return clamp01(alpha.area / hull.area);
}

double skinny_measure(const PolygonShape& alpha) {
    if (alpha.perimeter <= 0.0) return 1.0;
    return clamp01(1.0 - std::sqrt(4.0 * M_PI * alpha.area) / alpha.perimeter);
}

double monotonic_measure(const PointSet& points) {
    if (points.size() < 3) throw InsufficientPoints("monotonic requires at least 3 points");
    std::vector<double> xs, ys;
    xs.reserve(points.size());
    ys.reserve(points.size());
    for (const Point& p : points) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    const std::vector<double> rx = average_ranks(xs);
    const std::vector<double> ry = average_ranks(ys);

    const double n = static_cast<double>(points.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0;  // constant axis
    const double rho = sxy / std::sqrt(sxx * syy);
    return clamp01(rho * rho);
}

MstMeasures mst_edge_measures(const EdgeGraph& tree, const PointSet& points) {
    if (tree.edges.size() < 2) throw InsufficientPoints("MST measures require at least 2 edges");
    MstMeasures m;

    const std::vector<double> lengths = sorted_lengths(tree);
    const double q10 = quantile_sorted(lengths, 0.10);
    const double q25 = quantile_sorted(lengths, 0.25);
    const double q50 = quantile_sorted(lengths, 0.50);
    const double q75 = quantile_sorted(lengths, 0.75);
    const double q90 = quantile_sorted(lengths, 0.90);
    const double fence = q75 + 1.5 * (q75 - q25);
    const double total = tree.total_length();

    std::vector<std::vector<int>> incident(tree.vertex_count);
    for (int ei = 0; ei < static_cast<int>(tree.edges.size()); ++ei) {
        incident[tree.edges[ei].a].push_back(ei);
        incident[tree.edges[ei].b].push_back(ei);
    }

    // Outlying: a vertex is an outlier when every incident edge exceeds the
    // fence; the measure is the share of MST length on edges touching one.
    std::vector<char> outlier(tree.vertex_count, 0);
    for (int v = 0; v < tree.vertex_count; ++v) {
        if (incident[v].empty()) continue;
        bool all_long = true;
        for (int ei : incident[v]) {
            if (!exceeds_fence(tree.edges[ei].length, fence)) {
                all_long = false;
                break;
            }
        }
        outlier[v] = all_long ? 1 : 0;
    }
    double outlier_len = 0.0;
    for (const Edge& e : tree.edges) {
        if (outlier[e.a] || outlier[e.b]) outlier_len += e.length;
    }
    m.outlying = total > 0.0 ? clamp01(outlier_len / total) : 0.0;

    // q90 == q10 (here: equal up to rounding) means no skew signal
    m.skewed = (q90 - q10 > 1e-10 * q90) ? clamp01((q90 - q50) / (q90 - q10)) : 0.0;
    m.sparse = clamp01(q90);

    // Clumpy: over fence-exceeding edges, delete the edge, take the component
    // with fewer vertices (on a tie, the one whose longest edge is shorter)
    // and score 1 - max_edge / deleted_edge.
    double clumpy = 0.0;
    for (int ei = 0; ei < static_cast<int>(tree.edges.size()); ++ei) {
        const Edge& cut = tree.edges[ei];
        if (!exceeds_fence(cut.length, fence) || cut.length <= 0.0) continue;
        auto side = [&](int src) {
            std::vector<int> stack{src};
            std::vector<char> seen(tree.vertex_count, 0);
            seen[src] = 1;
            int count = 0;
            double max_len = 0.0;
            while (!stack.empty()) {
                const int u = stack.back();
                stack.pop_back();
                ++count;
                for (int e2 : incident[u]) {
                    if (e2 == ei) continue;
                    const Edge& e = tree.edges[e2];
                    const int w = e.a == u ? e.b : e.a;
                    if (!seen[w]) {
                        seen[w] = 1;
                        max_len = std::max(max_len, e.length);
                        stack.push_back(w);
                    }
                }
            }
            return std::pair<int, double>{count, max_len};
        };
        const auto [na, max_a] = side(cut.a);
        const auto [nb, max_b] = side(cut.b);
        double smaller_max;
        if (na < nb) smaller_max = max_a;
        else if (nb < na) smaller_max = max_b;
        else smaller_max = std::min(max_a, max_b);
        clumpy = std::max(clumpy, 1.0 - smaller_max / cut.length);
    }
    m.clumpy = clamp01(clumpy);

    // Striated: share of vertices that are degree-2 with a near-straight
    // continuation (cosine of the incident edge pair <= -0.75).
    int striated_count = 0;
    for (int v = 0; v < tree.vertex_count; ++v) {
        if (incident[v].size() != 2) continue;
        const Edge& e1 = tree.edges[incident[v][0]];
        const Edge& e2 = tree.edges[incident[v][1]];
        if (e1.length <= 0.0 || e2.length <= 0.0) continue;
        const int u = e1.a == v ? e1.b : e1.a;
        const int w = e2.a == v ? e2.b : e2.a;
        const double ax = points[u].x - points[v].x, ay = points[u].y - points[v].y;
        const double bx = points[w].x - points[v].x, by = points[w].y - points[v].y;
        const double cosine = (ax * bx + ay * by) / (e1.length * e2.length);
        if (cosine <= -0.75) ++striated_count;
    }
    m.striated = clamp01(static_cast<double>(striated_count) /
                         static_cast<double>(tree.vertex_count));

    const double diameter = mst_diameter(tree);
    m.stringy = total > 0.0 ? clamp01(diameter / total) : 0.0;
    return m;
}

ScagnosticVector compute_selected(const PointSet& points, MeasureMask mask,
                                  const ScagnosticsOptions& opts) {
    return compute_detail_masked(points, mask, opts).values;
}

ScagnosticsDetail compute_detail_masked(const PointSet& points, MeasureMask mask,
                                        const ScagnosticsOptions& opts) {
    if (points.size() < 3)
        throw InsufficientPoints("scagnostics require at least 3 points, got " +
                                 std::to_string(points.size()));

    ScagnosticsDetail detail;
    PointSet working = normalize_to_unit_square(points);
    if (opts.binning && static_cast<int>(working.size()) > opts.bin_threshold) {
        PointSet binned = hex_bin(working, opts.bin_grid);
        if (binned.size() >= 3) {
            working = std::move(binned);
            detail.binned = true;
        }
    }

    constexpr MeasureMask kMstMask =
        measure_bit(Measure::Outlying) | measure_bit(Measure::Skewed) |
        measure_bit(Measure::Clumpy) | measure_bit(Measure::Sparse) |
        measure_bit(Measure::Striated) | measure_bit(Measure::Stringy);
    constexpr MeasureMask kShapeMask =
        measure_bit(Measure::Convex) | measure_bit(Measure::Skinny);

    if (mask & (kMstMask | kShapeMask)) {
        const Triangulation tri = delaunay_detail(working);
        const EdgeGraph mst = minimum_spanning_tree(working, tri);

        std::vector<double> lengths;
        lengths.reserve(mst.edges.size());
        for (const Edge& e : mst.edges) lengths.push_back(e.length);
        std::sort(lengths.begin(), lengths.end());
        // default alpha is the outlier fence of the MST edge lengths; a q90
        // default leaves visible concavities even on convex clouds
        const double q25 = quantile_sorted(lengths, 0.25);
        const double q75 = quantile_sorted(lengths, 0.75);
        detail.alpha = opts.alpha_override > 0.0 ? opts.alpha_override
                                                 : q75 + 1.5 * (q75 - q25);

        if (mask & kMstMask) {
            const MstMeasures mm = mst_edge_measures(mst, working);
            detail.values.outlying = mm.outlying;
            detail.values.skewed = mm.skewed;
            detail.values.clumpy = mm.clumpy;
            detail.values.sparse = mm.sparse;
            detail.values.striated = mm.striated;
            detail.values.stringy = mm.stringy;
            if (opts.size_correction) {
                // Wilkinson-2008 small-sample damping, applied to Sparse only
                const double t = static_cast<double>(working.size()) / 500.0;
                const double w = 0.7 + 0.3 / (1.0 + t * t);
                detail.values.sparse = std::min(1.0, detail.values.sparse * w);
            }
        }

        if (mask & kShapeMask) {
            const PolygonShape hull = convex_hull(working);
            PolygonShape alpha;
            if (detail.alpha > 0.0 && !tri.triangles.empty()) {
                alpha = alpha_shape(working, detail.alpha, tri);
            } else {
                alpha.degenerate = true;
            }
            detail.hull_degenerate = hull.degenerate || hull.area <= 0.0;
            detail.alpha_degenerate = alpha.degenerate;
            detail.values.convex = convex_measure(hull, alpha);
            detail.values.skinny = skinny_measure(alpha);
        }
    }

    if (mask & measure_bit(Measure::Monotonic)) {
        bool const_x = true, const_y = true;
        for (const Point& p : working) {
            const_x = const_x && p.x == working.front().x;
            const_y = const_y && p.y == working.front().y;
        }
        detail.monotonic_degenerate = const_x || const_y;
        detail.values.monotonic = detail.monotonic_degenerate ? 0.0 : monotonic_measure(working);
    }
    return detail;
}

ScagnosticsDetail compute_detail(const PointSet& points, const ScagnosticsOptions& opts) {
    return compute_detail_masked(points, kAllMeasureMask, opts);
}

ScagnosticVector compute_all(const PointSet& points, const ScagnosticsOptions& opts) {
    return compute_detail(points, opts).values;
}

}  // namespace scatgen
