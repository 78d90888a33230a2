#pragma once

#include <vector>

#include "scatgen/types.hpp"

namespace scatgen {

struct Edge {
    int a{0};
    int b{0};
    double length{0.0};
};

// Undirected graph over indices into some PointSet. At most one edge per
// unordered pair, a != b except for the zero-length duplicate links.
struct EdgeGraph {
    int vertex_count{0};
    std::vector<Edge> edges;

    double total_length() const;
};

struct Triangle {
    int a{0}, b{0}, c{0};
    double circumradius{0.0};
};

struct Triangulation {
    int vertex_count{0};
    std::vector<Triangle> triangles;
    EdgeGraph edges;
    bool collinear_fallback{false};
};

struct PolygonShape {
    std::vector<std::vector<int>> loops;  // boundary cycles, vertex indices
    double area{0.0};
    double perimeter{0.0};
    bool degenerate{false};
};

// Min-max scales each axis to [0,1]; a constant axis maps to 0.5.
PointSet normalize_to_unit_square(const PointSet& points);

// Smallest convex polygon containing all points. Collinear input yields a
// degenerate shape with area 0 and perimeter = 2 * segment length.
PolygonShape convex_hull(const PointSet& points);

// Delaunay triangulation (Bowyer-Watson). Duplicate points are linked to
// their representative with zero-length edges; an all-collinear set falls
// back to the chain graph along the line.
Triangulation delaunay_detail(const PointSet& points);
EdgeGraph delaunay_triangulate(const PointSet& points);

// Euclidean MST, computed on the Delaunay edge set (the EMST is always a
// Delaunay subgraph). Ties are broken by endpoint coordinates so the result
// is permutation invariant.
EdgeGraph minimum_spanning_tree(const PointSet& points);
EdgeGraph minimum_spanning_tree(const PointSet& points, const Triangulation& tri);

// Longest shortest path (by edge length) between any two vertices of a tree.
double mst_diameter(const EdgeGraph& tree);

// Alpha complex of the Delaunay triangulation: triangles with circumradius
// <= alpha. Area is the summed triangle area, perimeter the total length of
// edges bounding exactly one kept triangle.
PolygonShape alpha_shape(const PointSet& points, double alpha);
PolygonShape alpha_shape(const PointSet& points, double alpha, const Triangulation& tri);

// Aggregates points to centroids of occupied hexagonal cells on a
// grid x grid lattice over the unit square.
PointSet hex_bin(const PointSet& points, int grid);

// Linear-interpolation quantile (index p*(n-1)) on a sorted sequence.
// Pinned convention used by every quantile in this project.
double quantile_sorted(const std::vector<double>& sorted, double p);

}  // namespace scatgen
