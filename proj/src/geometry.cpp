#include "scatgen/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

namespace scatgen {

namespace {

constexpr double kEps = 1e-12;  // predicate tolerance on normalized coordinates

double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double dist2(const Point& a, const Point& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

void require_finite(const PointSet& points) {
    for (const Point& p : points) {
        if (!is_finite(p)) throw InvalidInput("point set contains non-finite coordinates");
    }
}

// Deduplication by exact coordinate equality. rep[i] is the index of the
// first point with identical coordinates; uniq lists those representatives.
struct Dedup {
    std::vector<int> rep;
    std::vector<int> uniq;
};

Dedup deduplicate(const PointSet& points) {
    Dedup d;
    d.rep.resize(points.size());
    std::map<std::pair<double, double>, int> seen;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
        auto [it, inserted] = seen.try_emplace({points[i].x, points[i].y}, i);
        d.rep[i] = it->second;
        if (inserted) d.uniq.push_back(i);
    }
    return d;
}

bool all_collinear(const PointSet& points, const std::vector<int>& uniq) {
    if (uniq.size() < 3) return true;
    // extremes along lexicographic order span the candidate line
    int lo = uniq[0], hi = uniq[0];
    for (int i : uniq) {
        const Point& p = points[i];
        if (std::tie(p.x, p.y) < std::tie(points[lo].x, points[lo].y)) lo = i;
        if (std::tie(points[hi].x, points[hi].y) < std::tie(p.x, p.y)) hi = i;
    }
    for (int i : uniq) {
        if (std::fabs(cross(points[lo], points[hi], points[i])) > kEps) return false;
    }
    return true;
}

struct CircumData {
    double cx{0.0}, cy{0.0}, r2{0.0};
    bool ok{false};
};

CircumData circumcircle(const Point& a, const Point& b, const Point& c) {
    CircumData out;
    const double bx = b.x - a.x, by = b.y - a.y;
    const double cx_ = c.x - a.x, cy_ = c.y - a.y;
    const double d = 2.0 * (bx * cy_ - by * cx_);
    if (std::fabs(d) < 1e-30) return out;  // collinear triple
    const double b2 = bx * bx + by * by;
    const double c2 = cx_ * cx_ + cy_ * cy_;
    const double ux = (cy_ * b2 - by * c2) / d;
    const double uy = (bx * c2 - cx_ * b2) / d;
    out.cx = a.x + ux;
    out.cy = a.y + uy;
    out.r2 = ux * ux + uy * uy;
    out.ok = true;
    return out;
}

struct BwTriangle {
    int a, b, c;          // indices into the working vertex list
    CircumData cc;
    bool alive{true};
};

// Chain graph over collinear points, ordered along the spanning direction.
// Ordering keys on coordinates, so the result is permutation invariant.
EdgeGraph collinear_chain(const PointSet& points, const std::vector<int>& uniq) {
    EdgeGraph g;
    g.vertex_count = static_cast<int>(points.size());
    std::vector<int> order = uniq;
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return std::tie(points[i].x, points[i].y) < std::tie(points[j].x, points[j].y);
    });
    for (std::size_t k = 1; k < order.size(); ++k) {
        g.edges.push_back({order[k - 1], order[k], dist(points[order[k - 1]], points[order[k]])});
    }
    return g;
}

void append_duplicate_links(const PointSet& points, const Dedup& d, EdgeGraph& g) {
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
        if (d.rep[i] != i) g.edges.push_back({d.rep[i], i, 0.0});
    }
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

// Canonical edge ordering: by length, then by the lexicographically ordered
// endpoint coordinates. Makes Kruskal's choice independent of input order.
struct EdgeKey {
    double length;
    double px, py, qx, qy;

    bool operator<(const EdgeKey& o) const {
        return std::tie(length, px, py, qx, qy) <
               std::tie(o.length, o.px, o.py, o.qx, o.qy);
    }
};

EdgeKey edge_key(const PointSet& points, const Edge& e) {
    const Point& a = points[e.a];
    const Point& b = points[e.b];
    if (std::tie(a.x, a.y) <= std::tie(b.x, b.y)) return {e.length, a.x, a.y, b.x, b.y};
    return {e.length, b.x, b.y, a.x, a.y};
}

}  // namespace

double EdgeGraph::total_length() const {
    double sum = 0.0;
    for (const Edge& e : edges) sum += e.length;
    return sum;
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) throw InvalidInput("quantile of empty sequence");
    const double h = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

PointSet normalize_to_unit_square(const PointSet& points) {
    if (points.empty()) throw InsufficientPoints("normalize requires at least 1 point");
    require_finite(points);
    double min_x = points[0].x, max_x = points[0].x;
    double min_y = points[0].y, max_y = points[0].y;
    for (const Point& p : points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double span_x = max_x - min_x;
    const double span_y = max_y - min_y;
    PointSet out;
    out.reserve(points.size());
    for (const Point& p : points) {
        out.push_back({span_x > 0.0 ? (p.x - min_x) / span_x : 0.5,
                       span_y > 0.0 ? (p.y - min_y) / span_y : 0.5});
    }
    return out;
}

PolygonShape convex_hull(const PointSet& points) {
    if (points.empty()) throw InsufficientPoints("convex hull requires at least 1 point");
    require_finite(points);
    const Dedup d = deduplicate(points);

    PolygonShape shape;
    if (all_collinear(points, d.uniq)) {
        // degenerate: a segment (or a single point)
        int lo = d.uniq[0], hi = d.uniq[0];
        for (int i : d.uniq) {
            const Point& p = points[i];
            if (std::tie(p.x, p.y) < std::tie(points[lo].x, points[lo].y)) lo = i;
            if (std::tie(points[hi].x, points[hi].y) < std::tie(p.x, p.y)) hi = i;
        }
        shape.degenerate = true;
        shape.area = 0.0;
        shape.perimeter = 2.0 * dist(points[lo], points[hi]);
        if (lo != hi) shape.loops.push_back({lo, hi});
        else shape.loops.push_back({lo});
        return shape;
    }

    // Andrew's monotone chain over the unique points
    std::vector<int> order = d.uniq;
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return std::tie(points[i].x, points[i].y) < std::tie(points[j].x, points[j].y);
    });
    const int m = static_cast<int>(order.size());
    std::vector<int> hull(2 * m);
    int k = 0;
    for (int idx = 0; idx < m; ++idx) {
        const int i = order[idx];
        while (k >= 2 && cross(points[hull[k - 2]], points[hull[k - 1]], points[i]) <= kEps) --k;
        hull[k++] = i;
    }
    const int lower_size = k + 1;
    for (int idx = m - 2; idx >= 0; --idx) {
        const int i = order[idx];
        while (k >= lower_size && cross(points[hull[k - 2]], points[hull[k - 1]], points[i]) <= kEps) --k;
        hull[k++] = i;
    }
    hull.resize(k - 1);  // last point repeats the first

    double area2 = 0.0, perim = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point& p = points[hull[i]];
        const Point& q = points[hull[(i + 1) % hull.size()]];
        area2 += p.x * q.y - q.x * p.y;
        perim += dist(p, q);
    }
    shape.loops.push_back(std::move(hull));
    shape.area = std::fabs(area2) / 2.0;
    shape.perimeter = perim;
    return shape;
}

Triangulation delaunay_detail(const PointSet& points) {
    if (points.size() < 3) throw InsufficientPoints("triangulation requires at least 3 points");
    require_finite(points);
    const Dedup d = deduplicate(points);

    Triangulation tri;
    tri.vertex_count = static_cast<int>(points.size());

    if (all_collinear(points, d.uniq)) {
        tri.collinear_fallback = true;
        tri.edges = collinear_chain(points, d.uniq);
        append_duplicate_links(points, d, tri.edges);
        return tri;
    }

    // working vertex list: unique original points, then 3 super-triangle vertices
    std::vector<Point> verts;
    verts.reserve(d.uniq.size() + 3);
    for (int i : d.uniq) verts.push_back(points[i]);

    double min_x = verts[0].x, max_x = verts[0].x, min_y = verts[0].y, max_y = verts[0].y;
    for (const Point& p : verts) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double cx = (min_x + max_x) / 2.0, cy = (min_y + max_y) / 2.0;
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
    const double big = 64.0 * span;
    const int s0 = static_cast<int>(verts.size());
    verts.push_back({cx - 2.0 * big, cy - big});
    verts.push_back({cx + 2.0 * big, cy - big});
    verts.push_back({cx, cy + 2.0 * big});

    std::vector<BwTriangle> tris;
    tris.reserve(4 * verts.size());
    tris.push_back({s0, s0 + 1, s0 + 2, circumcircle(verts[s0], verts[s0 + 1], verts[s0 + 2]), true});

    std::vector<int> bad;
    std::vector<std::pair<int, int>> boundary;
    for (int v = 0; v < s0; ++v) {
        const Point& p = verts[v];
        bad.clear();
        for (int ti = 0; ti < static_cast<int>(tris.size()); ++ti) {
            const BwTriangle& t = tris[ti];
            if (!t.alive) continue;
            bool inside;
            if (t.cc.ok) {
                const double dx = p.x - t.cc.cx, dy = p.y - t.cc.cy;
                inside = dx * dx + dy * dy < t.cc.r2 * (1.0 - kEps);
            } else {
                inside = true;  // degenerate sliver: always recycle
            }
            if (inside) bad.push_back(ti);
        }
        if (bad.empty()) {
            // numerically cocircular corner case: fall back to the triangle
            // whose interior contains p
            for (int ti = 0; ti < static_cast<int>(tris.size()); ++ti) {
                const BwTriangle& t = tris[ti];
                if (!t.alive) continue;
                const double c1 = cross(verts[t.a], verts[t.b], p);
                const double c2 = cross(verts[t.b], verts[t.c], p);
                const double c3 = cross(verts[t.c], verts[t.a], p);
                if ((c1 >= -kEps && c2 >= -kEps && c3 >= -kEps) ||
                    (c1 <= kEps && c2 <= kEps && c3 <= kEps)) {
                    bad.push_back(ti);
                    break;
                }
            }
        }
        if (bad.empty()) {
            // last resort: the triangle whose circumcircle p is closest to
            // entering; every vertex must be inserted or the edge set would
            // not span the input
            int best = -1;
            double best_margin = std::numeric_limits<double>::infinity();
            for (int ti = 0; ti < static_cast<int>(tris.size()); ++ti) {
                const BwTriangle& t = tris[ti];
                if (!t.alive || !t.cc.ok) continue;
                const double dx = p.x - t.cc.cx, dy = p.y - t.cc.cy;
                const double margin = dx * dx + dy * dy - t.cc.r2;
                if (margin < best_margin) {
                    best_margin = margin;
                    best = ti;
                }
            }
            if (best < 0) continue;
            bad.push_back(best);
        }

        // cavity boundary: edges of bad triangles appearing exactly once
        boundary.clear();
        for (int ti : bad) {
            const BwTriangle& t = tris[ti];
            const std::pair<int, int> es[3] = {{t.a, t.b}, {t.b, t.c}, {t.c, t.a}};
            for (auto [a, b] : es) {
                const auto norm = std::minmax(a, b);
                const std::pair<int, int> key{norm.first, norm.second};
                auto it = std::find(boundary.begin(), boundary.end(), key);
                if (it == boundary.end()) boundary.push_back(key);
                else boundary.erase(it);
            }
            tris[ti].alive = false;
        }
        for (auto [a, b] : boundary) {
            tris.push_back({a, b, v, circumcircle(verts[a], verts[b], verts[v]), true});
        }
    }

    // strip super-triangle simplices and map back to original indices
    std::vector<std::pair<int, int>> edge_set;
    for (const BwTriangle& t : tris) {
        if (!t.alive || t.a >= s0 || t.b >= s0 || t.c >= s0) continue;
        const int oa = d.uniq[t.a], ob = d.uniq[t.b], oc = d.uniq[t.c];
        double r = t.cc.ok ? std::sqrt(t.cc.r2) : std::numeric_limits<double>::infinity();
        tri.triangles.push_back({oa, ob, oc, r});
        const std::pair<int, int> es[3] = {std::minmax(oa, ob), std::minmax(ob, oc),
                                           std::minmax(oc, oa)};
        for (auto e : es) edge_set.push_back(e);
    }
    std::sort(edge_set.begin(), edge_set.end());
    edge_set.erase(std::unique(edge_set.begin(), edge_set.end()), edge_set.end());

    tri.edges.vertex_count = tri.vertex_count;
    tri.edges.edges.reserve(edge_set.size());
    for (auto [a, b] : edge_set) tri.edges.edges.push_back({a, b, dist(points[a], points[b])});
    append_duplicate_links(points, d, tri.edges);
    return tri;
}

EdgeGraph delaunay_triangulate(const PointSet& points) { return delaunay_detail(points).edges; }

EdgeGraph minimum_spanning_tree(const PointSet& points, const Triangulation& tri) {
    const int n = static_cast<int>(points.size());
    if (n < 2) throw InsufficientPoints("minimum spanning tree requires at least 2 points");

    std::vector<Edge> candidates = tri.edges.edges;
    std::sort(candidates.begin(), candidates.end(), [&](const Edge& x, const Edge& y) {
        return edge_key(points, x) < edge_key(points, y);
    });

    EdgeGraph mst;
    mst.vertex_count = n;
    DisjointSet ds(n);
    for (const Edge& e : candidates) {
        if (ds.unite(e.a, e.b)) {
            mst.edges.push_back(e);
            if (static_cast<int>(mst.edges.size()) == n - 1) break;
        }
    }
    // A numerically degenerate triangulation can leave a vertex without
    // candidate edges; bridge the remaining components with their shortest
    // cross edges so the tree always spans the input.
    while (static_cast<int>(mst.edges.size()) < n - 1) {
        Edge bridge{-1, -1, std::numeric_limits<double>::infinity()};
        EdgeKey bridge_key{};
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (ds.find(i) == ds.find(j)) continue;
                const Edge cand{i, j, dist(points[i], points[j])};
                const EdgeKey key = edge_key(points, cand);
                if (bridge.a < 0 || key < bridge_key) {
                    bridge = cand;
                    bridge_key = key;
                }
            }
        }
        if (bridge.a < 0) throw Error("internal: cannot bridge point-set components");
        ds.unite(bridge.a, bridge.b);
        mst.edges.push_back(bridge);
    }
    return mst;
}

EdgeGraph minimum_spanning_tree(const PointSet& points) {
    const int n = static_cast<int>(points.size());
    if (n < 2) throw InsufficientPoints("minimum spanning tree requires at least 2 points");
    if (n == 2) {
        EdgeGraph g;
        g.vertex_count = 2;
        g.edges.push_back({0, 1, dist(points[0], points[1])});
        return g;
    }
    return minimum_spanning_tree(points, delaunay_detail(points));
}

double mst_diameter(const EdgeGraph& tree) {
    const int n = tree.vertex_count;
    if (n <= 0) throw InvalidInput("diameter of empty graph");
    if (static_cast<int>(tree.edges.size()) != n - 1)
        throw InvalidInput("diameter input is not a tree");
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    DisjointSet ds(n);
    for (const Edge& e : tree.edges) {
        adj[e.a].push_back({e.b, e.length});
        adj[e.b].push_back({e.a, e.length});
        ds.unite(e.a, e.b);
    }
    for (int i = 1; i < n; ++i) {
        if (ds.find(i) != ds.find(0)) throw InvalidInput("diameter input is disconnected");
    }

    // farthest-vertex double sweep; exact on trees with nonnegative weights
    std::vector<int> parent(n, -1);
    std::vector<double> edge_to_parent(n, 0.0);
    auto farthest = [&](int src) {
        std::vector<double> distv(n, -1.0);
        std::vector<int> stack{src};
        distv[src] = 0.0;
        parent.assign(n, -1);
        int best = src;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            if (distv[u] > distv[best]) best = u;
            for (auto [v, w] : adj[u]) {
                if (distv[v] < 0.0) {
                    distv[v] = distv[u] + w;
                    parent[v] = u;
                    edge_to_parent[v] = w;
                    stack.push_back(v);
                }
            }
        }
        return best;
    };
    const int far_a = farthest(0);
    const int far_b = farthest(far_a);

    // sum the path in sorted order so the value does not depend on which
    // end the sweep happened to start from
    std::vector<double> path;
    for (int v = far_b; parent[v] >= 0; v = parent[v]) path.push_back(edge_to_parent[v]);
    std::sort(path.begin(), path.end());
    double diameter = 0.0;
    for (double w : path) diameter += w;
    return diameter;
}

PolygonShape alpha_shape(const PointSet& points, double alpha, const Triangulation& tri) {
    if (alpha <= 0.0) throw InvalidInput("alpha must be positive");

    PolygonShape shape;
    // evaluate each triangle with canonically ordered vertices and sum the
    // terms in sorted order, so the result is independent of input order
    std::vector<double> area_terms;
    std::map<std::pair<int, int>, int> boundary_count;
    for (const Triangle& t : tri.triangles) {
        if (!(t.circumradius <= alpha)) continue;
        std::array<int, 3> v{t.a, t.b, t.c};
        std::sort(v.begin(), v.end(), [&](int i, int j) {
            return std::tie(points[i].x, points[i].y) < std::tie(points[j].x, points[j].y);
        });
        area_terms.push_back(std::fabs(cross(points[v[0]], points[v[1]], points[v[2]])) / 2.0);
        const std::pair<int, int> es[3] = {std::minmax(t.a, t.b), std::minmax(t.b, t.c),
                                           std::minmax(t.c, t.a)};
        for (auto e : es) boundary_count[e]++;
    }
    std::sort(area_terms.begin(), area_terms.end());
    double area = 0.0;
    for (double a : area_terms) area += a;

    std::vector<double> perim_terms;
    std::map<int, std::vector<int>> adj;  // boundary-edge adjacency
    for (const auto& [e, count] : boundary_count) {
        if (count != 1) continue;
        perim_terms.push_back(dist(points[e.first], points[e.second]));
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    }
    std::sort(perim_terms.begin(), perim_terms.end());
    double perim = 0.0;
    for (double p : perim_terms) perim += p;

    shape.area = area;
    shape.perimeter = perim;
    shape.degenerate = area <= 0.0;

    // assemble boundary edges into loops (greedy walk; ordered determinism
    // comes from the map ordering)
    std::map<std::pair<int, int>, bool> used;
    for (const auto& [e, count] : boundary_count) {
        if (count == 1) used[e] = false;
    }
    for (auto& [start_edge, consumed] : used) {
        if (consumed) continue;
        std::vector<int> loop{start_edge.first, start_edge.second};
        consumed = true;
        int prev = start_edge.first, cur = start_edge.second;
        while (cur != loop.front()) {
            int next = -1;
            for (int cand : adj[cur]) {
                if (cand == prev) continue;
                const auto key = std::minmax(cur, cand);
                auto it = used.find({key.first, key.second});
                if (it != used.end() && !it->second) {
                    next = cand;
                    it->second = true;
                    break;
                }
            }
            if (next < 0) break;  // open chain on a pinched boundary
            loop.push_back(next);
            prev = cur;
            cur = next;
        }
        if (loop.size() > 2 && loop.back() == loop.front()) loop.pop_back();
        shape.loops.push_back(std::move(loop));
    }
    return shape;
}

PolygonShape alpha_shape(const PointSet& points, double alpha) {
    if (points.size() < 3) throw InsufficientPoints("alpha shape requires at least 3 points");
    return alpha_shape(points, alpha, delaunay_detail(points));
}

PointSet hex_bin(const PointSet& points, int grid) {
    if (grid < 2) throw InvalidInput("hex-bin grid must be at least 2");
    if (points.empty()) return {};
    require_finite(points);

    const double cell = 1.0 / static_cast<double>(grid);
    auto center = [&](int i, int j) {
        const double off = (j % 2 == 0) ? 0.5 : 1.0;
        return Point{(static_cast<double>(i) + off) * cell,
                     (static_cast<double>(j) + 0.5) * cell};
    };

    struct Acc {
        double sx{0.0}, sy{0.0};
        int n{0};
    };
    std::map<std::pair<int, int>, Acc> cells;
    for (const Point& p : points) {
        const int j_guess = static_cast<int>(std::floor(p.y * grid - 0.5));
        int best_i = 0, best_j = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (int j = std::max(0, j_guess - 1); j <= std::min(grid - 1, j_guess + 2); ++j) {
            const double off = (j % 2 == 0) ? 0.5 : 1.0;
            const int i_guess = static_cast<int>(std::lround(p.x * grid - off));
            for (int i = std::max(0, i_guess - 1); i <= std::min(grid - 1, i_guess + 1); ++i) {
                const double d = dist2(p, center(i, j));
                if (d < best_d) {
                    best_d = d;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        Acc& acc = cells[{best_j, best_i}];
        acc.sx += p.x;
        acc.sy += p.y;
        acc.n += 1;
    }

    PointSet out;
    out.reserve(cells.size());
    for (const auto& [key, acc] : cells) {
        out.push_back({acc.sx / acc.n, acc.sy / acc.n});
    }
    return out;
}

}  // namespace scatgen
