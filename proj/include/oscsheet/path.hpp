#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "common.hpp"
#include "errors.hpp"

namespace oscsheet {

/// Polyline in a complex parameter plane: a base point, a list of vertices,
/// and an optional implicit closing segment back to the base.
struct PathSpec {
    cplx base{};
    std::vector<cplx> vertices;
    bool closed{false};

    PathSpec() = default;
    PathSpec(cplx base_, std::vector<cplx> vertices_, bool closed_)
        : base(base_), vertices(std::move(vertices_)), closed(closed_) {
        if (vertices.empty())
            throw path_error("PathSpec: at least one vertex is required");
    }

    // All waypoints in traversal order, including the base at the front and,
    // for closed paths, again at the back.
    std::vector<cplx> polyline() const {
        std::vector<cplx> pts;
        pts.reserve(vertices.size() + 2);
        pts.push_back(base);
        pts.insert(pts.end(), vertices.begin(), vertices.end());
        if (closed) pts.push_back(base);
        return pts;
    }

    double length() const {
        const auto pts = polyline();
        double len = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) len += std::abs(pts[i + 1] - pts[i]);
        return len;
    }
};

/// Closed polygonal approximation of a circle, based at center + radius.
/// orientation +1 is anticlockwise, -1 clockwise.
inline PathSpec circle_path(cplx center, double radius, int segments, int orientation) {
    if (!(radius > 0.0)) throw path_error("circle_path: radius must be positive");
    if (segments < 16) throw path_error("circle_path: need at least 16 segments");
    if (orientation != 1 && orientation != -1)
        throw path_error("circle_path: orientation must be +1 or -1");
    std::vector<cplx> verts;
    verts.reserve(static_cast<std::size_t>(segments) - 1);
    for (int k = 1; k < segments; ++k) {
        const double theta = 2.0 * pi * orientation * k / segments;
        verts.push_back(center + std::polar(radius, theta));
    }
    return PathSpec{center + radius, std::move(verts), true};
}

/// Same waypoints in the opposite traversal order.  For closed paths the
/// base is kept; for open paths the old endpoint becomes the new base.
inline PathSpec reversed(const PathSpec& p) {
    if (p.closed) {
        std::vector<cplx> verts(p.vertices.rbegin(), p.vertices.rend());
        return PathSpec{p.base, std::move(verts), true};
    }
    std::vector<cplx> verts;
    verts.reserve(p.vertices.size());
    for (std::size_t i = p.vertices.size(); i-- > 1;) verts.push_back(p.vertices[i - 1]);
    verts.push_back(p.base);
    return PathSpec{p.vertices.back(), std::move(verts), false};
}

/// Concatenation of two closed loops sharing a base point: traverse a, then b.
inline PathSpec concat_loops(const PathSpec& a, const PathSpec& b) {
    if (!a.closed || !b.closed)
        throw path_error("concat_loops: both paths must be closed");
    if (std::abs(a.base - b.base) > 1e-12 * (1.0 + std::abs(a.base)))
        throw path_error("concat_loops: loops must share a base point");
    std::vector<cplx> verts = a.vertices;
    verts.push_back(a.base);
    verts.insert(verts.end(), b.vertices.begin(), b.vertices.end());
    return PathSpec{a.base, std::move(verts), true};
}

/// Distance from point p to the segment [a, b].
inline double point_segment_distance(cplx a, cplx b, cplx p) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a) * std::conj(d)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

/// Smallest distance between any point of the path and p.
inline double path_clearance(const PathSpec& path, cplx p) {
    const auto pts = path.polyline();
    double best = std::abs(pts.front() - p);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        best = std::min(best, point_segment_distance(pts[i], pts[i + 1], p));
    return best;
}

} // namespace oscsheet
