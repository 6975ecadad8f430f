#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "vortex/error.hpp"

namespace vortex {

/// Planar point in quantized grid ticks. All predicates below are exact:
/// products go through __int128, so there is no epsilon anywhere.
struct Vec2 {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

namespace geo {

using i128 = __int128;

/// Sign of the cross product (b - a) x (c - a): +1 left turn, -1 right
/// turn, 0 collinear.
inline int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
    const i128 v = i128(b.x - a.x) * (c.y - a.y) - i128(b.y - a.y) * (c.x - a.x);
    return v > 0 ? 1 : v < 0 ? -1 : 0;
}

/// Whether p lies on the closed segment [a, b].
inline bool on_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
    if (orientation(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

/// Whether closed segments [a,b] and [c,d] share at least one point.
inline bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const int o1 = orientation(a, b, c);
    const int o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a);
    const int o4 = orientation(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(c, a, b)) return true;
    if (o2 == 0 && on_segment(d, a, b)) return true;
    if (o3 == 0 && on_segment(a, c, d)) return true;
    if (o4 == 0 && on_segment(b, c, d)) return true;
    return false;
}

/// Twice the signed area of a ring (positive = counterclockwise).
inline i128 signed_area2(const std::vector<Vec2>& ring) {
    i128 area = 0;
    const std::size_t m = ring.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2& p = ring[i];
        const Vec2& q = ring[(i + 1) % m];
        area += i128(p.x) * q.y - i128(q.x) * p.y;
    }
    return area;
}

/// Simple-polygon test: non-adjacent edges must be disjoint, adjacent
/// edges may share exactly their common vertex (no collinear spikes).
inline bool is_simple_polygon(const std::vector<Vec2>& ring) {
    const std::size_t m = ring.size();
    if (m < 3) return false;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (ring[i] == ring[j]) return false;
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2& a = ring[i];
        const Vec2& b = ring[(i + 1) % m];
        for (std::size_t j = i + 1; j < m; ++j) {
            const Vec2& c = ring[j];
            const Vec2& d = ring[(j + 1) % m];
            const bool adjacent = (j == i + 1) || (i == 0 && j == m - 1);
            if (adjacent) {
                // Shared endpoint only; a spike folds back onto the edge.
                const Vec2& shared = (j == i + 1) ? b : a;
                const Vec2& e1 = (j == i + 1) ? a : b;
                const Vec2& e2 = (j == i + 1) ? d : c;
                if (orientation(e1, shared, e2) == 0 &&
                    (on_segment(e2, e1, shared) || on_segment(e1, e2, shared)))
                    return false;
            } else if (segments_intersect(a, b, c, d)) {
                return false;
            }
        }
    }
    return true;
}

/// Whether p lies on the boundary of the ring.
inline bool on_polygon_boundary(const Vec2& p, const std::vector<Vec2>& ring) {
    const std::size_t m = ring.size();
    for (std::size_t i = 0; i < m; ++i)
        if (on_segment(p, ring[i], ring[(i + 1) % m])) return true;
    return false;
}

/// Strict interior test by exact even-odd ray casting. Boundary points
/// are not interior, matching strict nesting.
inline bool strictly_inside(const Vec2& p, const std::vector<Vec2>& ring) {
    if (on_polygon_boundary(p, ring)) return false;
    const std::size_t m = ring.size();
    bool inside = false;
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2& a = ring[i];
        const Vec2& b = ring[(i + 1) % m];
        if ((a.y > p.y) != (b.y > p.y)) {
            // Edge crosses the horizontal through p; exact test whether the
            // crossing is strictly to the right of p.
            const i128 det = i128(b.x - a.x) * (p.y - a.y) - i128(b.y - a.y) * (p.x - a.x);
            if (b.y > a.y ? det > 0 : det < 0) inside = !inside;
        }
    }
    return inside;
}

} // namespace geo
} // namespace vortex
