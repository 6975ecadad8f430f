#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vortex/decimal.hpp"
#include "vortex/error.hpp"
#include "vortex/geometry.hpp"
#include "vortex/space.hpp"

namespace vortex {

struct Vertex {
    int id = 0;
    Vec2 position;
};

/// A filled 1-cycle: an ordered ring of at least three distinct vertices,
/// closing back on itself. `filled` is false only to model a hole carried
/// by the innermost cycle.
struct Cycle {
    std::vector<int> ring;
    bool filled = true;
};

/// Edge joining vertices on two non-intersecting filled 1-cycles.
struct BridgeEdge {
    int a = 0;
    int b = 0;
};

/// Nested filled 1-cycles (outermost first) with bridge edges. Plain data;
/// build_vortex is the validating constructor and tests may assemble raw
/// instances to exercise the checkers.
struct PlanarVortex {
    std::vector<Vertex> vertices;
    std::vector<Cycle> cycles;
    std::vector<BridgeEdge> bridges;

    const Vertex& vertex(int id) const {
        for (const auto& v : vertices)
            if (v.id == id) return v;
        throw Error(ErrorCode::UndeclaredVertex, "vertex id " + std::to_string(id));
    }

    bool has_vertex(int id) const {
        for (const auto& v : vertices)
            if (v.id == id) return true;
        return false;
    }

    /// Undirected edges of all cycles plus bridges, deduplicated.
    std::vector<std::pair<int, int>> edges() const {
        std::set<std::pair<int, int>> out;
        for (const auto& cycle : cycles) {
            const std::size_t m = cycle.ring.size();
            for (std::size_t i = 0; i < m; ++i) {
                int u = cycle.ring[i], v = cycle.ring[(i + 1) % m];
                out.emplace(std::min(u, v), std::max(u, v));
            }
        }
        for (const auto& bridge : bridges)
            out.emplace(std::min(bridge.a, bridge.b), std::max(bridge.a, bridge.b));
        return {out.begin(), out.end()};
    }

    std::vector<Vec2> ring_points(const Cycle& cycle) const {
        std::vector<Vec2> pts;
        pts.reserve(cycle.ring.size());
        for (int id : cycle.ring) pts.push_back(vertex(id).position);
        return pts;
    }
};

// ---------------------------------------------------------------------------
// Nesting
// ---------------------------------------------------------------------------

/// cl(inner) ⊂ Int(cl(outer)): every inner vertex strictly inside the
/// outer polygon and no inner edge touching an outer edge.
inline bool is_nested(const PlanarVortex& complex, const Cycle& outer, const Cycle& inner) {
    const auto outer_pts = complex.ring_points(outer);
    const auto inner_pts = complex.ring_points(inner);
    for (const auto& ring : {outer_pts, inner_pts})
        if (!geo::is_simple_polygon(ring) || geo::signed_area2(ring) == 0)
            throw Error(ErrorCode::Degenerate, "is_nested requires simple polygons with area");
    for (const auto& p : inner_pts)
        if (!geo::strictly_inside(p, outer_pts)) return false;
    const std::size_t mo = outer_pts.size(), mi = inner_pts.size();
    for (std::size_t i = 0; i < mi; ++i)
        for (std::size_t j = 0; j < mo; ++j)
            if (geo::segments_intersect(inner_pts[i], inner_pts[(i + 1) % mi],
                                        outer_pts[j], outer_pts[(j + 1) % mo]))
                return false;
    return true;
}

// ---------------------------------------------------------------------------
// CW conditions
// ---------------------------------------------------------------------------

struct CwViolationEntry {
    std::string kind;     // "closure" or "intersection"
    std::string detail;
};

struct CwReport {
    bool pass = true;
    std::vector<CwViolationEntry> violations;
};

/// Closure finiteness at this scale (every edge endpoint declared) plus
/// the Whitehead intersection condition: two distinct cells meet in a
/// common sub-cell or not at all. For edges that means sharing at most a
/// common endpoint; a vertex sitting in another edge's interior or two
/// edges crossing at a non-vertex point are violations.
inline CwReport check_cw_conditions(const PlanarVortex& complex) {
    CwReport report;
    const auto violation = [&](const std::string& kind, const std::string& detail) {
        report.pass = false;
        report.violations.push_back({kind, detail});
    };

    std::vector<std::pair<int, int>> declared_edges;
    for (const auto& cycle : complex.cycles) {
        const std::size_t m = cycle.ring.size();
        for (std::size_t i = 0; i < m; ++i)
            declared_edges.emplace_back(cycle.ring[i], cycle.ring[(i + 1) % m]);
    }
    for (const auto& bridge : complex.bridges) declared_edges.emplace_back(bridge.a, bridge.b);

    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : declared_edges) {
        if (!complex.has_vertex(u) || !complex.has_vertex(v)) {
            violation("closure", "edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                     ") references an undeclared vertex");
            continue;
        }
        if (u == v) {
            violation("intersection", "degenerate edge at vertex " + std::to_string(u));
            continue;
        }
        auto e = std::minmax(u, v);
        if (std::find(edges.begin(), edges.end(), std::pair<int, int>(e.first, e.second)) ==
            edges.end())
            edges.emplace_back(e.first, e.second);
    }

    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Vec2 a = complex.vertex(edges[i].first).position;
        const Vec2 b = complex.vertex(edges[i].second).position;
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const Vec2 c = complex.vertex(edges[j].first).position;
            const Vec2 d = complex.vertex(edges[j].second).position;
            const bool share_endpoint = edges[i].first == edges[j].first ||
                                        edges[i].first == edges[j].second ||
                                        edges[i].second == edges[j].first ||
                                        edges[i].second == edges[j].second;
            if (!geo::segments_intersect(a, b, c, d)) continue;
            if (share_endpoint) {
                // Allowed to meet exactly at the shared vertex; anything
                // more (collinear overlap, crossing through it) is not.
                const Vec2 shared = (edges[i].first == edges[j].first ||
                                     edges[i].first == edges[j].second)
                                        ? a : b;
                const Vec2 other_i = shared == a ? b : a;
                const Vec2 other_j = (c == shared) ? d : c;
                if (geo::on_segment(other_i, c, d) || geo::on_segment(other_j, a, b))
                    violation("intersection",
                              "edges (" + std::to_string(edges[i].first) + "," +
                                  std::to_string(edges[i].second) + ") and (" +
                                  std::to_string(edges[j].first) + "," +
                                  std::to_string(edges[j].second) + ") overlap");
            } else {
                violation("intersection",
                          "edges (" + std::to_string(edges[i].first) + "," +
                              std::to_string(edges[i].second) + ") and (" +
                              std::to_string(edges[j].first) + "," +
                              std::to_string(edges[j].second) +
                              ") meet outside a common vertex");
            }
        }
        for (const auto& v : complex.vertices) {
            if (v.id == edges[i].first || v.id == edges[i].second) continue;
            if (geo::on_segment(v.position, a, b))
                violation("intersection", "vertex " + std::to_string(v.id) +
                                              " lies inside edge (" +
                                              std::to_string(edges[i].first) + "," +
                                              std::to_string(edges[i].second) + ")");
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Validating constructor
// ---------------------------------------------------------------------------

namespace detail {

/// Canonical cycle storage: counterclockwise, minimal vertex id first.
inline void canonicalize_cycle(const PlanarVortex& complex, Cycle& cycle) {
    if (geo::signed_area2(complex.ring_points(cycle)) < 0)
        std::reverse(cycle.ring.begin(), cycle.ring.end());
    auto min_it = std::min_element(cycle.ring.begin(), cycle.ring.end());
    std::rotate(cycle.ring.begin(), min_it, cycle.ring.end());
}

inline bool rings_share_vertex(const Cycle& a, const Cycle& b) {
    for (int u : a.ring)
        for (int v : b.ring)
            if (u == v) return true;
    return false;
}

} // namespace detail

/// Validates and canonicalizes a planar vortex. Throws Error with the
/// violated invariant's code: NOT_NESTED, NOT_SIMPLE, DISCONNECTED,
/// DEGENERATE, plus structural codes for malformed input.
inline PlanarVortex build_vortex(std::vector<Vertex> vertices, std::vector<Cycle> cycles,
                                 std::vector<BridgeEdge> bridges) {
    PlanarVortex complex{std::move(vertices), std::move(cycles), std::move(bridges)};

    std::set<int> ids;
    std::set<std::pair<std::int64_t, std::int64_t>> positions;
    for (const auto& v : complex.vertices) {
        if (!ids.insert(v.id).second)
            throw Error(ErrorCode::DuplicateVertex, "duplicate vertex id " + std::to_string(v.id));
        if (!positions.insert({v.position.x, v.position.y}).second)
            throw Error(ErrorCode::DuplicateVertex,
                        "vertices share position (vertex " + std::to_string(v.id) + ")");
    }

    if (complex.cycles.size() < 2)
        throw Error(ErrorCode::TooFewCycles, "a vortex needs at least 2 cycles");

    for (std::size_t ci = 0; ci < complex.cycles.size(); ++ci) {
        auto& cycle = complex.cycles[ci];
        const std::string label = "cycle " + std::to_string(ci);
        if (cycle.ring.size() < 3)
            throw Error(ErrorCode::Degenerate, label + " has fewer than 3 vertices");
        std::set<int> seen;
        for (int id : cycle.ring) {
            if (!ids.count(id))
                throw Error(ErrorCode::UndeclaredVertex,
                            label + " references undeclared vertex " + std::to_string(id));
            if (!seen.insert(id).second)
                throw Error(ErrorCode::NotSimple, label + " repeats vertex " + std::to_string(id));
        }
        const auto pts = complex.ring_points(cycle);
        if (geo::signed_area2(pts) == 0)
            throw Error(ErrorCode::Degenerate, label + " has empty interior");
        if (!geo::is_simple_polygon(pts))
            throw Error(ErrorCode::NotSimple, label + " is self-crossing");
        detail::canonicalize_cycle(complex, cycle);
    }

    // Adjacent cycles (consecutive in nesting order) either share a vertex
    // or the inner one is strictly nested in the outer.
    for (std::size_t i = 0; i + 1 < complex.cycles.size(); ++i) {
        const auto& outer = complex.cycles[i];
        const auto& inner = complex.cycles[i + 1];
        if (detail::rings_share_vertex(outer, inner)) continue;
        if (!is_nested(complex, outer, inner))
            throw Error(ErrorCode::NotNested,
                        "cycle " + std::to_string(i + 1) + " is not nested inside cycle " +
                            std::to_string(i));
        bool bridged = false;
        for (const auto& bridge : complex.bridges) {
            const bool a_on_outer = std::count(outer.ring.begin(), outer.ring.end(), bridge.a);
            const bool a_on_inner = std::count(inner.ring.begin(), inner.ring.end(), bridge.a);
            const bool b_on_outer = std::count(outer.ring.begin(), outer.ring.end(), bridge.b);
            const bool b_on_inner = std::count(inner.ring.begin(), inner.ring.end(), bridge.b);
            if ((a_on_outer && b_on_inner) || (a_on_inner && b_on_outer)) { bridged = true; break; }
        }
        if (!bridged)
            throw Error(ErrorCode::Disconnected,
                        "adjacent non-intersecting cycles " + std::to_string(i) + " and " +
                            std::to_string(i + 1) + " have no bridge edge");
    }

    for (const auto& bridge : complex.bridges) {
        if (!ids.count(bridge.a) || !ids.count(bridge.b))
            throw Error(ErrorCode::UndeclaredVertex, "bridge references an undeclared vertex");
        if (bridge.a == bridge.b)
            throw Error(ErrorCode::BadBridge, "bridge endpoints coincide");
        bool valid = false;
        for (std::size_t i = 0; i < complex.cycles.size() && !valid; ++i)
            for (std::size_t j = 0; j < complex.cycles.size() && !valid; ++j) {
                if (i == j) continue;
                const auto& ci = complex.cycles[i];
                const auto& cj = complex.cycles[j];
                if (std::count(ci.ring.begin(), ci.ring.end(), bridge.a) &&
                    std::count(cj.ring.begin(), cj.ring.end(), bridge.b) &&
                    !detail::rings_share_vertex(ci, cj))
                    valid = true;
            }
        if (!valid)
            throw Error(ErrorCode::BadBridge,
                        "bridge (" + std::to_string(bridge.a) + ", " + std::to_string(bridge.b) +
                            ") does not join two non-intersecting cycles");
    }

    // Path-connectivity of the union graph, and no stranded vertices.
    {
        std::map<int, std::vector<int>> graph;
        for (const auto& v : complex.vertices) graph[v.id];
        for (auto [u, v] : complex.edges()) {
            graph[u].push_back(v);
            graph[v].push_back(u);
        }
        std::set<int> visited;
        std::vector<int> queue{complex.vertices.front().id};
        visited.insert(queue.front());
        while (!queue.empty()) {
            int u = queue.back();
            queue.pop_back();
            for (int v : graph[u])
                if (visited.insert(v).second) queue.push_back(v);
        }
        if (visited.size() != complex.vertices.size())
            throw Error(ErrorCode::Disconnected, "union graph is not path-connected");
    }

    const CwReport cw = check_cw_conditions(complex);
    if (!cw.pass)
        throw Error(ErrorCode::CwViolation, cw.violations.front().kind + ": " +
                                                cw.violations.front().detail);

    return complex;
}

// ---------------------------------------------------------------------------
// Queries and conversions
// ---------------------------------------------------------------------------

/// A hole is modelled as the innermost cycle left unfilled.
inline bool has_hole(const PlanarVortex& complex) {
    return !complex.cycles.empty() && !complex.cycles.back().filled;
}

/// Vertex ids in the order they map to space points (ascending id).
inline std::vector<int> vertex_order(const PlanarVortex& complex) {
    std::vector<int> order;
    order.reserve(complex.vertices.size());
    for (const auto& v : complex.vertices) order.push_back(v.id);
    std::sort(order.begin(), order.end());
    return order;
}

/// Proximity space of the complex: points are vertices (ascending id
/// order), nearness is equality, cycle adjacency, or a bridge.
inline ProximitySpace vortex_to_space(const PlanarVortex& complex,
                                      std::optional<ProbeMap> probe = std::nullopt) {
    const auto order = vertex_order(complex);
    std::map<int, int> point_of;
    for (std::size_t i = 0; i < order.size(); ++i) point_of[order[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> pairs;
    for (auto [u, v] : complex.edges()) pairs.emplace_back(point_of.at(u), point_of.at(v));
    return ProximitySpace(static_cast<int>(order.size()), pairs, std::move(probe));
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

/// Deterministic SVG 1.1 drawing: cycles outermost first, then bridges,
/// then vertex circles by ascending id. Identical input yields identical
/// bytes.
inline std::string render_svg(const PlanarVortex& complex, const DecimalGrid& grid = {}) {
    std::int64_t min_x = INT64_MAX, min_y = INT64_MAX, max_x = INT64_MIN, max_y = INT64_MIN;
    for (const auto& v : complex.vertices) {
        min_x = std::min(min_x, v.position.x);
        min_y = std::min(min_y, v.position.y);
        max_x = std::max(max_x, v.position.x);
        max_y = std::max(max_y, v.position.y);
    }
    const std::int64_t extent = std::max<std::int64_t>(
        1, std::max(max_x - min_x, max_y - min_y));
    const std::int64_t margin = std::max<std::int64_t>(1, extent * 5 / 100);
    const std::int64_t radius = std::max<std::int64_t>(1, extent * 3 / 200);

    const auto dec = [&](std::int64_t ticks) { return format_decimal(ticks, grid); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"";
    svg += dec(min_x - margin) + " " + dec(min_y - margin) + " ";
    svg += dec(max_x - min_x + 2 * margin) + " " + dec(max_y - min_y + 2 * margin) + "\">\n";

    static constexpr const char* kFills[] = {"#b5d9a8", "#d4d4d4", "#efe6b0", "#c4d4ef"};
    for (std::size_t i = 0; i < complex.cycles.size(); ++i) {
        const auto& cycle = complex.cycles[i];
        svg += "  <polygon points=\"";
        for (std::size_t j = 0; j < cycle.ring.size(); ++j) {
            const Vec2 p = complex.vertex(cycle.ring[j]).position;
            if (j) svg += ' ';
            svg += dec(p.x) + "," + dec(p.y);
        }
        const char* fill = cycle.filled ? kFills[i % 4] : "#ffffff";
        svg += std::string("\" fill=\"") + fill + "\" stroke=\"black\" stroke-width=\"" +
               dec(std::max<std::int64_t>(1, extent / 200)) + "\"/>\n";
    }
    for (const auto& bridge : complex.bridges) {
        const Vec2 a = complex.vertex(bridge.a).position;
        const Vec2 b = complex.vertex(bridge.b).position;
        svg += "  <line x1=\"" + dec(a.x) + "\" y1=\"" + dec(a.y) + "\" x2=\"" + dec(b.x) +
               "\" y2=\"" + dec(b.y) + "\" stroke=\"black\" stroke-width=\"" +
               dec(std::max<std::int64_t>(1, extent / 200)) + "\"/>\n";
    }
    std::vector<const Vertex*> by_id;
    for (const auto& v : complex.vertices) by_id.push_back(&v);
    std::sort(by_id.begin(), by_id.end(),
              [](const Vertex* a, const Vertex* b) { return a->id < b->id; });
    for (const Vertex* v : by_id)
        svg += "  <circle cx=\"" + dec(v->position.x) + "\" cy=\"" + dec(v->position.y) +
               "\" r=\"" + dec(radius) + "\" fill=\"white\" stroke=\"black\"/>\n";
    svg += "</svg>\n";
    return svg;
}

} // namespace vortex
