#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vortex/complex.hpp"
#include "vortex/decimal.hpp"
#include "vortex/error.hpp"
#include "vortex/group.hpp"
#include "vortex/maps.hpp"
#include "vortex/space.hpp"

namespace vortex {

struct ProbeDef {
    int dim = 1;
    std::vector<std::vector<std::int64_t>> rows; // ticks
};

struct SpaceDef {
    std::optional<int> n;                        // direct definition
    std::vector<std::pair<int, int>> edges;
    std::optional<std::string> complex_ref;      // or derived from a complex
    std::optional<std::string> probe_ref;
};

struct ComplexDef {
    std::vector<Vertex> vertices;
    std::vector<Cycle> cycles;
    std::vector<BridgeEdge> bridges;
    std::optional<std::string> probe_ref;
};

struct MapDef {
    std::string space;
    std::optional<std::string> codomain;  // defaults to `space`
    std::vector<int> table;
};

struct GroupDef {
    std::string complex;
    std::vector<int> basis;
    std::optional<int> base;
};

/// A parsed and cross-checked workspace file. Named spaces, probes,
/// complexes, maps and group bases; resolution builds the immutable
/// library objects on demand.
class Workspace {
public:
    DecimalGrid grid;
    std::map<std::string, ProbeDef> probes;
    std::map<std::string, SpaceDef> spaces;
    std::map<std::string, ComplexDef> complexes;
    std::map<std::string, MapDef> maps;
    std::map<std::string, GroupDef> groups;

    const SpaceDef& space_def(const std::string& name) const {
        auto it = spaces.find(name);
        if (it == spaces.end()) throw Error(ErrorCode::UnknownName, "no space named '" + name + "'");
        return it->second;
    }

    const MapDef& map_def(const std::string& name) const {
        auto it = maps.find(name);
        if (it == maps.end()) throw Error(ErrorCode::UnknownName, "no map named '" + name + "'");
        return it->second;
    }

    const ComplexDef& complex_def(const std::string& name) const {
        auto it = complexes.find(name);
        if (it == complexes.end())
            throw Error(ErrorCode::UnknownName, "no complex named '" + name + "'");
        return it->second;
    }

    const GroupDef& group_def(const std::string& name) const {
        auto it = groups.find(name);
        if (it == groups.end()) throw Error(ErrorCode::UnknownName, "no group named '" + name + "'");
        return it->second;
    }

    int space_size(const std::string& name) const {
        const SpaceDef& def = space_def(name);
        if (def.n) return *def.n;
        return static_cast<int>(complex_def(*def.complex_ref).vertices.size());
    }

    std::optional<ProbeMap> resolve_probe(const std::optional<std::string>& ref,
                                          int expected_size) const {
        if (!ref) return std::nullopt;
        auto it = probes.find(*ref);
        if (it == probes.end())
            throw Error(ErrorCode::DanglingReference, "no probe named '" + *ref + "'");
        const ProbeDef& def = it->second;
        if (static_cast<int>(def.rows.size()) != expected_size)
            throw Error(ErrorCode::LengthMismatch,
                        "probe '" + *ref + "' has " + std::to_string(def.rows.size()) +
                            " rows, expected " + std::to_string(expected_size));
        std::vector<FeatureVector> rows;
        rows.reserve(def.rows.size());
        for (const auto& r : def.rows) rows.push_back(FeatureVector{r});
        return ProbeMap(def.dim, std::move(rows));
    }

    /// Validating build of a named complex; throws the structured
    /// rejection when an invariant is violated.
    PlanarVortex build_complex(const std::string& name) const {
        const ComplexDef& def = complex_def(name);
        return build_vortex(def.vertices, def.cycles, def.bridges);
    }

    ProximitySpace space(const std::string& name) const {
        const SpaceDef& def = space_def(name);
        if (def.complex_ref) {
            const PlanarVortex complex = build_complex(*def.complex_ref);
            const auto probe_ref =
                def.probe_ref ? def.probe_ref : complex_def(*def.complex_ref).probe_ref;
            return vortex_to_space(
                complex, resolve_probe(probe_ref, static_cast<int>(complex.vertices.size())));
        }
        return ProximitySpace(*def.n, def.edges, resolve_probe(def.probe_ref, *def.n));
    }

    PointMap map(const std::string& name) const {
        const MapDef& def = map_def(name);
        const int n_from = space_size(def.space);
        const int n_to = space_size(def.codomain.value_or(def.space));
        return PointMap(n_from, n_to, def.table);
    }

    VortexGroup group(const std::string& name) const {
        const GroupDef& def = group_def(name);
        const PlanarVortex complex = build_complex(def.complex);
        return vortex_group(complex, GeneratorBasis{def.basis}, def.base);
    }
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

using json = nlohmann::json;

inline void require_keys(const json& obj, const std::string& path,
                         const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw Error(ErrorCode::SchemaViolation, path + ": unknown key '" + it.key() + "'");
}

inline std::int64_t parse_coordinate(const json& value, const std::string& path,
                                     const DecimalGrid& grid) {
    if (value.is_string()) return parse_decimal(value.get<std::string>(), grid);
    if (value.is_number_integer())
        return parse_decimal(std::to_string(value.get<std::int64_t>()), grid);
    throw Error(ErrorCode::SchemaViolation,
                path + ": expected a decimal string or integer");
}

inline int parse_int(const json& value, const std::string& path) {
    if (!value.is_number_integer())
        throw Error(ErrorCode::SchemaViolation, path + ": expected an integer");
    return value.get<int>();
}

} // namespace detail

/// Parses and cross-validates a workspace JSON document. Diagnostics name
/// the offending path and the violated invariant; syntax errors keep the
/// parser's line/column message.
inline Workspace parse_workspace(const std::string& text) {
    using detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SchemaViolation, e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::SchemaViolation, "top level must be an object");
    detail::require_keys(doc, "$",
                         {"quantum", "spaces", "probes", "complexes", "maps", "groups"});

    Workspace ws;
    if (doc.contains("quantum")) {
        const json& q = doc["quantum"];
        if (!q.is_string())
            throw Error(ErrorCode::SchemaViolation, "quantum: expected a decimal string");
        const std::string s = q.get<std::string>();
        int scale = 0;
        if (s == "1") {
            scale = 0;
        } else if (s.rfind("0.", 0) == 0 && s.size() >= 3 && s.back() == '1' &&
                   s.find_first_not_of('0', 2) == s.size() - 1) {
            scale = static_cast<int>(s.size()) - 2;
        } else {
            throw Error(ErrorCode::SchemaViolation,
                        "quantum must be a power of ten like \"0.000001\"");
        }
        if (scale > 12)
            throw Error(ErrorCode::QuantizationOverflow, "quantum finer than 10^-12");
        ws.grid.scale = scale;
    }

    if (doc.contains("probes")) {
        for (auto it = doc["probes"].begin(); it != doc["probes"].end(); ++it) {
            const std::string path = "probes." + it.key();
            const json& p = it.value();
            detail::require_keys(p, path, {"dim", "values"});
            ProbeDef def;
            if (!p.contains("dim") || !p.contains("values"))
                throw Error(ErrorCode::SchemaViolation, path + ": needs 'dim' and 'values'");
            def.dim = detail::parse_int(p["dim"], path + ".dim");
            if (def.dim < 1)
                throw Error(ErrorCode::SchemaViolation, path + ".dim: must be >= 1");
            for (std::size_t i = 0; i < p["values"].size(); ++i) {
                const json& row = p["values"][i];
                const std::string row_path = path + ".values[" + std::to_string(i) + "]";
                if (!row.is_array() || static_cast<int>(row.size()) != def.dim)
                    throw Error(ErrorCode::SchemaViolation,
                                row_path + ": expected " + std::to_string(def.dim) + " components");
                std::vector<std::int64_t> ticks;
                for (const auto& c : row) ticks.push_back(detail::parse_coordinate(c, row_path, ws.grid));
                def.rows.push_back(std::move(ticks));
            }
            ws.probes.emplace(it.key(), std::move(def));
        }
    }

    if (doc.contains("complexes")) {
        for (auto it = doc["complexes"].begin(); it != doc["complexes"].end(); ++it) {
            const std::string path = "complexes." + it.key();
            const json& c = it.value();
            detail::require_keys(c, path, {"vertices", "cycles", "bridges", "probe"});
            ComplexDef def;
            std::set<int> vertex_ids;
            if (!c.contains("vertices") || !c.contains("cycles"))
                throw Error(ErrorCode::SchemaViolation, path + ": needs 'vertices' and 'cycles'");
            for (std::size_t i = 0; i < c["vertices"].size(); ++i) {
                const json& v = c["vertices"][i];
                const std::string vp = path + ".vertices[" + std::to_string(i) + "]";
                detail::require_keys(v, vp, {"id", "x", "y"});
                Vertex vertex;
                vertex.id = detail::parse_int(v.at("id"), vp + ".id");
                vertex.position.x = detail::parse_coordinate(v.at("x"), vp + ".x", ws.grid);
                vertex.position.y = detail::parse_coordinate(v.at("y"), vp + ".y", ws.grid);
                if (!vertex_ids.insert(vertex.id).second)
                    throw Error(ErrorCode::DuplicateVertex,
                                vp + ": duplicate vertex id " + std::to_string(vertex.id));
                def.vertices.push_back(vertex);
            }
            for (std::size_t i = 0; i < c["cycles"].size(); ++i) {
                const json& cy = c["cycles"][i];
                const std::string cp = path + ".cycles[" + std::to_string(i) + "]";
                detail::require_keys(cy, cp, {"ring", "filled"});
                Cycle cycle;
                if (!cy.contains("ring") || !cy["ring"].is_array())
                    throw Error(ErrorCode::SchemaViolation, cp + ": needs a 'ring' array");
                for (const auto& idj : cy["ring"]) {
                    const int id = detail::parse_int(idj, cp + ".ring");
                    if (!vertex_ids.count(id))
                        throw Error(ErrorCode::DanglingReference,
                                    cp + ".ring: undeclared vertex " + std::to_string(id));
                    cycle.ring.push_back(id);
                }
                cycle.filled = cy.value("filled", true);
                def.cycles.push_back(std::move(cycle));
            }
            if (c.contains("bridges"))
                for (std::size_t i = 0; i < c["bridges"].size(); ++i) {
                    const json& b = c["bridges"][i];
                    const std::string bp = path + ".bridges[" + std::to_string(i) + "]";
                    if (!b.is_array() || b.size() != 2)
                        throw Error(ErrorCode::SchemaViolation, bp + ": expected [a, b]");
                    BridgeEdge bridge{detail::parse_int(b[0], bp), detail::parse_int(b[1], bp)};
                    for (int id : {bridge.a, bridge.b})
                        if (!vertex_ids.count(id))
                            throw Error(ErrorCode::DanglingReference,
                                        bp + ": undeclared vertex " + std::to_string(id));
                    def.bridges.push_back(bridge);
                }
            if (c.contains("probe")) def.probe_ref = c["probe"].get<std::string>();
            ws.complexes.emplace(it.key(), std::move(def));
        }
    }

    if (doc.contains("spaces")) {
        for (auto it = doc["spaces"].begin(); it != doc["spaces"].end(); ++it) {
            const std::string path = "spaces." + it.key();
            const json& s = it.value();
            detail::require_keys(s, path, {"n", "edges", "complex", "probe"});
            SpaceDef def;
            if (s.contains("complex")) {
                def.complex_ref = s["complex"].get<std::string>();
                if (!ws.complexes.count(*def.complex_ref))
                    throw Error(ErrorCode::DanglingReference,
                                path + ".complex: no complex named '" + *def.complex_ref + "'");
                if (s.contains("n") || s.contains("edges"))
                    throw Error(ErrorCode::SchemaViolation,
                                path + ": 'complex' excludes 'n' and 'edges'");
            } else {
                if (!s.contains("n"))
                    throw Error(ErrorCode::SchemaViolation, path + ": needs 'n' or 'complex'");
                def.n = detail::parse_int(s["n"], path + ".n");
                if (*def.n < 1 || *def.n > 64)
                    throw Error(ErrorCode::SchemaViolation, path + ".n: must be in [1, 64]");
                if (s.contains("edges"))
                    for (std::size_t i = 0; i < s["edges"].size(); ++i) {
                        const json& e = s["edges"][i];
                        const std::string ep = path + ".edges[" + std::to_string(i) + "]";
                        if (!e.is_array() || e.size() != 2)
                            throw Error(ErrorCode::SchemaViolation, ep + ": expected [a, b]");
                        const int a = detail::parse_int(e[0], ep);
                        const int b = detail::parse_int(e[1], ep);
                        if (a < 0 || a >= *def.n || b < 0 || b >= *def.n)
                            throw Error(ErrorCode::SchemaViolation,
                                        ep + ": point outside the ground set");
                        def.edges.emplace_back(a, b);
                    }
            }
            if (s.contains("probe")) {
                def.probe_ref = s["probe"].get<std::string>();
                if (!ws.probes.count(*def.probe_ref))
                    throw Error(ErrorCode::DanglingReference,
                                path + ".probe: no probe named '" + *def.probe_ref + "'");
            }
            ws.spaces.emplace(it.key(), std::move(def));
        }
    }

    // Complex probe references checked after probes are loaded.
    for (const auto& [name, def] : ws.complexes)
        if (def.probe_ref && !ws.probes.count(*def.probe_ref))
            throw Error(ErrorCode::DanglingReference,
                        "complexes." + name + ".probe: no probe named '" + *def.probe_ref + "'");

    if (doc.contains("maps")) {
        for (auto it = doc["maps"].begin(); it != doc["maps"].end(); ++it) {
            const std::string path = "maps." + it.key();
            const json& m = it.value();
            detail::require_keys(m, path, {"space", "codomain", "table"});
            MapDef def;
            if (!m.contains("space") || !m.contains("table"))
                throw Error(ErrorCode::SchemaViolation, path + ": needs 'space' and 'table'");
            def.space = m["space"].get<std::string>();
            if (!ws.spaces.count(def.space))
                throw Error(ErrorCode::DanglingReference,
                            path + ".space: no space named '" + def.space + "'");
            if (m.contains("codomain")) {
                def.codomain = m["codomain"].get<std::string>();
                if (!ws.spaces.count(*def.codomain))
                    throw Error(ErrorCode::DanglingReference,
                                path + ".codomain: no space named '" + *def.codomain + "'");
            }
            for (const auto& v : m["table"]) def.table.push_back(detail::parse_int(v, path + ".table"));
            const int n_from = ws.space_size(def.space);
            const int n_to = ws.space_size(def.codomain.value_or(def.space));
            if (static_cast<int>(def.table.size()) != n_from)
                throw Error(ErrorCode::LengthMismatch,
                            path + ".table: " + std::to_string(def.table.size()) +
                                " entries for a " + std::to_string(n_from) + "-point space");
            for (int v : def.table)
                if (v < 0 || v >= n_to)
                    throw Error(ErrorCode::SchemaViolation,
                                path + ".table: image " + std::to_string(v) +
                                    " outside the codomain");
            ws.maps.emplace(it.key(), std::move(def));
        }
    }

    if (doc.contains("groups")) {
        for (auto it = doc["groups"].begin(); it != doc["groups"].end(); ++it) {
            const std::string path = "groups." + it.key();
            const json& g = it.value();
            detail::require_keys(g, path, {"complex", "basis", "base"});
            GroupDef def;
            if (!g.contains("complex") || !g.contains("basis"))
                throw Error(ErrorCode::SchemaViolation, path + ": needs 'complex' and 'basis'");
            def.complex = g["complex"].get<std::string>();
            if (!ws.complexes.count(def.complex))
                throw Error(ErrorCode::DanglingReference,
                            path + ".complex: no complex named '" + def.complex + "'");
            for (const auto& v : g["basis"]) def.basis.push_back(detail::parse_int(v, path + ".basis"));
            if (def.basis.empty())
                throw Error(ErrorCode::SchemaViolation, path + ".basis: must be nonempty");
            if (g.contains("base")) def.base = detail::parse_int(g["base"], path + ".base");
            ws.groups.emplace(it.key(), std::move(def));
        }
    }

    return ws;
}

// ---------------------------------------------------------------------------
// Serialization (canonical: sorted names, canonical decimals)
// ---------------------------------------------------------------------------

inline std::string serialize_workspace(const Workspace& ws) {
    using detail::json;
    json doc = json::object();
    doc["quantum"] = format_decimal(1, ws.grid);

    if (!ws.probes.empty()) {
        json probes = json::object();
        for (const auto& [name, def] : ws.probes) {
            json rows = json::array();
            for (const auto& row : def.rows) {
                json r = json::array();
                for (std::int64_t t : row) r.push_back(format_decimal(t, ws.grid));
                rows.push_back(std::move(r));
            }
            probes[name] = {{"dim", def.dim}, {"values", std::move(rows)}};
        }
        doc["probes"] = std::move(probes);
    }
    if (!ws.spaces.empty()) {
        json spaces = json::object();
        for (const auto& [name, def] : ws.spaces) {
            json s = json::object();
            if (def.complex_ref) {
                s["complex"] = *def.complex_ref;
            } else {
                s["n"] = *def.n;
                json edges = json::array();
                for (auto [a, b] : def.edges) edges.push_back(json::array({a, b}));
                s["edges"] = std::move(edges);
            }
            if (def.probe_ref) s["probe"] = *def.probe_ref;
            spaces[name] = std::move(s);
        }
        doc["spaces"] = std::move(spaces);
    }
    if (!ws.complexes.empty()) {
        json complexes = json::object();
        for (const auto& [name, def] : ws.complexes) {
            json vertices = json::array();
            for (const auto& v : def.vertices)
                vertices.push_back({{"id", v.id},
                                    {"x", format_decimal(v.position.x, ws.grid)},
                                    {"y", format_decimal(v.position.y, ws.grid)}});
            json cycles = json::array();
            for (const auto& c : def.cycles)
                cycles.push_back({{"ring", c.ring}, {"filled", c.filled}});
            json bridges = json::array();
            for (const auto& b : def.bridges) bridges.push_back(json::array({b.a, b.b}));
            json c = {{"vertices", std::move(vertices)},
                      {"cycles", std::move(cycles)},
                      {"bridges", std::move(bridges)}};
            if (def.probe_ref) c["probe"] = *def.probe_ref;
            complexes[name] = std::move(c);
        }
        doc["complexes"] = std::move(complexes);
    }
    if (!ws.maps.empty()) {
        json maps = json::object();
        for (const auto& [name, def] : ws.maps) {
            json m = {{"space", def.space}, {"table", def.table}};
            if (def.codomain) m["codomain"] = *def.codomain;
            maps[name] = std::move(m);
        }
        doc["maps"] = std::move(maps);
    }
    if (!ws.groups.empty()) {
        json groups = json::object();
        for (const auto& [name, def] : ws.groups) {
            json g = {{"complex", def.complex}, {"basis", def.basis}};
            if (def.base) g["base"] = *def.base;
            groups[name] = std::move(g);
        }
        doc["groups"] = std::move(groups);
    }
    return doc.dump(2) + "\n";
}

} // namespace vortex
