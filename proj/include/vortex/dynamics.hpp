#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vortex/complex.hpp"
#include "vortex/error.hpp"
#include "vortex/maps.hpp"
#include "vortex/space.hpp"
#include "vortex/subset.hpp"

namespace vortex {

/// f^n(A), with f^0(A) = A.
inline Subset iterate(const PointMap& f, Subset a, int n) {
    if (!f.is_self_map()) throw Error(ErrorCode::SizeMismatch, "iterate needs a self-map");
    if (n < 0) throw Error(ErrorCode::SchemaViolation, "iterate needs n >= 0");
    Subset out = a;
    for (int i = 0; i < n; ++i) out = f.image(out);
    return out;
}

/// Eventually periodic subset trajectory: trajectory[i+1] = f(trajectory[i])
/// and trajectory[preperiod + period] == trajectory[preperiod], the first
/// repeat. Always closes since subset dynamics are finite.
struct OrbitRecord {
    Subset seed = 0;
    int preperiod = 0;
    int period = 1;
    std::vector<Subset> trajectory;
};

inline OrbitRecord orbit(const PointMap& f, Subset a) {
    if (!f.is_self_map()) throw Error(ErrorCode::SizeMismatch, "orbit needs a self-map");
    EnumerationCap::require(f.domain_size(), "orbit");
    OrbitRecord record;
    record.seed = a;
    std::map<Subset, int> seen;
    Subset current = a;
    while (true) {
        auto [it, inserted] = seen.emplace(current, static_cast<int>(record.trajectory.size()));
        record.trajectory.push_back(current);
        if (!inserted) {
            record.preperiod = it->second;
            record.period = static_cast<int>(record.trajectory.size()) - 1 - it->second;
            break;
        }
        current = f.image(current);
    }
    return record;
}

// ---------------------------------------------------------------------------
// Fixed-subset classification
// ---------------------------------------------------------------------------

enum class FixedTag { FixedDesc, EventuallyFixedDesc, AlmostFixedDesc, None };

constexpr std::string_view fixed_tag_name(FixedTag tag) {
    switch (tag) {
        case FixedTag::FixedDesc: return "FIXED_DESC";
        case FixedTag::EventuallyFixedDesc: return "EVENTUALLY_FIXED_DESC";
        case FixedTag::AlmostFixedDesc: return "ALMOST_FIXED_DESC";
        case FixedTag::None: return "NONE";
    }
    return "NONE";
}

/// Strongest applicable descriptive tag plus a point-fix flag.
///   FIXED_DESC             Φ(f(A)) = Φ(A)
///   EVENTUALLY_FIXED_DESC  first n > 1 with Φ(f^n(A)) = Φ(A), not fixed
///   ALMOST_FIXED_DESC      A δ_Φ f(A), neither of the above
/// The search bound for the eventual case is preperiod + period of the
/// subset orbit, which is exact.
struct FixedClass {
    FixedTag tag = FixedTag::None;
    std::optional<int> witness_n;      // iteration index for the eventual tag
    bool point_fixed = false;          // ∃ a ∈ A with f(a) = a
    std::optional<int> point_witness;

    friend bool operator==(const FixedClass&, const FixedClass&) = default;
};

inline FixedClass classify_fixed(const PointMap& f, const ProximitySpace& space, Subset a) {
    if (!f.is_self_map() || f.domain_size() != space.size())
        throw Error(ErrorCode::SizeMismatch, "classify_fixed needs a self-map on the space");
    space.check_subset(a, "classify_fixed");
    const ProbeMap& probe = space.probe();

    FixedClass out;
    for (Subset rest = a; rest; rest &= rest - 1) {
        const int p = std::countr_zero(rest);
        if (f(p) == p) {
            out.point_fixed = true;
            out.point_witness = p;
            break;
        }
    }
    if (a == 0) return out;

    const Subset classes_a = probe.class_mask(a);
    if (probe.class_mask(f.image(a)) == classes_a) {
        out.tag = FixedTag::FixedDesc;
        return out;
    }
    const OrbitRecord record = orbit(f, a);
    const int bound = record.preperiod + record.period;
    Subset current = f.image(a);
    for (int n = 2; n <= bound; ++n) {
        current = f.image(current);
        if (probe.class_mask(current) == classes_a) {
            out.tag = FixedTag::EventuallyFixedDesc;
            out.witness_n = n;
            return out;
        }
    }
    if (probe.class_mask(f.image(a)) & classes_a) {
        out.tag = FixedTag::AlmostFixedDesc;
        return out;
    }
    return out;
}

/// Exhaustive classification of every nonempty subset, ascending bitmask
/// order, optionally filtered by tag.
inline std::vector<std::pair<Subset, FixedClass>> scan_fixed_subsets(
    const PointMap& f, const ProximitySpace& space,
    std::optional<std::vector<FixedTag>> filter = std::nullopt) {
    EnumerationCap::require(space.size(), "scan_fixed_subsets");
    std::vector<std::pair<Subset, FixedClass>> out;
    const Subset all = full_subset(space.size());
    for (Subset a = 1; ; ++a) {
        FixedClass cls = classify_fixed(f, space, a);
        bool keep = true;
        if (filter) {
            keep = false;
            for (FixedTag t : *filter) keep = keep || t == cls.tag;
        }
        if (keep) out.emplace_back(a, cls);
        if (a == all) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fixed-point evidence on vortex spaces
// ---------------------------------------------------------------------------

enum class FixedPointOutcome { Inapplicable, Consistent, CombinatorialCounterexample };

constexpr std::string_view fixed_point_outcome_label(FixedPointOutcome o) {
    switch (o) {
        case FixedPointOutcome::Inapplicable: return "INAPPLICABLE";
        case FixedPointOutcome::Consistent: return "CONSISTENT";
        case FixedPointOutcome::CombinatorialCounterexample:
            return "COUNTEREXAMPLE-AT-COMBINATORIAL-LEVEL";
    }
    return "INAPPLICABLE";
}

struct VortexFixedPointReport {
    bool applicable = false;
    std::optional<std::pair<int, int>> continuity_witness; // space point indices
    std::vector<int> fixed_vertices;                       // vertex ids, ascending
    std::vector<Subset> exact_fixed_subsets;               // f(A) = A, nonempty
    std::optional<int> desc_fixed_count;                   // when probed
    FixedPointOutcome outcome = FixedPointOutcome::Inapplicable;
    std::string note;
};

/// Evidence for the fixed-point property of proximal continuous self-maps
/// on a vortex. The map acts on vortex_to_space(v) point indices (vertices
/// in ascending id order). A continuous map with no fixed vertex is
/// labelled a combinatorial-level counterexample: the property's
/// justification passes through affine geometric realizations, which this
/// combinatorial model does not carry.
inline VortexFixedPointReport vortex_fixed_point_check(
    const PlanarVortex& complex, const PointMap& f,
    std::optional<ProbeMap> probe = std::nullopt) {
    VortexFixedPointReport report;
    const ProximitySpace space = vortex_to_space(complex, std::move(probe));
    if (!f.is_self_map() || f.domain_size() != space.size())
        throw Error(ErrorCode::SizeMismatch, "map does not act on the vortex space");

    report.continuity_witness = proximal_continuity_witness(f, space, space);
    if (report.continuity_witness) {
        report.outcome = FixedPointOutcome::Inapplicable;
        report.note = "map is not proximal continuous";
        return report;
    }
    report.applicable = true;

    const auto order = vertex_order(complex);
    for (int p = 0; p < space.size(); ++p)
        if (f(p) == p) report.fixed_vertices.push_back(order[static_cast<std::size_t>(p)]);

    if (space.size() <= EnumerationCap::get()) {
        const Subset all = full_subset(space.size());
        for (Subset a = 1; ; ++a) {
            if (f.image(a) == a) report.exact_fixed_subsets.push_back(a);
            if (a == all) break;
        }
        if (space.has_probe()) {
            int count = 0;
            for (Subset a = 1; ; ++a) {
                if (space.probe().class_mask(f.image(a)) == space.probe().class_mask(a)) ++count;
                if (a == all) break;
            }
            report.desc_fixed_count = count;
        }
    }

    if (!report.fixed_vertices.empty()) {
        report.outcome = FixedPointOutcome::Consistent;
        report.note = "fixed vertex found";
    } else {
        report.outcome = FixedPointOutcome::CombinatorialCounterexample;
        report.note =
            "proximal continuous self-map with no fixed vertex; the fixed-point "
            "property relies on affine geometric realization, which the "
            "combinatorial model does not capture";
    }
    return report;
}

} // namespace vortex
