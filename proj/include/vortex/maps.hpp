#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vortex/error.hpp"
#include "vortex/space.hpp"
#include "vortex/subset.hpp"

namespace vortex {

/// Total function between ground sets, extended elementwise to subsets.
class PointMap {
public:
    PointMap(int domain_size, int codomain_size, std::vector<int> table)
        : domain_(domain_size), codomain_(codomain_size), table_(std::move(table)) {
        if (static_cast<int>(table_.size()) != domain_)
            throw Error(ErrorCode::LengthMismatch, "map table size != domain size");
        for (int v : table_)
            if (v < 0 || v >= codomain_)
                throw Error(ErrorCode::SchemaViolation, "map image outside the codomain");
    }

    static PointMap identity(int n) {
        std::vector<int> t(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = i;
        return PointMap(n, n, std::move(t));
    }

    int domain_size() const { return domain_; }
    int codomain_size() const { return codomain_; }
    int operator()(int point) const { return table_.at(static_cast<std::size_t>(point)); }
    const std::vector<int>& table() const { return table_; }

    bool is_self_map() const { return domain_ == codomain_; }

    bool is_bijection() const {
        if (domain_ != codomain_) return false;
        std::vector<bool> hit(static_cast<std::size_t>(codomain_), false);
        for (int v : table_) {
            if (hit[static_cast<std::size_t>(v)]) return false;
            hit[static_cast<std::size_t>(v)] = true;
        }
        return true;
    }

    PointMap inverse() const {
        if (!is_bijection())
            throw Error(ErrorCode::SchemaViolation, "inverse of a non-bijective map");
        std::vector<int> inv(static_cast<std::size_t>(domain_));
        for (int i = 0; i < domain_; ++i) inv[static_cast<std::size_t>(table_[static_cast<std::size_t>(i)])] = i;
        return PointMap(codomain_, domain_, std::move(inv));
    }

    /// f(A) = { f(a) : a ∈ A }.
    Subset image(Subset a) const {
        Subset out = 0;
        while (a) {
            int p = std::countr_zero(a);
            a &= a - 1;
            out |= Subset{1} << table_[static_cast<std::size_t>(p)];
        }
        return out;
    }

    friend bool operator==(const PointMap&, const PointMap&) = default;
};

/// outer ∘ inner.
inline PointMap compose(const PointMap& outer, const PointMap& inner) {
    if (inner.codomain_size() != outer.domain_size())
        throw Error(ErrorCode::SizeMismatch, "compose: codomain/domain mismatch");
    std::vector<int> t(static_cast<std::size_t>(inner.domain_size()));
    for (int i = 0; i < inner.domain_size(); ++i) t[static_cast<std::size_t>(i)] = outer(inner(i));
    return PointMap(inner.domain_size(), outer.codomain_size(), std::move(t));
}

// ---------------------------------------------------------------------------
// Continuity
// ---------------------------------------------------------------------------

/// Point-level proximal continuity: near(a, b) must force
/// near(f(a), f(b)). Under lifted relations this is equivalent to the
/// subset-pair condition; returns the violating pair if any.
inline std::optional<std::pair<int, int>> proximal_continuity_witness(
    const PointMap& f, const ProximitySpace& domain, const ProximitySpace& codomain) {
    if (f.domain_size() != domain.size() || f.codomain_size() != codomain.size())
        throw Error(ErrorCode::SizeMismatch, "map does not fit the given spaces");
    for (int a = 0; a < domain.size(); ++a)
        for (int b = a + 1; b < domain.size(); ++b)
            if (domain.near(a, b) && !codomain.near(f(a), f(b))) return std::make_pair(a, b);
    return std::nullopt;
}

inline bool is_proximal_continuous(const PointMap& f, const ProximitySpace& domain,
                                   const ProximitySpace& codomain) {
    return !proximal_continuity_witness(f, domain, codomain).has_value();
}

/// Point-level descriptive continuity: Φ1(a) = Φ1(b) must force
/// Φ2(f(a)) = Φ2(f(b)). The spatial relation plays no part.
inline std::optional<std::pair<int, int>> descriptive_continuity_witness(
    const PointMap& f, const ProximitySpace& domain, const ProximitySpace& codomain) {
    if (f.domain_size() != domain.size() || f.codomain_size() != codomain.size())
        throw Error(ErrorCode::SizeMismatch, "map does not fit the given spaces");
    const ProbeMap& p1 = domain.probe();
    const ProbeMap& p2 = codomain.probe();
    for (int a = 0; a < domain.size(); ++a)
        for (int b = a + 1; b < domain.size(); ++b)
            if (p1.class_of(a) == p1.class_of(b) && p2.class_of(f(a)) != p2.class_of(f(b)))
                return std::make_pair(a, b);
    return std::nullopt;
}

inline bool is_descriptive_continuous(const PointMap& f, const ProximitySpace& domain,
                                      const ProximitySpace& codomain) {
    return !descriptive_continuity_witness(f, domain, codomain).has_value();
}

struct ContinuityReport {
    std::string mode;                              // "proximal" or "descriptive"
    bool pointwise_pass = true;
    std::optional<std::pair<int, int>> pointwise_witness;
    bool oracle_ran = false;
    bool oracle_pass = true;
    std::optional<std::pair<Subset, Subset>> oracle_witness;
    bool pass = true;
};

namespace detail {

/// Per-subset images and nearness masks by subset DP; shared by the
/// exhaustive oracles.
inline std::vector<Subset> image_table(const PointMap& f, int n) {
    std::vector<Subset> img(std::size_t{1} << n, 0);
    for (Subset a = 1; a < img.size(); ++a)
        img[a] = img[a & (a - 1)] | (Subset{1} << f(std::countr_zero(a)));
    return img;
}

inline std::vector<Subset> neighborhood_table(const ProximitySpace& space) {
    std::vector<Subset> nbr(std::size_t{1} << space.size(), 0);
    for (Subset a = 1; a < nbr.size(); ++a)
        nbr[a] = nbr[a & (a - 1)] | space.adjacency(std::countr_zero(a));
    return nbr;
}

inline std::vector<Subset> class_mask_table(const ProximitySpace& space) {
    const ProbeMap& probe = space.probe();
    std::vector<Subset> cm(std::size_t{1} << space.size(), 0);
    for (Subset a = 1; a < cm.size(); ++a)
        cm[a] = cm[a & (a - 1)] | (Subset{1} << probe.class_of(std::countr_zero(a)));
    return cm;
}

} // namespace detail

/// Report-producing check. The exhaustive subset-pair oracle runs when
/// the ground set is inside the enumeration cap and must agree with the
/// point-level verdict.
inline ContinuityReport check_proximal_continuity(const PointMap& f,
                                                  const ProximitySpace& domain,
                                                  const ProximitySpace& codomain) {
    ContinuityReport report;
    report.mode = "proximal";
    report.pointwise_witness = proximal_continuity_witness(f, domain, codomain);
    report.pointwise_pass = !report.pointwise_witness.has_value();
    if (domain.size() <= EnumerationCap::get()) {
        report.oracle_ran = true;
        const auto img = detail::image_table(f, domain.size());
        const auto nbr1 = detail::neighborhood_table(domain);
        const auto nbr2 = detail::neighborhood_table(codomain);
        const Subset all = full_subset(domain.size());
        for (Subset a = 1; a <= all && report.oracle_pass; ++a) {
            for (Subset b = 1; ; ++b) {
                if ((nbr1[a] & b) && !(nbr2[img[a]] & img[b])) {
                    report.oracle_pass = false;
                    report.oracle_witness = std::make_pair(a, b);
                    break;
                }
                if (b == all) break;
            }
            if (a == all) break;
        }
    }
    report.pass = report.pointwise_pass && report.oracle_pass;
    return report;
}

inline ContinuityReport check_descriptive_continuity(const PointMap& f,
                                                     const ProximitySpace& domain,
                                                     const ProximitySpace& codomain) {
    ContinuityReport report;
    report.mode = "descriptive";
    report.pointwise_witness = descriptive_continuity_witness(f, domain, codomain);
    report.pointwise_pass = !report.pointwise_witness.has_value();
    if (domain.size() <= EnumerationCap::get()) {
        report.oracle_ran = true;
        const auto img = detail::image_table(f, domain.size());
        const auto cm1 = detail::class_mask_table(domain);
        const auto cm2 = detail::class_mask_table(codomain);
        const Subset all = full_subset(domain.size());
        for (Subset a = 1; a <= all && report.oracle_pass; ++a) {
            for (Subset b = 1; ; ++b) {
                if ((cm1[a] & cm1[b]) && !(cm2[img[a]] & cm2[img[b]])) {
                    report.oracle_pass = false;
                    report.oracle_witness = std::make_pair(a, b);
                    break;
                }
                if (b == all) break;
            }
            if (a == all) break;
        }
    }
    report.pass = report.pointwise_pass && report.oracle_pass;
    return report;
}

// ---------------------------------------------------------------------------
// Isomorphisms
// ---------------------------------------------------------------------------

enum class MapMode { Proximal, Descriptive };

struct IsomorphismReport {
    MapMode mode = MapMode::Proximal;
    bool bijective = false;
    bool forward_pass = false;
    std::optional<std::pair<int, int>> forward_witness;
    bool inverse_pass = false;
    std::optional<std::pair<int, int>> inverse_witness;
    bool pass = false;
};

/// h is an isomorphism when it is a bijection that is continuous in the
/// given mode together with its inverse.
inline IsomorphismReport check_isomorphism(const PointMap& h, const ProximitySpace& domain,
                                           const ProximitySpace& codomain, MapMode mode) {
    IsomorphismReport report;
    report.mode = mode;
    if (domain.size() != codomain.size())
        throw Error(ErrorCode::SizeMismatch, "isomorphism needs equal ground sizes");
    report.bijective = h.is_bijection();
    if (!report.bijective) return report;
    const PointMap h_inv = h.inverse();
    if (mode == MapMode::Proximal) {
        report.forward_witness = proximal_continuity_witness(h, domain, codomain);
        report.inverse_witness = proximal_continuity_witness(h_inv, codomain, domain);
    } else {
        report.forward_witness = descriptive_continuity_witness(h, domain, codomain);
        report.inverse_witness = descriptive_continuity_witness(h_inv, codomain, domain);
    }
    report.forward_pass = !report.forward_witness.has_value();
    report.inverse_pass = !report.inverse_witness.has_value();
    report.pass = report.forward_pass && report.inverse_pass;
    return report;
}

inline bool is_isomorphism(const PointMap& h, const ProximitySpace& domain,
                           const ProximitySpace& codomain, MapMode mode) {
    if (domain.size() != codomain.size() || !h.is_bijection()) return false;
    const PointMap h_inv = h.inverse();
    if (mode == MapMode::Proximal)
        return is_proximal_continuous(h, domain, codomain) &&
               is_proximal_continuous(h_inv, codomain, domain);
    return is_descriptive_continuous(h, domain, codomain) &&
           is_descriptive_continuous(h_inv, codomain, domain);
}

// ---------------------------------------------------------------------------
// Descriptively invariant sets
// ---------------------------------------------------------------------------

/// Φ(f(A)) ⊆ Φ(A).
inline bool is_desc_invariant(const PointMap& f, const ProximitySpace& space, Subset a) {
    if (!f.is_self_map() || f.domain_size() != space.size())
        throw Error(ErrorCode::SizeMismatch, "is_desc_invariant needs a self-map on the space");
    space.check_subset(a, "is_desc_invariant");
    const ProbeMap& probe = space.probe();
    return (probe.class_mask(f.image(a)) & ~probe.class_mask(a)) == 0;
}

struct InvarianceClosureReport {
    bool applicable = true;   // false when some input set is not invariant
    std::optional<Subset> inapplicable_witness;
    bool pass = true;
    std::vector<std::pair<std::string, Subset>> failures; // kind, witness set
};

/// For a family of descriptively invariant sets, their union, their
/// intersection, and each descriptive closure must be invariant again.
/// Failures indicate an implementation bug; the report carries witnesses.
inline InvarianceClosureReport invariance_closure_properties(const PointMap& f,
                                                             const ProximitySpace& space,
                                                             const std::vector<Subset>& family) {
    InvarianceClosureReport report;
    for (Subset a : family)
        if (!is_desc_invariant(f, space, a)) {
            report.applicable = false;
            report.inapplicable_witness = a;
            return report;
        }
    if (family.empty()) return report;

    Subset union_all = 0;
    Subset inter_all = full_subset(space.size());
    for (Subset a : family) {
        union_all |= a;
        inter_all &= a;
    }
    if (!is_desc_invariant(f, space, union_all)) {
        report.pass = false;
        report.failures.emplace_back("union", union_all);
    }
    if (!is_desc_invariant(f, space, inter_all)) {
        report.pass = false;
        report.failures.emplace_back("intersection", inter_all);
    }
    for (Subset a : family) {
        const Subset closure = desc_closure(space, a);
        if (!is_desc_invariant(f, space, closure)) {
            report.pass = false;
            report.failures.emplace_back("closure", closure);
        }
    }
    return report;
}

} // namespace vortex
