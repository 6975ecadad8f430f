#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vortex/dynamics.hpp"
#include "vortex/error.hpp"
#include "vortex/maps.hpp"
#include "vortex/space.hpp"

namespace vortex {

/// The four grades of conjugacy between self-map systems (X, f), (Y, g):
///   Exact            g∘h = h∘f pointwise
///   Descriptive      Φ2(g∘h(A)) = Φ2(h∘f(A)) for every nonempty A
///   Weak             g∘h(A) δ2 h∘f(A) for every nonempty A
///   WeakDescriptive  g∘h(A) δ_Φ2 h∘f(A) for every nonempty A
/// The empty set is excluded from the quantification: every nearness
/// predicate on it is false by (P.0)/(dP.0).
enum class ConjMode { Exact, Descriptive, Weak, WeakDescriptive };

constexpr std::string_view conj_mode_name(ConjMode m) {
    switch (m) {
        case ConjMode::Exact: return "EXACT";
        case ConjMode::Descriptive: return "DESCRIPTIVE";
        case ConjMode::Weak: return "WEAK";
        case ConjMode::WeakDescriptive: return "WEAK_DESCRIPTIVE";
    }
    return "EXACT";
}

constexpr MapMode conj_map_mode(ConjMode m) {
    return (m == ConjMode::Exact || m == ConjMode::Weak) ? MapMode::Proximal
                                                         : MapMode::Descriptive;
}

struct ConjugacyOptions {
    int sample_size = 256;    // pseudo-random subsets when not exhaustive
    std::uint64_t seed = 0;
};

namespace detail {

/// Nonempty subsets to quantify over: all of them inside the enumeration
/// cap, otherwise all singletons, the full set, and a seeded sample.
inline std::vector<Subset> subset_samples(int n, const ConjugacyOptions& opts, bool& exhaustive) {
    std::vector<Subset> out;
    if (n <= EnumerationCap::get()) {
        exhaustive = true;
        const Subset all = full_subset(n);
        out.reserve(static_cast<std::size_t>(all));
        for (Subset a = 1; ; ++a) {
            out.push_back(a);
            if (a == all) break;
        }
        return out;
    }
    exhaustive = false;
    for (int i = 0; i < n; ++i) out.push_back(Subset{1} << i);
    out.push_back(full_subset(n));
    std::mt19937_64 rng(opts.seed);
    for (int i = 0; i < opts.sample_size; ++i) {
        Subset a = 0;
        for (int b = 0; b < n; ++b)
            if (rng() & 1) a |= Subset{1} << b;
        if (a) out.push_back(a);
    }
    return out;
}

inline bool mode_continuous(const PointMap& f, const ProximitySpace& space, ConjMode mode) {
    return conj_map_mode(mode) == MapMode::Proximal
               ? is_proximal_continuous(f, space, space)
               : is_descriptive_continuous(f, space, space);
}

/// One instance of the defining condition for a subset A.
inline bool conj_condition(const PointMap& f, const PointMap& g, const PointMap& h,
                           const ProximitySpace& codomain, ConjMode mode, Subset a) {
    const Subset lhs = g.image(h.image(a));
    const Subset rhs = h.image(f.image(a));
    switch (mode) {
        case ConjMode::Exact: return lhs == rhs;
        case ConjMode::Descriptive:
            return codomain.probe().class_mask(lhs) == codomain.probe().class_mask(rhs);
        case ConjMode::Weak: return set_near(codomain, lhs, rhs);
        case ConjMode::WeakDescriptive: return desc_near(codomain, lhs, rhs);
    }
    return false;
}

} // namespace detail

struct ConjugacyCertificate {
    PointMap h;
    ConjMode mode = ConjMode::Exact;
    bool applicable = false;   // false: h not an isomorphism or f/g not mode-continuous
    std::string reason;
    bool pass = false;
    std::optional<Subset> witness;  // first failing A
    bool exhaustive = false;
    int checked_n = 1;              // iteration depth verified so far

    // Weak modes: the inverse-direction condition f∘h⁻¹(C) vs h⁻¹∘g(C),
    // recorded alongside the defining one.
    std::optional<bool> backward_pass;
    std::optional<Subset> backward_witness;
    // Weak modes on probed spaces: nonempty descriptive-intersection
    // witnesses g∘h(A) ∩_Φ h∘f(A).
    std::vector<std::pair<Subset, Subset>> desc_intersection_witnesses;

    // Descriptive mode: the two commuting-diagram identities
    // Φ1(f(A)) = Φ1(h⁻¹gh(A)) and Φ2(g(C)) = Φ2(hfh⁻¹(C)).
    std::optional<bool> diagrams_pass;
    std::optional<Subset> diagram_witness;
};

/// Checks whether h certifies the given grade of conjugacy from (X, f)
/// to (Y, g). Requires h to be an isomorphism in the matching mode and
/// f, g to be continuous self-maps in that mode; otherwise the verdict
/// is inapplicable rather than failed.
inline ConjugacyCertificate verify_conjugacy(const PointMap& f, const PointMap& g,
                                             const PointMap& h, const ProximitySpace& domain,
                                             const ProximitySpace& codomain, ConjMode mode,
                                             const ConjugacyOptions& opts = {}) {
    if (!f.is_self_map() || f.domain_size() != domain.size())
        throw Error(ErrorCode::SizeMismatch, "f must be a self-map on the domain space");
    if (!g.is_self_map() || g.domain_size() != codomain.size())
        throw Error(ErrorCode::SizeMismatch, "g must be a self-map on the codomain space");
    if (h.domain_size() != domain.size() || h.codomain_size() != codomain.size())
        throw Error(ErrorCode::SizeMismatch, "h must map the domain space to the codomain space");

    ConjugacyCertificate cert{h};
    cert.mode = mode;

    if (domain.size() != codomain.size() || !h.is_bijection()) {
        cert.reason = "NOT_BIJECTIVE";
        return cert;
    }
    const MapMode map_mode = conj_map_mode(mode);
    if (!is_isomorphism(h, domain, codomain, map_mode)) {
        cert.reason = map_mode == MapMode::Proximal ? "h is not a proximal isomorphism"
                                                    : "h is not a descriptive isomorphism";
        return cert;
    }
    if (!detail::mode_continuous(f, domain, mode)) {
        cert.reason = "f is not continuous in the required mode";
        return cert;
    }
    if (!detail::mode_continuous(g, codomain, mode)) {
        cert.reason = "g is not continuous in the required mode";
        return cert;
    }
    cert.applicable = true;
    cert.pass = true;

    if (mode == ConjMode::Exact) {
        cert.exhaustive = true;
        for (int x = 0; x < domain.size(); ++x)
            if (g(h(x)) != h(f(x))) {
                cert.pass = false;
                cert.witness = Subset{1} << x;
                break;
            }
    } else {
        const auto samples = detail::subset_samples(domain.size(), opts, cert.exhaustive);
        for (Subset a : samples)
            if (!detail::conj_condition(f, g, h, codomain, mode, a)) {
                cert.pass = false;
                cert.witness = a;
                break;
            }
    }

    const PointMap h_inv = h.inverse();

    if (mode == ConjMode::Weak || mode == ConjMode::WeakDescriptive) {
        bool exhaustive_back = false;
        const auto samples = detail::subset_samples(codomain.size(), opts, exhaustive_back);
        cert.backward_pass = true;
        for (Subset c : samples) {
            const Subset lhs = f.image(h_inv.image(c));
            const Subset rhs = h_inv.image(g.image(c));
            const bool ok = mode == ConjMode::Weak ? set_near(domain, lhs, rhs)
                                                   : desc_near(domain, lhs, rhs);
            if (!ok) {
                cert.backward_pass = false;
                cert.backward_witness = c;
                break;
            }
        }
        if (codomain.has_probe()) {
            bool exhaustive_fwd = false;
            const auto fwd = detail::subset_samples(domain.size(), opts, exhaustive_fwd);
            for (Subset a : fwd) {
                const Subset w = desc_intersection(codomain, g.image(h.image(a)),
                                                   h.image(f.image(a)));
                if (w && cert.desc_intersection_witnesses.size() < 8)
                    cert.desc_intersection_witnesses.emplace_back(a, w);
            }
        }
    }

    if (mode == ConjMode::Descriptive && cert.pass) {
        cert.diagrams_pass = true;
        bool exhaustive_fwd = false;
        const auto fwd = detail::subset_samples(domain.size(), opts, exhaustive_fwd);
        for (Subset a : fwd) {
            const Subset lhs = f.image(a);
            const Subset rhs = h_inv.image(g.image(h.image(a)));
            if (domain.probe().class_mask(lhs) != domain.probe().class_mask(rhs)) {
                cert.diagrams_pass = false;
                cert.diagram_witness = a;
                break;
            }
        }
        if (*cert.diagrams_pass) {
            bool exhaustive_back = false;
            const auto back = detail::subset_samples(codomain.size(), opts, exhaustive_back);
            for (Subset c : back) {
                const Subset lhs = g.image(c);
                const Subset rhs = h.image(f.image(h_inv.image(c)));
                if (codomain.probe().class_mask(lhs) != codomain.probe().class_mask(rhs)) {
                    cert.diagrams_pass = false;
                    cert.diagram_witness = c;
                    break;
                }
            }
        }
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Iterate transfer
// ---------------------------------------------------------------------------

struct TransferIteratesReport {
    bool pass = true;
    std::optional<Subset> witness_subset;
    std::optional<int> witness_n;
    bool exhaustive = false;
    int subsets_checked = 0;
};

/// Checks the iterate identity of the given mode for 1 <= n <= depth:
///   Exact            h(f^n(A)) = g^n(h(A))
///   Descriptive      h(f^n(A)) =_des g^n(h(A))
///   Weak / WeakDesc  h(f^n(A)) δ2 / δ_Φ2 g^n(h(A))
/// For a verified exact or descriptive certificate this must pass; the
/// weak grades are checked, not assumed.
inline TransferIteratesReport transfer_iterates(const PointMap& f, const PointMap& g,
                                                const PointMap& h, const ProximitySpace& domain,
                                                const ProximitySpace& codomain, ConjMode mode,
                                                int depth, const ConjugacyOptions& opts = {}) {
    TransferIteratesReport report;
    const auto samples = detail::subset_samples(domain.size(), opts, report.exhaustive);
    for (Subset a : samples) {
        ++report.subsets_checked;
        Subset fa = a;
        Subset ga = h.image(a);
        for (int n = 1; n <= depth; ++n) {
            fa = f.image(fa);
            ga = g.image(ga);
            const Subset lhs = h.image(fa);
            bool ok = false;
            switch (mode) {
                case ConjMode::Exact: ok = lhs == ga; break;
                case ConjMode::Descriptive:
                    ok = codomain.probe().class_mask(lhs) == codomain.probe().class_mask(ga);
                    break;
                case ConjMode::Weak: ok = set_near(codomain, lhs, ga); break;
                case ConjMode::WeakDescriptive: ok = desc_near(codomain, lhs, ga); break;
            }
            if (!ok) {
                report.pass = false;
                report.witness_subset = a;
                report.witness_n = n;
                return report;
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Fixed-subset transfer
// ---------------------------------------------------------------------------

struct FixedTransferMismatch {
    Subset subset = 0;
    FixedClass under_f;
    FixedClass under_g;
};

struct FixedTransferReport {
    bool pass = true;
    std::vector<FixedTransferMismatch> mismatches;  // first few
    std::map<std::string, int> tag_counts_f;
    std::map<std::string, int> tag_counts_g;
    bool counts_equal = true;
};

/// Under a descriptive conjugacy h, every nonempty A must carry the same
/// descriptive fixed-subset tag (and eventual index) as h(A), and the
/// per-tag counts of both systems must agree, h being a bijection of the
/// tagged families.
inline FixedTransferReport transfer_fixed_subsets(const PointMap& f, const PointMap& g,
                                                  const PointMap& h,
                                                  const ProximitySpace& domain,
                                                  const ProximitySpace& codomain) {
    EnumerationCap::require(domain.size(), "transfer_fixed_subsets");
    FixedTransferReport report;
    const Subset all = full_subset(domain.size());
    for (Subset a = 1; ; ++a) {
        const FixedClass under_f = classify_fixed(f, domain, a);
        const FixedClass under_g = classify_fixed(g, codomain, h.image(a));
        report.tag_counts_f[std::string(fixed_tag_name(under_f.tag))]++;
        if (under_f.tag != under_g.tag || under_f.witness_n != under_g.witness_n) {
            report.pass = false;
            if (report.mismatches.size() < 8) report.mismatches.push_back({a, under_f, under_g});
        }
        if (a == all) break;
    }
    const Subset all_y = full_subset(codomain.size());
    for (Subset b = 1; ; ++b) {
        const FixedClass under_g = classify_fixed(g, codomain, b);
        report.tag_counts_g[std::string(fixed_tag_name(under_g.tag))]++;
        if (b == all_y) break;
    }
    report.counts_equal = report.tag_counts_f == report.tag_counts_g;
    report.pass = report.pass && report.counts_equal;
    return report;
}

// ---------------------------------------------------------------------------
// Brute-force search
// ---------------------------------------------------------------------------

struct ConjugacySearchResult {
    std::optional<ConjugacyCertificate> certificate;
    std::string reason;             // set when no certificate is returned
    long long bijections_tried = 0;
};

/// Enumerates all bijections h: X -> Y in lexicographic order and returns
/// the first one that verifies, so the result is deterministic regardless
/// of any internal partitioning. Ground sets above 8 points are refused.
inline ConjugacySearchResult search_conjugacy(const PointMap& f, const PointMap& g,
                                              const ProximitySpace& domain,
                                              const ProximitySpace& codomain, ConjMode mode,
                                              const ConjugacyOptions& opts = {}) {
    ConjugacySearchResult result;
    if (domain.size() != codomain.size()) {
        result.reason = "size mismatch: |X| != |Y|";
        return result;
    }
    if (domain.size() > 8)
        throw Error(ErrorCode::CapExceeded, "search_conjugacy refuses ground sets above 8 points");
    if (!detail::mode_continuous(f, domain, mode)) {
        result.reason = "f is not continuous in the required mode";
        return result;
    }
    if (!detail::mode_continuous(g, codomain, mode)) {
        result.reason = "g is not continuous in the required mode";
        return result;
    }

    std::vector<int> perm(static_cast<std::size_t>(domain.size()));
    std::iota(perm.begin(), perm.end(), 0);
    const MapMode map_mode = conj_map_mode(mode);
    do {
        ++result.bijections_tried;
        const PointMap h(domain.size(), codomain.size(), perm);
        if (!is_isomorphism(h, domain, codomain, map_mode)) continue;
        bool holds = true;
        if (mode == ConjMode::Exact) {
            for (int x = 0; x < domain.size() && holds; ++x) holds = g(h(x)) == h(f(x));
        } else {
            const Subset all = full_subset(domain.size());
            for (Subset a = 1; holds; ++a) {
                holds = detail::conj_condition(f, g, h, codomain, mode, a);
                if (a == all) break;
            }
        }
        if (holds) {
            result.certificate = verify_conjugacy(f, g, h, domain, codomain, mode, opts);
            return result;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    result.reason = "no conjugacy among " + std::to_string(result.bijections_tried) + " bijections";
    return result;
}

} // namespace vortex
