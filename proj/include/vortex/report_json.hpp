#pragma once

#include <json.hpp>

#include "vortex/conjugacy.hpp"
#include "vortex/dynamics.hpp"
#include "vortex/group.hpp"
#include "vortex/maps.hpp"
#include "vortex/space.hpp"

namespace vortex {

/// Stable JSON layouts for the report types. Subsets are serialized as
/// ascending point-id arrays, never raw bitmasks.
namespace report {

using json = nlohmann::json;

inline json subset_json(Subset s) { return json(subset_points(s)); }

inline json axiom_report_json(const AxiomReport& r, const std::string& relation) {
    json axioms = json::array();
    for (const auto& entry : r.results) {
        json e = {{"name", entry.axiom}, {"pass", entry.pass}};
        if (!entry.pass) {
            json witness = json::array();
            for (Subset s : entry.witness) witness.push_back(subset_json(s));
            e["witness"] = std::move(witness);
        }
        axioms.push_back(std::move(e));
    }
    return {{"relation", relation}, {"pass", r.all_pass}, {"axioms", std::move(axioms)}};
}

inline json continuity_report_json(const ContinuityReport& r) {
    json out = {{"mode", r.mode},
                {"pass", r.pass},
                {"pointwise", {{"pass", r.pointwise_pass}}},
                {"subset_oracle", {{"ran", r.oracle_ran}, {"pass", r.oracle_pass}}}};
    if (r.pointwise_witness)
        out["pointwise"]["witness"] = {r.pointwise_witness->first, r.pointwise_witness->second};
    if (r.oracle_witness)
        out["subset_oracle"]["witness"] = {{"A", subset_json(r.oracle_witness->first)},
                                           {"B", subset_json(r.oracle_witness->second)}};
    return out;
}

inline json isomorphism_report_json(const IsomorphismReport& r) {
    json out = {{"mode", r.mode == MapMode::Proximal ? "proximal" : "descriptive"},
                {"bijective", r.bijective},
                {"pass", r.pass}};
    if (!r.bijective) {
        out["verdict"] = "NOT_BIJECTIVE";
        return out;
    }
    out["forward"] = {{"pass", r.forward_pass}};
    out["inverse"] = {{"pass", r.inverse_pass}};
    if (r.forward_witness)
        out["forward"]["witness"] = {r.forward_witness->first, r.forward_witness->second};
    if (r.inverse_witness)
        out["inverse"]["witness"] = {r.inverse_witness->first, r.inverse_witness->second};
    return out;
}

inline json fixed_class_json(Subset subset, const FixedClass& cls) {
    json out = {{"subset", subset_json(subset)},
                {"tag", std::string(fixed_tag_name(cls.tag))},
                {"witness_n", cls.witness_n ? json(*cls.witness_n) : json()},
                {"point_witness", cls.point_witness ? json(*cls.point_witness) : json()}};
    return out;
}

inline json scan_json(const std::vector<std::pair<Subset, FixedClass>>& scan) {
    json out = json::array();
    for (const auto& [subset, cls] : scan) out.push_back(fixed_class_json(subset, cls));
    return out;
}

inline json vortex_fixed_point_json(const VortexFixedPointReport& r) {
    json out = {{"applicable", r.applicable},
                {"outcome", std::string(fixed_point_outcome_label(r.outcome))},
                {"fixed_vertices", r.fixed_vertices},
                {"note", r.note}};
    if (r.continuity_witness)
        out["continuity_witness"] = {r.continuity_witness->first, r.continuity_witness->second};
    json exact = json::array();
    for (Subset s : r.exact_fixed_subsets) exact.push_back(subset_json(s));
    out["exact_fixed_subsets"] = std::move(exact);
    if (r.desc_fixed_count) out["desc_fixed_count"] = *r.desc_fixed_count;
    return out;
}

inline json certificate_json(const ConjugacyCertificate& cert) {
    json out = {{"mode", std::string(conj_mode_name(cert.mode))},
                {"h", cert.h.table()},
                {"applicable", cert.applicable},
                {"pass", cert.pass},
                {"exhaustive", cert.exhaustive},
                {"checked_n", cert.checked_n}};
    if (!cert.applicable) out["reason"] = cert.reason;
    if (cert.witness) out["witness"] = subset_json(*cert.witness);
    if (cert.backward_pass) {
        out["backward_pass"] = *cert.backward_pass;
        if (cert.backward_witness) out["backward_witness"] = subset_json(*cert.backward_witness);
    }
    if (!cert.desc_intersection_witnesses.empty()) {
        json w = json::array();
        for (const auto& [a, inter] : cert.desc_intersection_witnesses)
            w.push_back({{"A", subset_json(a)}, {"intersection", subset_json(inter)}});
        out["desc_intersection_witnesses"] = std::move(w);
    }
    if (cert.diagrams_pass) {
        out["diagrams_pass"] = *cert.diagrams_pass;
        if (cert.diagram_witness) out["diagram_witness"] = subset_json(*cert.diagram_witness);
    }
    return out;
}

inline json transfer_iterates_json(const TransferIteratesReport& r) {
    json out = {{"pass", r.pass},
                {"exhaustive", r.exhaustive},
                {"subsets_checked", r.subsets_checked}};
    if (!r.pass) {
        out["witness"] = {{"A", subset_json(*r.witness_subset)}, {"n", *r.witness_n}};
    }
    return out;
}

inline json fixed_transfer_json(const FixedTransferReport& r) {
    json mismatches = json::array();
    for (const auto& m : r.mismatches)
        mismatches.push_back({{"subset", subset_json(m.subset)},
                              {"tag_f", std::string(fixed_tag_name(m.under_f.tag))},
                              {"tag_g", std::string(fixed_tag_name(m.under_g.tag))}});
    return {{"pass", r.pass},
            {"counts_equal", r.counts_equal},
            {"tag_counts_f", r.tag_counts_f},
            {"tag_counts_g", r.tag_counts_g},
            {"mismatches", std::move(mismatches)}};
}

inline json invariance_report_json(const InvarianceReport& r) {
    json violations = json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"sigma", v.sigma},
                              {"side", v.left ? "left" : "right"},
                              {"translated_mean", v.translated_mean.str()}});
    return {{"pass", r.pass}, {"mean", r.mean.str()}, {"violations", std::move(violations)}};
}

inline json amenability_json(const AmenabilityWitness& w) {
    json out = {{"amenable", w.amenable},
                {"mean", w.mean_description},
                {"functions_checked", w.functions_checked}};
    if (w.violation)
        out["violation"] = {{"sigma", w.violation->sigma},
                            {"side", w.violation->left ? "left" : "right"}};
    return out;
}

inline json cw_report_json(const CwReport& r) {
    json violations = json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"kind", v.kind}, {"detail", v.detail}});
    return {{"pass", r.pass}, {"violations", std::move(violations)}};
}

inline json invariance_closure_json(const InvarianceClosureReport& r) {
    json out = {{"applicable", r.applicable}, {"pass", r.pass}};
    if (r.inapplicable_witness) out["inapplicable_witness"] = subset_json(*r.inapplicable_witness);
    json failures = json::array();
    for (const auto& [kind, subset] : r.failures)
        failures.push_back({{"kind", kind}, {"subset", subset_json(subset)}});
    out["failures"] = std::move(failures);
    return out;
}

} // namespace report
} // namespace vortex
