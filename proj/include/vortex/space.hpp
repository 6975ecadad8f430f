#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vortex/error.hpp"
#include "vortex/subset.hpp"

namespace vortex {

/// Description of a point: a fixed-length tuple of quantized decimal
/// components, stored as grid ticks. Two descriptions are equal exactly
/// when all tick components are equal, so equality is transitive.
struct FeatureVector {
    std::vector<std::int64_t> ticks;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
    friend auto operator<=>(const FeatureVector&, const FeatureVector&) = default;
};

/// Total table of point descriptions for one space.
class ProbeMap {
public:
    ProbeMap(int dimension, std::vector<FeatureVector> rows) : dim_(dimension), rows_(std::move(rows)) {
        if (dim_ < 1) throw Error(ErrorCode::SchemaViolation, "feature dimension must be >= 1");
        for (const auto& row : rows_)
            if (static_cast<int>(row.ticks.size()) != dim_)
                throw Error(ErrorCode::LengthMismatch, "feature vector length != declared dimension");
        index_classes_();
    }

    int dimension() const { return dim_; }
    int size() const { return static_cast<int>(rows_.size()); }
    const FeatureVector& at(int point) const { return rows_.at(static_cast<std::size_t>(point)); }
    const std::vector<FeatureVector>& rows() const { return rows_; }

    /// Points with equal feature vectors share a class id; descriptive
    /// predicates reduce to class-mask arithmetic.
    int class_of(int point) const { return class_of_.at(static_cast<std::size_t>(point)); }
    int class_count() const { return class_count_; }

    Subset class_mask(Subset points) const {
        Subset mask = 0;
        while (points) {
            int p = std::countr_zero(points);
            points &= points - 1;
            mask |= Subset{1} << class_of_[static_cast<std::size_t>(p)];
        }
        return mask;
    }

    friend bool operator==(const ProbeMap& a, const ProbeMap& b) {
        return a.dim_ == b.dim_ && a.rows_ == b.rows_;
    }

private:
    void index_classes_() {
        std::map<FeatureVector, int> seen;
        class_of_.reserve(rows_.size());
        for (const auto& row : rows_) {
            auto [it, inserted] = seen.emplace(row, static_cast<int>(seen.size()));
            class_of_.push_back(it->second);
        }
        class_count_ = static_cast<int>(seen.size());
    }

    int dim_;
    std::vector<FeatureVector> rows_;
    std::vector<int> class_of_;
    int class_count_ = 0;
};

/// A finite Čech proximity space: a ground set 0..n-1 with a reflexive,
/// symmetric point nearness relation, optionally equipped with a probe.
/// Set-level nearness is the lift A δ B ⟺ ∃a∈A, b∈B near(a, b).
class ProximitySpace {
public:
    ProximitySpace(int n, const std::vector<std::pair<int, int>>& near_pairs,
                   std::optional<ProbeMap> probe = std::nullopt)
        : n_(n), adjacency_(static_cast<std::size_t>(n), 0), probe_(std::move(probe)) {
        if (n < 1 || n > 64)
            throw Error(ErrorCode::SchemaViolation, "ground set size must be in [1, 64]");
        for (int i = 0; i < n; ++i) adjacency_[static_cast<std::size_t>(i)] |= Subset{1} << i;
        for (auto [a, b] : near_pairs) {
            if (a < 0 || a >= n || b < 0 || b >= n)
                throw Error(ErrorCode::SchemaViolation, "near pair references point outside ground set");
            adjacency_[static_cast<std::size_t>(a)] |= Subset{1} << b;
            adjacency_[static_cast<std::size_t>(b)] |= Subset{1} << a;
        }
        if (probe_ && probe_->size() != n)
            throw Error(ErrorCode::LengthMismatch, "probe table size != ground set size");
    }

    int size() const { return n_; }
    bool has_probe() const { return probe_.has_value(); }
    const ProbeMap& probe() const {
        if (!probe_) throw Error(ErrorCode::NoProbe, "space has no probe map");
        return *probe_;
    }

    bool near(int a, int b) const { return (adjacency_.at(static_cast<std::size_t>(a)) >> b) & 1; }

    /// Neighbourhood of a point as a bitmask (includes the point itself).
    Subset adjacency(int point) const { return adjacency_.at(static_cast<std::size_t>(point)); }

    /// Union of neighbourhoods over a subset.
    Subset neighborhood(Subset points) const {
        Subset out = 0;
        while (points) {
            int p = std::countr_zero(points);
            points &= points - 1;
            out |= adjacency_[static_cast<std::size_t>(p)];
        }
        return out;
    }

    std::vector<std::pair<int, int>> near_pairs() const {
        std::vector<std::pair<int, int>> out;
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b)
                if (near(a, b)) out.emplace_back(a, b);
        return out;
    }

    void check_subset(Subset s, const char* op) const {
        if (s & ~full_subset(n_))
            throw Error(ErrorCode::MalformedSubset,
                        std::string(op) + ": bitmask has bits outside the ground set");
    }

private:
    int n_;
    std::vector<Subset> adjacency_;
    std::optional<ProbeMap> probe_;
};

// ---------------------------------------------------------------------------
// Set-level predicates
// ---------------------------------------------------------------------------

/// A δ B under the lifted relation. Empty sets are far from everything.
inline bool set_near(const ProximitySpace& space, Subset a, Subset b) {
    space.check_subset(a, "set_near");
    space.check_subset(b, "set_near");
    if (a == 0 || b == 0) return false;
    return (space.neighborhood(a) & b) != 0;
}

/// A δ_Φ B: descriptions overlap. Empty sets are descriptively far.
inline bool desc_near(const ProximitySpace& space, Subset a, Subset b) {
    space.check_subset(a, "desc_near");
    space.check_subset(b, "desc_near");
    const ProbeMap& probe = space.probe();
    if (a == 0 || b == 0) return false;
    return (probe.class_mask(a) & probe.class_mask(b)) != 0;
}

/// A ∩_Φ B = { x ∈ A∪B : Φ(x) ∈ Φ(A) ∩ Φ(B) }.
inline Subset desc_intersection(const ProximitySpace& space, Subset a, Subset b) {
    space.check_subset(a, "desc_intersection");
    space.check_subset(b, "desc_intersection");
    const ProbeMap& probe = space.probe();
    const Subset common = probe.class_mask(a) & probe.class_mask(b);
    Subset out = 0;
    Subset candidates = a | b;
    while (candidates) {
        int p = std::countr_zero(candidates);
        candidates &= candidates - 1;
        if (common & (Subset{1} << probe.class_of(p))) out |= Subset{1} << p;
    }
    return out;
}

/// cl_Φ(A) = { x ∈ X : Φ(x) ∈ Φ(A) }; the empty set is its own closure.
inline Subset desc_closure(const ProximitySpace& space, Subset a) {
    space.check_subset(a, "desc_closure");
    const ProbeMap& probe = space.probe();
    if (a == 0) return 0;
    const Subset classes = probe.class_mask(a);
    Subset out = 0;
    for (int p = 0; p < space.size(); ++p)
        if (classes & (Subset{1} << probe.class_of(p))) out |= Subset{1} << p;
    return out;
}

/// Tautology probe for the converse of (dP.2): descriptive nearness must
/// force a nonempty descriptive intersection. Always true; exposed so the
/// lemma can be property-tested as stated.
inline bool desc_near_implies_desc_intersection(const ProximitySpace& space, Subset a, Subset b) {
    if (!desc_near(space, a, b)) return true;
    return desc_intersection(space, a, b) != 0;
}

// ---------------------------------------------------------------------------
// Axiom checking over extensional set-level relations
// ---------------------------------------------------------------------------

/// Explicit truth table of a set-level relation over all 2^n x 2^n subset
/// pairs. Row A holds a bitset over B. Used for adversarial axiom checks;
/// honest relations come from lift_relation / desc_relation.
class SetRelationTable {
public:
    explicit SetRelationTable(int n) : n_(n) {
        EnumerationCap::require(n, "SetRelationTable");
        const std::size_t subsets = std::size_t{1} << n;
        words_per_row_ = (subsets + 63) / 64;
        bits_.assign(subsets * words_per_row_, 0);
    }

    int ground_size() const { return n_; }
    std::size_t subset_count() const { return std::size_t{1} << n_; }

    void set(Subset a, Subset b, bool value = true) {
        auto& word = bits_[static_cast<std::size_t>(a) * words_per_row_ + (b >> 6)];
        const std::uint64_t bit = std::uint64_t{1} << (b & 63);
        if (value) word |= bit; else word &= ~bit;
    }

    bool get(Subset a, Subset b) const {
        return (bits_[static_cast<std::size_t>(a) * words_per_row_ + (b >> 6)] >> (b & 63)) & 1;
    }

private:
    int n_;
    std::size_t words_per_row_;
    std::vector<std::uint64_t> bits_;
};

/// Lift of the point relation to all subset pairs.
inline SetRelationTable lift_relation(const ProximitySpace& space) {
    SetRelationTable table(space.size());
    const Subset all = full_subset(space.size());
    for (Subset a = 1; a <= all; ++a) {
        const Subset nbr = space.neighborhood(a);
        for (Subset b = 1; b <= all; ++b)
            if (nbr & b) table.set(a, b);
        if (a == all) break;
    }
    return table;
}

/// Descriptive relation (probe overlap) over all subset pairs.
inline SetRelationTable desc_relation(const ProximitySpace& space) {
    const ProbeMap& probe = space.probe();
    SetRelationTable table(space.size());
    const Subset all = full_subset(space.size());
    std::vector<Subset> class_masks(static_cast<std::size_t>(all) + 1, 0);
    for (Subset a = 1; a <= all; ++a) {
        const Subset low = a & (a - 1);
        class_masks[a] = class_masks[low] | (Subset{1} << probe.class_of(std::countr_zero(a)));
        if (a == all) break;
    }
    for (Subset a = 1; a <= all; ++a) {
        for (Subset b = 1; b <= all; ++b)
            if (class_masks[a] & class_masks[b]) table.set(a, b);
        if (a == all) break;
    }
    return table;
}

struct AxiomResult {
    std::string axiom;                 // "P.0".."P.3" (or the descriptive reading)
    bool pass = true;
    std::vector<Subset> witness;       // violating subsets, in axiom order
};

struct AxiomReport {
    std::vector<AxiomResult> results;
    bool all_pass = true;

    const AxiomResult& result(const std::string& axiom) const {
        for (const auto& r : results)
            if (r.axiom == axiom) return r;
        throw Error(ErrorCode::UnknownName, "no such axiom in report: " + axiom);
    }
};

/// Checks the four Čech axioms against an extensional relation table,
/// reporting the first counterexample per axiom.
///   P.0  ∀A: ¬(A δ ∅) and ¬(∅ δ A)
///   P.1  A δ B ⇒ B δ A
///   P.2  A ∩ B ≠ ∅ ⇒ A δ B
///   P.3  A δ (B ∪ C) ⇒ A δ B or A δ C
inline AxiomReport check_cech_axioms(const SetRelationTable& table) {
    AxiomReport report;
    const int n = table.ground_size();
    const Subset all = full_subset(n);

    AxiomResult p0{"P.0", true, {}};
    for (Subset a = 0; ; ++a) {
        if (table.get(a, 0)) { p0 = {"P.0", false, {a, 0}}; break; }
        if (table.get(0, a)) { p0 = {"P.0", false, {0, a}}; break; }
        if (a == all) break;
    }
    report.results.push_back(p0);

    AxiomResult p1{"P.1", true, {}};
    for (Subset a = 0; p1.pass; ++a) {
        for (Subset b = 0; ; ++b) {
            if (table.get(a, b) && !table.get(b, a)) { p1 = {"P.1", false, {a, b}}; break; }
            if (b == all) break;
        }
        if (a == all) break;
    }
    report.results.push_back(p1);

    AxiomResult p2{"P.2", true, {}};
    for (Subset a = 0; p2.pass; ++a) {
        for (Subset b = 0; ; ++b) {
            if ((a & b) != 0 && !table.get(a, b)) { p2 = {"P.2", false, {a, b}}; break; }
            if (b == all) break;
        }
        if (a == all) break;
    }
    report.results.push_back(p2);

    // P.3 per fixed A: the family of sets far from A must be closed under
    // union. Checked with a subset DP in O(2^n * n) per A: U(S) is the
    // union of all far sets contained in S. A violation exists exactly
    // when some U(S) is a union of far sets yet itself near A; a pair of
    // far sets with a near union is then extracted by accumulation.
    AxiomResult p3{"P.3", true, {}};
    std::vector<Subset> far_union(table.subset_count());
    for (Subset a = 0; p3.pass; ++a) {
        Subset bad_union = 0;
        for (Subset s = 0; ; ++s) {
            Subset u = table.get(a, s) ? 0 : s;
            for (Subset rest = s; rest; rest &= rest - 1) {
                const Subset without = s & ~(Subset{1} << std::countr_zero(rest));
                u |= far_union[without];
            }
            far_union[s] = u;
            if (u != 0 && table.get(a, u)) { bad_union = u; break; }
            if (s == all) break;
        }
        if (bad_union != 0) {
            // Merge far subsets of bad_union until nearness first appears.
            Subset acc = 0;
            for (Subset t = 1; ; ++t) {
                if ((t & ~bad_union) == 0 && !table.get(a, t)) {
                    if (acc == 0) acc = t;
                    else if (table.get(a, acc | t)) { p3 = {"P.3", false, {a, acc, t}}; break; }
                    else acc |= t;
                }
                if (t == bad_union) break;
            }
        }
        if (a == all) break;
    }
    report.results.push_back(p3);

    for (const auto& r : report.results) report.all_pass = report.all_pass && r.pass;
    return report;
}

} // namespace vortex
