#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vortex/complex.hpp"
#include "vortex/error.hpp"
#include "vortex/rational.hpp"

namespace vortex {

// ---------------------------------------------------------------------------
// Words over a generator basis (free abelian: the coefficient vector is
// already the canonical form)
// ---------------------------------------------------------------------------

struct GroupWord {
    std::vector<std::int64_t> coeffs;

    friend bool operator==(const GroupWord&, const GroupWord&) = default;
};

inline GroupWord word_zero(std::size_t basis_size) {
    return GroupWord{std::vector<std::int64_t>(basis_size, 0)};
}

inline GroupWord word_add(const GroupWord& a, const GroupWord& b) {
    if (a.coeffs.size() != b.coeffs.size())
        throw Error(ErrorCode::LengthMismatch, "word_add: basis lengths differ");
    GroupWord out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
    return out;
}

inline GroupWord word_neg(const GroupWord& a) {
    GroupWord out = a;
    for (auto& c : out.coeffs) c = -c;
    return out;
}

// ---------------------------------------------------------------------------
// Finite group tables
// ---------------------------------------------------------------------------

/// Cayley table of a finite group, validated on construction: closure,
/// two-sided identity, inverses, and associativity via Light's test over
/// a generating set (greedy generators when none are supplied).
class FiniteGroupTable {
public:
    FiniteGroupTable(int order, std::vector<int> op, std::vector<int> generator_hint = {})
        : order_(order), op_(std::move(op)) {
        if (order_ < 1 || op_.size() != static_cast<std::size_t>(order_) * order_)
            throw Error(ErrorCode::BadGroupTable, "table size != order^2");
        validate_(std::move(generator_hint));
    }

    /// Direct product of cyclic groups Z/m1 x ... x Z/mk in mixed-radix
    /// element encoding (last factor varies fastest).
    static FiniteGroupTable product_of_cyclic(const std::vector<int>& moduli) {
        long long order = 1;
        for (int m : moduli) {
            if (m < 1) throw Error(ErrorCode::BadGroupTable, "cyclic factor must be positive");
            order *= m;
            if (order > 4096)
                throw Error(ErrorCode::CapExceeded, "group order above 4096");
        }
        const int n = static_cast<int>(order);
        std::vector<int> op(static_cast<std::size_t>(n) * n);
        std::vector<int> digits_x(moduli.size()), digits_y(moduli.size());
        for (int x = 0; x < n; ++x) {
            decode_(x, moduli, digits_x);
            for (int y = 0; y < n; ++y) {
                decode_(y, moduli, digits_y);
                int code = 0;
                for (std::size_t i = 0; i < moduli.size(); ++i)
                    code = code * moduli[i] + (digits_x[i] + digits_y[i]) % moduli[i];
                op[static_cast<std::size_t>(x) * n + y] = code;
            }
        }
        std::vector<int> gens;
        int stride = 1;
        for (std::size_t i = moduli.size(); i-- > 0;) {
            if (moduli[i] > 1) gens.push_back(stride);
            stride *= moduli[i];
        }
        return FiniteGroupTable(n, std::move(op), std::move(gens));
    }

    int order() const { return order_; }
    int identity() const { return identity_; }
    int op(int x, int y) const { return op_[static_cast<std::size_t>(x) * order_ + y]; }
    int inverse(int x) const { return inverse_[static_cast<std::size_t>(x)]; }

    bool is_abelian() const {
        for (int x = 0; x < order_; ++x)
            for (int y = x + 1; y < order_; ++y)
                if (op(x, y) != op(y, x)) return false;
        return true;
    }

private:
    static void decode_(int code, const std::vector<int>& moduli, std::vector<int>& digits) {
        for (std::size_t i = moduli.size(); i-- > 0;) {
            digits[i] = code % moduli[i];
            code /= moduli[i];
        }
    }

    void validate_(std::vector<int> gens) {
        for (int v : op_)
            if (v < 0 || v >= order_)
                throw Error(ErrorCode::BadGroupTable, "table entry outside the group (closure)");

        identity_ = -1;
        for (int e = 0; e < order_ && identity_ < 0; ++e) {
            bool ok = true;
            for (int x = 0; x < order_ && ok; ++x)
                ok = op(e, x) == x && op(x, e) == x;
            if (ok) identity_ = e;
        }
        if (identity_ < 0) throw Error(ErrorCode::BadGroupTable, "no two-sided identity");

        inverse_.assign(static_cast<std::size_t>(order_), -1);
        for (int x = 0; x < order_; ++x) {
            for (int y = 0; y < order_; ++y)
                if (op(x, y) == identity_ && op(y, x) == identity_) {
                    inverse_[static_cast<std::size_t>(x)] = y;
                    break;
                }
            if (inverse_[static_cast<std::size_t>(x)] < 0)
                throw Error(ErrorCode::BadGroupTable,
                            "element " + std::to_string(x) + " has no inverse");
        }

        // Light's associativity test needs a set that generates the whole
        // table under op; grow one greedily if the caller gave none.
        std::vector<bool> reached(static_cast<std::size_t>(order_), false);
        auto close = [&]() {
            bool grew = true;
            while (grew) {
                grew = false;
                for (int x = 0; x < order_; ++x) {
                    if (!reached[static_cast<std::size_t>(x)]) continue;
                    for (int y = 0; y < order_; ++y) {
                        if (!reached[static_cast<std::size_t>(y)]) continue;
                        int z = op(x, y);
                        if (!reached[static_cast<std::size_t>(z)]) {
                            reached[static_cast<std::size_t>(z)] = true;
                            grew = true;
                        }
                    }
                }
            }
        };
        reached[static_cast<std::size_t>(identity_)] = true;
        for (int g : gens) {
            if (g < 0 || g >= order_)
                throw Error(ErrorCode::BadGroupTable, "generator hint outside the group");
            reached[static_cast<std::size_t>(g)] = true;
        }
        close();
        for (int x = 0; x < order_; ++x)
            if (!reached[static_cast<std::size_t>(x)]) {
                gens.push_back(x);
                reached[static_cast<std::size_t>(x)] = true;
                close();
            }
        for (int g : gens)
            for (int x = 0; x < order_; ++x)
                for (int y = 0; y < order_; ++y)
                    if (op(x, op(g, y)) != op(op(x, g), y))
                        throw Error(ErrorCode::BadGroupTable,
                                    "associativity fails at generator " + std::to_string(g));
    }

    int order_;
    std::vector<int> op_;
    int identity_ = 0;
    std::vector<int> inverse_;
};

/// Plain-text Cayley table: one line per row, space-separated indices.
inline std::string cayley_text(const FiniteGroupTable& table) {
    std::string out;
    for (int x = 0; x < table.order(); ++x) {
        for (int y = 0; y < table.order(); ++y) {
            if (y) out += ' ';
            out += std::to_string(table.op(x, y));
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Vortex group representation
// ---------------------------------------------------------------------------

struct GeneratorBasis {
    std::vector<int> vertex_ids;
};

/// Finite abelian group generated by a basis of vortex vertices. Each
/// generator acts as a one-edge step along its home cycle (the first
/// cycle, outermost first, containing its vertex); a word evaluates by
/// accumulating per-cycle step counts, and two words are identified when
/// every reachable cycle carries the same offset. The result is a direct
/// product of cyclic groups, one factor per home cycle of the basis.
class VortexGroup {
public:
    VortexGroup(const PlanarVortex& complex, const GeneratorBasis& basis,
                std::optional<int> base_vertex = std::nullopt) {
        if (basis.vertex_ids.empty())
            throw Error(ErrorCode::SchemaViolation, "generator basis is empty");
        for (const auto& cycle : complex.cycles) rings_.push_back(cycle.ring);
        for (int id : basis.vertex_ids) {
            const int cycle = home_cycle_(id);
            generator_cycles_.push_back(cycle);
            if (std::find(cycles_.begin(), cycles_.end(), cycle) == cycles_.end())
                cycles_.push_back(cycle);
        }
        std::sort(cycles_.begin(), cycles_.end());
        moduli_.reserve(cycles_.size());
        for (int c : cycles_)
            moduli_.push_back(static_cast<int>(rings_[static_cast<std::size_t>(c)].size()));
        base_vertex_ = base_vertex.value_or(basis.vertex_ids.front());
        if (!complex.has_vertex(base_vertex_))
            throw Error(ErrorCode::UndeclaredVertex, "base vertex " + std::to_string(base_vertex_));
        basis_ = basis;
        table_.emplace(FiniteGroupTable::product_of_cyclic(moduli_));
    }

    const FiniteGroupTable& table() const { return *table_; }
    const std::vector<int>& home_cycles() const { return cycles_; }
    const std::vector<int>& moduli() const { return moduli_; }
    int base_vertex() const { return base_vertex_; }
    std::size_t basis_size() const { return basis_.vertex_ids.size(); }

    /// Word -> group element (mixed-radix offsets per home cycle).
    int element_of(const GroupWord& word) const {
        if (word.coeffs.size() != basis_.vertex_ids.size())
            throw Error(ErrorCode::LengthMismatch, "word length != basis size");
        int code = 0;
        for (std::size_t ci = 0; ci < cycles_.size(); ++ci) {
            std::int64_t steps = 0;
            for (std::size_t j = 0; j < word.coeffs.size(); ++j)
                if (generator_cycles_[j] == cycles_[ci]) steps += word.coeffs[j];
            const int m = moduli_[ci];
            code = code * m + static_cast<int>(((steps % m) + m) % m);
        }
        return code;
    }

    /// Vertex reached from the base vertex: the base's home cycle rotated
    /// by that cycle's accumulated offset (other cycles leave it fixed).
    int eval_vertex(const GroupWord& word) const {
        int base_cycle = -1;
        for (std::size_t c = 0; c < rings_.size(); ++c)
            if (std::find(rings_[c].begin(), rings_[c].end(), base_vertex_) != rings_[c].end()) {
                base_cycle = static_cast<int>(c);
                break;
            }
        if (base_cycle < 0) return base_vertex_;
        auto it = std::find(cycles_.begin(), cycles_.end(), base_cycle);
        if (it == cycles_.end()) return base_vertex_;
        const std::size_t ci = static_cast<std::size_t>(it - cycles_.begin());

        std::int64_t steps = 0;
        for (std::size_t j = 0; j < word.coeffs.size(); ++j)
            if (generator_cycles_[j] == base_cycle) steps += word.coeffs[j];

        const auto& ring = rings_[static_cast<std::size_t>(base_cycle)];
        const auto pos = std::find(ring.begin(), ring.end(), base_vertex_) - ring.begin();
        const int m = moduli_[ci];
        const int offset = static_cast<int>(((steps % m) + m) % m);
        return ring[(static_cast<std::size_t>(pos) + static_cast<std::size_t>(offset)) % ring.size()];
    }

private:
    int home_cycle_(int vertex_id) const {
        for (std::size_t c = 0; c < rings_.size(); ++c)
            if (std::find(rings_[c].begin(), rings_[c].end(), vertex_id) != rings_[c].end())
                return static_cast<int>(c);
        throw Error(ErrorCode::NoSuchCycle,
                    "basis vertex " + std::to_string(vertex_id) + " is not on any cycle");
    }

    std::vector<std::vector<int>> rings_;
    GeneratorBasis basis_;
    std::vector<int> generator_cycles_; // home cycle per generator
    std::vector<int> cycles_;           // distinct home cycles, ascending
    std::vector<int> moduli_;
    int base_vertex_ = 0;
    std::optional<FiniteGroupTable> table_;
};

inline VortexGroup vortex_group(const PlanarVortex& complex, const GeneratorBasis& basis,
                                std::optional<int> base_vertex = std::nullopt) {
    return VortexGroup(complex, basis, base_vertex);
}

// ---------------------------------------------------------------------------
// Means and invariance
// ---------------------------------------------------------------------------

/// θ ∈ m(Σ): a bounded real-valued function on the group, kept exact.
struct BoundedFunction {
    std::vector<Rational> values;

    Rational norm() const {
        Rational best = 0;
        for (const auto& v : values)
            if (best < v.abs()) best = v.abs();
        return best;
    }
};

/// μ(θ) = (1/m) Σ θ(x): the invariant mean on a finite group.
inline Rational uniform_mean(const FiniteGroupTable& group, const BoundedFunction& theta) {
    if (static_cast<int>(theta.values.size()) != group.order())
        throw Error(ErrorCode::LengthMismatch, "theta length != group order");
    Rational sum = 0;
    for (const auto& v : theta.values) sum += v;
    return sum / Rational(group.order());
}

struct InvarianceViolation {
    int sigma = 0;
    bool left = true;
    Rational translated_mean;
};

struct InvarianceReport {
    bool pass = true;
    Rational mean;
    std::vector<InvarianceViolation> violations;
};

/// Checks μ(ℓ_σ θ) = μ(θ) = μ(r_σ θ) for every σ, where
/// (ℓ_σ θ)(σ') = θ(σσ') and (r_σ θ)(σ') = θ(σ'σ). The optional weight
/// vector replaces the uniform mean with μ_w(θ) = Σ w θ / Σ w, which is
/// how non-invariant "means" are exhibited.
inline InvarianceReport check_invariance(const FiniteGroupTable& group,
                                         const BoundedFunction& theta,
                                         const std::vector<Rational>& weights = {}) {
    if (static_cast<int>(theta.values.size()) != group.order())
        throw Error(ErrorCode::LengthMismatch, "theta length != group order");
    if (!weights.empty() && static_cast<int>(weights.size()) != group.order())
        throw Error(ErrorCode::LengthMismatch, "weight length != group order");

    const auto weighted_mean = [&](const std::vector<Rational>& values) {
        Rational sum = 0, total = 0;
        for (int i = 0; i < group.order(); ++i) {
            const Rational w = weights.empty() ? Rational(1) : weights[static_cast<std::size_t>(i)];
            sum += w * values[static_cast<std::size_t>(i)];
            total += w;
        }
        return sum / total;
    };

    InvarianceReport report;
    report.mean = weighted_mean(theta.values);
    std::vector<Rational> translated(static_cast<std::size_t>(group.order()));
    for (int sigma = 0; sigma < group.order(); ++sigma) {
        for (int s = 0; s < group.order(); ++s)
            translated[static_cast<std::size_t>(s)] =
                theta.values[static_cast<std::size_t>(group.op(sigma, s))];
        if (!(weighted_mean(translated) == report.mean)) {
            report.pass = false;
            report.violations.push_back({sigma, true, weighted_mean(translated)});
        }
        for (int s = 0; s < group.order(); ++s)
            translated[static_cast<std::size_t>(s)] =
                theta.values[static_cast<std::size_t>(group.op(s, sigma))];
        if (!(weighted_mean(translated) == report.mean)) {
            report.pass = false;
            report.violations.push_back({sigma, false, weighted_mean(translated)});
        }
    }
    return report;
}

struct AmenabilityWitness {
    bool amenable = false;
    std::string mean_description;
    int functions_checked = 0;
    std::optional<InvarianceViolation> violation;
};

/// Verifies that the uniform mean is left and right invariant on the full
/// indicator basis (which spans m(Σ) by linearity), the caller's samples,
/// and 32 seeded pseudo-random integer-valued functions.
inline AmenabilityWitness is_amenable_witness(const FiniteGroupTable& group,
                                              const std::vector<BoundedFunction>& samples = {},
                                              std::uint64_t seed = 0) {
    AmenabilityWitness out;
    out.mean_description = "uniform mean (1/" + std::to_string(group.order()) + ") * sum";

    std::vector<BoundedFunction> thetas;
    for (int x = 0; x < group.order(); ++x) {
        BoundedFunction indicator{std::vector<Rational>(static_cast<std::size_t>(group.order()), 0)};
        indicator.values[static_cast<std::size_t>(x)] = 1;
        thetas.push_back(std::move(indicator));
    }
    thetas.insert(thetas.end(), samples.begin(), samples.end());
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-8, 8);
    for (int i = 0; i < 32; ++i) {
        BoundedFunction theta;
        theta.values.reserve(static_cast<std::size_t>(group.order()));
        for (int x = 0; x < group.order(); ++x) theta.values.emplace_back(dist(rng));
        thetas.push_back(std::move(theta));
    }

    for (const auto& theta : thetas) {
        ++out.functions_checked;
        const InvarianceReport report = check_invariance(group, theta);
        if (!report.pass) {
            out.amenable = false;
            out.violation = report.violations.front();
            return out;
        }
    }
    out.amenable = true;
    return out;
}

} // namespace vortex
