#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "vortex/error.hpp"

namespace vortex {

/// A subset of a ground set of at most 64 points, as a bitmask.
/// Bit i set means point i is a member.
using Subset = std::uint64_t;

inline constexpr Subset kEmptySubset = 0;

inline Subset full_subset(int n) {
    return n >= 64 ? ~Subset{0} : (Subset{1} << n) - 1;
}

inline int subset_size(Subset s) { return std::popcount(s); }

inline bool subset_contains(Subset s, int point) { return (s >> point) & 1; }

/// Members of a subset in ascending point order.
inline std::vector<int> subset_points(Subset s) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(std::popcount(s)));
    while (s) {
        out.push_back(std::countr_zero(s));
        s &= s - 1;
    }
    return out;
}

inline Subset subset_of_points(const std::vector<int>& points) {
    Subset s = 0;
    for (int p : points) s |= Subset{1} << p;
    return s;
}

/// Exhaustive-enumeration cap for operations that quantify over all
/// subsets (or subset pairs) of a ground set. Defaults to 16 and may be
/// lowered; it can never be raised past 20.
class EnumerationCap {
public:
    static int get() { return value_(); }

    static void set(int cap) {
        if (cap < 1 || cap > 20)
            throw Error(ErrorCode::CapExceeded, "enumeration cap must be in [1, 20]");
        value_() = cap;
    }

    static void require(int n, const char* op) {
        if (n > value_())
            throw Error(ErrorCode::CapExceeded,
                        std::string(op) + " refuses ground sets above " +
                            std::to_string(value_()) + " points (got " + std::to_string(n) + ")");
    }

private:
    static int& value_() {
        static int cap = 16;
        return cap;
    }
};

} // namespace vortex
