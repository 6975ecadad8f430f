#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "vortex/error.hpp"

namespace vortex {

/// Quantized decimal values. A value is stored as an integer number of
/// ticks on a power-of-ten grid; `scale` is the number of fractional
/// digits (ticks per unit = 10^scale). Equality of quantized values is
/// exact integer equality, so it is transitive by construction.
struct DecimalGrid {
    int scale = 6; // default grid: 10^-6

    std::int64_t ticks_per_unit() const {
        std::int64_t t = 1;
        for (int i = 0; i < scale; ++i) t *= 10;
        return t;
    }
};

namespace detail {

inline bool mul_overflow(std::int64_t a, std::int64_t b, std::int64_t& out) {
    return __builtin_mul_overflow(a, b, &out);
}

inline bool add_overflow(std::int64_t a, std::int64_t b, std::int64_t& out) {
    return __builtin_add_overflow(a, b, &out);
}

} // namespace detail

/// Parses a plain decimal string ("-12.5", "0.000001") into grid ticks.
/// Values with more fractional digits than the grid represents are
/// rejected rather than rounded: descriptive equality is exact, and a
/// silent rounding would make distinct inputs collide.
inline std::int64_t parse_decimal(std::string_view text, const DecimalGrid& grid) {
    const auto fail = [&](const std::string& why) -> std::int64_t {
        throw Error(ErrorCode::QuantizationOverflow,
                    "value '" + std::string(text) + "' " + why);
    };

    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i >= text.size()) return fail("is not a decimal number");

    std::int64_t ticks = 0;
    const std::int64_t unit = grid.ticks_per_unit();
    bool any_digit = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
        any_digit = true;
        if (detail::mul_overflow(ticks, 10, ticks) ||
            detail::add_overflow(ticks, text[i] - '0', ticks))
            return fail("overflows the grid");
    }
    if (detail::mul_overflow(ticks, unit, ticks)) return fail("overflows the grid");

    if (i < text.size() && text[i] == '.') {
        ++i;
        std::int64_t frac = 0;
        std::int64_t place = unit;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            any_digit = true;
            int digit = text[i] - '0';
            if (place == 1) {
                if (digit != 0)
                    return fail("has more fractional digits than the grid resolves");
                continue;
            }
            place /= 10;
            frac += place * digit;
        }
        if (detail::add_overflow(ticks, frac, ticks)) return fail("overflows the grid");
    }
    if (!any_digit || i != text.size()) return fail("is not a decimal number");

    return negative ? -ticks : ticks;
}

/// Canonical decimal rendering of a tick count: minimal digits, no
/// trailing fractional zeros ("0.25", "-3", "0.000001").
inline std::string format_decimal(std::int64_t ticks, const DecimalGrid& grid) {
    const std::int64_t unit = grid.ticks_per_unit();
    const bool negative = ticks < 0;
    // Unsigned magnitude avoids INT64_MIN negation issues.
    std::uint64_t mag = negative ? ~static_cast<std::uint64_t>(ticks) + 1
                                 : static_cast<std::uint64_t>(ticks);
    std::uint64_t whole = mag / static_cast<std::uint64_t>(unit);
    std::uint64_t frac = mag % static_cast<std::uint64_t>(unit);

    std::string out = negative && mag != 0 ? "-" : "";
    out += std::to_string(whole);
    if (frac != 0) {
        std::string digits = std::to_string(frac);
        digits.insert(0, static_cast<std::size_t>(grid.scale) - digits.size(), '0');
        while (!digits.empty() && digits.back() == '0') digits.pop_back();
        out += '.';
        out += digits;
    }
    return out;
}

} // namespace vortex
