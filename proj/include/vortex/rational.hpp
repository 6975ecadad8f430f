#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "vortex/error.hpp"

namespace vortex {

/// Exact rational arithmetic on int64 numerator/denominator with __int128
/// intermediates. Means over finite groups stay far below the overflow
/// guard; hitting it throws rather than silently wrapping.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value) : num_(value) {} // NOLINT: implicit by design
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize_(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_i128_(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                          i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_i128_(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                          i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128_(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw Error(ErrorCode::LengthMismatch, "rational division by zero");
        return from_i128_(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return a == b || a < b;
    }

    Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_)
                         : std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    using i128 = __int128;

    static Rational from_i128_(i128 num, i128 den) {
        if (den < 0) { num = -num; den = -den; }
        i128 g = gcd_(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
        if (num < lo || num > hi || den > hi)
            throw Error(ErrorCode::QuantizationOverflow, "rational overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
    }

    static i128 gcd_(i128 a, i128 b) {
        while (b) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize_() {
        if (den_ == 0) throw Error(ErrorCode::LengthMismatch, "zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace vortex
