#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "k3cusps/arith.hpp"

namespace k3cusps {

/// Exact rational number p/q kept in lowest terms with q > 0.
class Rational {
public:
    constexpr Rational() = default;
    Rational(Int value) : num_(value) {} // NOLINT(google-explicit-constructor)
    Rational(Int num, Int den) : num_(num), den_(den) {
        if (den == 0) throw InvalidArgument("rational with zero denominator");
        normalize();
    }

    Int num() const { return num_; }
    Int den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Int g = gcd(a.den_, b.den_);
        Int lhs = mul_checked(a.num_, b.den_ / g);
        Int rhs = mul_checked(b.num_, a.den_ / g);
        return Rational(add_checked(lhs, rhs), mul_checked(a.den_ / g, b.den_));
    }
    friend Rational operator-(const Rational& a) {
        Rational r;
        r.num_ = neg_checked(a.num_);
        r.den_ = a.den_;
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Int g1 = gcd(a.num_, b.den_);
        Int g2 = gcd(b.num_, a.den_);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        return Rational(mul_checked(a.num_ / g1, b.num_ / g2), mul_checked(a.den_ / g2, b.den_ / g1));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw InvalidArgument("rational division by zero");
        return a * Rational(b.den_, b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        return lhs <=> rhs;
    }

    /// Representative of this value modulo m*Z, in [0, m).
    Rational mod(Int m) const {
        Int period = mul_checked(m, den_);
        return Rational(k3cusps::mod(num_, period), den_);
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "p", "-p" or "p/q".
    static Rational parse(std::string_view text) {
        auto to_int = [&](std::string_view s) -> Int {
            if (s.empty()) throw InvalidArgument("malformed rational '" + std::string(text) + "'");
            std::size_t pos = 0;
            Int v = 0;
            try {
                v = std::stoll(std::string(s), &pos);
            } catch (const std::exception&) {
                throw InvalidArgument("malformed rational '" + std::string(text) + "'");
            }
            if (pos != s.size()) throw InvalidArgument("malformed rational '" + std::string(text) + "'");
            return v;
        };
        auto slash = text.find('/');
        if (slash == std::string_view::npos) return Rational(to_int(text));
        Int den = to_int(text.substr(slash + 1));
        if (den == 0) throw InvalidArgument("malformed rational '" + std::string(text) + "': zero denominator");
        return Rational(to_int(text.substr(0, slash)), den);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = neg_checked(num_);
            den_ = neg_checked(den_);
        }
        Int g = gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Int num_ = 0;
    Int den_ = 1;
};

} // namespace k3cusps
