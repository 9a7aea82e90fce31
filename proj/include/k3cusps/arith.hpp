#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "k3cusps/errors.hpp"

namespace k3cusps {

using Int = std::int64_t;

// Overflow-checked integer primitives. Everything in the library goes through
// these so that a silent wraparound can never masquerade as a result.

inline Int add_checked(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow("integer overflow in addition");
    return r;
}

inline Int sub_checked(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow("integer overflow in subtraction");
    return r;
}

inline Int mul_checked(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow("integer overflow in multiplication");
    return r;
}

inline Int neg_checked(Int a) { return sub_checked(0, a); }

inline Int abs_checked(Int a) { return a < 0 ? neg_checked(a) : a; }

/// Nonnegative gcd with gcd(0, m) = |m|.
inline Int gcd(Int a, Int b) { return std::gcd(abs_checked(a), abs_checked(b)); }

inline Int lcm(Int a, Int b) {
    if (a == 0 || b == 0) return 0;
    return mul_checked(abs_checked(a) / gcd(a, b), abs_checked(b));
}

/// Least nonnegative residue of a modulo m (m > 0).
inline Int mod(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + m : r;
}

/// floor(a / b) for b > 0.
inline Int floor_div(Int a, Int b) { return (a - mod(a, b)) / b; }

/// Residue of a modulo m as the least positive representative, i.e. in [1, m].
/// Used for labels where the modulus may be 1 and the residue is written as 1.
inline Int positive_residue(Int a, Int m) {
    Int r = mod(a, m);
    return r == 0 ? m : r;
}

struct ExtendedGcd {
    Int g;
    Int x;
    Int y;
};

/// g = a*x + b*y with g = gcd(a, b) >= 0.
inline ExtendedGcd extended_gcd(Int a, Int b) {
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = sub_checked(old_r, mul_checked(q, r));
        old_r = r;
        r = tmp;
        tmp = sub_checked(old_s, mul_checked(q, s));
        old_s = s;
        s = tmp;
        tmp = sub_checked(old_t, mul_checked(q, t));
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {neg_checked(old_r), neg_checked(old_s), neg_checked(old_t)};
    return {old_r, old_s, old_t};
}

/// Inverse of a modulo m in [0, m), or nullopt when gcd(a, m) != 1.
inline std::optional<Int> inverse_mod(Int a, Int m) {
    if (m == 1) return Int{0};
    auto [g, x, y] = extended_gcd(mod(a, m), m);
    (void)y;
    if (g != 1) return std::nullopt;
    return mod(x, m);
}

struct PrimePower {
    Int prime;
    int exponent;

    Int value() const {
        Int v = 1;
        for (int i = 0; i < exponent; ++i) v = mul_checked(v, prime);
        return v;
    }
};

/// Trial-division factorization, primes ascending. factorize(1) is empty.
inline std::vector<PrimePower> factorize(Int n) {
    if (n <= 0) throw InvalidArgument("factorize: n must be positive");
    std::vector<PrimePower> out;
    for (Int p = 2; p <= n / p; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

/// Positive divisors in ascending order.
inline std::vector<Int> divisors(Int n) {
    if (n <= 0) throw InvalidArgument("divisors: n must be positive");
    std::vector<Int> small, large;
    for (Int d = 1; d <= n / d; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline Int euler_phi(Int n) {
    Int phi = n;
    for (const auto& pp : factorize(n)) phi = phi / pp.prime * (pp.prime - 1);
    return phi;
}

/// Units of Z/mZ as least positive representatives in [1, m]; {1} for m = 1.
inline std::vector<Int> units_mod(Int m) {
    if (m <= 0) throw InvalidArgument("units_mod: modulus must be positive");
    if (m == 1) return {1};
    std::vector<Int> out;
    for (Int k = 1; k < m; ++k)
        if (gcd(k, m) == 1) out.push_back(k);
    return out;
}

/// Every ordered factorization m = r*s with gcd(r, s) = 1, sorted by r descending.
inline std::vector<std::pair<Int, Int>> coprime_splittings(Int m) {
    auto pps = factorize(m);
    std::vector<std::pair<Int, Int>> out;
    const std::size_t count = std::size_t{1} << pps.size();
    for (std::size_t mask = 0; mask < count; ++mask) {
        Int r = 1;
        for (std::size_t i = 0; i < pps.size(); ++i)
            if (mask & (std::size_t{1} << i)) r = mul_checked(r, pps[i].value());
        out.emplace_back(r, m / r);
    }
    std::sort(out.begin(), out.end(), [](auto a, auto b) { return a.first > b.first; });
    return out;
}

/// All d >= 1 with d^2 | n, ascending.
inline std::vector<Int> square_divisor_roots(Int n) {
    std::vector<Int> out;
    for (Int d = 1; d <= n / d; ++d)
        if (n % (d * d) == 0) out.push_back(d);
    return out;
}

} // namespace k3cusps
