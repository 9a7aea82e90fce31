#pragma once

#include <algorithm>
#include <compare>
#include <set>
#include <string>
#include <vector>

#include "k3cusps/arith.hpp"
#include "k3cusps/mukai.hpp"

namespace k3cusps {

/// Classifying invariant (k, e) of a Gamma_0(n)-cusp: e | n and k a unit modulo
/// d = gcd(e, n/e), stored as its least positive representative (k = 1 when d = 1).
struct CuspLabel {
    Int n = 1;
    Int e = 1;
    Int k = 1;

    Int d() const { return gcd(e, n / e); }

    friend bool operator==(const CuspLabel&, const CuspLabel&) = default;
    friend auto operator<=>(const CuspLabel&, const CuspLabel&) = default;

    std::string str() const { return "(" + std::to_string(k) + "," + std::to_string(e) + ")"; }
};

inline CuspLabel make_cusp_label(Int n, Int k, Int e) {
    check_half_degree(n);
    if (e < 1 || n % e != 0) throw InvalidArgument("cusp label: e must be a positive divisor of n");
    Int d = gcd(e, n / e);
    if (gcd(k, d) != 1) throw InvalidArgument("cusp label: k must be a unit modulo gcd(e, n/e)");
    return {n, e, positive_residue(k, d)};
}

/// One orbit of the Fricke involution on Gamma_0(n)-cusps, represented by its
/// canonical label: the member with the larger e, and when e^2 = n the residue
/// min(k, d - k).
struct FrickeCuspClass {
    CuspLabel canonical;

    friend bool operator==(const FrickeCuspClass&, const FrickeCuspClass&) = default;
    friend auto operator<=>(const FrickeCuspClass&, const FrickeCuspClass&) = default;
};

/// Units alpha mod n (in [1, n]) with alpha * e == r (mod n), e = gcd(r, n).
inline std::vector<Int> admissible_units(const ExtendedRational& t, Int n) {
    check_half_degree(n);
    const Int r = t.den();
    const Int e = gcd(r, n);
    std::vector<Int> out;
    for (Int alpha : units_mod(n))
        if (mod(mul_checked(alpha, e), n) == mod(r, n)) out.push_back(alpha);
    return out;
}

/// Label of the boundary point s/r (oo = 1/0): e = gcd(r, n), k = alpha * s mod d
/// for a unit alpha with alpha * e == r mod n.
inline CuspLabel cusp_label_with_unit(const ExtendedRational& t, Int n, Int alpha) {
    const Int r = t.den();
    const Int s = t.num();
    const Int e = gcd(r, n);
    const Int d = gcd(e, n / e);
    return {n, e, positive_residue(mul_checked(mod(alpha, d), mod(s, d)), d)};
}

inline CuspLabel cusp_label_of_rational(const ExtendedRational& t, Int n) {
    check_half_degree(n);
    const Int r = t.den();
    const Int e = gcd(r, n);
    for (Int alpha = 1; alpha <= n; ++alpha)
        if (gcd(alpha, n) == 1 && mod(mul_checked(alpha, e), n) == mod(r, n)) return cusp_label_with_unit(t, n, alpha);
    throw Error("no unit alpha with alpha * e == r mod n");
}

/// k~ / e with k~ the least positive integer congruent to k mod d and prime to e.
inline ExtendedRational rational_of_cusp_label(const CuspLabel& c) {
    const Int d = c.d();
    for (Int kt = c.k;; kt = add_checked(kt, d))
        if (gcd(kt, c.e) == 1) return ExtendedRational(kt, c.e);
}

/// Every Gamma_0(n)-cusp label, ordered by e ascending, then k.
inline std::vector<CuspLabel> gamma0_cusps(Int n) {
    check_half_degree(n);
    std::vector<CuspLabel> out;
    for (Int e : divisors(n))
        for (Int k : units_mod(gcd(e, n / e))) out.push_back({n, e, k});
    return out;
}

/// Closed form sum over e | n of phi(gcd(e, n/e)).
inline Int gamma0_cusp_count(Int n) {
    Int total = 0;
    for (Int e : divisors(n)) total += euler_phi(gcd(e, n / e));
    return total;
}

/// (k, e) -> (-k, n/e).
inline CuspLabel fricke_image(const CuspLabel& c) {
    const Int d = c.d();
    return {c.n, c.n / c.e, positive_residue(neg_checked(c.k), d)};
}

inline FrickeCuspClass fricke_class_of_label(const CuspLabel& c) {
    CuspLabel other = fricke_image(c);
    if (c.e > other.e) return {c};
    if (c.e < other.e) return {other};
    return {CuspLabel{c.n, c.e, std::min(c.k, other.k)}};
}

inline std::vector<CuspLabel> fricke_orbit(const FrickeCuspClass& cls) {
    CuspLabel other = fricke_image(cls.canonical);
    if (other == cls.canonical) return {cls.canonical};
    return {cls.canonical, other};
}

/// Fricke cusps listed stratum by stratum: for each d with d^2 | n, the labels
/// (k, d r) with n/d^2 = r s, gcd(r, s) = 1, r > s, and for d^2 = n the labels
/// (k', d) with k' running over (Z/dZ)^x / {+-1}.
inline std::vector<FrickeCuspClass> fricke_cusps(Int n) {
    check_half_degree(n);
    std::vector<FrickeCuspClass> out;
    for (Int d : square_divisor_roots(n)) {
        const Int m = n / (d * d);
        if (m == 1) {
            for (Int k : units_mod(d))
                if (k <= positive_residue(-k, d)) out.push_back({CuspLabel{n, d, k}});
            continue;
        }
        for (auto [r, s] : coprime_splittings(m)) {
            if (r <= s) continue;
            for (Int k : units_mod(d)) out.push_back({CuspLabel{n, d * r, k}});
        }
    }
    return out;
}

/// Fricke classes obtained by quotienting gamma0_cusps(n) by fricke_image,
/// sorted. Used as the independent route against fricke_cusps.
inline std::vector<FrickeCuspClass> fricke_orbits(Int n) {
    std::set<FrickeCuspClass> seen;
    for (const auto& c : gamma0_cusps(n)) seen.insert(fricke_class_of_label(c));
    return {seen.begin(), seen.end()};
}

inline FrickeCuspClass fricke_class_of_boundary_point(const ExtendedRational& t, Int n) {
    return fricke_class_of_label(cusp_label_of_rational(t, n));
}

} // namespace k3cusps
