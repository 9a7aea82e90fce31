#pragma once

#include <array>
#include <cctype>
#include <ostream>
#include <string>
#include <string_view>

#include "k3cusps/lattice.hpp"

namespace k3cusps {

/// A vector (r, kH, s) of the extended Neron-Severi lattice
/// Z(1,0,0) + ZH + Z(0,0,1) of a degree-2n K3 surface with Picard group ZH.
struct MukaiVector {
    Int n = 1;
    Int r = 0;
    Int k = 0;
    Int s = 0;

    bool is_zero() const { return r == 0 && k == 0 && s == 0; }
    std::array<Int, 3> coords() const { return {r, k, s}; }
    friend bool operator==(const MukaiVector&, const MukaiVector&) = default;

    std::string str() const {
        return "(" + std::to_string(r) + "," + std::to_string(k) + "," + std::to_string(s) + ")";
    }
    friend std::ostream& operator<<(std::ostream& os, const MukaiVector& v) { return os << v.str(); }
};

/// A point of Q u {oo}. Internally p/q in lowest terms with q > 0, and oo = 1/0.
class ExtendedRational {
public:
    ExtendedRational() = default;
    ExtendedRational(Int num, Int den) {
        if (num == 0 && den == 0) throw InvalidArgument("0/0 is not a boundary point");
        if (den == 0) {
            num_ = 1;
            den_ = 0;
            return;
        }
        if (den < 0) {
            num = neg_checked(num);
            den = neg_checked(den);
        }
        Int g = gcd(num, den);
        num_ = num / g;
        den_ = den / g;
    }
    ExtendedRational(const Rational& r) : ExtendedRational(r.num(), r.den()) {} // NOLINT(google-explicit-constructor)

    static ExtendedRational infinity() { return {1, 0}; }

    bool is_infinity() const { return den_ == 0; }
    Int num() const { return num_; }
    Int den() const { return den_; }

    friend bool operator==(const ExtendedRational&, const ExtendedRational&) = default;

    std::string str() const {
        if (is_infinity()) return "inf";
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Accepts "inf" (any case), "p" or "p/q".
    static ExtendedRational parse(std::string_view text) {
        std::string lower;
        for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        if (lower == "inf" || lower == "infinity" || lower == "oo") return infinity();
        return ExtendedRational(Rational::parse(text));
    }

    friend std::ostream& operator<<(std::ostream& os, const ExtendedRational& t) { return os << t.str(); }

private:
    Int num_ = 0;
    Int den_ = 1;
};

inline void check_half_degree(Int n) {
    if (n < 1) throw InvalidArgument("half-degree n must be positive");
}

/// ((r,k,s),(r',k',s')) = 2n kk' - rs' - sr'.
inline Int mukai_pairing(const MukaiVector& v, const MukaiVector& w) {
    if (v.n != w.n) throw InvalidArgument("Mukai vectors belong to different degrees");
    Int hh = mul_checked(mul_checked(2, v.n), mul_checked(v.k, w.k));
    return sub_checked(sub_checked(hh, mul_checked(v.r, w.s)), mul_checked(v.s, w.r));
}

/// Mukai pairing extended to rational coordinates (r, k, s).
inline Rational mukai_pairing(const RationalVector& v, const RationalVector& w, Int n) {
    if (v.size() != 3 || w.size() != 3) throw InvalidArgument("Mukai vectors have three coordinates");
    return Rational(2 * n) * v[1] * w[1] - v[0] * w[2] - v[2] * w[0];
}

/// Gram matrix of the extended Neron-Severi lattice in the basis
/// (1,0,0), H, (0,0,1).
inline EvenLattice extended_ns_lattice(Int n) {
    check_half_degree(n);
    return EvenLattice(IntMatrix{{0, 0, -1}, {0, 2 * n, 0}, {-1, 0, 0}});
}

inline Int mukai_div(const MukaiVector& v) {
    if (v.is_zero()) throw InvalidArgument("zero vector has no divisibility");
    return gcd(gcd(v.r, v.s), mul_checked(mul_checked(2, v.n), v.k));
}

inline bool is_primitive_isotropic(const MukaiVector& v) {
    return gcd(gcd(v.r, v.k), v.s) == 1 && mukai_pairing(v, v) == 0;
}

/// Normalizes the sign so that r > 0, or r = 0 and s > 0, or r = s = 0 and k > 0.
inline MukaiVector normalize_sign(MukaiVector v) {
    bool flip = v.r < 0 || (v.r == 0 && (v.s < 0 || (v.s == 0 && v.k < 0)));
    if (flip) {
        v.r = neg_checked(v.r);
        v.k = neg_checked(v.k);
        v.s = neg_checked(v.s);
    }
    return v;
}

/// Primitive isotropic vector spanning the boundary line of the tube domain at t:
/// a/b -> (b^2, ab, a^2 n) / gcd, and oo -> (0, 0, 1).
inline MukaiVector vector_from_boundary_point(const ExtendedRational& t, Int n) {
    check_half_degree(n);
    if (t.is_infinity()) return {n, 0, 0, 1};
    const Int a = t.num(), b = t.den();
    Int r = mul_checked(b, b);
    Int k = mul_checked(a, b);
    Int s = mul_checked(mul_checked(a, a), n);
    Int g = gcd(gcd(r, k), s);
    return normalize_sign({n, r / g, k / g, s / g});
}

/// (a, l, b) -> (d a, l, b / d).
inline RationalVector kappa_scale(const MukaiVector& v, Int d) {
    if (d < 1) throw InvalidArgument("kappa scaling factor must be positive");
    return {Rational(mul_checked(d, v.r)), Rational(v.k), Rational(v.s, d)};
}

/// Residue [g^{-1} r] in Z/nZ with g = gcd(r, k); used to identify the K3 surface
/// underlying the moduli space of sheaves with Mukai vector v. Returns a value in [0, n).
inline Int underlying_k3_class(const MukaiVector& v) {
    check_half_degree(v.n);
    if (!is_primitive_isotropic(v)) throw InvalidArgument("vector is not primitive isotropic");
    if (v.r == 0) return 0; // (0, 0, +-1)
    Int g = gcd(v.r, v.k);
    auto inv = inverse_mod(g, v.n);
    if (!inv)
        throw NotInvertible("gcd(r, k) = " + std::to_string(g) + " is not invertible modulo " + std::to_string(v.n));
    return mod(mul_checked(*inv, mod(v.r, v.n)), v.n);
}

} // namespace k3cusps
