#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "k3cusps/mukai.hpp"

namespace k3cusps {

/// An element [[a, b], [c, d]] of M_2(Q).
struct RationalMatrix2 {
    Rational a, b, c, d;

    static RationalMatrix2 identity() { return {1, 0, 0, 1}; }

    Rational trace() const { return a + d; }
    Rational det() const { return a * d - b * c; }

    friend bool operator==(const RationalMatrix2&, const RationalMatrix2&) = default;
    friend RationalMatrix2 operator+(const RationalMatrix2& x, const RationalMatrix2& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend RationalMatrix2 operator-(const RationalMatrix2& x, const RationalMatrix2& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    friend RationalMatrix2 operator*(const Rational& s, const RationalMatrix2& x) {
        return {s * x.a, s * x.b, s * x.c, s * x.d};
    }
    friend RationalMatrix2 operator*(const RationalMatrix2& x, const RationalMatrix2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }

    RationalMatrix2 inverse() const {
        Rational det_value = det();
        if (det_value.is_zero()) throw InvalidArgument("singular 2x2 matrix");
        return (Rational(1) / det_value) * RationalMatrix2{d, -b, -c, a};
    }

    std::string str() const {
        return "[[" + a.str() + "," + b.str() + "],[" + c.str() + "," + d.str() + "]]";
    }
};

/// g A g^{-1}
inline RationalMatrix2 conjugate(const RationalMatrix2& g, const RationalMatrix2& A) { return g * A * g.inverse(); }

/// (A, B) = -Tr(AB) / 2 on trace-zero matrices.
inline Rational trace_form(const RationalMatrix2& A, const RationalMatrix2& B) {
    return -(A * B).trace() / Rational(2);
}

/// Membership in the order {[[a, 2b], [2nc, d]] : a, b, c, d in Z, a + d even}.
inline bool in_order_O(const RationalMatrix2& A, Int n) {
    check_half_degree(n);
    if (!A.a.is_integer() || !A.b.is_integer() || !A.c.is_integer() || !A.d.is_integer()) return false;
    return A.b.num() % 2 == 0 && A.c.num() % (2 * n) == 0 && (A.a.num() + A.d.num()) % 2 == 0;
}

/// Membership in the Eichler order {[[a, b], [nc, d]] : a, b, c, d in Z}.
inline bool in_order_Oprime(const RationalMatrix2& A, Int n) {
    check_half_degree(n);
    if (!A.a.is_integer() || !A.b.is_integer() || !A.c.is_integer() || !A.d.is_integer()) return false;
    return A.c.num() % n == 0;
}

/// Z-basis of the order O: I, diag(-1, 1), [[0,0],[-2n,0]], [[0,2],[0,0]].
inline std::array<RationalMatrix2, 4> order_O_basis(Int n) {
    return {RationalMatrix2{1, 0, 0, 1}, RationalMatrix2{-1, 0, 0, 1}, RationalMatrix2{0, 0, -2 * n, 0},
            RationalMatrix2{0, 2, 0, 0}};
}

/// Integer coordinates of A in order_O_basis(n), or nullopt when A is not in O.
inline std::optional<IntVector> order_O_coordinates(const RationalMatrix2& A, Int n) {
    if (!in_order_O(A, n)) return std::nullopt;
    const Int x = A.a.num(), w = A.d.num();
    return IntVector{(x + w) / 2, (w - x) / 2, -A.c.num() / (2 * n), A.b.num() / 2};
}

/// Z-basis of the Eichler order: E11, E12, n E21, E22.
inline std::array<RationalMatrix2, 4> order_Oprime_basis(Int n) {
    return {RationalMatrix2{1, 0, 0, 0}, RationalMatrix2{0, 1, 0, 0}, RationalMatrix2{0, 0, n, 0},
            RationalMatrix2{0, 0, 0, 1}};
}

/// True iff g O' g^{-1} = O', checked on the basis in both directions.
inline bool normalizes_Oprime(const RationalMatrix2& g, Int n) {
    if (g.det().is_zero()) throw InvalidArgument("singular matrix cannot normalize the order");
    RationalMatrix2 g_inv = g.inverse();
    for (const auto& x : order_Oprime_basis(n)) {
        if (!in_order_Oprime(g * x * g_inv, n)) return false;
        if (!in_order_Oprime(g_inv * x * g, n)) return false;
    }
    return true;
}

/// Atkin-Lehner matrix gamma = [[a N, b], [n, N]] for a coprime splitting
/// n = N * M, with a N - b M = 1.
struct AtkinLehnerData {
    Int n = 1;
    Int N = 1;
    Int M = 1;
    Int a = 1;
    Int b = 0;

    RationalMatrix2 matrix() const { return {mul_checked(a, N), b, n, N}; }
};

/// Canonical solution: (a, b) = (0, -1) for (N, M) = (n, 1), otherwise the
/// unique b with 0 <= b < N.
inline AtkinLehnerData atkin_lehner(Int N, Int M, Int n) {
    check_half_degree(n);
    if (N < 1 || M < 1 || mul_checked(N, M) != n) throw InvalidArgument("N * M must equal n");
    if (gcd(N, M) != 1) throw InvalidArgument("N and M must be coprime");
    if (M == 1) return {n, N, M, 0, -1};
    // b == -M^{-1} (mod N)
    Int b = N == 1 ? 0 : mod(-*inverse_mod(M, N), N);
    Int a = add_checked(1, mul_checked(b, M)) / N;
    return {n, N, M, a, b};
}

inline std::vector<AtkinLehnerData> atkin_lehner_all(Int n) {
    std::vector<AtkinLehnerData> out;
    for (auto [N, M] : coprime_splittings(n)) out.push_back(atkin_lehner(N, M, n));
    return out;
}

/// Multiplier a N + b M of gamma on D ~ Z/2nZ, in [0, 2n).
inline Int disc_action_unit(const AtkinLehnerData& al) {
    Int u = add_checked(mul_checked(al.a, al.N), mul_checked(al.b, al.M));
    return mod(u, mul_checked(2, al.n));
}

/// One prime-power component of D ~ Z/2nZ and the sign gamma acts by there:
/// -1 on the p-part for p | N, +1 for p | M. When n is odd the 2-part is Z/2Z,
/// where the two signs agree and +1 is recorded.
struct DiscUnitComponent {
    Int prime = 2;
    Int modulus = 2;
    int expected_sign = 1;
    Int residue = 1;

    bool ok() const { return residue == mod(expected_sign, modulus); }
};

inline std::vector<DiscUnitComponent> disc_action_components(const AtkinLehnerData& al) {
    const Int two_n = mul_checked(2, al.n);
    const Int u = disc_action_unit(al);
    std::vector<DiscUnitComponent> out;
    for (const auto& pp : factorize(two_n)) {
        DiscUnitComponent c;
        c.prime = pp.prime;
        c.modulus = pp.value();
        c.expected_sign = al.N % pp.prime == 0 ? -1 : 1;
        c.residue = mod(u, c.modulus);
        out.push_back(c);
    }
    return out;
}

/// The same multiplier computed from conjugation: the class of diag(-1, 1)
/// generates D ~ Z/2nZ, and g diag(-1, 1) g^{-1} = u diag(-1, 1) modulo
/// the image of the extended Neron-Severi lattice. Works for any g normalizing O.
inline Int disc_action_by_conjugation(const RationalMatrix2& g, Int n) {
    RationalMatrix2 y = conjugate(g, RationalMatrix2{-1, 0, 0, 1});
    // y = a [[0,0],[-2n,0]] + b diag(-1,1) + c [[0,2],[0,0]]
    Rational a = -y.c / Rational(2 * n);
    Rational b = y.d;
    Rational c = y.b / Rational(2);
    if (!a.is_integer() || !b.is_integer() || !c.is_integer() || y.a != -y.d)
        throw InvalidArgument("conjugation does not preserve the trace-zero part of the order");
    return mod(b.num(), 2 * n);
}

/// Coordinates (a, b / 2n, c) in the extended Neron-Severi lattice of the
/// trace-zero matrix a [[0,0],[-2n,0]] + b diag(-1,1) + c [[0,2],[0,0]].
inline RationalVector order_to_mukai(const RationalMatrix2& A, Int n) {
    check_half_degree(n);
    if (!A.trace().is_zero()) throw InvalidArgument("matrix is not trace-zero");
    Rational a = -A.c / Rational(2 * n);
    Rational b = A.d;
    Rational c = A.b / Rational(2);
    return {a, b / Rational(2 * n), c};
}

} // namespace k3cusps
