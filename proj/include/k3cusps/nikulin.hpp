#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "k3cusps/lattice.hpp"

namespace k3cusps {

/// A primitive sublattice M of a unimodular lattice L, its complement M^perp,
/// and the gluing isomorphism lambda : D_M -> D_{M^perp} with x + lambda(x) in L.
struct GluingTable {
    EvenLattice sub;
    EvenLattice perp;
    IntMatrix sub_basis;  // n x k, columns in ambient coordinates
    IntMatrix perp_basis; // n x (n - k)
    DiscriminantForm sub_form;
    DiscriminantForm perp_form;
    std::vector<std::pair<DiscElement, DiscElement>> correspondence;

    DiscElement lambda(const DiscElement& x) const {
        auto it = std::lower_bound(correspondence.begin(), correspondence.end(), x,
                                   [](const auto& entry, const DiscElement& key) { return entry.first < key; });
        if (it == correspondence.end() || !(it->first == x)) throw InvalidArgument("element not in gluing table");
        return it->second;
    }
};

namespace detail {

inline IntMatrix basis_matrix(const std::vector<IntVector>& vectors, std::size_t n) {
    for (const auto& v : vectors)
        if (v.size() != n) throw InvalidArgument("sublattice vector length does not match ambient rank");
    return IntMatrix::from_columns(vectors, n);
}

} // namespace detail

/// Builds M^perp, both discriminant forms, and the correspondence lambda_L.
/// Every entry is checked against q_M(x) = -q_{M^perp}(lambda(x)) mod 2.
inline GluingTable nikulin_lambda(const EvenLattice& ambient, const std::vector<IntVector>& sublattice_basis,
                                  std::size_t budget = kEnumerationBudget) {
    if (!ambient.is_unimodular()) throw NotUnimodular("ambient lattice is not unimodular");
    const std::size_t n = ambient.rank();
    IntMatrix B = detail::basis_matrix(sublattice_basis, n);
    if (smith_rank(B) != B.cols()) throw InvalidArgument("sublattice basis is linearly dependent");
    if (!spans_primitive_sublattice(B)) throw NotPrimitive("sublattice is not primitive");

    IntMatrix A = B.transpose() * ambient.gram(); // k x n, row j = pairing with m_j
    IntMatrix sub_gram = A * B;
    if (B.cols() > 0 && determinant(sub_gram) == 0) throw InvalidArgument("sublattice is degenerate");
    IntMatrix P = integer_kernel(A);
    IntMatrix perp_gram = P.transpose() * ambient.gram() * P;

    EvenLattice sub(sub_gram);
    EvenLattice perp(perp_gram);
    DiscriminantForm sub_form(sub);
    DiscriminantForm perp_form(perp);

    // A is surjective onto Z^k, so its Smith form is [I | 0] and A l = t is
    // solved by l = V * (U t, 0).
    SmithForm snf = smith_normal_form(A);
    for (std::size_t i = 0; i < A.rows(); ++i)
        if (snf.D(i, i) != 1) throw Error("pairing map onto the dual of the sublattice is not surjective");
    RationalMatrix P_rat = to_rational(P);

    std::vector<std::pair<DiscElement, DiscElement>> table;
    for (auto& x : sub_form.elements(budget)) {
        RationalVector xi = sub_form.representative(x);
        RationalVector t_rat = to_rational(sub_gram) * xi;
        IntVector t(t_rat.size());
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = t_rat[i].num();
        IntVector ut = snf.U * t;
        IntVector padded(n, 0);
        std::copy(ut.begin(), ut.end(), padded.begin());
        IntVector l = snf.V * padded;

        RationalVector x_ambient = to_rational(B) * xi;
        RationalVector y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = Rational(l[i]) - x_ambient[i];
        auto eta = solve_full_column_rank(P_rat, y);
        if (!eta) throw Error("glue component does not lie in the orthogonal complement");
        DiscElement image = perp_form.class_of(*eta);

        if (!(sub_form.q(x) + perp_form.q(image)).mod(2).is_zero())
            throw Error("gluing map does not negate the discriminant quadratic form");
        table.emplace_back(std::move(x), std::move(image));
    }
    std::sort(table.begin(), table.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return {std::move(sub),      std::move(perp),      std::move(B), std::move(P),
            std::move(sub_form), std::move(perp_form), std::move(table)};
}

/// True iff gM (+) gPerp extends to an isometry of the ambient lattice, decided
/// on discriminant groups: lambda o r(gM) == r(gPerp) o lambda.
inline bool glue_extension_check(const GluingTable& glue, const IntMatrix& g_sub, const IntMatrix& g_perp) {
    if (!is_isometry(glue.sub, g_sub)) throw NotIsometry("g_sub is not an isometry of the sublattice");
    if (!is_isometry(glue.perp, g_perp)) throw NotIsometry("g_perp is not an isometry of the complement");
    const std::size_t k = glue.sub_form.divisors().size();
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Int> unit(k, 0);
        unit[i] = 1;
        DiscElement x = glue.sub_form.element(unit);
        DiscElement lhs = glue.lambda(glue.sub_form.act(g_sub, x));
        DiscElement rhs = glue.perp_form.act(g_perp, glue.lambda(x));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

inline bool glue_extension_check(const EvenLattice& ambient, const std::vector<IntVector>& sublattice_basis,
                                 const IntMatrix& g_sub, const IntMatrix& g_perp) {
    return glue_extension_check(nikulin_lambda(ambient, sublattice_basis), g_sub, g_perp);
}

/// The block map gM (+) gPerp written in ambient coordinates (rational in general).
inline RationalMatrix block_action_in_ambient(const GluingTable& glue, const IntMatrix& g_sub, const IntMatrix& g_perp) {
    const std::size_t n = glue.sub_basis.rows();
    const std::size_t k = glue.sub_basis.cols();
    IntMatrix full(n, n), block(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) full(i, j) = glue.sub_basis(i, j);
        for (std::size_t j = k; j < n; ++j) full(i, j) = glue.perp_basis(i, j - k);
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) block(i, j) = g_sub(i, j);
    for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < n; ++j) block(i, j) = g_perp(i - k, j - k);
    RationalMatrix f = to_rational(full);
    return f * to_rational(block) * inverse(f);
}

/// Direct route: gM (+) gPerp preserves the ambient lattice iff its ambient
/// matrix is integral.
inline bool block_isometry_preserves_ambient(const GluingTable& glue, const IntMatrix& g_sub, const IntMatrix& g_perp) {
    RationalMatrix t = block_action_in_ambient(glue, g_sub, g_perp);
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j)
            if (!t(i, j).is_integer()) return false;
    return true;
}

} // namespace k3cusps
