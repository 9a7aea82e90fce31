#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "k3cusps/cusps.hpp"
#include "k3cusps/mukai.hpp"

namespace k3cusps {

/// A coprime splitting n / d^2 = r * s with r > s, or (1, 1) when d^2 = n.
struct SigmaPair {
    Int r = 1;
    Int s = 1;
    friend bool operator==(const SigmaPair&, const SigmaPair&) = default;
};

/// One twisted Fourier-Mukai partner of a degree-2n K3 surface of Picard rank 1:
/// the moduli space of sheaves with Mukai vector (d r, k~ H, k~^2 d s), whose
/// Brauer class has order d.
struct PartnerDescriptor {
    Int n = 1;
    Int d = 1;
    SigmaPair sigma;
    Int k = 1;
    Int k_tilde = 1;
    MukaiVector vector;
    FrickeCuspClass cusp;
    Int k3_class = 0;

    /// k~ / (d r), the boundary point whose tube-domain line is spanned by `vector`.
    ExtendedRational boundary_point() const { return {k_tilde, d * sigma.r}; }
};

inline void check_partner_order(Int n, Int d) {
    check_half_degree(n);
    if (d < 1) throw InvalidArgument("Brauer order d must be positive");
    if (n % (d * d) != 0)
        throw InvalidArgument("no partners for this order: d^2 = " + std::to_string(d * d) + " does not divide n = " +
                              std::to_string(n));
}

inline std::vector<SigmaPair> sigma_set(Int n, Int d) {
    check_partner_order(n, d);
    const Int m = n / (d * d);
    if (m == 1) return {{1, 1}};
    std::vector<SigmaPair> out;
    for (auto [r, s] : coprime_splittings(m))
        if (r > s) out.push_back({r, s});
    return out;
}

/// Least positive k~ with k~ == k (mod d) and gcd(k~, 2n) = 1.
inline Int k_tilde(Int k, Int d, Int n) {
    check_half_degree(n);
    if (d < 1) throw InvalidArgument("modulus d must be positive");
    if (gcd(k, d) != 1) throw InvalidArgument("k must be a unit modulo d");
    const Int two_n = mul_checked(2, n);
    for (Int kt = positive_residue(k, d);; kt = add_checked(kt, d))
        if (gcd(kt, two_n) == 1) return kt;
}

/// v = (d r, k~, k~^2 d s).
inline MukaiVector partner_vector(const SigmaPair& sigma, Int k, Int d, Int n) {
    check_partner_order(n, d);
    if (sigma.r * sigma.s != n / (d * d) || gcd(sigma.r, sigma.s) != 1)
        throw InvalidArgument("sigma is not a coprime splitting of n / d^2");
    const Int kt = k_tilde(k, d, n);
    return {n, mul_checked(d, sigma.r), kt, mul_checked(mul_checked(mul_checked(kt, kt), d), sigma.s)};
}

/// Residues k indexing the partners of a given order: all of (Z/dZ)^x when
/// d^2 < n, and the representatives min(k, d - k) of (Z/dZ)^x / {+-1} when d^2 = n.
inline std::vector<Int> partner_residues(Int n, Int d) {
    std::vector<Int> out;
    for (Int k : units_mod(d))
        if (d * d < n || k <= positive_residue(-k, d)) out.push_back(k);
    return out;
}

/// The partners with Brauer order d, each tagged with its Fricke cusp class
/// via v -> k~/(d r) -> (k, d r). Empty when d^2 does not divide n.
inline std::vector<PartnerDescriptor> fm_partners(Int n, Int d) {
    check_half_degree(n);
    if (d < 1) throw InvalidArgument("Brauer order d must be positive");
    if (n % (d * d) != 0) return {};
    std::vector<PartnerDescriptor> out;
    for (const auto& sigma : sigma_set(n, d))
        for (Int k : partner_residues(n, d)) {
            PartnerDescriptor p;
            p.n = n;
            p.d = d;
            p.sigma = sigma;
            p.k = k;
            p.k_tilde = k_tilde(k, d, n);
            p.vector = partner_vector(sigma, k, d, n);
            p.cusp = fricke_class_of_label(CuspLabel{n, d * sigma.r, k});
            p.k3_class = underlying_k3_class(p.vector);
            out.push_back(p);
        }
    return out;
}

inline std::vector<PartnerDescriptor> fm_partners(Int n) {
    std::vector<PartnerDescriptor> out;
    for (Int d : square_divisor_roots(n)) {
        auto part = fm_partners(n, d);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

inline Int total_partner_count(Int n) {
    check_half_degree(n);
    Int total = 0;
    for (Int d : square_divisor_roots(n)) total += static_cast<Int>(fm_partners(n, d).size());
    return total;
}

/// What the boundary point a/b of the Kahler moduli resolves to.
struct BoundaryClassification {
    ExtendedRational point;
    CuspLabel label;
    FrickeCuspClass cusp;
    PartnerDescriptor partner;
    /// b mod n (0 for oo = 1/0).
    Int denominator_class = 0;
    /// A unit alpha mod n with alpha * label.e == b (mod n).
    Int unit = 1;
    /// True when the canonical Fricke label is the Fricke image of `label`.
    bool fricke_flipped = false;
};

inline BoundaryClassification classify_boundary_point(const ExtendedRational& t, Int n) {
    check_half_degree(n);
    BoundaryClassification out;
    out.point = t;
    out.label = cusp_label_of_rational(t, n);
    out.cusp = fricke_class_of_label(out.label);
    out.denominator_class = mod(t.den(), n);
    out.unit = admissible_units(t, n).front();
    out.fricke_flipped = !(out.cusp.canonical == out.label);
    for (const auto& p : fm_partners(n))
        if (p.cusp == out.cusp) {
            out.partner = p;
            return out;
        }
    throw Error("boundary point " + t.str() + " has no partner: Fricke class " + out.cusp.canonical.str());
}

struct BijectionFailure {
    std::string check;
    std::string detail;
};

struct StratumCount {
    Int d = 1;
    Int partners = 0;
    Int fricke_classes = 0;
};

/// Per-n comparison of the twisted partners with the Fricke cusps.
struct BijectionReport {
    Int n = 1;
    std::vector<StratumCount> strata;
    Int partner_total = 0;
    Int cusp_total = 0;
    std::vector<BijectionFailure> failures;

    bool ok() const { return failures.empty(); }
};

/// Checks, per Brauer order d: the partner count matches the d-stratum of the
/// Fricke orbits of Gamma_0(n)-cusps; descriptor -> cusp class is injective;
/// the tube-domain line at k~/(d r) is spanned exactly by v; and the totals and
/// the full image agree with fricke_cusps(n).
inline BijectionReport verify_bijection(Int n) {
    check_half_degree(n);
    BijectionReport report;
    report.n = n;
    auto fail = [&](std::string check, std::string detail) {
        report.failures.push_back({std::move(check), std::move(detail)});
    };

    auto orbits = fricke_orbits(n);
    std::map<Int, Int> orbit_strata;
    for (const auto& cls : orbits) ++orbit_strata[cls.canonical.d()];

    std::set<FrickeCuspClass> image;
    for (Int d : square_divisor_roots(n)) {
        auto partners = fm_partners(n, d);
        report.strata.push_back({d, static_cast<Int>(partners.size()), orbit_strata[d]});
        if (static_cast<Int>(partners.size()) != orbit_strata[d])
            fail("stratum count", "d=" + std::to_string(d) + ": " + std::to_string(partners.size()) + " partners vs " +
                                      std::to_string(orbit_strata[d]) + " Fricke classes");
        for (const auto& p : partners) {
            if (!image.insert(p.cusp).second)
                fail("injectivity", "vector " + p.vector.str() + " repeats cusp class " + p.cusp.canonical.str());
            MukaiVector from_point = vector_from_boundary_point(p.boundary_point(), n);
            if (!(from_point == p.vector))
                fail("tube domain", "point " + p.boundary_point().str() + " gives " + from_point.str() + ", expected " +
                                        p.vector.str());
            if (!(fricke_class_of_boundary_point(p.boundary_point(), n) == p.cusp))
                fail("cusp of point", "point " + p.boundary_point().str() + " does not lie in cusp class " +
                                          p.cusp.canonical.str());
            ++report.partner_total;
        }
    }
    for (const auto& [d, count] : orbit_strata)
        if (n % (d * d) != 0 && count != 0)
            fail("stratum count", "Fricke classes with d=" + std::to_string(d) + " but d^2 does not divide n");

    auto cusps = fricke_cusps(n);
    report.cusp_total = static_cast<Int>(cusps.size());
    if (report.partner_total != report.cusp_total)
        fail("total", std::to_string(report.partner_total) + " partners vs " + std::to_string(report.cusp_total) +
                          " Fricke cusps");
    std::set<FrickeCuspClass> cusp_set(cusps.begin(), cusps.end());
    if (cusp_set != image) fail("image", "partner cusp classes differ from the Fricke cusp set");
    if (cusp_set.size() != orbits.size()) fail("orbits", "fricke_cusps disagrees with the Fricke orbit count");
    return report;
}

} // namespace k3cusps
