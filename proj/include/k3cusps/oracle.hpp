#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3cusps/cusps.hpp"

namespace k3cusps {

// Brute-force search over Gamma_0(n) = {[[a,b],[c,d]] : ad - bc = 1, n | c}
// restricted to |a|, |b|, |c|, |d| <= bound. None of this consults cusp labels.
//
// The searches enumerate c first (c >= 0, since g and -g act identically) and
// solve the remaining entries from the linear constraints instead of scanning
// them, so each call costs O(bound / n) rather than O(bound^4). Among all
// solutions the witness with the smallest max-entry is returned, ties broken
// lexicographically; this is the first hit of a shell-by-shell scan.

/// A bounded search can only certify equivalence; failing to find a witness is
/// reported as unknown, never as inequivalence.
enum class OracleVerdict { equivalent, unknown };

/// [[a, b], [c, d]]
using Sl2Matrix = std::array<Int, 4>;

struct OracleResult {
    OracleVerdict verdict = OracleVerdict::unknown;
    std::optional<Sl2Matrix> witness;
};

namespace detail {

inline bool within(Int v, Int bound) { return v >= -bound && v <= bound; }

inline bool in_gamma0(const Sl2Matrix& g, Int n, Int bound) {
    auto [a, b, c, d] = g;
    return a * d - b * c == 1 && c % n == 0 && within(a, bound) && within(b, bound) && within(c, bound) &&
           within(d, bound);
}

inline Int max_entry(const Sl2Matrix& g) {
    Int m = 0;
    for (Int x : g) m = std::max(m, x < 0 ? -x : x);
    return m;
}

// g and -g act identically; keep the one with c > 0, or c == 0 and a > 0.
inline Sl2Matrix sign_normalized(Sl2Matrix g) {
    if (g[2] < 0 || (g[2] == 0 && g[0] < 0))
        for (Int& x : g) x = -x;
    return g;
}

inline void keep_smallest(std::optional<Sl2Matrix>& best, Sl2Matrix g) {
    g = sign_normalized(g);
    if (!best || max_entry(g) < max_entry(*best) || (max_entry(g) == max_entry(*best) && g < *best)) best = g;
}

// Column vector of a boundary point; oo = (1, 0).
inline std::array<Int, 2> column(const ExtendedRational& t) { return {t.num(), t.den()}; }

// gamma . (p, q) == +-(p2, q2) for some gamma, where q != 0 and q2 != 0.
inline std::optional<Sl2Matrix> search_finite(Int p, Int q, Int p2, Int q2, Int n, Int bound) {
    std::optional<Sl2Matrix> best;
    for (Int c = 0; c <= bound; c += n) {
        for (Int eps : {1, -1}) {
            // c p + d q = eps q2
            Int num = eps * q2 - c * p;
            if (num % q != 0) continue;
            Int d = num / q;
            if (!within(d, bound)) continue;
            // a p + b q = eps p2 and a d - b c = 1; the system has determinant -eps q2.
            Int a_num = eps * p2 * c + q;
            Int b_num = eps * d * p2 - p;
            Int den = eps * q2;
            if (a_num % den != 0 || b_num % den != 0) continue;
            Sl2Matrix g{a_num / den, b_num / den, c, d};
            if (in_gamma0(g, n, bound)) keep_smallest(best, g);
        }
    }
    return best;
}

// gamma . (1, 0) == +-(p2, q2) with q2 != 0: (a, c) = eps (p2, q2), scan d.
inline std::optional<Sl2Matrix> search_from_infinity(Int p2, Int q2, Int n, Int bound) {
    std::optional<Sl2Matrix> best;
    for (Int eps : {1, -1}) {
        Int a = eps * p2, c = eps * q2;
        if (c % n != 0 || !within(a, bound) || !within(c, bound)) continue;
        for (Int d = -bound; d <= bound; ++d) {
            Int num = a * d - 1;
            if (num % c != 0) continue;
            Sl2Matrix g{a, num / c, c, d};
            if (in_gamma0(g, n, bound)) keep_smallest(best, g);
        }
    }
    return best;
}

inline Sl2Matrix inverse(const Sl2Matrix& g) { return sign_normalized({g[3], -g[1], -g[2], g[0]}); }

} // namespace detail

/// Searches for gamma in Gamma_0(n) with entries bounded by `bound` and gamma(t1) = t2.
inline OracleResult oracle_gamma0_equivalent(const ExtendedRational& t1, const ExtendedRational& t2, Int n, Int bound) {
    check_half_degree(n);
    if (bound < n) throw InvalidArgument("oracle bound must be at least n");
    if (t1 == t2) return {OracleVerdict::equivalent, Sl2Matrix{1, 0, 0, 1}};
    auto [p, q] = detail::column(t1);
    auto [p2, q2] = detail::column(t2);
    std::optional<Sl2Matrix> g;
    if (q == 0) {
        g = detail::search_from_infinity(p2, q2, n, bound);
    } else if (q2 == 0) {
        g = detail::search_from_infinity(p, q, n, bound);
        if (g) g = detail::inverse(*g);
    } else {
        g = detail::search_finite(p, q, p2, q2, n, bound);
    }
    if (g) return {OracleVerdict::equivalent, g};
    return {};
}

/// The reduced boundary points used for sweeps: oo, then a/b with
/// 1 <= b <= max_denominator, 0 <= a < b, gcd(a, b) = 1.
inline std::vector<ExtendedRational> boundary_points(Int max_denominator) {
    std::vector<ExtendedRational> out{ExtendedRational::infinity()};
    for (Int b = 1; b <= max_denominator; ++b)
        for (Int a = 0; a < b; ++a)
            if (gcd(a, b) == 1) out.emplace_back(a, b);
    return out;
}

/// Index of a point of boundary_points(max_denominator), by (numerator, denominator).
class BoundaryPointIndex {
public:
    explicit BoundaryPointIndex(Int max_denominator) : max_den_(max_denominator), table_(max_denominator + 1) {
        std::size_t next = 1;
        for (Int b = 1; b <= max_denominator; ++b) {
            table_[b].assign(static_cast<std::size_t>(b), -1);
            for (Int a = 0; a < b; ++a)
                if (gcd(a, b) == 1) table_[b][a] = static_cast<long>(next++);
        }
        size_ = next;
    }
    std::size_t size() const { return size_; }
    /// -1 when the point is not in the set.
    long find(Int a, Int b) const {
        if (b == 0) return 0;
        if (b < 0 || b > max_den_ || a < 0 || a >= b) return -1;
        return table_[b][a];
    }

private:
    Int max_den_;
    std::vector<std::vector<long>> table_;
    std::size_t size_ = 0;
};

/// All points of boundary_points(max_denominator) that some gamma in Gamma_0(n)
/// with entries bounded by `bound` maps t to. Returned as indices into that list.
inline std::vector<std::size_t> oracle_orbit_within_bound(const ExtendedRational& t, Int n, Int bound,
                                                          const BoundaryPointIndex& index, Int max_denominator) {
    auto [p, q] = detail::column(t);
    std::vector<std::size_t> out;
    auto feasible_j = [&](Int a0, Int b0, Int c, Int d, Int& lo, Int& hi) {
        // |a0 + j c| <= bound and |b0 + j d| <= bound.
        lo = -bound * 4 - 4;
        hi = bound * 4 + 4;
        auto clip = [&](Int base, Int step) {
            if (step == 0) {
                if (!detail::within(base, bound)) hi = lo - 1;
                return;
            }
            Int a = -bound - base, b = bound - base; // step * j in [a, b]
            Int s = step > 0 ? step : -step;
            if (step < 0) {
                Int t2 = -a;
                a = -b;
                b = t2;
            }
            lo = std::max(lo, -floor_div(-a, s));
            hi = std::min(hi, floor_div(b, s));
        };
        clip(a0, c);
        clip(b0, d);
    };
    for (Int c = 0; c <= bound; c += n) {
        Int d_lo, d_hi;
        if (q == 0) {
            if (c > max_denominator) break;
            d_lo = -bound;
            d_hi = bound;
        } else {
            // |c p + d q| <= max_denominator
            d_lo = std::max(-bound, -floor_div(max_denominator + c * p, q));
            d_hi = std::min(bound, floor_div(max_denominator - c * p, q));
        }
        for (Int d = d_lo; d <= d_hi; ++d) {
            if (c == 0 && d != 1) continue; // g and -g act alike
            auto eg = extended_gcd(d, c);
            if (eg.g != 1) continue;
            Int a0 = eg.x, b0 = -eg.y; // a0 d - b0 c = 1
            Int den = c * p + d * q;
            Int num0 = a0 * p + b0 * q;
            Int lo, hi;
            feasible_j(a0, b0, c, d, lo, hi);
            if (lo > hi) continue;
            if (den == 0) {
                out.push_back(0);
                continue;
            }
            Int sgn = den > 0 ? 1 : -1;
            Int q2 = den * sgn;
            Int p2 = mod(sgn * num0, q2);
            // num0 + j den = sgn p2
            Int j = (sgn * p2 - num0) / den;
            if (j < lo || j > hi) continue;
            long idx = index.find(p2, q2);
            if (idx >= 0) out.push_back(static_cast<std::size_t>(idx));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct PartitionReport {
    Int n = 1;
    Int max_denominator = 0;
    Int bound = 0;
    std::size_t points = 0;
    std::size_t labels = 0;
    std::size_t pairs_equivalent = 0;
    std::size_t mismatched_points = 0;
    std::size_t unsound_pairs = 0; // witness joins two different labels
    std::size_t incomplete_points = 0; // some point with the same label was not reached
    std::vector<std::string> failures; // first few counterexamples

    bool ok() const { return mismatched_points == 0; }
};

/// Checks, for every pair (t1, t2) of boundary points with denominators at most
/// max_denominator, that the bounded oracle finds a witness iff the labels agree.
inline PartitionReport check_label_partition(Int n, Int max_denominator, Int bound, std::size_t max_failures = 20) {
    check_half_degree(n);
    if (bound < n) throw InvalidArgument("oracle bound must be at least n");
    PartitionReport report;
    report.n = n;
    report.max_denominator = max_denominator;
    report.bound = bound;
    auto points = boundary_points(max_denominator);
    BoundaryPointIndex index(max_denominator);
    std::vector<CuspLabel> labels;
    labels.reserve(points.size());
    std::map<CuspLabel, std::size_t> class_size;
    for (const auto& t : points) {
        labels.push_back(cusp_label_of_rational(t, n));
        ++class_size[labels.back()];
    }
    report.points = points.size();
    report.labels = class_size.size();

    for (std::size_t i = 0; i < points.size(); ++i) {
        auto reach = oracle_orbit_within_bound(points[i], n, bound, index, max_denominator);
        report.pairs_equivalent += reach.size();
        std::size_t same = 0;
        bool bad = false;
        for (std::size_t j : reach) {
            if (labels[j] == labels[i]) {
                ++same;
                continue;
            }
            bad = true;
            ++report.unsound_pairs;
            if (report.failures.size() < max_failures)
                report.failures.push_back("witness maps " + points[i].str() + " " + labels[i].str() + " to " +
                                          points[j].str() + " " + labels[j].str());
        }
        if (same != class_size[labels[i]]) {
            bad = true;
            ++report.incomplete_points;
            if (report.failures.size() < max_failures)
                report.failures.push_back("only " + std::to_string(same) + " of " +
                                          std::to_string(class_size[labels[i]]) + " points labelled " +
                                          labels[i].str() + " reached from " + points[i].str() + " within bound " +
                                          std::to_string(bound));
        }
        if (bad) ++report.mismatched_points;
    }
    return report;
}

} // namespace k3cusps
