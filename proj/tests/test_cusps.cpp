#include <gtest/gtest.h>

#include <map>

#include "support.hpp"

using namespace k3cusps;

namespace {

CuspLabel label(Int n, Int k, Int e) { return make_cusp_label(n, k, e); }

template <class Key>
std::vector<int> canonical_partition(const std::vector<Key>& keys) {
    std::map<Key, int> first;
    std::vector<int> out;
    for (const auto& k : keys) out.push_back(first.emplace(k, static_cast<int>(first.size())).first->second);
    return out;
}

} // namespace

TEST(CuspLabelTest, Examples) {
    EXPECT_EQ(cusp_label_of_rational(ExtendedRational::infinity(), 4), label(4, 1, 4));
    EXPECT_EQ(cusp_label_of_rational(ExtendedRational(1, 2), 4), label(4, 1, 2));
    EXPECT_EQ(cusp_label_of_rational(ExtendedRational(0, 1), 4), label(4, 1, 1));
    EXPECT_EQ(cusp_label_of_rational(ExtendedRational(5, 6), 12), label(12, 1, 6));
    EXPECT_EQ(cusp_label_of_rational(ExtendedRational(1, 3), 9), label(9, 1, 3));
    EXPECT_EQ(cusp_label_of_rational(ExtendedRational(2, 3), 9), label(9, 2, 3));
}

TEST(CuspLabelTest, ConstructionIsValidated) {
    EXPECT_THROW(make_cusp_label(4, 1, 3), InvalidArgument);
    EXPECT_THROW(make_cusp_label(9, 3, 3), InvalidArgument);
    EXPECT_THROW(make_cusp_label(0, 1, 1), InvalidArgument);
    EXPECT_EQ(make_cusp_label(9, -1, 3), label(9, 2, 3));
}

TEST(CuspLabelTest, RationalOfLabel) {
    EXPECT_EQ(rational_of_cusp_label(label(4, 1, 4)), ExtendedRational(1, 4));
    EXPECT_EQ(rational_of_cusp_label(label(4, 1, 2)), ExtendedRational(1, 2));
    EXPECT_EQ(rational_of_cusp_label(label(4, 1, 1)), ExtendedRational(1, 1));
    EXPECT_EQ(cusp_label_of_rational(ExtendedRational(1, 1), 4), label(4, 1, 1));
}

TEST(CuspLabelTest, RoundTripForEveryLabel) {
    for (Int n = 1; n <= 500; ++n)
        for (const auto& c : gamma0_cusps(n)) EXPECT_EQ(cusp_label_of_rational(rational_of_cusp_label(c), n), c);
}

TEST(CuspLabelTest, IndependentOfTheAdmissibleUnit) {
    for (Int n = 1; n <= 60; ++n)
        for (const auto& t : boundary_points(2 * n)) {
            auto units = admissible_units(t, n);
            ASSERT_FALSE(units.empty());
            CuspLabel first = cusp_label_with_unit(t, n, units.front());
            for (Int alpha : units) EXPECT_EQ(cusp_label_with_unit(t, n, alpha), first) << t << " n=" << n;
        }
}

TEST(Gamma0Cusps, Examples) {
    EXPECT_EQ(gamma0_cusps(1), (std::vector<CuspLabel>{label(1, 1, 1)}));
    EXPECT_EQ(gamma0_cusps(4), (std::vector<CuspLabel>{label(4, 1, 1), label(4, 1, 2), label(4, 1, 4)}));
    EXPECT_EQ(gamma0_cusps(12).size(), 6u);
    EXPECT_EQ(gamma0_cusps(9).size(), 4u);
}

TEST(Gamma0Cusps, CountMatchesClosedForm) {
    for (Int n = 1; n <= 500; ++n) EXPECT_EQ(static_cast<Int>(gamma0_cusps(n).size()), gamma0_cusp_count(n));
}

TEST(FrickeImage, Examples) {
    EXPECT_EQ(fricke_image(label(4, 1, 1)), label(4, 1, 4));
    EXPECT_EQ(fricke_image(label(4, 1, 2)), label(4, 1, 2));
    EXPECT_EQ(fricke_image(label(9, 1, 3)), label(9, 2, 3));
}

TEST(FrickeImage, IsAnInvolution) {
    for (Int n = 1; n <= 500; ++n)
        for (const auto& c : gamma0_cusps(n)) EXPECT_EQ(fricke_image(fricke_image(c)), c);
}

TEST(FrickeCusps, Examples) {
    auto four = fricke_cusps(4);
    ASSERT_EQ(four.size(), 2u);
    EXPECT_EQ(four[0].canonical, label(4, 1, 4));
    EXPECT_EQ(four[1].canonical, label(4, 1, 2));
    auto twelve = fricke_cusps(12);
    ASSERT_EQ(twelve.size(), 3u);
    EXPECT_EQ(twelve[0].canonical, label(12, 1, 12));
    EXPECT_EQ(twelve[1].canonical, label(12, 1, 4));
    EXPECT_EQ(twelve[2].canonical, label(12, 1, 6));
    EXPECT_EQ(fricke_cusps(1).size(), 1u);
}

TEST(FrickeCusps, StratumListingEqualsOrbitQuotient) {
    for (Int n = 1; n <= 500; ++n) {
        auto listed = fricke_cusps(n);
        std::sort(listed.begin(), listed.end());
        EXPECT_EQ(listed, fricke_orbits(n)) << "n=" << n;
    }
}

TEST(FrickeCusps, BoundaryPointExamples) {
    EXPECT_EQ(fricke_class_of_boundary_point(ExtendedRational::infinity(), 4).canonical, label(4, 1, 4));
    EXPECT_EQ(fricke_class_of_boundary_point(ExtendedRational(0, 1), 4).canonical, label(4, 1, 4));
    EXPECT_EQ(fricke_class_of_boundary_point(ExtendedRational(1, 2), 4).canonical, label(4, 1, 2));
}

TEST(FixtureOracle, CuspCountsUpTo300) {
    json fixture = k3test::load_fixture("cusp_orbits.json");
    ASSERT_EQ(fixture["counts"].size(), 300u);
    for (const auto& row : fixture["counts"]) {
        Int n = row["n"].get<Int>();
        EXPECT_EQ(static_cast<Int>(gamma0_cusps(n).size()), row["gamma0"].get<Int>()) << "n=" << n;
        EXPECT_EQ(static_cast<Int>(fricke_cusps(n).size()), row["fricke"].get<Int>()) << "n=" << n;
    }
}

TEST(FixtureOracle, LabelPartitionsUpTo30) {
    json fixture = k3test::load_fixture("cusp_orbits.json");
    ASSERT_EQ(fixture["partitions"].size(), 30u);
    for (const auto& row : fixture["partitions"]) {
        Int n = row["n"].get<Int>();
        std::vector<CuspLabel> labels;
        std::vector<FrickeCuspClass> classes;
        for (const auto& p : row["points"]) {
            ExtendedRational t(p[0].get<Int>(), p[1].get<Int>());
            labels.push_back(cusp_label_of_rational(t, n));
            classes.push_back(fricke_class_of_label(labels.back()));
        }
        EXPECT_EQ(canonical_partition(labels), row["gamma0"].get<std::vector<int>>()) << "n=" << n;
        EXPECT_EQ(canonical_partition(classes), row["fricke"].get<std::vector<int>>()) << "n=" << n;
    }
}

TEST(Oracle, Examples) {
    auto same = oracle_gamma0_equivalent(ExtendedRational(1, 3), ExtendedRational(1, 3), 4, 16);
    EXPECT_EQ(same.verdict, OracleVerdict::equivalent);
    EXPECT_EQ(*same.witness, (Sl2Matrix{1, 0, 0, 1}));

    auto quarter = oracle_gamma0_equivalent(ExtendedRational::infinity(), ExtendedRational(1, 4), 4, 256);
    ASSERT_EQ(quarter.verdict, OracleVerdict::equivalent);
    EXPECT_EQ(*quarter.witness, (Sl2Matrix{1, -1, 4, -3})); // ties with [[1,0],[4,1]], lexicographically first

    for (Int bound : {4, 64, 256, 1024})
        EXPECT_EQ(oracle_gamma0_equivalent(ExtendedRational::infinity(), ExtendedRational(1, 2), 4, bound).verdict,
                  OracleVerdict::unknown);
    EXPECT_THROW(oracle_gamma0_equivalent(ExtendedRational(0, 1), ExtendedRational(1, 2), 4, 3), InvalidArgument);
}

TEST(Oracle, WitnessesAreValidAndNeverCrossLabels) {
    for (Int n = 1; n <= 12; ++n) {
        auto pts = boundary_points(2 * n);
        for (const auto& t1 : pts)
            for (const auto& t2 : pts) {
                auto res = oracle_gamma0_equivalent(t1, t2, n, 16 * n * n);
                if (res.verdict != OracleVerdict::equivalent) continue;
                auto [a, b, c, d] = *res.witness;
                EXPECT_EQ(a * d - b * c, 1);
                EXPECT_EQ(c % n, 0);
                // [[a,b],[c,d]] (p, q) = +-(p2, q2)
                Int p = t1.num(), q = t1.den();
                ExtendedRational image(a * p + b * q, c * p + d * q);
                EXPECT_EQ(image, t2);
                EXPECT_EQ(cusp_label_of_rational(t1, n), cusp_label_of_rational(t2, n)) << t1 << " ~ " << t2;
            }
    }
}

TEST(Oracle, SweepAgreesWithPairwiseSearch) {
    for (Int n : {2, 3, 5, 6}) {
        const Int maxden = 2 * n, bound = 8 * n * n;
        auto pts = boundary_points(maxden);
        BoundaryPointIndex index(maxden);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            auto reach = oracle_orbit_within_bound(pts[i], n, bound, index, maxden);
            for (std::size_t j = 0; j < pts.size(); ++j) {
                bool found = oracle_gamma0_equivalent(pts[i], pts[j], n, bound).verdict == OracleVerdict::equivalent;
                bool swept = std::binary_search(reach.begin(), reach.end(), j);
                EXPECT_EQ(found, swept) << pts[i] << " -> " << pts[j] << " n=" << n;
            }
        }
    }
}

TEST(Oracle, LabelPartitionExactOnceTheBoundIsLargeEnough) {
    // The 16 n^2 box is too small for completeness (see the acceptance report);
    // at 8 n^3 the bounded search recovers the label partition exactly.
    for (Int n = 1; n <= 8; ++n) {
        PartitionReport report = check_label_partition(n, 4 * n, std::max<Int>(8 * n * n * n, n));
        EXPECT_TRUE(report.ok()) << "n=" << n << ": " << (report.failures.empty() ? "" : report.failures.front());
        EXPECT_EQ(report.labels, gamma0_cusps(n).size());
    }
}

TEST(Oracle, SmallBoxIsSoundButIncomplete) {
    PartitionReport report = check_label_partition(3, 12, 144);
    EXPECT_FALSE(report.ok());
    for (const auto& f : report.failures) EXPECT_EQ(f.rfind("only ", 0), 0u) << f;
    // 1/10 and 2/11 share the label (1,1) but need entries beyond 144.
    EXPECT_EQ(cusp_label_of_rational(ExtendedRational(1, 10), 3), cusp_label_of_rational(ExtendedRational(2, 11), 3));
    EXPECT_EQ(oracle_gamma0_equivalent(ExtendedRational(1, 10), ExtendedRational(2, 11), 3, 144).verdict,
              OracleVerdict::unknown);
    EXPECT_EQ(oracle_gamma0_equivalent(ExtendedRational(1, 10), ExtendedRational(2, 11), 3, 165).verdict,
              OracleVerdict::equivalent);
}
