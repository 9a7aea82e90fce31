#include <gtest/gtest.h>

#include "support.hpp"

using namespace k3cusps;

namespace {

MukaiVector mv(Int n, Int r, Int k, Int s) { return {n, r, k, s}; }

} // namespace

TEST(MukaiPairing, Examples) {
    EXPECT_EQ(mukai_pairing(mv(4, 1, 0, 0), mv(4, 0, 0, 1)), -1);
    EXPECT_EQ(mukai_pairing(mv(4, 2, 1, 2), mv(4, 2, 1, 2)), 0);
    EXPECT_EQ(mukai_pairing(mv(1, 0, 1, 0), mv(1, 0, 1, 0)), 2);
    EXPECT_THROW(mukai_pairing(mv(4, 1, 0, 0), mv(5, 1, 0, 0)), InvalidArgument);
}

TEST(MukaiPairing, AgreesWithExtendedNsGram) {
    std::mt19937_64 rng(31);
    for (Int n : {1, 2, 4, 7, 12}) {
        EvenLattice ns = extended_ns_lattice(n);
        for (int i = 0; i < 200; ++i) {
            IntVector v{k3test::uniform(rng, -9, 9), k3test::uniform(rng, -9, 9), k3test::uniform(rng, -9, 9)};
            IntVector w{k3test::uniform(rng, -9, 9), k3test::uniform(rng, -9, 9), k3test::uniform(rng, -9, 9)};
            EXPECT_EQ(mukai_pairing(mv(n, v[0], v[1], v[2]), mv(n, w[0], w[1], w[2])), ns.pair(v, w));
        }
    }
}

TEST(MukaiDiv, Examples) {
    EXPECT_EQ(mukai_div(mv(4, 0, 0, 1)), 1);
    EXPECT_EQ(mukai_div(mv(4, 2, 1, 2)), 2);
    EXPECT_EQ(mukai_div(mv(12, 4, 1, 3)), 1);
    EXPECT_THROW(mukai_div(mv(4, 0, 0, 0)), InvalidArgument);
}

TEST(MukaiDiv, MatchesLatticeDivisibility) {
    for (Int n = 1; n <= 12; ++n) {
        EvenLattice ns = extended_ns_lattice(n);
        for (Int r = -4; r <= 4; ++r)
            for (Int k = -4; k <= 4; ++k)
                for (Int s = -4; s <= 4; ++s) {
                    if (r == 0 && k == 0 && s == 0) continue;
                    EXPECT_EQ(mukai_div(mv(n, r, k, s)), divisibility(ns, IntVector{r, k, s}));
                }
    }
}

TEST(BoundaryVector, Examples) {
    EXPECT_EQ(vector_from_boundary_point(ExtendedRational::infinity(), 4), mv(4, 0, 0, 1));
    EXPECT_EQ(vector_from_boundary_point(ExtendedRational(1, 2), 4), mv(4, 2, 1, 2));
    EXPECT_EQ(vector_from_boundary_point(ExtendedRational(0, 1), 4), mv(4, 1, 0, 0));
    EXPECT_THROW(vector_from_boundary_point(ExtendedRational(1, 2), 0), InvalidArgument);
}

TEST(BoundaryVector, AlwaysPrimitiveIsotropic) {
    for (Int n = 1; n <= 30; ++n)
        for (const auto& t : boundary_points(2 * n)) {
            MukaiVector v = vector_from_boundary_point(t, n);
            EXPECT_TRUE(is_primitive_isotropic(v)) << t << " n=" << n;
            EXPECT_GE(v.r, 0);
        }
}

TEST(ExtendedRationalTest, ParsingAndNormalization) {
    EXPECT_TRUE(ExtendedRational::parse("INF").is_infinity());
    EXPECT_TRUE(ExtendedRational::parse("inf").is_infinity());
    EXPECT_EQ(ExtendedRational::parse("-2/4"), ExtendedRational(-1, 2));
    EXPECT_EQ(ExtendedRational(3, -6), ExtendedRational(-1, 2));
    EXPECT_EQ(ExtendedRational(-5, 0), ExtendedRational::infinity());
    EXPECT_THROW(ExtendedRational(0, 0), InvalidArgument);
    EXPECT_THROW(ExtendedRational::parse("1/x"), InvalidArgument);
}

TEST(KappaScale, Examples) {
    EXPECT_EQ(kappa_scale(mv(4, 0, 0, 1), 2), (RationalVector{0, 0, Rational(1, 2)}));
    EXPECT_EQ(kappa_scale(mv(4, 1, 0, 0), 3), (RationalVector{3, 0, 0}));
    RationalVector a = kappa_scale(mv(4, 2, 1, 2), 2), b = kappa_scale(mv(4, 0, 0, 1), 2);
    EXPECT_EQ(mukai_pairing(a, b, 4), Rational(-2));
    EXPECT_EQ(mukai_pairing(mv(4, 2, 1, 2), mv(4, 0, 0, 1)), -2);
    EXPECT_THROW(kappa_scale(mv(4, 1, 0, 0), 0), InvalidArgument);
}

TEST(KappaScale, IsAnIsometry) {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 500; ++i) {
        Int n = k3test::uniform(rng, 1, 20), d = k3test::uniform(rng, 1, 9);
        MukaiVector v = mv(n, k3test::uniform(rng, -20, 20), k3test::uniform(rng, -20, 20), k3test::uniform(rng, -20, 20));
        MukaiVector w = mv(n, k3test::uniform(rng, -20, 20), k3test::uniform(rng, -20, 20), k3test::uniform(rng, -20, 20));
        EXPECT_EQ(mukai_pairing(kappa_scale(v, d), kappa_scale(w, d), n), Rational(mukai_pairing(v, w)));
    }
}

TEST(UnderlyingK3Class, Examples) {
    EXPECT_EQ(underlying_k3_class(mv(4, 2, 1, 2)), 2);
    EXPECT_EQ(underlying_k3_class(mv(4, 0, 0, 1)), 0);
    EXPECT_EQ(underlying_k3_class(mv(12, 4, 1, 3)), 4);
}

TEST(UnderlyingK3Class, Errors) {
    EXPECT_THROW(underlying_k3_class(mv(4, 1, 1, 1)), InvalidArgument); // not isotropic
    EXPECT_THROW(underlying_k3_class(mv(4, 2, 0, 0)), InvalidArgument); // not primitive
    // t = 1/8, n = 4: v = (64, 8, 4) / 4 = (16, 2, 1), gcd(r, k) = 2 is not a unit mod 4.
    MukaiVector v = vector_from_boundary_point(ExtendedRational(1, 8), 4);
    EXPECT_EQ(v, mv(4, 16, 2, 1));
    EXPECT_THROW(underlying_k3_class(v), NotInvertible);
}

TEST(UnderlyingK3Class, IsTheDenominatorWhereDefined) {
    // For t = a/b: gcd(r, k) = b / gcd(b, n) and r = b gcd(r, k), so the class is
    // b mod n whenever it is defined.
    int defined = 0, undefined = 0;
    for (Int n = 1; n <= 24; ++n)
        for (const auto& t : boundary_points(3 * n)) {
            MukaiVector v = vector_from_boundary_point(t, n);
            if (v.r != 0 && gcd(gcd(v.r, v.k), n) != 1) {
                EXPECT_THROW(underlying_k3_class(v), NotInvertible) << t << " n=" << n;
                ++undefined;
                continue;
            }
            EXPECT_EQ(underlying_k3_class(v), mod(t.den(), n)) << t << " n=" << n;
            ++defined;
        }
    EXPECT_GT(defined, 0);
    EXPECT_GT(undefined, 0);
}
