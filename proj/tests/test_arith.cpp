#include <gtest/gtest.h>

#include <cstdint>
#include <limits>

#include "support.hpp"

using namespace k3cusps;
using k3test::uniform;

TEST(Arith, CheckedOperationsDetectOverflow) {
    const Int big = std::numeric_limits<Int>::max();
    EXPECT_THROW(add_checked(big, 1), Overflow);
    EXPECT_THROW(sub_checked(std::numeric_limits<Int>::min(), 1), Overflow);
    EXPECT_THROW(mul_checked(big / 2 + 1, 2), Overflow);
    EXPECT_THROW(neg_checked(std::numeric_limits<Int>::min()), Overflow);
    EXPECT_EQ(mul_checked(-3, 7), -21);
}

TEST(Arith, GcdConventions) {
    EXPECT_EQ(gcd(0, 5), 5);
    EXPECT_EQ(gcd(0, -5), 5);
    EXPECT_EQ(gcd(0, 0), 0);
    EXPECT_EQ(gcd(-12, 18), 6);
    EXPECT_EQ(lcm(4, 6), 12);
}

TEST(Arith, ModuloAndFloorDivision) {
    EXPECT_EQ(mod(-1, 4), 3);
    EXPECT_EQ(mod(8, 4), 0);
    EXPECT_EQ(floor_div(-7, 2), -4);
    EXPECT_EQ(floor_div(7, 2), 3);
    EXPECT_EQ(positive_residue(0, 3), 3);
    EXPECT_EQ(positive_residue(-1, 3), 2);
}

TEST(Arith, ExtendedGcdAndInverse) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 500; ++i) {
        Int a = uniform(rng, -1000, 1000), b = uniform(rng, -1000, 1000);
        auto e = extended_gcd(a, b);
        EXPECT_EQ(e.g, gcd(a, b));
        EXPECT_EQ(a * e.x + b * e.y, e.g);
    }
    EXPECT_EQ(inverse_mod(3, 7), 5);
    EXPECT_EQ(inverse_mod(2, 4), std::nullopt);
    EXPECT_EQ(inverse_mod(5, 1), 0);
}

TEST(Arith, FactorizationDivisorsAndPhi) {
    auto f = factorize(360);
    ASSERT_EQ(f.size(), 3u);
    EXPECT_EQ(f[0].prime, 2);
    EXPECT_EQ(f[0].exponent, 3);
    EXPECT_EQ(f[2].value(), 5);
    EXPECT_EQ(divisors(12), (std::vector<Int>{1, 2, 3, 4, 6, 12}));
    EXPECT_EQ(euler_phi(1), 1);
    EXPECT_EQ(euler_phi(36), 12);
    EXPECT_EQ(units_mod(1), (std::vector<Int>{1}));
    EXPECT_EQ(units_mod(8), (std::vector<Int>{1, 3, 5, 7}));
    for (Int n = 1; n <= 200; ++n) EXPECT_EQ(static_cast<Int>(units_mod(n).size()), euler_phi(n));
}

TEST(Arith, CoprimeSplittingsAndSquareDivisors) {
    using P = std::pair<Int, Int>;
    EXPECT_EQ(coprime_splittings(12), (std::vector<P>{{12, 1}, {4, 3}, {3, 4}, {1, 12}}));
    EXPECT_EQ(coprime_splittings(1), (std::vector<P>{{1, 1}}));
    EXPECT_EQ(square_divisor_roots(36), (std::vector<Int>{1, 2, 3, 6}));
    EXPECT_EQ(square_divisor_roots(7), (std::vector<Int>{1}));
    for (Int m = 1; m <= 300; ++m) {
        auto s = coprime_splittings(m);
        EXPECT_EQ(static_cast<Int>(s.size()), Int{1} << factorize(m).size());
        for (auto [r, t] : s) {
            EXPECT_EQ(r * t, m);
            EXPECT_EQ(gcd(r, t), 1);
        }
    }
}

TEST(RationalTest, NormalizesAndCompares) {
    EXPECT_EQ(Rational(2, -4), Rational(-1, 2));
    EXPECT_EQ(Rational(6, 3), Rational(2));
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
    EXPECT_EQ(Rational(1, 2) * Rational(2, 3), Rational(1, 3));
    EXPECT_EQ(Rational(1, 2) / Rational(1, 4), Rational(2));
    EXPECT_THROW(Rational(1, 0), InvalidArgument);
    EXPECT_THROW(Rational(1) / Rational(0), InvalidArgument);
}

TEST(RationalTest, ModReducesIntoHalfOpenInterval) {
    EXPECT_EQ(Rational(-1, 4).mod(2), Rational(7, 4));
    EXPECT_EQ(Rational(9, 4).mod(2), Rational(1, 4));
    EXPECT_EQ(Rational(2).mod(2), Rational(0));
}

TEST(RationalTest, ParseAndPrint) {
    EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
    EXPECT_EQ(Rational::parse("-7"), Rational(-7));
    EXPECT_EQ(Rational(-3, 4).str(), "-3/4");
    EXPECT_EQ(Rational(5).str(), "5");
    for (const char* bad : {"", "1/", "/2", "1/0", "a", "1/2/3", "1.5"})
        EXPECT_THROW(Rational::parse(bad), InvalidArgument) << bad;
}

TEST(MatrixTest, DeterminantAndInverse) {
    EXPECT_EQ(determinant(IntMatrix{{4, 2}, {2, 4}}), 12);
    EXPECT_EQ(determinant(IntMatrix{{0, 1}, {1, 0}}), -1);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
        std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 4));
        IntMatrix m = k3test::random_matrix(rng, n, n, 6);
        if (determinant(m) == 0) continue;
        RationalMatrix r = to_rational(m);
        EXPECT_EQ(r * inverse(r), RationalMatrix::identity(n));
    }
}

TEST(MatrixTest, SolveFullColumnRank) {
    RationalMatrix A{{1, 0}, {0, 2}, {1, 1}};
    auto x = solve_full_column_rank(A, RationalVector{1, 1, Rational(3, 2)});
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(*x, (RationalVector{1, Rational(1, 2)}));
    EXPECT_FALSE(solve_full_column_rank(A, RationalVector{1, 1, 0}).has_value());
}

TEST(Smith, DocumentedExamples) {
    EXPECT_EQ(smith_normal_form(IntMatrix{{0, 1}, {1, 0}}).diagonal(), (std::vector<Int>{1, 1}));
    EXPECT_EQ(smith_normal_form(IntMatrix{{2, 0}, {0, 4}}).diagonal(), (std::vector<Int>{2, 4}));
    EXPECT_EQ(smith_normal_form(IntMatrix{{4, 2}, {2, 4}}).diagonal(), (std::vector<Int>{2, 6}));
    EXPECT_EQ(smith_normal_form(IntMatrix{{4, 0}, {0, 6}}).diagonal(), (std::vector<Int>{2, 12}));
}

namespace {

using Wide = __int128;

// U M V in 128 bits: the transforms fit in 64 bits but their products need not.
std::vector<std::vector<Wide>> wide_product(const IntMatrix& U, const IntMatrix& M, const IntMatrix& V) {
    auto mul = [](const std::vector<std::vector<Wide>>& a, const IntMatrix& b) {
        std::vector<std::vector<Wide>> out(a.size(), std::vector<Wide>(b.cols(), 0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                for (std::size_t k = 0; k < b.rows(); ++k) {
                    Wide t;
                    if (__builtin_mul_overflow(a[i][k], static_cast<Wide>(b(k, j)), &t) ||
                        __builtin_add_overflow(out[i][j], t, &out[i][j]))
                        throw Overflow("test product exceeds 128 bits");
                }
        return out;
    };
    std::vector<std::vector<Wide>> u(U.rows(), std::vector<Wide>(U.cols()));
    for (std::size_t i = 0; i < U.rows(); ++i)
        for (std::size_t j = 0; j < U.cols(); ++j) u[i][j] = U(i, j);
    return mul(mul(u, M), V);
}

// Determinant modulo a prime by Gaussian elimination.
std::uint64_t det_mod(const IntMatrix& A, std::uint64_t p) {
    const std::size_t n = A.rows();
    std::vector<std::vector<std::uint64_t>> a(n, std::vector<std::uint64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<std::uint64_t>(((A(i, j) % Wide(p)) + p) % p);
    auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % p);
    };
    auto inv = [&](std::uint64_t x) {
        std::uint64_t r = 1, e = p - 2;
        for (; e; e >>= 1, x = mulmod(x, x))
            if (e & 1) r = mulmod(r, x);
        return r;
    };
    std::uint64_t det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = (p - det) % p;
        }
        det = mulmod(det, a[c][c]);
        std::uint64_t ic = inv(a[c][c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            std::uint64_t f = mulmod(a[r][c], ic);
            for (std::size_t k = c; k < n; ++k) a[r][k] = (a[r][k] + p - mulmod(f, a[c][k])) % p;
        }
    }
    return det;
}

// det = +1 or -1, checked modulo three primes near 2^61 with a consistent sign.
bool looks_unimodular(const IntMatrix& A) {
    int sign = 0;
    for (std::uint64_t p : {2305843009213693951ull, 2305843009213693921ull, 2305843009213693907ull}) {
        std::uint64_t d = det_mod(A, p);
        int s = d == 1 ? 1 : d == p - 1 ? -1 : 0;
        if (s == 0 || (sign != 0 && s != sign)) return false;
        sign = s;
    }
    return true;
}

} // namespace

TEST(Smith, RandomMatricesSatisfyAllInvariants) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 400; ++trial) {
        std::size_t rows = static_cast<std::size_t>(uniform(rng, 1, 5));
        std::size_t cols = static_cast<std::size_t>(uniform(rng, 1, 5));
        IntMatrix m = k3test::random_matrix(rng, rows, cols, 9);
        SmithForm s = smith_normal_form(m);
        auto product = wide_product(s.U, m, s.V);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) ASSERT_TRUE(product[i][j] == s.D(i, j)) << "trial " << trial;
        EXPECT_TRUE(looks_unimodular(s.U));
        EXPECT_TRUE(looks_unimodular(s.V));
        auto diag = s.diagonal();
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (i != j) {
                    EXPECT_EQ(s.D(i, j), 0);
                }
        for (std::size_t i = 0; i < diag.size(); ++i) {
            EXPECT_GE(diag[i], 0);
            if (i + 1 < diag.size() && diag[i] != 0) {
                EXPECT_EQ(diag[i + 1] % diag[i], 0);
            }
            if (diag[i] == 0 && i + 1 < diag.size()) {
                EXPECT_EQ(diag[i + 1], 0);
            }
        }
        if (rows == cols && determinant(m) != 0) {
            Int prod = 1;
            for (Int d : diag) prod *= d;
            EXPECT_EQ(prod, std::abs(determinant(m)));
        }
        EXPECT_EQ(smith_diagonal(m), diag);
        EXPECT_EQ(smith_normal_form(m).U, s.U) << "deterministic output";
    }
}

TEST(Smith, ReducedFormMatchesTheFullTransforms) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t rows = static_cast<std::size_t>(uniform(rng, 1, 5));
        std::size_t cols = static_cast<std::size_t>(uniform(rng, 1, 5));
        IntMatrix m = k3test::random_matrix(rng, rows, cols, 9);
        SmithForm s = smith_normal_form(m);
        ReducedSmith r = reduced_smith_form(m);
        EXPECT_EQ(r.diagonal.size(), s.rank());
        for (std::size_t i = 0; i < r.diagonal.size(); ++i) {
            Int d = r.diagonal[i];
            EXPECT_EQ(d, s.D(i, i));
            for (std::size_t j = 0; j < rows; ++j) EXPECT_EQ(r.class_rows[i][j], mod(s.U(i, j), d));
            for (std::size_t j = 0; j < cols; ++j) EXPECT_EQ(r.columns[i][j], mod(s.V(j, i), d));
        }
    }
}

TEST(Smith, LargeTransformsRaiseOverflowOrAgree) {
    // Symmetric rank-6 inputs occasionally need transforms beyond 64 bits (about
    // 3% of these). The full form must then throw; the diagonal and the reduced
    // form are still available.
    std::mt19937_64 rng(6);
    int overflows = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        IntMatrix m(6, 6);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = i; j < 6; ++j) {
                Int v = uniform(rng, -12, 12);
                if (i == j) v = 2 * (v / 2);
                m(i, j) = m(j, i) = v;
            }
        auto diag = smith_diagonal(m);
        ReducedSmith reduced = reduced_smith_form(m);
        EXPECT_EQ(reduced.diagonal.size(), smith_rank(m));
        try {
            SmithForm s = smith_normal_form(m);
            EXPECT_EQ(s.diagonal(), diag);
        } catch (const Overflow&) {
            ++overflows;
        }
        if (determinant(m) != 0) {
            Int prod = 1;
            for (Int d : diag) prod *= d;
            EXPECT_EQ(prod, std::abs(determinant(m)));
        }
    }
    EXPECT_GT(overflows, 0) << "no sample exercised the overflow path";
}

TEST(Smith, KernelAndHermiteBasis) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t rows = static_cast<std::size_t>(uniform(rng, 1, 3));
        std::size_t cols = static_cast<std::size_t>(uniform(rng, rows, 5));
        IntMatrix a = k3test::random_matrix(rng, rows, cols, 5);
        IntMatrix k = integer_kernel(a);
        EXPECT_EQ(k.cols(), cols - smith_normal_form(a).rank());
        IntMatrix zero(rows, k.cols());
        EXPECT_EQ(a * k, zero);
        if (k.cols() > 0) {
            EXPECT_TRUE(spans_primitive_sublattice(k));
        }

        IntMatrix h = row_hermite_basis(a);
        EXPECT_EQ(h.rows(), smith_normal_form(a).rank());
        // Same row lattice: each basis spans the other (compare Smith forms of the stack).
        IntMatrix stacked(a.rows() + h.rows(), cols);
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < cols; ++j) stacked(i, j) = a(i, j);
        for (std::size_t i = 0; i < h.rows(); ++i)
            for (std::size_t j = 0; j < cols; ++j) stacked(a.rows() + i, j) = h(i, j);
        auto d1 = smith_normal_form(h).diagonal();
        auto d2 = smith_normal_form(stacked).diagonal();
        d2.resize(d1.size());
        EXPECT_EQ(d1, d2);
        auto d3 = smith_normal_form(a).diagonal();
        d3.resize(d1.size());
        EXPECT_EQ(d1, d3);
    }
    EXPECT_FALSE(spans_primitive_sublattice(IntMatrix{{2}, {0}}));
    EXPECT_TRUE(spans_primitive_sublattice(IntMatrix{{2}, {3}}));
}
