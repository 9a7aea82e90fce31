#pragma once

#include <fstream>
#include <random>
#include <string>

#include "k3cusps/k3cusps.hpp"

namespace k3test {

using namespace k3cusps;

inline json load_fixture(const std::string& name) {
    std::ifstream in(std::string(K3CUSPS_FIXTURE_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    return json::parse(in);
}

inline Int uniform(std::mt19937_64& rng, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, Int bound) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -bound, bound);
    return m;
}

/// Nondegenerate even symmetric matrix with entries in [-bound, bound].
inline IntMatrix random_even_gram(std::mt19937_64& rng, std::size_t rank, Int bound) {
    for (;;) {
        IntMatrix g(rank, rank);
        for (std::size_t i = 0; i < rank; ++i) {
            g(i, i) = 2 * uniform(rng, -bound / 2, bound / 2);
            for (std::size_t j = i + 1; j < rank; ++j) g(i, j) = g(j, i) = uniform(rng, -bound, bound);
        }
        if (determinant(g) != 0) return g;
    }
}

inline IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

inline IntMatrix hyperbolic(Int scale = 1) { return IntMatrix{{0, scale}, {scale, 0}}; }

inline RationalMatrix2 random_trace_zero(std::mt19937_64& rng, Int n, Int bound) {
    // a [[0,0],[-2n,0]] + b diag(-1,1) + c [[0,2],[0,0]] with rational a, b, c.
    auto r = [&] { return Rational(uniform(rng, -bound, bound), uniform(rng, 1, 6)); };
    Rational a = r(), b = r(), c = r();
    return {-b, Rational(2) * c, Rational(-2 * n) * a, b};
}

} // namespace k3test
