#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <utility>

#include "k3cusps/matrix.hpp"

namespace k3cusps {

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
struct SmithForm {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;

    std::size_t rank() const {
        std::size_t r = 0;
        while (r < D.rows() && r < D.cols() && D(r, r) != 0) ++r;
        return r;
    }
    std::vector<Int> diagonal() const {
        std::vector<Int> out;
        for (std::size_t i = 0; i < D.rows() && i < D.cols(); ++i) out.push_back(D(i, i));
        return out;
    }
};

namespace detail {

inline void swap_rows(IntMatrix& a, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

// row_i += f * row_j
inline void add_row_multiple(IntMatrix& a, std::size_t i, std::size_t j, Int f) {
    if (f == 0) return;
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = add_checked(a(i, c), mul_checked(f, a(j, c)));
}

inline void negate_row(IntMatrix& a, std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = neg_checked(a(i, c));
}

// The Smith elimination runs in 128-bit arithmetic: the transforms U and V can
// pass through entries far larger than their final values.
using Wide = __int128;

class WideMatrix {
public:
    WideMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    explicit WideMatrix(const IntMatrix& m) : WideMatrix(m.rows(), m.cols()) {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = m(i, j);
    }
    static WideMatrix identity(std::size_t n) {
        WideMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Wide& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Wide operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }
    // row_i += f * row_j
    void add_row_multiple(std::size_t i, std::size_t j, Wide f) {
        if (f == 0) return;
        for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = muladd((*this)(i, c), f, (*this)(j, c));
    }
    // col_i += f * col_j
    void add_col_multiple(std::size_t i, std::size_t j, Wide f) {
        if (f == 0) return;
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) = muladd((*this)(r, i), f, (*this)(r, j));
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
    }

    IntMatrix narrow() const {
        IntMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                Wide v = (*this)(i, j);
                if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
                    throw Overflow("Smith normal form transform exceeds 64 bits");
                out(i, j) = static_cast<Int>(v);
            }
        return out;
    }

private:
    static Wide muladd(Wide acc, Wide f, Wide x) {
        Wide prod, sum;
        if (__builtin_mul_overflow(f, x, &prod) || __builtin_add_overflow(acc, prod, &sum))
            throw Overflow("integer overflow in Smith normal form");
        return sum;
    }

    std::size_t rows_, cols_;
    std::vector<Wide> data_;
};

inline Wide wide_abs(Wide x) { return x < 0 ? -x : x; }

} // namespace detail

namespace detail {

struct WideSmith {
    WideMatrix U, D, V;
};

// Deterministic pivoting: at each stage the smallest-magnitude nonzero entry of
// the trailing block is chosen, ties broken by (row, column) lexicographically.
inline WideSmith wide_smith(const IntMatrix& M) {
    const std::size_t m = M.rows(), n = M.cols();
    WideMatrix A(M);
    WideMatrix U = WideMatrix::identity(m);
    WideMatrix V = WideMatrix::identity(n);

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            std::size_t pr = m, pc = n;
            Wide best = 0;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    Wide v = wide_abs(A(i, j));
                    if (v != 0 && (best == 0 || v < best)) {
                        best = v;
                        pr = i;
                        pc = j;
                    }
                }
            if (best == 0) break;
            A.swap_rows(t, pr);
            U.swap_rows(t, pr);
            A.swap_cols(t, pc);
            V.swap_cols(t, pc);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                Wide q = A(i, t) / A(t, t);
                A.add_row_multiple(i, t, -q);
                U.add_row_multiple(i, t, -q);
                if (A(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                Wide q = A(t, j) / A(t, t);
                A.add_col_multiple(j, t, -q);
                V.add_col_multiple(j, t, -q);
                if (A(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Pivot must divide the whole trailing block.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (A(i, j) % A(t, t) != 0) {
                        A.add_row_multiple(t, i, 1);
                        U.add_row_multiple(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (A(t, t) < 0) {
            A.negate_row(t);
            U.negate_row(t);
        }
    }
    return {std::move(U), std::move(A), std::move(V)};
}

} // namespace detail

/// Smith normal form U M V = D. Throws Overflow if U or V does not fit in 64 bits.
inline SmithForm smith_normal_form(const IntMatrix& M) {
    detail::WideSmith s = detail::wide_smith(M);
    return {s.U.narrow(), s.D.narrow(), s.V.narrow()};
}

/// Invariant factors only; never fails because of large transforms.
inline std::vector<Int> smith_diagonal(const IntMatrix& M) {
    IntMatrix D = detail::wide_smith(M).D.narrow();
    std::vector<Int> out;
    for (std::size_t i = 0; i < D.rows() && i < D.cols(); ++i) out.push_back(D(i, i));
    return out;
}

inline std::size_t smith_rank(const IntMatrix& M) {
    auto d = smith_diagonal(M);
    return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](Int x) { return x != 0; }));
}

/// Smith data modulo the invariant factors: for each nonzero d_i, row i of U
/// and column i of V reduced into [0, d_i). These are what a finite quotient
/// Z^n / M Z^n needs, and they stay small even when U and V do not.
struct ReducedSmith {
    std::vector<Int> diagonal;
    std::vector<IntVector> class_rows; // row i of U mod d_i
    std::vector<IntVector> columns;    // column i of V mod d_i
};

inline ReducedSmith reduced_smith_form(const IntMatrix& M) {
    detail::WideSmith s = detail::wide_smith(M);
    ReducedSmith out;
    for (std::size_t i = 0; i < M.rows() && i < M.cols(); ++i) {
        const detail::Wide d = s.D(i, i);
        if (d == 0) break;
        out.diagonal.push_back(static_cast<Int>(d));
        IntVector row(M.rows()), col(M.cols());
        for (std::size_t j = 0; j < M.rows(); ++j) row[j] = static_cast<Int>(((s.U(i, j) % d) + d) % d);
        for (std::size_t j = 0; j < M.cols(); ++j) col[j] = static_cast<Int>(((s.V(j, i) % d) + d) % d);
        out.class_rows.push_back(std::move(row));
        out.columns.push_back(std::move(col));
    }
    return out;
}

/// Hermite normal form of the row span of `rows` (upper echelon, positive pivots,
/// entries above each pivot reduced into [0, pivot)). Zero rows are dropped, so
/// the result is a Z-basis of the span.
inline IntMatrix row_hermite_basis(const IntMatrix& rows) {
    using namespace detail;
    IntMatrix A = rows;
    const std::size_t m = A.rows(), n = A.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        for (;;) {
            std::size_t p = m;
            for (std::size_t i = r; i < m; ++i)
                if (A(i, c) != 0 && (p == m || abs_checked(A(i, c)) < abs_checked(A(p, c)))) p = i;
            if (p == m) break;
            swap_rows(A, r, p);
            bool done = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                Int q = A(i, c) / A(r, c);
                add_row_multiple(A, i, r, neg_checked(q));
                if (A(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (A(r, c) == 0) continue;
        if (A(r, c) < 0) negate_row(A, r);
        for (std::size_t i = 0; i < r; ++i) add_row_multiple(A, i, r, neg_checked(floor_div(A(i, c), A(r, c))));
        ++r;
    }
    IntMatrix basis(r, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) basis(i, j) = A(i, j);
    return basis;
}

/// Z-basis (as columns) of the integer kernel {x in Z^n : A x = 0}.
inline IntMatrix integer_kernel(const IntMatrix& A) {
    SmithForm snf = smith_normal_form(A);
    const std::size_t r = snf.rank();
    const std::size_t n = A.cols();
    IntMatrix K(n, n - r);
    for (std::size_t j = r; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) K(i, j - r) = snf.V(i, j);
    return K;
}

/// True iff the columns of B (an n x k integer matrix) span a primitive sublattice
/// of Z^n of rank k, i.e. all k invariant factors of B equal 1.
inline bool spans_primitive_sublattice(const IntMatrix& B) {
    std::vector<Int> d = smith_diagonal(B);
    if (d.size() != B.cols()) return false;
    for (Int x : d)
        if (x != 1) return false;
    return true;
}

} // namespace k3cusps
