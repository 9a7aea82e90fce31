#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <type_traits>
#include <vector>

#include "k3cusps/rational.hpp"

namespace k3cusps {

/// Dense row-major matrix over Int or Rational.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw InvalidArgument("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (rows[i].size() != m.cols_) throw InvalidArgument("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    /// Matrix whose columns are the given vectors (all of equal length).
    static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t length) {
        Matrix m(length, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != length) throw InvalidArgument("column length mismatch");
            for (std::size_t i = 0; i < length; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    std::vector<std::vector<T>> to_rows() const {
        std::vector<std::vector<T>> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
        return out;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw InvalidArgument("matrix dimension mismatch in product");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = add(c(i, j), mul(aik, b(k, j)));
            }
        return c;
    }

    friend std::vector<T> operator*(const Matrix& a, std::span<const T> v) {
        if (a.cols_ != v.size()) throw InvalidArgument("matrix-vector dimension mismatch");
        std::vector<T> out(a.rows_, T{});
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) out[i] = add(out[i], mul(a(i, j), v[j]));
        return out;
    }
    friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
        return a * std::span<const T>(v);
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? "," : "") << m(i, j);
            os << ']';
        }
        return os << ']';
    }

private:
    static T add(const T& a, const T& b) {
        if constexpr (std::is_same_v<T, Int>) return add_checked(a, b);
        else return a + b;
    }
    static T mul(const T& a, const T& b) {
        if constexpr (std::is_same_v<T, Int>) return mul_checked(a, b);
        else return a * b;
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RationalMatrix = Matrix<Rational>;
using IntVector = std::vector<Int>;
using RationalVector = std::vector<Rational>;

inline RationalMatrix to_rational(const IntMatrix& m) {
    RationalMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

inline RationalVector to_rational(std::span<const Int> v) { return {v.begin(), v.end()}; }

/// Exact determinant by fraction-free Bareiss elimination.
inline Int determinant(const IntMatrix& m) {
    if (!m.is_square()) throw InvalidArgument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    std::vector<__int128> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
    auto at = [&](std::size_t i, std::size_t j) -> __int128& { return a[i * n + j]; };
    int sign = 1;
    __int128 prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                __int128 v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                at(i, j) = v / prev;
            }
        prev = at(k, k);
    }
    __int128 det = sign * at(n - 1, n - 1);
    if (det > INT64_MAX || det < INT64_MIN) throw Overflow("determinant exceeds 64 bits");
    return static_cast<Int>(det);
}

/// Inverse over Q by Gauss-Jordan; throws on singular input.
inline RationalMatrix inverse(const RationalMatrix& m) {
    if (!m.is_square()) throw InvalidArgument("inverse of non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix a = m;
    RationalMatrix inv = RationalMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c).is_zero()) ++p;
        if (p == n) throw InvalidArgument("singular matrix");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        Rational pivot = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= pivot;
            inv(c, j) /= pivot;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c).is_zero()) continue;
            Rational f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

/// Solves A x = b over Q for a consistent system with A of full column rank.
/// Returns nullopt if the system is inconsistent.
inline std::optional<RationalVector> solve_full_column_rank(const RationalMatrix& A, const RationalVector& b) {
    const std::size_t rows = A.rows(), cols = A.cols();
    if (b.size() != rows) throw InvalidArgument("solve: dimension mismatch");
    RationalMatrix aug(rows, cols + 1);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug(i, j) = A(i, j);
        aug(i, cols) = b[i];
    }
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && aug(p, c).is_zero()) ++p;
        if (p == rows) continue;
        for (std::size_t j = 0; j <= cols; ++j) std::swap(aug(p, j), aug(r, j));
        Rational pivot = aug(r, c);
        for (std::size_t j = 0; j <= cols; ++j) aug(r, j) /= pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || aug(i, c).is_zero()) continue;
            Rational f = aug(i, c);
            for (std::size_t j = 0; j <= cols; ++j) aug(i, j) -= f * aug(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    if (pivots.size() != cols) throw InvalidArgument("solve: matrix does not have full column rank");
    for (std::size_t i = r; i < rows; ++i)
        if (!aug(i, cols).is_zero()) return std::nullopt;
    RationalVector x(cols);
    for (std::size_t i = 0; i < cols; ++i) x[pivots[i]] = aug(i, cols);
    return x;
}

} // namespace k3cusps
