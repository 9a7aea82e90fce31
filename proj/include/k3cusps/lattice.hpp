#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "k3cusps/matrix.hpp"
#include "k3cusps/smith.hpp"

namespace k3cusps {

/// Default cap on the number of discriminant-group elements any enumeration visits.
inline constexpr std::size_t kEnumerationBudget = 1'000'000;

/// A nondegenerate even lattice given by the Gram matrix of a fixed basis.
class EvenLattice {
public:
    explicit EvenLattice(IntMatrix gram) : gram_(std::move(gram)) {
        if (!gram_.is_square()) throw InvalidArgument("Gram matrix is not square");
        for (std::size_t i = 0; i < gram_.rows(); ++i) {
            if (gram_(i, i) % 2 != 0)
                throw InvalidArgument("odd lattice: diagonal entry " + std::to_string(gram_(i, i)) + " is not even");
            for (std::size_t j = 0; j < i; ++j)
                if (gram_(i, j) != gram_(j, i)) throw InvalidArgument("Gram matrix is not symmetric");
        }
        det_ = k3cusps::determinant(gram_);
        if (det_ == 0) throw InvalidArgument("Gram matrix is degenerate");
    }

    const IntMatrix& gram() const { return gram_; }
    std::size_t rank() const { return gram_.rows(); }
    Int determinant() const { return det_; }
    bool is_unimodular() const { return det_ == 1 || det_ == -1; }

    Int pair(std::span<const Int> v, std::span<const Int> w) const {
        check_length(v.size());
        check_length(w.size());
        Int acc = 0;
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j)
                if (gram_(i, j) != 0) acc = add_checked(acc, mul_checked(mul_checked(v[i], gram_(i, j)), w[j]));
        return acc;
    }

    Rational pair(const RationalVector& v, const RationalVector& w) const {
        check_length(v.size());
        check_length(w.size());
        Rational acc;
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j)
                if (gram_(i, j) != 0) acc += v[i] * Rational(gram_(i, j)) * w[j];
        return acc;
    }

    /// Pairings of v with each basis vector, i.e. gram * v.
    IntVector pairings_with_basis(std::span<const Int> v) const {
        check_length(v.size());
        return gram_ * v;
    }

    friend bool operator==(const EvenLattice& a, const EvenLattice& b) { return a.gram_ == b.gram_; }

private:
    void check_length(std::size_t n) const {
        if (n != rank()) throw InvalidArgument("vector length does not match lattice rank");
    }

    IntMatrix gram_;
    Int det_ = 0;
};

/// An element of a discriminant group, as coordinates modulo the elementary
/// divisors (0 <= c_i < d_i).
struct DiscElement {
    std::vector<Int> coords;
    Int order = 1;

    bool is_zero() const { return order == 1; }
    friend bool operator==(const DiscElement& a, const DiscElement& b) { return a.coords == b.coords; }
    friend auto operator<=>(const DiscElement& a, const DiscElement& b) { return a.coords <=> b.coords; }
};

/// The finite quadratic module (L^v / L, q_L) of an even lattice.
class DiscriminantForm {
public:
    explicit DiscriminantForm(const EvenLattice& lattice) : gram_(lattice.gram()) {
        // Generators and class rows only matter modulo the invariant factors.
        ReducedSmith snf = reduced_smith_form(gram_);
        const std::size_t n = gram_.rows();
        for (std::size_t i = 0; i < snf.diagonal.size(); ++i) {
            Int d = snf.diagonal[i];
            if (d == 1) continue;
            divisors_.push_back(d);
            RationalVector gen(n);
            for (std::size_t r = 0; r < n; ++r) gen[r] = Rational(snf.columns[i][r], d);
            generators_.push_back(std::move(gen));
            class_rows_.push_back(snf.class_rows[i]);
        }
        const std::size_t k = divisors_.size();
        generator_gram_ = RationalMatrix(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) generator_gram_(i, j) = lattice.pair(generators_[i], generators_[j]);
    }

    const std::vector<Int>& divisors() const { return divisors_; }
    const std::vector<RationalVector>& generators() const { return generators_; }
    /// Pairings of the generator representatives (exact, not reduced).
    const RationalMatrix& generator_gram() const { return generator_gram_; }
    std::size_t lattice_rank() const { return gram_.rows(); }

    Int order() const {
        Int o = 1;
        for (Int d : divisors_) o = mul_checked(o, d);
        return o;
    }
    bool is_trivial() const { return divisors_.empty(); }

    /// Canonical element from arbitrary integer coordinates.
    DiscElement element(std::vector<Int> coords) const {
        if (coords.size() != divisors_.size()) throw InvalidArgument("discriminant element has wrong number of coordinates");
        Int ord = 1;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            coords[i] = mod(coords[i], divisors_[i]);
            ord = lcm(ord, divisors_[i] / gcd(coords[i], divisors_[i]));
        }
        return {std::move(coords), ord};
    }

    DiscElement zero() const { return element(std::vector<Int>(divisors_.size(), 0)); }

    DiscElement add(const DiscElement& x, const DiscElement& y) const {
        std::vector<Int> c(divisors_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = add_checked(x.coords[i], y.coords[i]);
        return element(std::move(c));
    }

    DiscElement scale(const DiscElement& x, Int f) const {
        std::vector<Int> c(divisors_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = mul_checked(x.coords[i], mod(f, divisors_[i]));
        return element(std::move(c));
    }

    /// q(x) reduced into [0, 2).
    Rational q(const DiscElement& x) const { return bilinear_raw(x, x).mod(2); }

    /// b(x, y) reduced into [0, 1).
    Rational b(const DiscElement& x, const DiscElement& y) const { return bilinear_raw(x, y).mod(1); }

    /// Rational representative in lattice-basis coordinates: sum c_i * generator_i.
    RationalVector representative(const DiscElement& x) const {
        RationalVector v(gram_.rows());
        for (std::size_t i = 0; i < divisors_.size(); ++i)
            for (std::size_t r = 0; r < v.size(); ++r) v[r] += Rational(x.coords[i]) * generators_[i][r];
        return v;
    }

    /// Class of a dual-lattice vector (lattice-basis coordinates).
    DiscElement class_of(const RationalVector& v) const {
        if (v.size() != gram_.rows()) throw InvalidArgument("vector length does not match lattice rank");
        IntVector y(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            Rational acc;
            for (std::size_t j = 0; j < v.size(); ++j) acc += Rational(gram_(i, j)) * v[j];
            if (!acc.is_integer()) throw InvalidArgument("vector does not lie in the dual lattice");
            y[i] = acc.num();
        }
        std::vector<Int> c(divisors_.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            Int acc = 0;
            for (std::size_t j = 0; j < y.size(); ++j) acc = add_checked(acc, mul_checked(class_rows_[i][j], y[j]));
            c[i] = acc;
        }
        return element(std::move(c));
    }

    /// Every group element in lexicographic coordinate order.
    std::vector<DiscElement> elements(std::size_t budget = kEnumerationBudget) const {
        const Int total = order();
        if (static_cast<std::size_t>(total) > budget)
            throw BudgetExceeded("discriminant group of order " + std::to_string(total) + " exceeds enumeration budget " +
                                 std::to_string(budget));
        std::vector<DiscElement> out;
        out.reserve(static_cast<std::size_t>(total));
        std::vector<Int> c(divisors_.size(), 0);
        for (Int step = 0; step < total; ++step) {
            out.push_back(element(c));
            for (std::size_t i = c.size(); i-- > 0;) {
                if (++c[i] < divisors_[i]) break;
                c[i] = 0;
            }
        }
        return out;
    }

    std::vector<std::pair<DiscElement, Rational>> q_table(std::size_t budget = kEnumerationBudget) const {
        std::vector<std::pair<DiscElement, Rational>> out;
        for (auto& x : elements(budget)) {
            Rational v = q(x);
            out.emplace_back(std::move(x), v);
        }
        return out;
    }

    /// Induced action of an isometry g (acting on lattice coordinates) on x.
    DiscElement act(const IntMatrix& g, const DiscElement& x) const {
        RationalVector v = representative(x);
        return class_of(to_rational(g) * v);
    }

private:
    Rational bilinear_raw(const DiscElement& x, const DiscElement& y) const {
        Rational acc;
        for (std::size_t i = 0; i < divisors_.size(); ++i)
            for (std::size_t j = 0; j < divisors_.size(); ++j)
                if (x.coords[i] != 0 && y.coords[j] != 0)
                    acc += Rational(mul_checked(x.coords[i], y.coords[j])) * generator_gram_(i, j);
        return acc;
    }

    IntMatrix gram_;
    std::vector<Int> divisors_;
    std::vector<RationalVector> generators_;
    std::vector<IntVector> class_rows_;
    RationalMatrix generator_gram_;
};

inline DiscriminantForm discriminant_form(const EvenLattice& lattice) { return DiscriminantForm(lattice); }

/// Positive generator of the ideal (v, L) in Z.
inline Int divisibility(const EvenLattice& lattice, std::span<const Int> v) {
    Int g = 0;
    for (Int p : lattice.pairings_with_basis(v)) g = gcd(g, p);
    if (g == 0) {
        bool zero = true;
        for (Int c : v) zero = zero && c == 0;
        if (zero) throw InvalidArgument("zero vector has no divisibility");
    }
    return g;
}

inline Int content(std::span<const Int> v) {
    Int g = 0;
    for (Int c : v) g = gcd(g, c);
    return g;
}

/// Membership in I^d(L): primitive, isotropic, divisibility d.
inline bool is_primitive_isotropic(const EvenLattice& lattice, std::span<const Int> v, Int d) {
    if (content(v) != 1) return false;
    if (lattice.pair(v, v) != 0) return false;
    return divisibility(lattice, v) == d;
}

/// Class of v / div(v) in D_L for a primitive isotropic v.
inline DiscElement disc_image_of_isotropic(const EvenLattice& lattice, const DiscriminantForm& form,
                                           std::span<const Int> v) {
    if (content(v) != 1) throw NotPrimitive("vector is not primitive");
    if (lattice.pair(v, v) != 0) throw NotIsotropic("vector is not isotropic");
    Int d = divisibility(lattice, v);
    RationalVector x(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) x[i] = Rational(v[i], d);
    return form.class_of(x);
}

inline DiscElement disc_image_of_isotropic(const EvenLattice& lattice, std::span<const Int> v) {
    return disc_image_of_isotropic(lattice, discriminant_form(lattice), v);
}

/// All x in D_L with q(x) = 0 mod 2, optionally restricted to ord(x) = order.
inline std::vector<DiscElement> isotropic_disc_elements(const DiscriminantForm& form,
                                                        std::optional<Int> order = std::nullopt,
                                                        std::size_t budget = kEnumerationBudget) {
    std::vector<DiscElement> out;
    for (auto& x : form.elements(budget)) {
        if (order && x.order != *order) continue;
        if (form.q(x).is_zero()) out.push_back(std::move(x));
    }
    return out;
}

struct Overlattice {
    EvenLattice lattice;
    /// Columns: the new basis in coordinates of the original lattice basis.
    RationalMatrix basis;
};

/// The overlattice <L, x~> generated by L and a representative of an isotropic class.
inline Overlattice overlattice_from_isotropic(const EvenLattice& lattice, const DiscriminantForm& form,
                                              const DiscElement& x) {
    if (!form.q(x).is_zero()) throw NotIsotropic("element not isotropic in D_L");
    const std::size_t n = lattice.rank();
    RationalVector rep = form.representative(x);
    Int denom = 1;
    for (const auto& c : rep) denom = lcm(denom, c.den());

    // Generators scaled by denom become integral: denom * e_i and denom * rep.
    IntMatrix gens(n + 1, n);
    for (std::size_t i = 0; i < n; ++i) gens(i, i) = denom;
    for (std::size_t j = 0; j < n; ++j) gens(n, j) = (rep[j] * Rational(denom)).num();
    IntMatrix hnf = row_hermite_basis(gens);

    RationalMatrix basis(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) basis(j, i) = Rational(hnf(i, j), denom);

    IntMatrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational p = lattice.pair(basis.column(i), basis.column(j));
            if (!p.is_integer()) throw Error("overlattice pairing is not integral");
            gram(i, j) = p.num();
        }
    return {EvenLattice(std::move(gram)), std::move(basis)};
}

inline Overlattice overlattice_from_isotropic(const EvenLattice& lattice, const DiscElement& x) {
    return overlattice_from_isotropic(lattice, discriminant_form(lattice), x);
}

/// True iff g^T * G * g == G and g is integral with det +-1.
inline bool is_isometry(const EvenLattice& lattice, const IntMatrix& g) {
    if (g.rows() != lattice.rank() || g.cols() != lattice.rank()) return false;
    Int det = determinant(g);
    if (det != 1 && det != -1) return false;
    return g.transpose() * lattice.gram() * g == lattice.gram();
}

/// True iff the isometry g acts trivially on D_L, i.e. g lies in O(L)_0.
inline bool disc_action_kernel_test(const EvenLattice& lattice, const DiscriminantForm& form, const IntMatrix& g) {
    if (!is_isometry(lattice, g)) throw NotIsometry("matrix is not an isometry of the lattice");
    const std::size_t k = form.divisors().size();
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Int> unit(k, 0);
        unit[i] = 1;
        DiscElement gen = form.element(unit);
        if (!(form.act(g, gen) == gen)) return false;
    }
    return true;
}

inline bool disc_action_kernel_test(const EvenLattice& lattice, const IntMatrix& g) {
    return disc_action_kernel_test(lattice, discriminant_form(lattice), g);
}

/// Gram matrix of arbitrary rational vectors (lattice-basis coordinates).
inline RationalMatrix sublattice_gram(const EvenLattice& lattice, const std::vector<RationalVector>& vectors) {
    RationalMatrix out(vectors.size(), vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < vectors.size(); ++j) out(i, j) = lattice.pair(vectors[i], vectors[j]);
    return out;
}

} // namespace k3cusps
