#pragma once

#include <array>
#include <optional>

#include "tamecert/polynomial.hpp"

namespace tamecert {

template <class Field>
class Endomorphism;

// Affine map x -> M x + t. Row r of M and t[r] give the r-th component
// sum_c M[r][c] x_c + t[r]. Construction enforces det M != 0.
template <class Field>
class AffineMap {
public:
    using scalar = typename Field::value_type;
    using Matrix = std::array<std::array<scalar, 3>, 3>;
    using Vector = std::array<scalar, 3>;

    AffineMap(Field f, Matrix m, Vector t) : field_(std::move(f)), m_(std::move(m)), t_(std::move(t)) {
        if (field_.is_zero(determinant())) throw NotInvertible("affine matrix is singular");
    }

    static AffineMap identity(const Field& f) {
        Matrix m;
        Vector t;
        for (int r = 0; r < 3; ++r) {
            t[r] = f.zero();
            for (int c = 0; c < 3; ++c) m[r][c] = r == c ? f.one() : f.zero();
        }
        return AffineMap(f, m, t);
    }

    static AffineMap permutation(const Field& f, const std::array<int, 3>& cols) {
        auto a = identity(f);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) a.m_[r][c] = cols[r] == c ? f.one() : f.zero();
        return a;
    }

    // pi = (y, x, z)
    static AffineMap swap_xy(const Field& f) { return permutation(f, {1, 0, 2}); }

    static AffineMap diagonal(const Field& f, const scalar& a, const scalar& b, const scalar& c) {
        auto id = identity(f);
        Matrix m = id.m_;
        m[0][0] = a;
        m[1][1] = b;
        m[2][2] = c;
        return AffineMap(f, m, id.t_);
    }

    // Nullopt unless every component has total degree <= 1 and the linear part is invertible.
    static std::optional<AffineMap> from_components(const std::array<Polynomial<Field>, 3>& comps) {
        const Field& f = comps[0].field();
        Matrix m;
        Vector t;
        for (int r = 0; r < 3; ++r) {
            t[r] = f.zero();
            for (int c = 0; c < 3; ++c) m[r][c] = f.zero();
            for (const auto& term : comps[r].terms()) {
                const auto& e = term.exponent;
                if (e.total() > 1) return std::nullopt;
                if (e.is_zero())
                    t[r] = term.coeff;
                else
                    m[r][e.i ? 0 : e.j ? 1 : 2] = term.coeff;
            }
        }
        if (f.is_zero(det3(f, m))) return std::nullopt;
        return AffineMap(f, m, t);
    }

    const Field& field() const { return field_; }
    const Matrix& matrix() const { return m_; }
    const Vector& translation() const { return t_; }
    const scalar& linear(int r, int c) const { return m_[r][c]; }
    const scalar& shift(int r) const { return t_[r]; }

    scalar determinant() const { return det3(field_, m_); }

    std::array<Polynomial<Field>, 3> components() const {
        std::array<Polynomial<Field>, 3> out{Polynomial<Field>(field_), Polynomial<Field>(field_),
                                             Polynomial<Field>(field_)};
        for (int r = 0; r < 3; ++r) {
            std::vector<Term<Field>> terms;
            for (int c = 0; c < 3; ++c) {
                Exponent e;
                e[c] = 1;
                terms.push_back({e, m_[r][c]});
            }
            terms.push_back({Exponent{}, t_[r]});
            out[r] = Polynomial<Field>::from_terms(field_, std::move(terms));
        }
        return out;
    }

    Vector apply(const Vector& p) const {
        Vector out;
        for (int r = 0; r < 3; ++r) {
            scalar acc = t_[r];
            for (int c = 0; c < 3; ++c) acc = field_.add(acc, field_.mul(m_[r][c], p[c]));
            out[r] = acc;
        }
        return out;
    }

    bool is_identity() const { return *this == identity(field_); }

    friend bool operator==(const AffineMap& a, const AffineMap& b) {
        if (!(a.field_ == b.field_)) return false;
        for (int r = 0; r < 3; ++r) {
            if (!a.field_.equal(a.t_[r], b.t_[r])) return false;
            for (int c = 0; c < 3; ++c)
                if (!a.field_.equal(a.m_[r][c], b.m_[r][c])) return false;
        }
        return true;
    }

    // Right-action product: (ab)_r = a_r(b_1, b_2, b_3), i.e. M = M_a M_b, t = M_a t_b + t_a.
    friend AffineMap operator*(const AffineMap& a, const AffineMap& b) {
        if (!(a.field_ == b.field_)) throw FieldMismatch();
        const Field& f = a.field_;
        Matrix m;
        Vector t;
        for (int r = 0; r < 3; ++r) {
            t[r] = a.t_[r];
            for (int c = 0; c < 3; ++c) {
                t[r] = f.add(t[r], f.mul(a.m_[r][c], b.t_[c]));
                scalar acc = f.zero();
                for (int s = 0; s < 3; ++s) acc = f.add(acc, f.mul(a.m_[r][s], b.m_[s][c]));
                m[r][c] = acc;
            }
        }
        return AffineMap(f, m, t);
    }

private:
    static scalar det3(const Field& f, const Matrix& m) {
        auto term = [&](int a, int b, int c) { return f.mul(m[0][a], f.mul(m[1][b], m[2][c])); };
        scalar pos = f.add(term(0, 1, 2), f.add(term(1, 2, 0), term(2, 0, 1)));
        scalar neg = f.add(term(2, 1, 0), f.add(term(0, 2, 1), term(1, 0, 2)));
        return f.sub(pos, neg);
    }

    Field field_;
    Matrix m_;
    Vector t_;
};

// Exact two-sided inverse by Gauss-Jordan elimination over the field.
template <class Field>
AffineMap<Field> affine_invert(const AffineMap<Field>& a) {
    using scalar = typename Field::value_type;
    const Field& f = a.field();
    std::array<std::array<scalar, 6>, 3> aug;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 6; ++c) aug[r][c] = c < 3 ? a.linear(r, c) : (c - 3 == r ? f.one() : f.zero());
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        while (pivot < 3 && f.is_zero(aug[pivot][col])) ++pivot;
        if (pivot == 3) throw NotInvertible("affine matrix is singular");
        std::swap(aug[pivot], aug[col]);
        scalar inv = f.inv(aug[col][col]);
        for (auto& x : aug[col]) x = f.mul(x, inv);
        for (int r = 0; r < 3; ++r) {
            if (r == col || f.is_zero(aug[r][col])) continue;
            scalar factor = aug[r][col];
            for (int c = 0; c < 6; ++c) aug[r][c] = f.sub(aug[r][c], f.mul(factor, aug[col][c]));
        }
    }
    typename AffineMap<Field>::Matrix m;
    typename AffineMap<Field>::Vector t;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m[r][c] = aug[r][c + 3];
    // t' = -M^{-1} t
    for (int r = 0; r < 3; ++r) {
        scalar acc = f.zero();
        for (int c = 0; c < 3; ++c) acc = f.add(acc, f.mul(m[r][c], a.shift(c)));
        t[r] = f.neg(acc);
    }
    return AffineMap<Field>(f, m, t);
}

}  // namespace tamecert
