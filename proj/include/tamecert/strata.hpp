#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tamecert/endomorphism.hpp"

namespace tamecert {

// Position of an affine map in A0 > A1 > A2 > A3 > A4, where
//   A1 = affine triangular maps,
//   A2 = {(u^8 x + b y + c z + d, u^2 y, u z)},
//   A3 = {(u^8 x + c z + d, u^2 y, u z)},
//   A4 = {(u^2 x, u^2 y, u z) : u^6 = 1}.
enum class Stratum { a0_minus_a1, a1_minus_a2, a2_minus_a3, a3_minus_a4, a4, not_affine };

inline std::string to_string(Stratum s) {
    switch (s) {
        case Stratum::a0_minus_a1: return "A0\\A1";
        case Stratum::a1_minus_a2: return "A1\\A2";
        case Stratum::a2_minus_a3: return "A2\\A3";
        case Stratum::a3_minus_a4: return "A3\\A4";
        case Stratum::a4: return "A4";
        case Stratum::not_affine: return "not-affine";
    }
    return "?";
}

// Coefficients of (a1 x + b1 y + c1 z + d1, b2 y + c2 z + d2, c3 z + d3).
template <class Field>
struct TriangularParams {
    using scalar = typename Field::value_type;
    scalar a1, b1, c1, d1, b2, c2, d2, c3, d3;

    AffineMap<Field> to_affine(const Field& f) const {
        typename AffineMap<Field>::Matrix m{{{a1, b1, c1}, {f.zero(), b2, c2}, {f.zero(), f.zero(), c3}}};
        return AffineMap<Field>(f, m, {d1, d2, d3});
    }
};

template <class Field>
struct StratumLabel {
    using scalar = typename Field::value_type;

    Stratum stratum = Stratum::not_affine;
    std::optional<TriangularParams<Field>> triangular;  // set from A1 down
    std::optional<scalar> u, b, c, d;                    // set from A2 down

    // Rebuilds the map from the extracted parameters.
    std::optional<AffineMap<Field>> reconstruct(const Field& f) const {
        if (u) {
            typename AffineMap<Field>::Matrix m{{{f.pow(*u, 8), *b, *c}, {f.zero(), f.pow(*u, 2), f.zero()},
                                                 {f.zero(), f.zero(), *u}}};
            return AffineMap<Field>(f, m, {*d, f.zero(), f.zero()});
        }
        if (triangular) return triangular->to_affine(f);
        return std::nullopt;
    }
};

template <class Field>
bool is_affine_triangular(const AffineMap<Field>& a) {
    const Field& f = a.field();
    return f.is_zero(a.linear(1, 0)) && f.is_zero(a.linear(2, 0)) && f.is_zero(a.linear(2, 1));
}

template <class Field>
StratumLabel<Field> stratum_classify(const AffineMap<Field>& a) {
    const Field& f = a.field();
    StratumLabel<Field> label;
    if (!is_affine_triangular(a)) {
        label.stratum = Stratum::a0_minus_a1;
        return label;
    }
    label.triangular = TriangularParams<Field>{a.linear(0, 0), a.linear(0, 1), a.linear(0, 2),
                                               a.shift(0),     a.linear(1, 1), a.linear(1, 2),
                                               a.shift(1),     a.linear(2, 2), a.shift(2)};
    const auto& t = *label.triangular;
    const auto u = t.c3;
    bool in_a2 = f.is_zero(t.c2) && f.is_zero(t.d2) && f.is_zero(t.d3) && f.equal(t.b2, f.pow(u, 2)) &&
                 f.equal(t.a1, f.pow(u, 8));
    if (!in_a2) {
        label.stratum = Stratum::a1_minus_a2;
        return label;
    }
    label.u = u;
    label.b = t.b1;
    label.c = t.c1;
    label.d = t.d1;
    if (!f.is_zero(t.b1)) {
        label.stratum = Stratum::a2_minus_a3;
        return label;
    }
    bool in_a4 = f.is_zero(t.c1) && f.is_zero(t.d1) && f.equal(t.a1, f.pow(u, 2));
    label.stratum = in_a4 ? Stratum::a4 : Stratum::a3_minus_a4;
    return label;
}

template <class Field>
StratumLabel<Field> stratum_classify(const Endomorphism<Field>& e) {
    if (auto a = e.as_affine()) return stratum_classify(*a);
    return {};
}

// All u with u^6 = 1.
inline std::vector<mpq_class> sixth_roots(const RationalField&) { return {1, -1}; }

inline std::vector<std::uint64_t> sixth_roots(const PrimeField& f) {
    const std::uint64_t p = f.modulus();
    if (p == 2) return {1};
    const std::uint64_t order = std::gcd<std::uint64_t>(6, p - 1);
    // Find an element of exact order `order` among x^((p-1)/order).
    std::uint64_t gen = 1;
    for (std::uint64_t x = 2; x < p; ++x) {
        std::uint64_t y = f.pow(x, (p - 1) / order);
        bool exact = true;
        for (std::uint64_t q : {2u, 3u})
            if (order % q == 0 && f.pow(y, order / q) == 1) exact = false;
        if (exact) {
            gen = y;
            break;
        }
    }
    std::vector<std::uint64_t> roots;
    std::uint64_t r = 1;
    for (std::uint64_t t = 0; t < order; ++t, r = f.mul(r, gen)) roots.push_back(r);
    std::sort(roots.begin(), roots.end());
    return roots;
}

// A4 = {(u^2 x, u^2 y, u z) : u^6 = 1}.
template <class Field>
std::vector<AffineMap<Field>> centralizer_elements(const Field& f) {
    std::vector<AffineMap<Field>> out;
    for (const auto& u : sixth_roots(f)) {
        auto u2 = f.mul(u, u);
        out.push_back(AffineMap<Field>::diagonal(f, u2, u2, u));
    }
    return out;
}

template <class Field, class Rng>
AffineMap<Field> random_affine(const Field& f, Rng& rng) {
    for (;;) {
        typename AffineMap<Field>::Matrix m;
        typename AffineMap<Field>::Vector t;
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] = f.random(rng);
            t[r] = f.random(rng);
        }
        try {
            return AffineMap<Field>(f, m, t);
        } catch (const NotInvertible&) {
        }
    }
}

// Random element of the given stratum, by construction plus rejection.
template <class Field, class Rng>
AffineMap<Field> random_affine_in(Stratum s, const Field& f, Rng& rng) {
    using M = typename AffineMap<Field>::Matrix;
    auto z = f.zero();
    for (int attempt = 0; attempt < 10000; ++attempt) {
        if (s == Stratum::a4) {
            auto roots = sixth_roots(f);
            auto u = roots[rng() % roots.size()];
            auto u2 = f.mul(u, u);
            return AffineMap<Field>::diagonal(f, u2, u2, u);
        }
        AffineMap<Field> a = AffineMap<Field>::identity(f);
        if (s == Stratum::a0_minus_a1 || s == Stratum::not_affine) {
            a = random_affine(f, rng);
        } else if (s == Stratum::a1_minus_a2) {
            M m{{{f.random_nonzero(rng), f.random(rng), f.random(rng)},
                 {z, f.random_nonzero(rng), f.random(rng)},
                 {z, z, f.random_nonzero(rng)}}};
            a = AffineMap<Field>(f, m, {f.random(rng), f.random(rng), f.random(rng)});
        } else {
            auto u = f.random_nonzero(rng);
            auto b = s == Stratum::a2_minus_a3 ? f.random_nonzero(rng) : z;
            M m{{{f.pow(u, 8), b, f.random(rng)}, {z, f.pow(u, 2), z}, {z, z, u}}};
            a = AffineMap<Field>(f, m, {f.random(rng), z, z});
        }
        if (stratum_classify(a).stratum == s) return a;
    }
    throw PreconditionError("could not sample stratum " + to_string(s) + " over " + f.name());
}

}  // namespace tamecert
