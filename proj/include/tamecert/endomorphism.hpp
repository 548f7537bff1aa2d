#pragma once

#include <array>
#include <optional>
#include <string>

#include "tamecert/affine.hpp"
#include "tamecert/substitute.hpp"

namespace tamecert {

// Polynomial endomorphism (phi_1, phi_2, phi_3) of affine 3-space, acting on
// polynomials from the right: (P)phi = P(phi_1, phi_2, phi_3).
template <class Field>
class Endomorphism {
public:
    using poly = Polynomial<Field>;

    Endomorphism(poly a, poly b, poly c) : c_{std::move(a), std::move(b), std::move(c)} {
        require_same_field(c_[0], c_[1]);
        require_same_field(c_[0], c_[2]);
    }
    explicit Endomorphism(std::array<poly, 3> comps) : Endomorphism(comps[0], comps[1], comps[2]) {}
    explicit Endomorphism(const AffineMap<Field>& a) : Endomorphism(a.components()) {}

    static Endomorphism identity(const Field& f) {
        return {poly::variable(f, 0), poly::variable(f, 1), poly::variable(f, 2)};
    }

    const Field& field() const { return c_[0].field(); }
    const poly& operator[](int r) const { return c_[r]; }
    const std::array<poly, 3>& components() const { return c_; }
    std::size_t term_count() const { return c_[0].size() + c_[1].size() + c_[2].size(); }

    std::optional<AffineMap<Field>> as_affine() const { return AffineMap<Field>::from_components(c_); }

    friend bool operator==(const Endomorphism&, const Endomorphism&) = default;

private:
    std::array<poly, 3> c_;
};

template <class Field>
std::string to_string(const Endomorphism<Field>& e) {
    return "(" + to_string(e[0]) + ", " + to_string(e[1]) + ", " + to_string(e[2]) + ")";
}

template <class Field>
std::ostream& operator<<(std::ostream& os, const Endomorphism<Field>& e) {
    return os << to_string(e);
}

template <class Field>
Polynomial<Field> apply(const Polynomial<Field>& p, const Endomorphism<Field>& phi, const TermBudget& budget = {}) {
    return substitute(p, phi.components(), budget);
}

// phi psi, so that (P)(phi psi) = ((P)phi)psi.
template <class Field>
Endomorphism<Field> compose(const Endomorphism<Field>& phi, const Endomorphism<Field>& psi,
                            const TermBudget& budget = {}) {
    return Endomorphism<Field>(apply(phi[0], psi, budget), apply(phi[1], psi, budget), apply(phi[2], psi, budget));
}

// beta = (x + y^2 (y + z^2)^2, y + z^2, z)
template <class Field>
Endomorphism<Field> beta(const Field& f) {
    using P = Polynomial<Field>;
    auto x = P::variable(f, 0), y = P::variable(f, 1), z = P::variable(f, 2);
    auto s = y + z * z;
    return {x + y * y * s * s, s, z};
}

// beta^{-1} = (x - y^2 (y - z^2)^2, y - z^2, z)
template <class Field>
Endomorphism<Field> beta_inv(const Field& f) {
    using P = Polynomial<Field>;
    auto x = P::variable(f, 0), y = P::variable(f, 1), z = P::variable(f, 2);
    auto s = y - z * z;
    return {x - y * y * s * s, s, z};
}

// pi = (y, x, z)
template <class Field>
Endomorphism<Field> pi(const Field& f) {
    using P = Polynomial<Field>;
    return {P::variable(f, 1), P::variable(f, 0), P::variable(f, 2)};
}

// Membership in BA_3: phi_r in K* x_r + K[x_{r+1}, ..., x_3].
template <class Field>
bool is_triangular(const Endomorphism<Field>& phi) {
    const Field& f = phi.field();
    for (int r = 0; r < 3; ++r) {
        Exponent lead;
        lead[r] = 1;
        if (f.is_zero(phi[r].coefficient(lead))) return false;
        for (const auto& t : phi[r].terms()) {
            if (t.exponent == lead) continue;
            for (int v = 0; v <= r; ++v)
                if (t.exponent[v] != 0) return false;
        }
    }
    return true;
}

// Inverse of a triangular automorphism by back-substitution from z upward:
// phi_r = a_r x_r + g_r(x_{r+1}, ...) gives psi_r = (x_r - g_r(psi_{r+1}, ...)) / a_r.
template <class Field>
Endomorphism<Field> triangular_invert(const Endomorphism<Field>& phi, const TermBudget& budget = {}) {
    if (!is_triangular(phi)) throw PreconditionError("triangular_invert: map is not triangular");
    const Field& f = phi.field();
    using P = Polynomial<Field>;
    std::array<P, 3> psi{P::variable(f, 0), P::variable(f, 1), P::variable(f, 2)};
    for (int r = 2; r >= 0; --r) {
        Exponent lead;
        lead[r] = 1;
        auto a = phi[r].coefficient(lead);
        auto rest = sub(phi[r], P::monomial(f, lead, a));
        // rest only involves variables after r, whose inverses are already in psi.
        std::array<P, 3> images{P::variable(f, 0), P::variable(f, 1), P::variable(f, 2)};
        for (int v = r + 1; v < 3; ++v) images[v] = psi[v];
        auto g = substitute(rest, images, budget);
        psi[r] = sub(P::variable(f, r), g).times_monomial({}, f.inv(a));
    }
    return Endomorphism<Field>(psi);
}

}  // namespace tamecert
