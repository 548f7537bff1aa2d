#pragma once

#include <array>
#include <compare>
#include <string>
#include <vector>

#include "tamecert/endomorphism.hpp"

namespace tamecert {

// Nonzero weight vector w in N^3.
class WeightVector {
public:
    WeightVector(std::uint32_t a, std::uint32_t b, std::uint32_t c) : w_{a, b, c} {
        if (a == 0 && b == 0 && c == 0) throw PreconditionError("weight vector must be nonzero");
    }

    std::uint32_t operator[](int v) const { return w_[v]; }
    std::uint64_t dot(const Exponent& e) const {
        return std::uint64_t{w_[0]} * e.i + std::uint64_t{w_[1]} * e.j + std::uint64_t{w_[2]} * e.k;
    }
    friend bool operator==(const WeightVector&, const WeightVector&) = default;

private:
    std::array<std::uint32_t, 3> w_;
};

// Element of M u {-oo}: M is (N, +) for weighted degrees and (N^3, +) under
// the cyclic order >_i for ldeg_i. order() is 0 for weighted, i for ldeg_i.
class DegreeValue {
public:
    static DegreeValue minus_infinity(int order) { return DegreeValue(order, true, 0, {}); }
    static DegreeValue weighted(std::uint64_t v) { return DegreeValue(0, false, v, {}); }
    static DegreeValue lex(const Exponent& e, int order) { return DegreeValue(order, false, 0, e); }

    bool is_minus_infinity() const { return minus_inf_; }
    int order() const { return order_; }
    std::uint64_t scalar() const { return scalar_; }
    const Exponent& vector() const { return vec_; }

    friend DegreeValue operator+(const DegreeValue& a, const DegreeValue& b) {
        if (a.order_ != b.order_) throw PreconditionError("adding degrees of different monoids");
        if (a.minus_inf_ || b.minus_inf_) return minus_infinity(a.order_);
        return DegreeValue(a.order_, false, a.scalar_ + b.scalar_, a.vec_ + b.vec_);
    }

    friend std::strong_ordering operator<=>(const DegreeValue& a, const DegreeValue& b) {
        if (a.order_ != b.order_) throw PreconditionError("comparing degrees of different monoids");
        if (a.minus_inf_ || b.minus_inf_) return !a.minus_inf_ <=> !b.minus_inf_;
        if (a.order_ == 0) return a.scalar_ <=> b.scalar_;
        return cyclic_lex_compare(a.vec_, b.vec_, a.order_);
    }
    friend bool operator==(const DegreeValue& a, const DegreeValue& b) { return (a <=> b) == 0; }

    std::string to_string() const {
        if (minus_inf_) return "-inf";
        if (order_ == 0) return std::to_string(scalar_);
        return "(" + std::to_string(vec_.i) + "," + std::to_string(vec_.j) + "," + std::to_string(vec_.k) + ")";
    }
    friend std::ostream& operator<<(std::ostream& os, const DegreeValue& d) { return os << d.to_string(); }

private:
    DegreeValue(int order, bool minus_inf, std::uint64_t s, Exponent v)
        : order_(order), minus_inf_(minus_inf), scalar_(s), vec_(v) {}

    int order_;
    bool minus_inf_;
    std::uint64_t scalar_;
    Exponent vec_;
};

// A weighted degree deg_w or a cyclic lexicographic degree ldeg_i, as one value type.
class DegreeFunction {
public:
    static DegreeFunction weighted(const WeightVector& w) { return DegreeFunction(0, w); }
    static DegreeFunction weighted(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        return weighted(WeightVector(a, b, c));
    }
    static DegreeFunction lex(int i) {
        if (i < 1 || i > 3) throw PreconditionError("lexicographic index must be 1, 2 or 3");
        return DegreeFunction(i, WeightVector(1, 1, 1));
    }

    bool is_weighted() const { return order_ == 0; }
    int lex_index() const { return order_; }
    const WeightVector& weight() const { return w_; }

    DegreeValue of_exponent(const Exponent& e) const {
        return order_ == 0 ? DegreeValue::weighted(w_.dot(e)) : DegreeValue::lex(e, order_);
    }
    DegreeValue minus_infinity() const { return DegreeValue::minus_infinity(order_); }
    DegreeValue zero() const { return of_exponent({}); }

    template <class Field>
    DegreeValue operator()(const Polynomial<Field>& p) const {
        DegreeValue best = minus_infinity();
        for (const auto& t : p.terms()) {
            auto d = of_exponent(t.exponent);
            if (d > best) best = d;
        }
        return best;
    }

    std::string name() const {
        if (order_ != 0) return "ldeg" + std::to_string(order_);
        return "deg(" + std::to_string(w_[0]) + "," + std::to_string(w_[1]) + "," + std::to_string(w_[2]) + ")";
    }

    friend bool operator==(const DegreeFunction&, const DegreeFunction&) = default;

private:
    DegreeFunction(int order, WeightVector w) : order_(order), w_(w) {}

    int order_;
    WeightVector w_;
};

template <class Field>
DegreeValue weighted_deg(const Polynomial<Field>& p, const WeightVector& w) {
    return DegreeFunction::weighted(w)(p);
}

template <class Field>
DegreeValue ldeg(const Polynomial<Field>& p, int i) {
    return DegreeFunction::lex(i)(p);
}

// The degree functions named in the construction: the weights (4,1,0),
// (4,0,1), (8,2,1), (1,1,0), (3,3,1), the total degree, and ldeg_1..3.
inline std::vector<DegreeFunction> registered_degree_functions() {
    return {DegreeFunction::weighted(4, 1, 0), DegreeFunction::weighted(4, 0, 1), DegreeFunction::weighted(8, 2, 1),
            DegreeFunction::weighted(1, 1, 0), DegreeFunction::weighted(3, 3, 1), DegreeFunction::weighted(1, 1, 1),
            DegreeFunction::lex(1),            DegreeFunction::lex(2),            DegreeFunction::lex(3)};
}

// deg(X) > deg(Y) > deg(Z) for beta = (X, Y, Z).
template <class Field = RationalField>
bool check_beta_lexicographic(const DegreeFunction& deg, const Field& f = Field{}) {
    auto b = beta(f);
    return deg(b[0]) > deg(b[1]) && deg(b[1]) > deg(b[2]);
}

// Degree of each component of an endomorphism.
template <class Field>
std::array<DegreeValue, 3> component_degrees(const Endomorphism<Field>& phi, const DegreeFunction& deg) {
    return {deg(phi[0]), deg(phi[1]), deg(phi[2])};
}

// deg((x^v)phi) computed multiplicatively from the component degrees.
inline DegreeValue monomial_image_degree(const std::array<DegreeValue, 3>& comp, const Exponent& v) {
    DegreeValue acc = DegreeValue::weighted(0);
    if (comp[0].order() != 0) acc = DegreeValue::lex({}, comp[0].order());
    for (int c = 0; c < 3; ++c) {
        if (v[c] == 0) continue;
        if (comp[c].is_minus_infinity()) return DegreeValue::minus_infinity(comp[c].order());
        if (comp[c].order() == 0)
            acc = acc + DegreeValue::weighted(comp[c].scalar() * v[c]);
        else
            acc = acc + DegreeValue::lex(scaled(comp[c].vector(), v[c]), comp[c].order());
    }
    return acc;
}

}  // namespace tamecert
