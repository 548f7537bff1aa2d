#pragma once

#include <string>
#include <variant>
#include <vector>

#include "tamecert/endomorphism.hpp"

namespace tamecert {

struct BetaAtom {
    friend bool operator==(BetaAtom, BetaAtom) { return true; }
};
struct BetaInvAtom {
    friend bool operator==(BetaInvAtom, BetaInvAtom) { return true; }
};
struct PiAtom {
    friend bool operator==(PiAtom, PiAtom) { return true; }
};

template <class Field>
using Atom = std::variant<BetaAtom, BetaInvAtom, PiAtom, AffineMap<Field>, Endomorphism<Field>>;

// A lazy product of generators, read left to right under the right action:
// (P)(a_1 a_2 ... a_r) = (...((P)a_1)a_2 ...)a_r.
template <class Field>
class Word {
public:
    using atom_type = Atom<Field>;

    explicit Word(Field f) : field_(std::move(f)) {}
    Word(Field f, std::vector<atom_type> atoms) : field_(std::move(f)), atoms_(std::move(atoms)) {}

    static Word beta(const Field& f) { return Word(f, {BetaAtom{}}); }
    static Word beta_inv(const Field& f) { return Word(f, {BetaInvAtom{}}); }
    static Word pi(const Field& f) { return Word(f, {PiAtom{}}); }
    static Word affine(const AffineMap<Field>& a) { return Word(a.field(), {a}); }
    static Word raw(const Endomorphism<Field>& e) { return Word(e.field(), {e}); }

    // theta_N = (pi beta)^N pi (pi beta)^{-N} = (pi beta)^N pi (beta^{-1} pi)^N.
    static Word theta(const Field& f, unsigned n) {
        Word w(f);
        for (unsigned t = 0; t < n; ++t) w.atoms_.insert(w.atoms_.end(), {PiAtom{}, BetaAtom{}});
        w.atoms_.push_back(PiAtom{});
        for (unsigned t = 0; t < n; ++t) w.atoms_.insert(w.atoms_.end(), {BetaInvAtom{}, PiAtom{}});
        return w;
    }

    const Field& field() const { return field_; }
    const std::vector<atom_type>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    Word& operator+=(const Word& other) {
        if (!(field_ == other.field_)) throw FieldMismatch();
        atoms_.insert(atoms_.end(), other.atoms_.begin(), other.atoms_.end());
        return *this;
    }
    friend Word operator+(Word a, const Word& b) { return a += b; }

    // Power of the word, e.g. (pi beta)^n.
    Word repeated(unsigned n) const {
        Word w(field_);
        for (unsigned t = 0; t < n; ++t) w += *this;
        return w;
    }

    friend bool operator==(const Word& a, const Word& b) { return a.field_ == b.field_ && a.atoms_ == b.atoms_; }

private:
    Field field_;
    std::vector<atom_type> atoms_;
};

template <class Field>
Endomorphism<Field> atom_endomorphism(const Atom<Field>& atom, const Field& f) {
    return std::visit(
        [&f](const auto& a) -> Endomorphism<Field> {
            using A = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<A, BetaAtom>)
                return beta(f);
            else if constexpr (std::is_same_v<A, BetaInvAtom>)
                return beta_inv(f);
            else if constexpr (std::is_same_v<A, PiAtom>)
                return pi(f);
            else if constexpr (std::is_same_v<A, AffineMap<Field>>)
                return Endomorphism<Field>(a);
            else
                return a;
        },
        atom);
}

template <class Field>
std::string atom_to_string(const Atom<Field>& atom) {
    return std::visit(
        [](const auto& a) -> std::string {
            using A = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<A, BetaAtom>)
                return "beta";
            else if constexpr (std::is_same_v<A, BetaInvAtom>)
                return "beta_inv";
            else if constexpr (std::is_same_v<A, PiAtom>)
                return "pi";
            else if constexpr (std::is_same_v<A, AffineMap<Field>>)
                return to_string(Endomorphism<Field>(a));
            else
                return to_string(a);
        },
        atom);
}

template <class Field>
std::string to_string(const Word<Field>& w) {
    if (w.empty()) return "id";
    std::string out;
    for (const auto& a : w.atoms()) {
        if (!out.empty()) out += " ; ";
        out += atom_to_string(a);
    }
    return out;
}

template <class Field>
std::ostream& operator<<(std::ostream& os, const Word<Field>& w) {
    return os << to_string(w);
}

// Stepwise image (P)w, one atom at a time.
template <class Field>
Polynomial<Field> apply_word(const Polynomial<Field>& p, const Word<Field>& w, const TermBudget& budget = {}) {
    require_same_field(p, Polynomial<Field>(w.field()));
    const Field& f = w.field();
    auto b = beta(f);
    auto bi = beta_inv(f);
    Polynomial<Field> cur = p;
    for (const auto& atom : w.atoms()) {
        if (std::holds_alternative<PiAtom>(atom))
            cur = cur.permuted({1, 0, 2});
        else if (std::holds_alternative<BetaAtom>(atom))
            cur = apply(cur, b, budget);
        else if (std::holds_alternative<BetaInvAtom>(atom))
            cur = apply(cur, bi, budget);
        else
            cur = apply(cur, atom_endomorphism(atom, f), budget);
        budget.check(cur.size(), "apply_word");
    }
    return cur;
}

// Eager component expansion of the whole word.
template <class Field>
Endomorphism<Field> to_endomorphism(const Word<Field>& w, const TermBudget& budget = {}) {
    auto acc = Endomorphism<Field>::identity(w.field());
    for (const auto& atom : w.atoms()) acc = compose(acc, atom_endomorphism(atom, w.field()), budget);
    return acc;
}

namespace detail {

template <class Ring>
typename Ring::value_type ring_pow(const Ring& r, typename Ring::value_type base, std::uint64_t e) {
    auto acc = r.one();
    while (e) {
        if (e & 1) acc = r.mul(acc, base);
        e >>= 1;
        if (e) base = r.mul(base, base);
    }
    return acc;
}

}  // namespace detail

// Value of P at a point whose coordinates live in a commutative ring over the
// coefficient field; embed maps coefficients into the ring.
template <class Field, class Ring, class Embed>
typename Ring::value_type eval_polynomial_in(const Polynomial<Field>& p, const Ring& r,
                                             const std::array<typename Ring::value_type, 3>& pt, Embed embed) {
    auto acc = r.zero();
    for (const auto& t : p.terms()) {
        auto v = embed(t.coeff);
        for (int c = 0; c < 3; ++c)
            if (t.exponent[c]) v = r.mul(v, detail::ring_pow(r, pt[c], t.exponent[c]));
        acc = r.add(acc, v);
    }
    return acc;
}

// w as a map of points. Under the right action the word a_1 ... a_r sends p to
// a_1(a_2(...a_r(p))), so atoms are evaluated from the right.
template <class Field, class Ring, class Embed>
std::array<typename Ring::value_type, 3> eval_word_in(const Word<Field>& w, const Ring& r,
                                                      std::array<typename Ring::value_type, 3> pt, Embed embed) {
    using V = typename Ring::value_type;
    for (auto it = w.atoms().rbegin(); it != w.atoms().rend(); ++it) {
        const auto& atom = *it;
        if (std::holds_alternative<PiAtom>(atom)) {
            std::swap(pt[0], pt[1]);
        } else if (std::holds_alternative<BetaAtom>(atom) || std::holds_alternative<BetaInvAtom>(atom)) {
            bool inv = std::holds_alternative<BetaInvAtom>(atom);
            V zz = r.mul(pt[2], pt[2]);
            V s = inv ? r.sub(pt[1], zz) : r.add(pt[1], zz);
            V corr = r.mul(r.mul(pt[1], pt[1]), r.mul(s, s));
            pt = {inv ? r.sub(pt[0], corr) : r.add(pt[0], corr), s, pt[2]};
        } else if (const auto* a = std::get_if<AffineMap<Field>>(&atom)) {
            std::array<V, 3> out;
            for (int row = 0; row < 3; ++row) {
                V acc = embed(a->shift(row));
                for (int c = 0; c < 3; ++c) acc = r.add(acc, r.mul(embed(a->linear(row, c)), pt[c]));
                out[row] = acc;
            }
            pt = out;
        } else {
            const auto& e = std::get<Endomorphism<Field>>(atom);
            pt = {eval_polynomial_in(e[0], r, pt, embed), eval_polynomial_in(e[1], r, pt, embed),
                  eval_polynomial_in(e[2], r, pt, embed)};
        }
    }
    return pt;
}

template <class Field>
std::array<typename Field::value_type, 3> eval_word_at_point(const Word<Field>& w,
                                                             const std::array<typename Field::value_type, 3>& pt) {
    return eval_word_in(w, w.field(), pt, [](const auto& c) { return c; });
}

// Cancels pi pi, beta beta^{-1} and beta^{-1} beta, and multiplies adjacent
// affine atoms (pi included) together, dropping identities. Denotes the same map.
template <class Field>
Word<Field> word_free_reduce(const Word<Field>& w) {
    const Field& f = w.field();
    auto as_affine = [&f](const Atom<Field>& a) -> std::optional<AffineMap<Field>> {
        if (std::holds_alternative<PiAtom>(a)) return AffineMap<Field>::swap_xy(f);
        if (const auto* m = std::get_if<AffineMap<Field>>(&a)) return *m;
        return std::nullopt;
    };
    auto normalize = [&f](const AffineMap<Field>& a) -> Atom<Field> {
        if (a == AffineMap<Field>::swap_xy(f)) return PiAtom{};
        return a;
    };

    std::vector<Atom<Field>> out;
    for (const auto& atom : w.atoms()) {
        if (!out.empty()) {
            const auto& top = out.back();
            bool cancel = (std::holds_alternative<BetaAtom>(top) && std::holds_alternative<BetaInvAtom>(atom)) ||
                          (std::holds_alternative<BetaInvAtom>(top) && std::holds_alternative<BetaAtom>(atom));
            if (cancel) {
                out.pop_back();
                continue;
            }
            auto lhs = as_affine(top);
            auto rhs = as_affine(atom);
            if (lhs && rhs) {
                auto prod = *lhs * *rhs;
                out.pop_back();
                if (!prod.is_identity()) out.push_back(normalize(prod));
                continue;
            }
        }
        if (auto a = as_affine(atom); a && a->is_identity()) continue;
        out.push_back(atom);
    }
    return Word<Field>(f, std::move(out));
}

}  // namespace tamecert
