#pragma once

#include <array>
#include <map>
#include <vector>

#include "tamecert/polynomial.hpp"

namespace tamecert {

// Powers of a fixed polynomial, computed on demand by binary exponentiation
// and cached per distinct exponent.
template <class Field>
class PowerCache {
public:
    PowerCache(Polynomial<Field> base, const TermBudget& budget) : base_(std::move(base)), budget_(budget) {}

    const Polynomial<Field>& power(std::uint64_t e) {
        if (auto it = cache_.find(e); it != cache_.end()) return it->second;
        Polynomial<Field> r(base_.field());
        if (e == 0)
            r = Polynomial<Field>::constant(base_.field(), base_.field().one());
        else if (e == 1)
            r = base_;
        else if (e % 2 == 0) {
            const auto& h = power(e / 2);
            r = mul(h, h, budget_);
        } else {
            r = mul(power(e - 1), base_, budget_);
        }
        return cache_.emplace(e, std::move(r)).first->second;
    }

    const Polynomial<Field>& base() const { return base_; }

private:
    Polynomial<Field> base_;
    TermBudget budget_;
    std::map<std::uint64_t, Polynomial<Field>> cache_;
};

// (P)phi for phi = (F, G, H): every x^i y^j z^k becomes F^i G^j H^k.
//
// The variable whose image has the most terms is eliminated by Horner's rule;
// the other two go through power caches shared by all monomials.
template <class Field>
Polynomial<Field> substitute(const Polynomial<Field>& p, const std::array<Polynomial<Field>, 3>& images,
                             const TermBudget& budget = {}) {
    const Field& f = p.field();
    for (const auto& img : images) require_same_field(p, img);
    if (p.is_constant()) return p;

    int outer = -1;
    for (int v = 0; v < 3; ++v) {
        if (p.degree_in(v) == 0) continue;
        if (outer < 0 || images[v].size() > images[outer].size() ||
            (images[v].size() == images[outer].size() && p.degree_in(v) > p.degree_in(outer)))
            outer = v;
    }
    const int a = outer == 0 ? 1 : 0;
    const int b = outer == 2 ? 1 : 2;

    std::vector<std::vector<Term<Field>>> buckets(p.degree_in(outer) + 1);
    for (const auto& t : p.terms()) buckets[t.exponent[outer]].push_back(t);

    PowerCache<Field> pa(images[a], budget);
    PowerCache<Field> pb(images[b], budget);
    const bool b_monomial = images[b].size() == 1;

    Polynomial<Field> result(f);
    for (std::size_t e = buckets.size(); e-- > 0;) {
        if (!result.is_zero()) result = mul(result, images[outer], budget);
        if (buckets[e].empty()) continue;
        PolynomialBuilder<Field> inner(f);
        for (const auto& t : buckets[e]) {
            const auto& fa = pa.power(t.exponent[a]);
            if (b_monomial) {
                const auto& hb = images[b].terms()[0];
                auto s = t.exponent[b];
                inner.add_scaled(fa.times_monomial(scaled(hb.exponent, s), f.pow(hb.coeff, s)), t.coeff);
            } else if (t.exponent[b] == 0) {
                inner.add_scaled(fa, t.coeff);
            } else {
                inner.add_scaled(mul(fa, pb.power(t.exponent[b]), budget), t.coeff);
            }
        }
        result = add(result, inner.build(), budget);
    }
    return result;
}

}  // namespace tamecert
