#pragma once

#include <map>
#include <random>
#include <set>

#include "tamecert/polynomial.hpp"

// Naive reference implementations used as test oracles. They work on plain
// std::map coefficient tables and never call the library's arithmetic.
namespace oracle {

using tamecert::Exponent;

template <class Field>
using Table = std::map<Exponent, typename Field::value_type>;

template <class Field>
Table<Field> table(const tamecert::Polynomial<Field>& p) {
    Table<Field> t;
    for (const auto& term : p.terms()) t[term.exponent] = term.coeff;
    return t;
}

template <class Field>
Table<Field> prune(const Field& f, Table<Field> t) {
    for (auto it = t.begin(); it != t.end();) it = f.is_zero(it->second) ? t.erase(it) : std::next(it);
    return t;
}

template <class Field>
Table<Field> add(const Field& f, const Table<Field>& a, const Table<Field>& b) {
    Table<Field> out = a;
    for (const auto& [e, c] : b) {
        auto it = out.find(e);
        if (it == out.end())
            out[e] = c;
        else
            it->second = f.add(it->second, c);
    }
    return prune(f, out);
}

// Schoolbook convolution.
template <class Field>
Table<Field> mul(const Field& f, const Table<Field>& a, const Table<Field>& b) {
    Table<Field> out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exponent e{ea.i + eb.i, ea.j + eb.j, ea.k + eb.k};
            auto it = out.find(e);
            if (it == out.end())
                out[e] = f.mul(ca, cb);
            else
                it->second = f.add(it->second, f.mul(ca, cb));
        }
    return prune(f, out);
}

template <class Field>
Table<Field> one(const Field& f) {
    return {{Exponent{}, f.one()}};
}

template <class Field>
Table<Field> pow(const Field& f, const Table<Field>& a, unsigned e) {
    Table<Field> out = one(f);
    for (unsigned t = 0; t < e; ++t) out = mul(f, out, a);
    return out;
}

// P(F, G, H) expanded monomial by monomial with repeated multiplication.
template <class Field>
Table<Field> substitute(const Field& f, const Table<Field>& p, const std::array<Table<Field>, 3>& img) {
    Table<Field> out;
    for (const auto& [e, c] : p) {
        Table<Field> mono{{Exponent{}, c}};
        for (int v = 0; v < 3; ++v) mono = mul(f, mono, pow(f, img[v], e[v]));
        out = add(f, out, mono);
    }
    return out;
}

template <class Field>
Table<Field> random_table(const Field& f, std::mt19937_64& rng, int terms, unsigned max_exp) {
    std::uniform_int_distribution<unsigned> ex(0, max_exp);
    Table<Field> t;
    for (int s = 0; s < terms; ++s) t[Exponent{ex(rng), ex(rng), ex(rng)}] = f.random_nonzero(rng);
    return t;
}

template <class Field>
tamecert::Polynomial<Field> to_poly(const Field& f, const Table<Field>& t) {
    std::vector<tamecert::Term<Field>> terms;
    for (const auto& [e, c] : t) terms.push_back({e, c});
    return tamecert::Polynomial<Field>::from_terms(f, std::move(terms));
}

template <class Field>
tamecert::Polynomial<Field> random_poly(const Field& f, std::mt19937_64& rng, int terms, unsigned max_exp) {
    return to_poly(f, random_table(f, rng, terms, max_exp));
}

// Every lattice point in a box that satisfies the inequalities, tested directly.
inline std::set<Exponent> brute_region(bool is_p, unsigned m, unsigned n) {
    std::set<Exponent> out;
    unsigned bound = 8 * m + n + 1;
    for (unsigned i = 0; i <= bound; ++i)
        for (unsigned j = 0; j <= bound; ++j)
            for (unsigned k = 0; k <= bound; ++k) {
                bool in = is_p ? (4 * i + j <= 4 * m && 4 * i + k <= 4 * m + n && 8 * i + 2 * j + k <= 8 * m + n)
                               : (i + j <= m && 3 * i + 3 * j + k <= 3 * m + n);
                if (in) out.insert({i, j, k});
            }
    return out;
}

}  // namespace oracle
