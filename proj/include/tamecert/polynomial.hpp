#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tamecert/errors.hpp"
#include "tamecert/exponent.hpp"
#include "tamecert/field.hpp"

namespace tamecert {

// Upper bound on the number of terms an operation may produce.
struct TermBudget {
    std::size_t max_terms = std::numeric_limits<std::size_t>::max();

    static TermBudget unlimited() { return {}; }
    bool limited() const { return max_terms != std::numeric_limits<std::size_t>::max(); }

    void check(std::size_t terms, const char* where) const {
        if (terms > max_terms) throw BudgetExceeded(terms, max_terms, where);
    }
};

template <class Field>
struct Term {
    Exponent exponent;
    typename Field::value_type coeff;
};

// Sparse polynomial in x, y, z over an exact field.
//
// Terms are stored strictly descending in the lexicographic (>_1) order and
// never carry a zero coefficient, so structural equality is polynomial equality.
template <class Field>
class Polynomial {
public:
    using field_type = Field;
    using scalar = typename Field::value_type;
    using term_type = Term<Field>;

    explicit Polynomial(Field field) : field_(std::move(field)) {}

    static Polynomial constant(const Field& f, const scalar& c) { return monomial(f, {}, c); }

    static Polynomial monomial(const Field& f, const Exponent& e, const scalar& c) {
        Polynomial p(f);
        if (!f.is_zero(c)) p.terms_.push_back({e, c});
        return p;
    }

    // 0 -> x, 1 -> y, 2 -> z.
    static Polynomial variable(const Field& f, int var) {
        Exponent e;
        e[var] = 1;
        return monomial(f, e, f.one());
    }

    // Sorts, merges duplicate exponents and drops zero coefficients.
    static Polynomial from_terms(const Field& f, std::vector<term_type> terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const term_type& a, const term_type& b) { return a.exponent > b.exponent; });
        Polynomial p(f);
        p.terms_.reserve(terms.size());
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().exponent == t.exponent) {
                f.add_to(p.terms_.back().coeff, t.coeff);
            } else {
                if (!p.terms_.empty() && f.is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
                p.terms_.push_back(std::move(t));
            }
        }
        if (!p.terms_.empty() && f.is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
        return p;
    }

    // Adopts terms that are already canonical (strictly descending, nonzero).
    static Polynomial from_canonical(const Field& f, std::vector<term_type> terms) {
        Polynomial p(f);
        p.terms_ = std::move(terms);
        return p;
    }

    const Field& field() const { return field_; }
    const std::vector<term_type>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero()); }

    scalar coefficient(const Exponent& e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const term_type& t, const Exponent& x) { return t.exponent > x; });
        if (it != terms_.end() && it->exponent == e) return it->coeff;
        return field_.zero();
    }

    std::set<Exponent> support() const {
        std::set<Exponent> s;
        for (const auto& t : terms_) s.insert(t.exponent);
        return s;
    }

    std::uint32_t degree_in(int var) const {
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.exponent[var]);
        return d;
    }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.exponent.total());
        return d;
    }

    bool is_canonical() const {
        for (std::size_t t = 0; t < terms_.size(); ++t) {
            if (field_.is_zero(terms_[t].coeff)) return false;
            if (t > 0 && !(terms_[t - 1].exponent > terms_[t].exponent)) return false;
        }
        return true;
    }

    Polynomial operator-() const {
        Polynomial r(field_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.exponent, field_.neg(t.coeff)});
        return r;
    }

    // c * x^e * this. Adding a fixed exponent preserves the term order.
    Polynomial times_monomial(const Exponent& e, const scalar& c) const {
        Polynomial r(field_);
        if (field_.is_zero(c)) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.exponent + e, field_.mul(t.coeff, c)});
        return r;
    }

    // Renames variables: variable v becomes variable perm[v].
    Polynomial permuted(const std::array<int, 3>& perm) const {
        std::vector<term_type> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            Exponent e;
            for (int v = 0; v < 3; ++v) e[perm[v]] = t.exponent[v];
            out.push_back({e, t.coeff});
        }
        return from_terms(field_, std::move(out));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (!(a.field_ == b.field_) || a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t t = 0; t < a.terms_.size(); ++t) {
            if (a.terms_[t].exponent != b.terms_[t].exponent) return false;
            if (!a.field_.equal(a.terms_[t].coeff, b.terms_[t].coeff)) return false;
        }
        return true;
    }

private:
    Field field_;
    std::vector<term_type> terms_;
};

template <class Field>
void require_same_field(const Polynomial<Field>& a, const Polynomial<Field>& b) {
    if (!(a.field() == b.field())) throw FieldMismatch(a.field().name() + " vs " + b.field().name());
}

namespace detail {

template <class Field, class Combine>
Polynomial<Field> merge(const Polynomial<Field>& a, const Polynomial<Field>& b, Combine combine_b,
                        const TermBudget& budget) {
    require_same_field(a, b);
    const Field& f = a.field();
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    std::vector<Term<Field>> out;
    out.reserve(ta.size() + tb.size());
    std::size_t p = 0, q = 0;
    while (p < ta.size() || q < tb.size()) {
        if (q == tb.size() || (p < ta.size() && ta[p].exponent > tb[q].exponent)) {
            out.push_back(ta[p++]);
        } else if (p == ta.size() || tb[q].exponent > ta[p].exponent) {
            out.push_back({tb[q].exponent, combine_b(tb[q].coeff)});
            ++q;
        } else {
            auto c = f.add(ta[p].coeff, combine_b(tb[q].coeff));
            if (!f.is_zero(c)) out.push_back({ta[p].exponent, std::move(c)});
            ++p;
            ++q;
        }
    }
    budget.check(out.size(), "add");
    return Polynomial<Field>::from_canonical(f, std::move(out));
}

}  // namespace detail

template <class Field>
Polynomial<Field> add(const Polynomial<Field>& a, const Polynomial<Field>& b, const TermBudget& budget = {}) {
    return detail::merge(a, b, [](const auto& c) { return c; }, budget);
}

template <class Field>
Polynomial<Field> sub(const Polynomial<Field>& a, const Polynomial<Field>& b, const TermBudget& budget = {}) {
    const Field& f = a.field();
    return detail::merge(a, b, [&f](const auto& c) { return f.neg(c); }, budget);
}

// Product by heap merge over the shorter operand: the streams
// small[s] * big[0..] are each already descending, so a max-heap of stream
// heads emits the product in order with like terms adjacent.
template <class Field>
Polynomial<Field> mul(const Polynomial<Field>& a, const Polynomial<Field>& b, const TermBudget& budget = {}) {
    require_same_field(a, b);
    const Field& f = a.field();
    if (a.is_zero() || b.is_zero()) return Polynomial<Field>(f);
    const auto& small = a.size() <= b.size() ? a.terms() : b.terms();
    const auto& big = a.size() <= b.size() ? b.terms() : a.terms();
    if (small.size() == 1) {
        auto r = (a.size() <= b.size() ? b : a).times_monomial(small[0].exponent, small[0].coeff);
        budget.check(r.size(), "mul");
        return r;
    }

    struct Head {
        Exponent e;
        std::uint32_t s;
        std::uint32_t b;
    };
    auto less = [](const Head& x, const Head& y) { return x.e < y.e; };
    std::vector<Head> heap;
    heap.reserve(small.size());
    for (std::uint32_t s = 0; s < small.size(); ++s) heap.push_back({small[s].exponent + big[0].exponent, s, 0});
    std::make_heap(heap.begin(), heap.end(), less);

    std::vector<Term<Field>> out;
    while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), less);
        Head h = heap.back();
        heap.pop_back();
        auto c = f.mul(small[h.s].coeff, big[h.b].coeff);
        if (!out.empty() && out.back().exponent == h.e) {
            f.add_to(out.back().coeff, c);
        } else {
            if (!out.empty() && f.is_zero(out.back().coeff)) out.pop_back();
            out.push_back({h.e, std::move(c)});
            if (out.size() > budget.max_terms) budget.check(out.size(), "mul");
        }
        if (h.b + 1 < big.size()) {
            heap.push_back({small[h.s].exponent + big[h.b + 1].exponent, h.s, h.b + 1});
            std::push_heap(heap.begin(), heap.end(), less);
        }
    }
    if (!out.empty() && f.is_zero(out.back().coeff)) out.pop_back();
    budget.check(out.size(), "mul");
    return Polynomial<Field>::from_canonical(f, std::move(out));
}

// P^e by binary exponentiation; P^0 = 1.
template <class Field>
Polynomial<Field> pow(const Polynomial<Field>& p, std::uint64_t e, const TermBudget& budget = {}) {
    const Field& f = p.field();
    auto result = Polynomial<Field>::constant(f, f.one());
    if (e == 0) return result;
    if (p.size() == 1) {
        const auto& t = p.terms()[0];
        return Polynomial<Field>::monomial(f, scaled(t.exponent, e), f.pow(t.coeff, e));
    }
    auto base = p;
    while (true) {
        if (e & 1) result = mul(result, base, budget);
        e >>= 1;
        if (!e) break;
        base = mul(base, base, budget);
    }
    return result;
}

template <class Field>
Polynomial<Field> operator+(const Polynomial<Field>& a, const Polynomial<Field>& b) { return add(a, b); }
template <class Field>
Polynomial<Field> operator-(const Polynomial<Field>& a, const Polynomial<Field>& b) { return sub(a, b); }
template <class Field>
Polynomial<Field> operator*(const Polynomial<Field>& a, const Polynomial<Field>& b) { return mul(a, b); }

// Collects terms from many sources and canonicalizes once.
template <class Field>
class PolynomialBuilder {
public:
    explicit PolynomialBuilder(Field field) : field_(std::move(field)) {}

    void add_term(const Exponent& e, typename Field::value_type c) {
        if (!field_.is_zero(c)) terms_.push_back({e, std::move(c)});
    }

    void add_scaled(const Polynomial<Field>& p, const typename Field::value_type& c) {
        for (const auto& t : p.terms()) add_term(t.exponent, field_.mul(t.coeff, c));
    }

    Polynomial<Field> build(const TermBudget& budget = {}) {
        auto p = Polynomial<Field>::from_terms(field_, std::move(terms_));
        terms_.clear();
        budget.check(p.size(), "build");
        return p;
    }

private:
    Field field_;
    std::vector<Term<Field>> terms_;
};

// Canonical text: descending >_1 order, "x^i*y^j*z^k" with exponent 1 and
// coefficient 1 elided.
template <class Field>
std::string to_string(const Polynomial<Field>& p) {
    if (p.is_zero()) return "0";
    const Field& f = p.field();
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        std::string c = f.to_string(t.coeff);
        bool negative = !c.empty() && c[0] == '-';
        if (negative) c.erase(0, 1);
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;

        std::string mono;
        static const char* names = "xyz";
        for (int v = 0; v < 3; ++v) {
            auto d = t.exponent[v];
            if (d == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += names[v];
            if (d > 1) mono += '^' + std::to_string(d);
        }
        if (mono.empty())
            out += c;
        else if (c == "1")
            out += mono;
        else
            out += c + '*' + mono;
    }
    return out;
}

template <class Field>
std::ostream& operator<<(std::ostream& os, const Polynomial<Field>& p) {
    return os << to_string(p);
}

}  // namespace tamecert
