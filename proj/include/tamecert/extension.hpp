#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tamecert/field.hpp"

namespace tamecert {

// Dense univariate polynomials over F_p, lowest coefficient first, no trailing zeros.
namespace upoly {

using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly sub(const PrimeField& f, Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t t = 0; t < b.size(); ++t) a[t] = f.sub(a[t], b[t]);
    trim(a);
    return a;
}

inline Poly mul(const PrimeField& f, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t s = 0; s < a.size(); ++s)
        for (std::size_t t = 0; t < b.size(); ++t) out[s + t] = f.add(out[s + t], f.mul(a[s], b[t]));
    trim(out);
    return out;
}

inline Poly mod(const PrimeField& f, Poly a, const Poly& m) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    auto lead_inv = f.inv(m.back());
    while (a.size() > dm) {
        auto q = f.mul(a.back(), lead_inv);
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t t = 0; t <= dm; ++t) a[shift + t] = f.sub(a[shift + t], f.mul(q, m[t]));
        trim(a);
    }
    return a;
}

inline Poly gcd(const PrimeField& f, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = mod(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline Poly powmod(const PrimeField& f, Poly base, std::uint64_t e, const Poly& m) {
    Poly acc{1};
    base = mod(f, base, m);
    while (e) {
        if (e & 1) acc = mod(f, mul(f, acc, base), m);
        e >>= 1;
        if (e) base = mod(f, mul(f, base, base), m);
    }
    return acc;
}

// Ben-Or: monic m of degree k is irreducible iff gcd(m, x^(p^i) - x) = 1 for i <= k/2.
inline bool is_irreducible(const PrimeField& f, const Poly& m) {
    const std::size_t k = m.size() - 1;
    if (k == 0) return false;
    if (k == 1) return true;
    Poly x{0, 1};
    Poly h = x;
    for (std::size_t i = 1; i <= k / 2; ++i) {
        h = powmod(f, h, f.modulus(), m);
        auto g = gcd(f, m, sub(f, h, x));
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace upoly

// GF(p^k) = F_p[t]/(m) for a random monic irreducible m of degree k.
class ExtensionField {
public:
    using value_type = std::vector<std::uint64_t>;  // exactly k coefficients

    ExtensionField(const PrimeField& base, std::size_t k, std::uint64_t seed = 0) : base_(base), k_(k) {
        if (k == 0) throw PreconditionError("extension degree must be positive");
        std::mt19937_64 rng(seed);
        for (;;) {
            upoly::Poly m(k + 1);
            for (std::size_t t = 0; t < k; ++t) m[t] = base.random(rng);
            m[k] = 1;
            if (upoly::is_irreducible(base, m)) {
                modulus_ = std::move(m);
                break;
            }
        }
    }

    // Smallest extension with at least 2^bits elements.
    static ExtensionField with_size_at_least(const PrimeField& base, unsigned bits, std::uint64_t seed = 0) {
        std::size_t k = 1;
        long double size = static_cast<long double>(base.modulus());
        const long double target = std::ldexp(1.0L, static_cast<int>(bits));
        while (size < target) {
            size *= base.modulus();
            ++k;
        }
        return ExtensionField(base, k, seed);
    }

    const PrimeField& base() const { return base_; }
    std::size_t degree() const { return k_; }
    const upoly::Poly& modulus() const { return modulus_; }
    std::string name() const { return "gf(" + std::to_string(base_.modulus()) + "^" + std::to_string(k_) + ")"; }

    value_type zero() const { return value_type(k_, 0); }
    value_type one() const { return constant(1); }
    value_type constant(std::uint64_t c) const {
        value_type v(k_, 0);
        v[0] = c % base_.modulus();
        return v;
    }

    value_type add(const value_type& a, const value_type& b) const {
        value_type r(k_);
        for (std::size_t t = 0; t < k_; ++t) r[t] = base_.add(a[t], b[t]);
        return r;
    }
    value_type sub(const value_type& a, const value_type& b) const {
        value_type r(k_);
        for (std::size_t t = 0; t < k_; ++t) r[t] = base_.sub(a[t], b[t]);
        return r;
    }
    value_type mul(const value_type& a, const value_type& b) const {
        auto r = upoly::mod(base_, upoly::mul(base_, a, b), modulus_);
        r.resize(k_, 0);
        return r;
    }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }

    template <class Rng>
    value_type random(Rng& rng) const {
        value_type v(k_);
        for (auto& c : v) c = base_.random(rng);
        return v;
    }

    std::string to_string(const value_type& a) const {
        std::string s = "[";
        for (std::size_t t = 0; t < k_; ++t) s += (t ? "," : "") + std::to_string(a[t]);
        return s + "]";
    }

private:
    PrimeField base_;
    std::size_t k_;
    upoly::Poly modulus_;
};

}  // namespace tamecert
