#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "tamecert/errors.hpp"

namespace tamecert {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Exact rationals. Values are kept in canonical form by GMP (reduced, positive denominator).
class RationalField {
public:
    using value_type = mpq_class;

    std::uint64_t characteristic() const { return 0; }
    std::string name() const { return "q"; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long v) const { return mpq_class(static_cast<long>(v)); }
    value_type from_integer(const mpz_class& v) const { return mpq_class(v); }
    value_type from_fraction(const mpz_class& num, const mpz_class& den) const {
        if (den == 0) throw NotInvertible("division by zero in literal");
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const {
        if (a == 0) throw NotInvertible("inverse of zero");
        return 1 / a;
    }
    void add_to(value_type& acc, const value_type& b) const { acc += b; }

    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool is_one(const value_type& a) const { return a == 1; }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }

    value_type pow(value_type base, std::uint64_t e) const {
        value_type r = 1;
        while (e) {
            if (e & 1) r *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return r;
    }

    // Signed decimal form, "a" or "a/b".
    std::string to_string(const value_type& a) const { return a.get_str(); }

    // Small integers, occasionally with denominator 2 or 3.
    template <class Rng>
    value_type random(Rng& rng) const {
        std::uniform_int_distribution<int> num(-9, 9);
        std::uniform_int_distribution<int> den(1, 6);
        int d = den(rng);
        return from_fraction(num(rng), d <= 4 ? 1 : d - 3);
    }
    template <class Rng>
    value_type random_nonzero(Rng& rng) const {
        value_type v;
        do v = random(rng);
        while (is_zero(v));
        return v;
    }

    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

// Z/pZ with p prime and p < 2^32, so a product of two reduced residues fits in 64 bits.
class PrimeField {
public:
    using value_type = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p >= (std::uint64_t{1} << 32)) throw PreconditionError("prime modulus must be < 2^32");
        if (!is_prime(p)) throw PreconditionError("modulus " + std::to_string(p) + " is not prime");
    }

    std::uint64_t modulus() const { return p_; }
    std::uint64_t characteristic() const { return p_; }
    std::string name() const { return "fp=" + std::to_string(p_); }

    value_type zero() const { return 0; }
    value_type one() const { return 1 % p_; }
    value_type from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        return static_cast<value_type>(r < 0 ? r + static_cast<long long>(p_) : r);
    }
    value_type from_integer(const mpz_class& v) const {
        mpz_class r = v % mpz_class(static_cast<unsigned long>(p_));
        if (r < 0) r += static_cast<unsigned long>(p_);
        return static_cast<value_type>(r.get_ui());
    }
    value_type from_fraction(const mpz_class& num, const mpz_class& den) const {
        value_type d = from_integer(den);
        if (d == 0) throw NotInvertible("denominator not invertible mod " + std::to_string(p_));
        return mul(from_integer(num), inv(d));
    }

    value_type add(value_type a, value_type b) const {
        value_type s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
    value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type inv(value_type a) const {
        if (a == 0) throw NotInvertible("inverse of zero mod " + std::to_string(p_));
        return pow(a, p_ - 2);
    }
    void add_to(value_type& acc, value_type b) const { acc = add(acc, b); }

    bool is_zero(value_type a) const { return a == 0; }
    bool is_one(value_type a) const { return a == one(); }
    bool equal(value_type a, value_type b) const { return a == b; }

    value_type pow(value_type base, std::uint64_t e) const {
        value_type r = one();
        base %= p_;
        while (e) {
            if (e & 1) r = mul(r, base);
            e >>= 1;
            if (e) base = mul(base, base);
        }
        return r;
    }

    // Symmetric representative: residues above p/2 print as negatives.
    std::string to_string(value_type a) const {
        if (a > p_ / 2) return "-" + std::to_string(p_ - a);
        return std::to_string(a);
    }

    template <class Rng>
    value_type random(Rng& rng) const {
        return std::uniform_int_distribution<value_type>(0, p_ - 1)(rng);
    }
    template <class Rng>
    value_type random_nonzero(Rng& rng) const {
        return std::uniform_int_distribution<value_type>(1, p_ - 1)(rng);
    }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    std::uint64_t p_;
};

// Runtime description of a coefficient field: "q" or "fp=PRIME".
struct FieldSpec {
    enum class Kind { rationals, prime };
    Kind kind = Kind::rationals;
    std::uint64_t p = 0;

    std::uint64_t characteristic() const { return kind == Kind::rationals ? 0 : p; }
    std::string name() const { return kind == Kind::rationals ? "q" : "fp=" + std::to_string(p); }

    static FieldSpec rationals() { return {}; }
    static FieldSpec prime(std::uint64_t p) {
        PrimeField check(p);
        return {Kind::prime, p};
    }

    static FieldSpec parse(std::string_view text) {
        if (text == "q" || text == "Q") return rationals();
        if (text.substr(0, 3) == "fp=") {
            std::string digits(text.substr(3));
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                throw PreconditionError("bad field spec '" + std::string(text) + "'");
            return prime(std::stoull(digits));
        }
        throw PreconditionError("bad field spec '" + std::string(text) + "' (expected q or fp=PRIME)");
    }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// Calls fn with a concrete field object for the spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.kind == FieldSpec::Kind::rationals) return fn(RationalField{});
    return fn(PrimeField(spec.p));
}

}  // namespace tamecert
