#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>

#include "tamecert/errors.hpp"

namespace tamecert {

// Exponent vector (i, j, k) of the monomial x^i y^j z^k.
// The defaulted ordering is lexicographic in (i, j, k), i.e. the first cyclic
// lexicographic order >_1, which is also the storage order of polynomials.
struct Exponent {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    std::uint32_t k = 0;

    constexpr std::uint32_t operator[](int var) const { return var == 0 ? i : var == 1 ? j : k; }
    constexpr std::uint32_t& operator[](int var) { return var == 0 ? i : var == 1 ? j : k; }

    constexpr std::uint64_t total() const { return std::uint64_t{i} + j + k; }
    constexpr bool is_zero() const { return i == 0 && j == 0 && k == 0; }

    friend constexpr auto operator<=>(const Exponent&, const Exponent&) = default;

    friend Exponent operator+(const Exponent& a, const Exponent& b) {
        return {checked_add(a.i, b.i), checked_add(a.j, b.j), checked_add(a.k, b.k)};
    }

    friend std::ostream& operator<<(std::ostream& os, const Exponent& e) {
        return os << '(' << e.i << ',' << e.j << ',' << e.k << ')';
    }

    static std::uint32_t checked_add(std::uint32_t a, std::uint32_t b) {
        if (a > std::numeric_limits<std::uint32_t>::max() - b) throw ExponentOverflow();
        return a + b;
    }

    static std::uint32_t checked_mul(std::uint32_t a, std::uint64_t s) {
        std::uint64_t r = a * s;
        if (s != 0 && (r / s != a || r > std::numeric_limits<std::uint32_t>::max()))
            throw ExponentOverflow();
        return static_cast<std::uint32_t>(r);
    }
};

inline Exponent scaled(const Exponent& e, std::uint64_t s) {
    return {Exponent::checked_mul(e.i, s), Exponent::checked_mul(e.j, s), Exponent::checked_mul(e.k, s)};
}

// Compares under the i-th cyclic lexicographic order (i in {1,2,3}):
// e_i >_i e_{i+1} >_i ... wrapping around.
inline std::strong_ordering cyclic_lex_compare(const Exponent& u, const Exponent& v, int i) {
    for (int t = 0; t < 3; ++t) {
        int var = (i - 1 + t) % 3;
        if (auto c = u[var] <=> v[var]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

struct ExponentHash {
    std::size_t operator()(const Exponent& e) const noexcept {
        std::uint64_t h = e.i;
        h = h * 0x9E3779B97F4A7C15ULL + e.j;
        h = h * 0x9E3779B97F4A7C15ULL + e.k;
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

}  // namespace tamecert
