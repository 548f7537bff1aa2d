#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "tamecert/degree.hpp"

namespace tamecert {

// (m, n) with m >= 1, n >= 0.
class RegionParams {
public:
    static constexpr std::uint64_t limit = 1ull << 28;

    RegionParams(std::uint64_t m, std::uint64_t n) : m_(m), n_(n) {
        if (m < 1) throw PreconditionError("region parameter m must be >= 1");
        if (m > limit || n > limit) throw PreconditionError("region parameters too large");
    }
    std::uint64_t m() const { return m_; }
    std::uint64_t n() const { return n_; }

    friend auto operator<=>(const RegionParams&, const RegionParams&) = default;
    friend std::ostream& operator<<(std::ostream& os, const RegionParams& p) {
        return os << '(' << p.m_ << ',' << p.n_ << ')';
    }

private:
    std::uint64_t m_;
    std::uint64_t n_;
};

// P and Q are lattice regions; Pstar and Qstar are the corresponding sets of
// polynomials with the corner conditions on ldeg_2 (and ldeg_3 for Pstar).
enum class RegionKind { P, Q, Pstar, Qstar };

inline RegionKind base_kind(RegionKind k) {
    return k == RegionKind::Pstar ? RegionKind::P : k == RegionKind::Qstar ? RegionKind::Q : k;
}
inline RegionKind star_kind(RegionKind k) {
    return k == RegionKind::P ? RegionKind::Pstar : k == RegionKind::Q ? RegionKind::Qstar : k;
}

inline std::string to_string(RegionKind k) {
    switch (k) {
        case RegionKind::P: return "P";
        case RegionKind::Q: return "Q";
        case RegionKind::Pstar: return "P*";
        case RegionKind::Qstar: return "Q*";
    }
    return "?";
}

// P_{m,n}: 4i+j <= 4m, 4i+k <= 4m+n, 8i+2j+k <= 8m+n.
// Q_{m,n}: i+j <= m, 3i+3j+k <= 3m+n.
inline bool in_region(const Exponent& v, RegionKind kind, const RegionParams& p) {
    const std::uint64_t i = v.i, j = v.j, k = v.k, m = p.m(), n = p.n();
    if (base_kind(kind) == RegionKind::P)
        return 4 * i + j <= 4 * m && 4 * i + k <= 4 * m + n && 8 * i + 2 * j + k <= 8 * m + n;
    return i + j <= m && 3 * i + 3 * j + k <= 3 * m + n;
}

// Number of lattice points, without enumerating them.
inline std::uint64_t region_size(RegionKind kind, const RegionParams& p) {
    const std::uint64_t m = p.m(), n = p.n();
    std::uint64_t count = 0;
    if (base_kind(kind) == RegionKind::P) {
        for (std::uint64_t i = 0; i <= m; ++i)
            for (std::uint64_t j = 0; j <= 4 * (m - i); ++j)
                count += std::min(4 * m + n - 4 * i, 8 * m + n - 8 * i - 2 * j) + 1;
    } else {
        for (std::uint64_t s = 0; s <= m; ++s)  // s = i + j
            count += (s + 1) * (3 * m + n - 3 * s + 1);
    }
    return count;
}

// All lattice points, lexicographic in (i, j, k).
inline std::vector<Exponent> enumerate_region(RegionKind kind, const RegionParams& p,
                                              std::uint64_t budget = std::numeric_limits<std::uint64_t>::max()) {
    auto size = region_size(kind, p);
    if (size > budget) throw BudgetExceeded(size, budget, "enumerate_region");
    std::vector<Exponent> out;
    out.reserve(size);
    const std::uint64_t m = p.m(), n = p.n();
    auto push = [&out](std::uint64_t i, std::uint64_t j, std::uint64_t k) {
        out.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k)});
    };
    if (base_kind(kind) == RegionKind::P) {
        for (std::uint64_t i = 0; i <= m; ++i)
            for (std::uint64_t j = 0; j <= 4 * (m - i); ++j) {
                auto kmax = std::min(4 * m + n - 4 * i, 8 * m + n - 8 * i - 2 * j);
                for (std::uint64_t k = 0; k <= kmax; ++k) push(i, j, k);
            }
    } else {
        for (std::uint64_t i = 0; i <= m; ++i)
            for (std::uint64_t j = 0; i + j <= m; ++j)
                for (std::uint64_t k = 0; k <= 3 * m + n - 3 * i - 3 * j; ++k) push(i, j, k);
    }
    return out;
}

// Shared, lazily populated enumeration cache keyed by (kind, m, n).
class RegionCache {
public:
    static RegionCache& instance() {
        static RegionCache cache;
        return cache;
    }

    std::shared_ptr<const std::vector<Exponent>> get(RegionKind kind, const RegionParams& p) {
        auto key = std::make_tuple(base_kind(kind), p.m(), p.n());
        {
            std::shared_lock lock(mutex_);
            if (auto it = map_.find(key); it != map_.end()) return it->second;
        }
        auto points = std::make_shared<const std::vector<Exponent>>(enumerate_region(kind, p));
        std::unique_lock lock(mutex_);
        return map_.emplace(key, std::move(points)).first->second;
    }

private:
    std::shared_mutex mutex_;
    std::map<std::tuple<RegionKind, std::uint64_t, std::uint64_t>, std::shared_ptr<const std::vector<Exponent>>> map_;
};

inline Exponent make_exponent(std::uint64_t i, std::uint64_t j, std::uint64_t k) {
    return {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k)};
}

// Points every starred element must have in its support:
// (0,4m,n) and (0,2m,4m+n) for P*, (0,m,n) for Q*.
inline std::vector<Exponent> star_corners(RegionKind kind, const RegionParams& p) {
    const auto m = p.m(), n = p.n();
    if (base_kind(kind) == RegionKind::P) return {make_exponent(0, 4 * m, n), make_exponent(0, 2 * m, 4 * m + n)};
    return {make_exponent(0, m, n)};
}

// Vertices of the convex hull. For P these are the seven points
// (0,0,0), (m,0,0), (0,4m,0), (m,0,n), (0,4m,n), (0,2m,4m+n), (0,0,4m+n).
inline std::vector<Exponent> region_vertices(RegionKind kind, const RegionParams& p) {
    const auto m = p.m(), n = p.n();
    std::set<Exponent> v;
    if (base_kind(kind) == RegionKind::P)
        v = {make_exponent(0, 0, 0),     make_exponent(m, 0, 0),         make_exponent(0, 4 * m, 0),
             make_exponent(m, 0, n),     make_exponent(0, 4 * m, n),     make_exponent(0, 2 * m, 4 * m + n),
             make_exponent(0, 0, 4 * m + n)};
    else
        v = {make_exponent(0, 0, 0), make_exponent(m, 0, 0), make_exponent(0, m, 0),
             make_exponent(m, 0, n), make_exponent(0, m, n), make_exponent(0, 0, 3 * m + n)};
    return {v.begin(), v.end()};
}

// a . v <= rhs
struct HalfSpace {
    std::array<long long, 3> a;
    long long rhs;

    bool contains(const std::array<mpq_class, 3>& v) const {
        mpq_class lhs = mpq_class(static_cast<long>(a[0])) * v[0] + mpq_class(static_cast<long>(a[1])) * v[1] +
                        mpq_class(static_cast<long>(a[2])) * v[2];
        return lhs <= mpq_class(static_cast<long>(rhs));
    }
};

// The defining inequalities, nonnegativity included.
inline std::vector<HalfSpace> region_halfspaces(RegionKind kind, const RegionParams& p) {
    const auto m = static_cast<long long>(p.m()), n = static_cast<long long>(p.n());
    std::vector<HalfSpace> h{{{-1, 0, 0}, 0}, {{0, -1, 0}, 0}, {{0, 0, -1}, 0}};
    if (base_kind(kind) == RegionKind::P) {
        h.push_back({{4, 1, 0}, 4 * m});
        h.push_back({{4, 0, 1}, 4 * m + n});
        h.push_back({{8, 2, 1}, 8 * m + n});
    } else {
        h.push_back({{1, 1, 0}, m});
        h.push_back({{3, 3, 1}, 3 * m + n});
    }
    return h;
}

// Vertices of the polytope cut out by the half-spaces: every feasible point
// where three linearly independent bounding planes meet.
inline std::set<std::array<mpq_class, 3>> polytope_vertices(const std::vector<HalfSpace>& hs) {
    std::set<std::array<mpq_class, 3>> out;
    const std::size_t n = hs.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                std::array<std::array<mpq_class, 3>, 3> m;
                std::array<mpq_class, 3> r;
                const HalfSpace* rows[3] = {&hs[a], &hs[b], &hs[c]};
                for (int t = 0; t < 3; ++t) {
                    for (int s = 0; s < 3; ++s) m[t][s] = static_cast<long>(rows[t]->a[s]);
                    r[t] = static_cast<long>(rows[t]->rhs);
                }
                auto det = [](const auto& x) -> mpq_class {
                    return x[0][0] * (x[1][1] * x[2][2] - x[1][2] * x[2][1]) -
                           x[0][1] * (x[1][0] * x[2][2] - x[1][2] * x[2][0]) +
                           x[0][2] * (x[1][0] * x[2][1] - x[1][1] * x[2][0]);
                };
                mpq_class d = det(m);
                if (d == 0) continue;
                std::array<mpq_class, 3> v;
                for (int s = 0; s < 3; ++s) {
                    auto ms = m;
                    for (int t = 0; t < 3; ++t) ms[t][s] = r[t];
                    v[s] = det(ms) / d;
                }
                bool feasible = true;
                for (const auto& h : hs) feasible = feasible && h.contains(v);
                if (feasible) out.insert(v);
            }
    return out;
}

// Union of the boxes [0,a] x [0,b] x [0,c] over (a,b,c) in s.
inline std::set<Exponent> cub_closure(const std::set<Exponent>& s) {
    std::set<Exponent> out;
    for (const auto& v : s)
        for (std::uint32_t i = 0; i <= v.i; ++i)
            for (std::uint32_t j = 0; j <= v.j; ++j)
                for (std::uint32_t k = 0; k <= v.k; ++k) out.insert({i, j, k});
    return out;
}

// Support inside the region and ldeg_2 (and for P*, ldeg_3) at the corners.
template <class Field>
bool poly_in_star(const Polynomial<Field>& p, RegionKind kind, const RegionParams& params) {
    if (p.is_zero()) return false;
    for (const auto& t : p.terms())
        if (!in_region(t.exponent, kind, params)) return false;
    auto corners = star_corners(kind, params);
    if (ldeg(p, 2).vector() != corners[0]) return false;
    if (base_kind(kind) == RegionKind::P && ldeg(p, 3).vector() != corners[1]) return false;
    return true;
}

// The unique (m, n) with p in P*_{m,n} (resp. Q*_{m,n}), read off ldeg_2.
template <class Field>
std::optional<RegionParams> infer_star_params(const Polynomial<Field>& p, RegionKind kind) {
    if (p.is_zero()) return std::nullopt;
    auto lead = ldeg(p, 2).vector();
    if (lead.i != 0) return std::nullopt;
    std::uint64_t m = lead.j;
    if (base_kind(kind) == RegionKind::P) {
        if (m % 4 != 0) return std::nullopt;
        m /= 4;
    }
    if (m < 1) return std::nullopt;
    RegionParams params(m, lead.k);
    if (!poly_in_star(p, kind, params)) return std::nullopt;
    return params;
}

// Seeded random element of P*_{m,n} or Q*_{m,n}: the corners plus each other
// region point with probability `density` (0 keeps the corners only), all with
// random nonzero coefficients.
template <class Field>
Polynomial<Field> random_star_element(RegionKind kind, const RegionParams& params, double density, const Field& f,
                                      std::uint64_t seed) {
    if (density < 0 || density > 1) throw PreconditionError("density must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution keep(density);
    auto points = RegionCache::instance().get(kind, params);
    auto corners = star_corners(kind, params);
    std::vector<Term<Field>> terms;
    for (const auto& v : *points) {
        bool corner = std::find(corners.begin(), corners.end(), v) != corners.end();
        bool take = corner || (density >= 1.0) || (density > 0 && keep(rng));
        if (take) terms.push_back({v, f.random_nonzero(rng)});
    }
    return Polynomial<Field>::from_terms(f, std::move(terms));
}

}  // namespace tamecert
