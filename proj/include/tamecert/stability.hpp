#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tamecert/regions.hpp"
#include "tamecert/report.hpp"
#include "tamecert/strata.hpp"
#include "tamecert/word.hpp"

namespace tamecert {

// ---------------------------------------------------------------------------
// Linear forms over P_{m,n}

struct LinearForm {
    std::uint32_t a, b, c;

    LinearForm(std::uint32_t a_, std::uint32_t b_, std::uint32_t c_) : a(a_), b(b_), c(c_) {
        if (a == 0 && b == 0 && c == 0) throw PreconditionError("linear form must be nonzero");
    }
    std::uint64_t operator()(const Exponent& v) const {
        return std::uint64_t{a} * v.i + std::uint64_t{b} * v.j + std::uint64_t{c} * v.k;
    }
};

// Every case of the maximization lemma whose hypotheses hold for the form:
//   1: b > max(a/4, 2c), c != 0      2: b > a/4, c = 0
//   3: c > max(b/2, (a-2b)/4), b != 0 4: c > a/4, b = 0
//   5: c = (a-2b)/4 > b/2
inline std::vector<int> linear_form_cases(const LinearForm& f) {
    const long long a = f.a, b = f.b, c = f.c;
    std::vector<int> out;
    if (4 * b > a && b > 2 * c && c != 0) out.push_back(1);
    if (4 * b > a && c == 0) out.push_back(2);
    if (2 * c > b && 4 * c > a - 2 * b && b != 0) out.push_back(3);
    if (4 * c > a && b == 0) out.push_back(4);
    if (4 * c == a - 2 * b && 2 * c > b) out.push_back(5);
    return out;
}

// The argmax the lemma predicts for a case.
inline std::vector<Exponent> predicted_argmax(int case_label, const RegionParams& p) {
    const auto m = p.m(), n = p.n();
    std::vector<Exponent> out;
    switch (case_label) {
        case 1: out.push_back(make_exponent(0, 4 * m, n)); break;
        case 2:
            for (std::uint64_t d = 0; d <= n; ++d) out.push_back(make_exponent(0, 4 * m, d));
            break;
        case 3: out.push_back(make_exponent(0, 2 * m, 4 * m + n)); break;
        case 4:
            for (std::uint64_t d = 0; d <= 2 * m; ++d) out.push_back(make_exponent(0, d, 4 * m + n));
            break;
        case 5:
            for (std::uint64_t d = 0; d <= m; ++d) out.push_back(make_exponent(m - d, 2 * d, 4 * d + n));
            break;
        default: break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct MaximizationOutcome {
    std::uint64_t maximum = 0;
    std::vector<Exponent> argmax;  // sorted
    int case_label = 0;            // 0 = unclassified
    std::vector<Exponent> predicted;
    bool matches = true;           // vacuous when unclassified
};

inline MaximizationOutcome maximize_linear_form(const LinearForm& form, const RegionParams& params,
                                                std::uint64_t budget = std::numeric_limits<std::uint64_t>::max()) {
    if (region_size(RegionKind::P, params) > budget)
        throw BudgetExceeded(region_size(RegionKind::P, params), budget, "maximize_linear_form");
    auto points = RegionCache::instance().get(RegionKind::P, params);
    MaximizationOutcome out;
    for (const auto& v : *points) {
        auto val = form(v);
        if (out.argmax.empty() || val > out.maximum) {
            out.maximum = val;
            out.argmax.assign(1, v);
        } else if (val == out.maximum) {
            out.argmax.push_back(v);
        }
    }
    std::sort(out.argmax.begin(), out.argmax.end());
    auto cases = linear_form_cases(form);
    if (cases.size() == 1) {
        out.case_label = cases[0];
        out.predicted = predicted_argmax(cases[0], params);
        out.matches = out.predicted == out.argmax;
    } else if (cases.size() > 1) {
        out.case_label = -1;
        out.matches = false;
    }
    return out;
}

inline std::string points_to_string(const std::vector<Exponent>& pts) {
    std::ostringstream os;
    os << '{';
    for (std::size_t t = 0; t < pts.size(); ++t) os << (t ? "," : "") << pts[t];
    os << '}';
    return os.str();
}

// Grid sweep over forms with entries <= max_coeff and params m <= max_m, n <= max_n.
inline VerificationReport check_maximization_lemma(std::uint32_t max_coeff, std::uint32_t max_m, std::uint32_t max_n) {
    VerificationReport rep("lemma-max", "none", 0);
    rep.params = {{"max_coeff", max_coeff}, {"max_m", max_m}, {"max_n", max_n}};
    std::array<std::uint64_t, 6> per_case{};
    std::array<std::uint64_t, 6> failed_case{};
    std::uint64_t overlaps = 0, case5_without_y = 0;
    for (std::uint32_t m = 1; m <= max_m; ++m)
        for (std::uint32_t n = 0; n <= max_n; ++n)
            for (std::uint32_t a = 0; a <= max_coeff; ++a)
                for (std::uint32_t b = 0; b <= max_coeff; ++b)
                    for (std::uint32_t c = 0; c <= max_coeff; ++c) {
                        if (a == 0 && b == 0 && c == 0) continue;
                        LinearForm form(a, b, c);
                        auto cases = linear_form_cases(form);
                        if (cases.empty()) continue;
                        if (cases.size() > 1) ++overlaps;
                        RegionParams params(m, n);
                        auto out = maximize_linear_form(form, params);
                        int label = cases.size() == 1 ? cases[0] : 0;
                        ++per_case[label];
                        if (!out.matches) ++failed_case[label];
                        if (!out.matches && label == 5 && b == 0) ++case5_without_y;
                        std::ostringstream in;
                        in << "f=(" << a << ',' << b << ',' << c << ") m=" << m << " n=" << n;
                        rep.record(out.matches, {in.str(), "case " + std::to_string(out.case_label),
                                                 points_to_string(out.predicted), points_to_string(out.argmax)});
                    }
    Json cases = Json::object();
    for (int c = 1; c <= 5; ++c)
        cases[std::to_string(c)] = {{"instances", per_case[c]}, {"mismatches", failed_case[c]}};
    rep.details["cases"] = cases;
    rep.details["overlapping_hypotheses"] = overlaps;
    rep.details["case5_mismatches_with_b_zero"] = case5_without_y;
    return rep;
}

// ---------------------------------------------------------------------------
// beta-shaped maps

struct ShapeTable {
    std::array<std::array<std::uint64_t, 3>, 3> weighted;  // [component][w1, w2, w3]
    std::array<std::array<Exponent, 3>, 3> lex;            // [component][ldeg1, ldeg2, ldeg3]
};

inline const std::array<WeightVector, 3>& shape_weights() {
    static const std::array<WeightVector, 3> w{WeightVector(4, 1, 0), WeightVector(4, 0, 1), WeightVector(8, 2, 1)};
    return w;
}

// The degrees of beta's components X, Y, Z.
inline const ShapeTable& beta_shape_table() {
    static const ShapeTable t{{{{4, 4, 8}, {1, 2, 2}, {0, 1, 1}}},
                              {{{Exponent{1, 0, 0}, Exponent{0, 4, 0}, Exponent{0, 2, 4}},
                                {Exponent{0, 1, 0}, Exponent{0, 1, 0}, Exponent{0, 0, 2}},
                                {Exponent{0, 0, 1}, Exponent{0, 0, 1}, Exponent{0, 0, 1}}}}};
    return t;
}

template <class Field>
ShapeTable shape_of(const Endomorphism<Field>& gamma) {
    ShapeTable t{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            auto w = weighted_deg(gamma[r], shape_weights()[c]);
            t.weighted[r][c] = w.is_minus_infinity() ? ~std::uint64_t{0} : w.scalar();
            auto l = ldeg(gamma[r], c + 1);
            t.lex[r][c] = l.is_minus_infinity() ? Exponent{~0u, ~0u, ~0u} : l.vector();
        }
    return t;
}

template <class Field>
bool is_beta_shaped(const Endomorphism<Field>& gamma) {
    auto t = shape_of(gamma);
    const auto& b = beta_shape_table();
    return t.weighted == b.weighted && t.lex == b.lex;
}

// ---------------------------------------------------------------------------
// Degree-level hop prediction

// A starred family member: kind is Pstar or Qstar.
struct StarState {
    RegionKind kind;
    RegionParams params;

    friend bool operator==(const StarState&, const StarState&) = default;
    std::string to_string() const {
        std::ostringstream os;
        os << tamecert::to_string(kind) << '_' << params;
        return os.str();
    }
};

struct HopPrediction {
    bool certified = false;
    std::optional<StarState> out;
    std::string reason;
};

namespace detail {

// Lex-maximal image degree over the vertices, and the vertex attaining it if unique.
inline std::pair<DegreeValue, std::optional<Exponent>> lex_max_over(const std::array<DegreeValue, 3>& comp,
                                                                    const std::vector<Exponent>& verts) {
    std::optional<DegreeValue> best;
    std::optional<Exponent> arg;
    int count = 0;
    for (const auto& v : verts) {
        auto d = monomial_image_degree(comp, v);
        if (!best || d > *best) {
            best = d;
            arg = v;
            count = 1;
        } else if (d == *best) {
            ++count;
        }
    }
    if (count != 1) arg.reset();
    return {*best, arg};
}

inline std::uint64_t weighted_max_over(const std::array<DegreeValue, 3>& comp, const std::vector<Exponent>& verts) {
    std::uint64_t best = 0;
    for (const auto& v : verts) best = std::max(best, monomial_image_degree(comp, v).scalar());
    return best;
}

}  // namespace detail

// Certifies (S)gamma within a starred family of the target kind for every
// polynomial S in the input family, using that degree functions are
// multiplicative: the image degree of x^v is linear in v, so weighted bounds
// are maximized at region vertices, and a lex maximum attained at a single
// vertex is attained at a single lattice point. That point must be one of the
// corners every starred element contains.
template <class Field>
HopPrediction predict_hop(const Endomorphism<Field>& gamma, const StarState& in, RegionKind target) {
    HopPrediction res;
    auto verts = region_vertices(in.kind, in.params);
    auto corners = star_corners(in.kind, in.params);
    auto is_corner = [&corners](const Exponent& v) {
        return std::find(corners.begin(), corners.end(), v) != corners.end();
    };
    try {
        auto [l2, v2] = detail::lex_max_over(component_degrees(gamma, DegreeFunction::lex(2)), verts);
        if (!v2 || !is_corner(*v2)) {
            res.reason = "ldeg2 maximum " + l2.to_string() + " not attained at a unique corner";
            return res;
        }
        const Exponent e2 = l2.vector();
        if (e2.i != 0) {
            res.reason = "ldeg2 " + l2.to_string() + " has nonzero x-exponent";
            return res;
        }
        std::uint64_t m = e2.j, n = e2.k;
        auto bound = [&](const WeightVector& w) {
            return detail::weighted_max_over(component_degrees(gamma, DegreeFunction::weighted(w)), verts);
        };
        if (base_kind(target) == RegionKind::P) {
            if (m % 4 != 0 || m == 0) {
                res.reason = "ldeg2 " + l2.to_string() + " is not a P corner";
                return res;
            }
            m /= 4;
            auto [l3, v3] = detail::lex_max_over(component_degrees(gamma, DegreeFunction::lex(3)), verts);
            if (!v3 || !is_corner(*v3)) {
                res.reason = "ldeg3 maximum " + l3.to_string() + " not attained at a unique corner";
                return res;
            }
            if (l3.vector() != make_exponent(0, 2 * m, 4 * m + n)) {
                res.reason = "ldeg3 " + l3.to_string() + " does not match the P corner";
                return res;
            }
            if (bound({4, 1, 0}) > 4 * m || bound({4, 0, 1}) > 4 * m + n || bound({8, 2, 1}) > 8 * m + n) {
                res.reason = "weighted bound exceeded";
                return res;
            }
        } else {
            if (m == 0) {
                res.reason = "ldeg2 " + l2.to_string() + " is not a Q corner";
                return res;
            }
            if (bound({1, 1, 0}) > m || bound({3, 3, 1}) > 3 * m + n) {
                res.reason = "weighted bound exceeded";
                return res;
            }
        }
        if (m > RegionParams::limit || n > RegionParams::limit)
            throw BudgetExceeded(std::max(m, n), RegionParams::limit, "region parameters");
        res.out = StarState{star_kind(target), RegionParams(m, n)};
        res.certified = true;
    } catch (const ExponentOverflow&) {
        throw BudgetExceeded(in.params.m(), RegionParams::limit, "region parameters");
    } catch (const PreconditionError& e) {
        res.reason = e.what();
    }
    return res;
}

// ---------------------------------------------------------------------------
// Composite maps

// Eager expansion of a word, composing outward from the atom at `center` so
// that conjugates such as beta^{-1} alpha beta stay small.
template <class Field>
Endomorphism<Field> compose_inside_out(const Word<Field>& w, std::size_t center, const TermBudget& budget = {}) {
    const auto& atoms = w.atoms();
    const Field& f = w.field();
    if (atoms.empty()) return Endomorphism<Field>::identity(f);
    auto core = atom_endomorphism(atoms[center], f);
    std::size_t lo = center, hi = center + 1;
    while (lo > 0 || hi < atoms.size()) {
        if (hi < atoms.size()) core = compose(core, atom_endomorphism(atoms[hi++], f), budget);
        if (lo > 0) core = compose(atom_endomorphism(atoms[--lo], f), core, budget);
    }
    return core;
}

template <class Field>
std::optional<std::size_t> first_affine_atom(const Word<Field>& w) {
    for (std::size_t t = 0; t < w.size(); ++t)
        if (std::holds_alternative<AffineMap<Field>>(w.atoms()[t])) return t;
    return std::nullopt;
}

template <class Field>
Endomorphism<Field> hop_map(const Word<Field>& w, const TermBudget& budget = {}) {
    if (auto c = first_affine_atom(w)) return compose_inside_out(w, *c, budget);
    return to_endomorphism(w, budget);
}

enum class StrataLevel { A0A1, A1A2, A2A3, A3A4 };

inline std::string to_string(StrataLevel l) {
    switch (l) {
        case StrataLevel::A0A1: return "A0A1";
        case StrataLevel::A1A2: return "A1A2";
        case StrataLevel::A2A3: return "A2A3";
        case StrataLevel::A3A4: return "A3A4";
    }
    return "?";
}

inline StrataLevel parse_strata_level(const std::string& s) {
    for (auto l : {StrataLevel::A0A1, StrataLevel::A1A2, StrataLevel::A2A3, StrataLevel::A3A4})
        if (s == to_string(l)) return l;
    throw PreconditionError("unknown strata level '" + s + "'");
}

inline Stratum stratum_of(StrataLevel l) {
    switch (l) {
        case StrataLevel::A0A1: return Stratum::a0_minus_a1;
        case StrataLevel::A1A2: return Stratum::a1_minus_a2;
        case StrataLevel::A2A3: return Stratum::a2_minus_a3;
        case StrataLevel::A3A4: return Stratum::a3_minus_a4;
    }
    return Stratum::not_affine;
}

// The composite taking P* into Q* for each level:
//   A0A1: alpha beta                  A1A2: pi beta^{-1} alpha beta
//   A2A3: pi beta^{-1} alpha beta pi beta
//   A3A4: (pi beta^{-1})^2 alpha beta pi beta
template <class Field>
Word<Field> strata_word(StrataLevel level, const AffineMap<Field>& alpha) {
    using W = Word<Field>;
    const Field& f = alpha.field();
    auto pbi = W::pi(f) + W::beta_inv(f);
    auto a = W::affine(alpha);
    auto b = W::beta(f);
    auto pb = W::pi(f) + W::beta(f);
    switch (level) {
        case StrataLevel::A0A1: return a + b;
        case StrataLevel::A1A2: return pbi + a + b;
        case StrataLevel::A2A3: return pbi + a + b + pb;
        case StrataLevel::A3A4: return pbi + pbi + a + b + pb;
    }
    return W(f);
}

// ---------------------------------------------------------------------------
// Sampling

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace detail

// Corners only, sparse, and full support, in rotation.
inline double sample_density(std::uint64_t index) {
    static const double d[3] = {0.0, 0.2, 1.0};
    return d[index % 3];
}

template <class Field>
std::string describe(const Polynomial<Field>& p, std::size_t limit = 400) {
    auto s = to_string(p);
    if (s.size() > limit) s = s.substr(0, limit) + "... (" + std::to_string(p.size()) + " terms)";
    return s;
}

// ---------------------------------------------------------------------------
// Propositions

// (Q*_{m,n}) pi gamma inside P*_{m,n}, and (P*_{m,n}) pi gamma inside P*_{4m,n}.
template <class Field>
VerificationReport check_QtoP(const Endomorphism<Field>& gamma, const RegionParams& params, std::uint64_t samples,
                              std::uint64_t seed, const TermBudget& budget = {}) {
    if (!is_beta_shaped(gamma)) throw PreconditionError("check_QtoP: map is not beta-shaped");
    const Field& f = gamma.field();
    VerificationReport rep("qtop", f.name(), seed);
    rep.params = {{"m", params.m()}, {"n", params.n()}, {"gamma", to_string(gamma)}};
    auto pg = compose(pi(f), gamma);
    RegionParams up(4 * params.m(), params.n());
    try {
        for (std::uint64_t s = 0; s < samples; ++s) {
            auto sd = detail::mix_seed(seed, s);
            auto q = random_star_element(RegionKind::Qstar, params, sample_density(s), f, sd);
            auto img = apply(q, pg, budget);
            bool ok = poly_in_star(img, RegionKind::Pstar, params);
            rep.record(ok, {describe(q), "Q* -> P*", "P*" + [&] { std::ostringstream o; o << params; return o.str(); }(),
                            describe(img)});
            auto p = random_star_element(RegionKind::Pstar, params, sample_density(s), f, sd ^ 0x5555);
            bool inclusion = poly_in_star(p, RegionKind::Qstar, up);
            auto img2 = apply(p, pg, budget);
            bool ok2 = inclusion && poly_in_star(img2, RegionKind::Pstar, up);
            rep.record(ok2, {describe(p), "P* -> P*", "P*" + [&] { std::ostringstream o; o << up; return o.str(); }(),
                             describe(img2)});
        }
    } catch (const BudgetExceeded&) {
        rep.budget_exhausted = true;
    }
    return rep;
}

template <class Field>
VerificationReport check_strata_proposition(StrataLevel level, const AffineMap<Field>& alpha,
                                            const RegionParams& params, std::uint64_t samples, std::uint64_t seed,
                                            const TermBudget& budget = {}) {
    auto label = stratum_classify(alpha);
    if (label.stratum != stratum_of(level))
        throw PreconditionError("map lies in " + to_string(label.stratum) + ", not " + to_string(stratum_of(level)));
    const Field& f = alpha.field();
    VerificationReport rep("strata", f.name(), seed);
    rep.params = {{"level", to_string(level)},
                  {"alpha", to_string(Endomorphism<Field>(alpha))},
                  {"m", params.m()},
                  {"n", params.n()}};
    try {
        auto gamma = hop_map(strata_word(level, alpha), budget);
        auto pred = predict_hop(gamma, {RegionKind::Pstar, params}, RegionKind::Qstar);
        rep.details["degree_certificate"] = pred.certified ? pred.out->to_string() : "failed: " + pred.reason;
        rep.record(pred.certified, {to_string(gamma), "degree certificate", "Q*", pred.reason});
        for (std::uint64_t s = 0; s < samples; ++s) {
            auto p = random_star_element(RegionKind::Pstar, params, sample_density(s), f, detail::mix_seed(seed, s));
            auto img = apply(p, gamma, budget);
            auto inferred = infer_star_params(img, RegionKind::Qstar);
            bool ok = inferred.has_value();
            std::string got = "not in Q*";
            if (inferred) {
                std::ostringstream o;
                o << "Q*" << *inferred;
                got = o.str();
                if (level == StrataLevel::A0A1 && inferred->m() < params.m()) ok = false;
                if (pred.certified && !(pred.out->params == *inferred)) ok = false;
            }
            std::string expected = pred.certified ? pred.out->to_string() : std::string("Q*");
            rep.record(ok, {describe(p), "alpha hop", expected, got + " : " + describe(img)});
        }
    } catch (const BudgetExceeded&) {
        rep.budget_exhausted = true;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Conjugation formulas

template <class Field>
struct TriangularConjugationData {
    using P = Polynomial<Field>;
    TriangularParams<Field> input;
    typename Field::value_type e, f, g;
    P Z1, Z2, Z3;
    std::array<P, 5> F;  // F[0..4]
    Endomorphism<Field> assembled;
};

// The closed form of beta^{-1} alpha beta for triangular affine alpha.
template <class Field>
TriangularConjugationData<Field> triangular_conjugation_data(const TriangularParams<Field>& t, const Field& fld) {
    using P = Polynomial<Field>;
    auto c = [&fld](const typename Field::value_type& v) { return P::constant(fld, v); };
    auto x = P::variable(fld, 0), y = P::variable(fld, 1), z = P::variable(fld, 2);
    auto z2 = z * z;
    auto two = fld.from_int(2);
    auto e = fld.sub(t.b2, fld.mul(t.c3, t.c3));
    auto f = fld.sub(t.c2, fld.mul(two, fld.mul(t.c3, t.d3)));
    auto g = fld.sub(t.d2, fld.mul(t.d3, t.d3));
    auto Z1 = c(t.b1) * z2 + c(t.c1) * z + c(t.d1);
    auto Z2 = c(t.b2) * z2 + c(t.c2) * z + c(t.d2);
    auto Z3 = c(e) * z2 + c(f) * z + c(g);
    auto b2 = c(t.b2);
    std::array<P, 5> F{P(fld), P(fld), P(fld), P(fld), P(fld)};
    F[4] = c(fld.sub(t.a1, fld.pow(t.b2, 4)));
    F[3] = c(two) * (c(t.a1) * z2 - pow(b2, 3) * (Z2 + Z3));
    F[2] = c(t.a1) * pow(z, 4) - b2 * b2 * (Z2 * Z2 + c(fld.from_int(4)) * Z2 * Z3 + Z3 * Z3);
    F[1] = c(t.b1) - c(two) * b2 * (Z2 + Z3) * Z2 * Z3;
    F[0] = Z1 - Z2 * Z2 * Z3 * Z3;
    auto X = c(t.a1) * x + F[4] * pow(y, 4) + F[3] * pow(y, 3) + F[2] * y * y + F[1] * y + F[0];
    auto Y = b2 * y + c(e) * z2 + c(f) * z + c(g);
    auto Z = c(t.c3) * z + c(t.d3);
    return {t, e, f, g, Z1, Z2, Z3, F, Endomorphism<Field>(X, Y, Z)};
}

// The closed form a level predicts, and the composite it describes.
template <class Field>
std::pair<Endomorphism<Field>, Endomorphism<Field>> conjugation_pair(StrataLevel level, const AffineMap<Field>& alpha) {
    const Field& f = alpha.field();
    using P = Polynomial<Field>;
    using W = Word<Field>;
    auto label = stratum_classify(alpha);
    auto c = [&f](const typename Field::value_type& v) { return P::constant(f, v); };
    auto x = P::variable(f, 0), y = P::variable(f, 1), z = P::variable(f, 2);
    auto a = W::affine(alpha);
    switch (level) {
        case StrataLevel::A1A2: {
            if (!label.triangular) throw PreconditionError("conjugation check needs a triangular map");
            auto data = triangular_conjugation_data(*label.triangular, f);
            auto got = hop_map(W::beta_inv(f) + a + W::beta(f));
            return {data.assembled, got};
        }
        case StrataLevel::A2A3: {
            if (!label.u) throw PreconditionError("conjugation check needs a map in A2");
            auto b = beta(f);
            auto u = *label.u;
            Endomorphism<Field> target(c(f.pow(u, 2)) * b[0],
                                       c(f.pow(u, 8)) * b[1] + c(*label.b) * b[0] + c(*label.b) * z * z +
                                           c(*label.c) * z + c(*label.d),
                                       c(u) * z);
            auto got = hop_map(W::pi(f) + W::beta_inv(f) + a + W::beta(f) + W::pi(f) + W::beta(f));
            return {target, got};
        }
        case StrataLevel::A3A4: {
            if (!label.u) throw PreconditionError("conjugation check needs a map in A3");
            auto u = *label.u;
            Endomorphism<Field> target(c(f.pow(u, 2)) * x, c(f.pow(u, 8)) * y + c(*label.c) * z + c(*label.d),
                                       c(u) * z);
            auto got = hop_map(W::pi(f) + W::beta_inv(f) + a + W::beta(f) + W::pi(f));
            return {target, got};
        }
        default: break;
    }
    throw PreconditionError("no conjugation formula for level " + to_string(level));
}

template <class Field>
VerificationReport conjugation_formula_check(StrataLevel level, const AffineMap<Field>& alpha) {
    auto label = stratum_classify(alpha);
    if (label.stratum != stratum_of(level))
        throw PreconditionError("map lies in " + to_string(label.stratum) + ", not " + to_string(stratum_of(level)));
    const Field& f = alpha.field();
    VerificationReport rep("conjugation", f.name(), 0);
    rep.params = {{"level", to_string(level)}, {"alpha", to_string(Endomorphism<Field>(alpha))}};
    auto [target, got] = conjugation_pair(level, alpha);
    static const char* names[3] = {"first", "second", "third"};
    for (int r = 0; r < 3; ++r)
        rep.record(target[r] == got[r],
                   {to_string(Endomorphism<Field>(alpha)), std::string(names[r]) + " component", to_string(target[r]),
                    to_string(got[r])});
    if (level == StrataLevel::A1A2) {
        auto data = triangular_conjugation_data(*label.triangular, f);
        rep.details["e"] = f.to_string(data.e);
        rep.details["f"] = f.to_string(data.f);
        rep.details["g"] = f.to_string(data.g);
        for (int t = 4; t >= 0; --t) rep.details["F" + std::to_string(t)] = to_string(data.F[t]);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// The 15 exponent triples for non-triangular affine maps

using TripleFn = std::function<Exponent(const Exponent&)>;

inline const std::vector<std::pair<std::string, TripleFn>>& fifteen_triples() {
    static const std::vector<std::pair<std::string, TripleFn>> t{
        {"(i+j+k,0,0)", [](const Exponent& v) { return Exponent{v.i + v.j + v.k, 0, 0}; }},
        {"(i+j,k,0)", [](const Exponent& v) { return Exponent{v.i + v.j, v.k, 0}; }},
        {"(i+j,0,k)", [](const Exponent& v) { return Exponent{v.i + v.j, 0, v.k}; }},
        {"(i+k,j,0)", [](const Exponent& v) { return Exponent{v.i + v.k, v.j, 0}; }},
        {"(i+k,0,j)", [](const Exponent& v) { return Exponent{v.i + v.k, 0, v.j}; }},
        {"(j+k,i,0)", [](const Exponent& v) { return Exponent{v.j + v.k, v.i, 0}; }},
        {"(j+k,0,i)", [](const Exponent& v) { return Exponent{v.j + v.k, 0, v.i}; }},
        {"(i,k,j)", [](const Exponent& v) { return Exponent{v.i, v.k, v.j}; }},
        {"(j,i,k)", [](const Exponent& v) { return Exponent{v.j, v.i, v.k}; }},
        {"(j,k,i)", [](const Exponent& v) { return Exponent{v.j, v.k, v.i}; }},
        {"(k,i,j)", [](const Exponent& v) { return Exponent{v.k, v.i, v.j}; }},
        {"(k,j,i)", [](const Exponent& v) { return Exponent{v.k, v.j, v.i}; }},
        {"(i,j+k,0)", [](const Exponent& v) { return Exponent{v.i, v.j + v.k, 0}; }},
        {"(j,i+k,0)", [](const Exponent& v) { return Exponent{v.j, v.i + v.k, 0}; }},
        {"(k,i+j,0)", [](const Exponent& v) { return Exponent{v.k, v.i + v.j, 0}; }},
    };
    return t;
}

// Index of the triple t with deg((x^v) alpha beta) = deg(X^t1 Y^t2 Z^t3) for
// every v with entries <= max_exp and every registered degree function.
template <class Field>
std::optional<std::size_t> match_fifteen_triples(const AffineMap<Field>& alpha, std::uint32_t max_exp = 2) {
    const Field& f = alpha.field();
    auto ab = compose(Endomorphism<Field>(alpha), beta(f));
    auto b = beta(f);
    const auto& triples = fifteen_triples();
    std::vector<bool> alive(triples.size(), true);
    for (const auto& deg : registered_degree_functions()) {
        auto comp_ab = component_degrees(ab, deg);
        auto comp_b = component_degrees(b, deg);
        for (std::uint32_t i = 0; i <= max_exp; ++i)
            for (std::uint32_t j = 0; j <= max_exp; ++j)
                for (std::uint32_t k = 0; k <= max_exp; ++k) {
                    Exponent v{i, j, k};
                    auto observed = monomial_image_degree(comp_ab, v);
                    for (std::size_t t = 0; t < triples.size(); ++t)
                        if (alive[t] && monomial_image_degree(comp_b, triples[t].second(v)) != observed)
                            alive[t] = false;
                }
    }
    for (std::size_t t = 0; t < triples.size(); ++t)
        if (alive[t]) return t;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Stability of P* under pi beta, pi beta^{-1} and the long word

template <class Field>
struct Hop {
    std::string label;
    Word<Field> word;
    RegionKind target;
};

template <class Field>
Word<Field> pi_beta(const Field& f) {
    return Word<Field>::pi(f) + Word<Field>::beta(f);
}
template <class Field>
Word<Field> pi_beta_inv(const Field& f) {
    return Word<Field>::pi(f) + Word<Field>::beta_inv(f);
}

// (pi beta^{-1})^3 alpha pi (pi beta)^3 split into hops following the stratum of alpha.
template <class Field>
std::vector<Hop<Field>> theorem_route(const AffineMap<Field>& alpha) {
    const Field& f = alpha.field();
    using W = Word<Field>;
    auto pbi = pi_beta_inv(f);
    auto pb = pi_beta(f);
    auto a = W::affine(alpha);
    auto b = W::beta(f);
    std::vector<Hop<Field>> r;
    auto push = [&r](std::string l, W w, RegionKind k) { r.push_back({std::move(l), std::move(w), k}); };
    switch (stratum_classify(alpha).stratum) {
        case Stratum::a0_minus_a1:
            for (int t = 0; t < 3; ++t) push("pi beta_inv", pbi, RegionKind::Pstar);
            push("alpha beta", a + b, RegionKind::Qstar);
            push("pi beta", pb, RegionKind::Pstar);
            push("pi beta", pb, RegionKind::Pstar);
            break;
        case Stratum::a1_minus_a2:
            for (int t = 0; t < 2; ++t) push("pi beta_inv", pbi, RegionKind::Pstar);
            push("pi beta_inv alpha beta", pbi + a + b, RegionKind::Qstar);
            push("pi beta", pb, RegionKind::Pstar);
            push("pi beta", pb, RegionKind::Pstar);
            break;
        case Stratum::a2_minus_a3:
            for (int t = 0; t < 2; ++t) push("pi beta_inv", pbi, RegionKind::Pstar);
            push("pi beta_inv alpha beta pi beta", pbi + a + b + pb, RegionKind::Qstar);
            push("pi beta", pb, RegionKind::Pstar);
            break;
        case Stratum::a3_minus_a4:
            push("pi beta_inv", pbi, RegionKind::Pstar);
            push("(pi beta_inv)^2 alpha beta pi beta", pbi + pbi + a + b + pb, RegionKind::Qstar);
            push("pi beta", pb, RegionKind::Pstar);
            break;
        default:
            throw PreconditionError("the long word does not preserve P* for alpha in " +
                                    to_string(stratum_classify(alpha).stratum));
    }
    return r;
}

template <class Field>
Word<Field> theorem_word(const AffineMap<Field>& alpha) {
    const Field& f = alpha.field();
    auto pbi = pi_beta_inv(f);
    auto pb = pi_beta(f);
    return pbi.repeated(3) + Word<Field>::affine(alpha) + Word<Field>::pi(f) + pb.repeated(3);
}

// Checks one hop: the degree-level certificate, and when `carry` holds a
// concrete member of the input family small enough, the actual image.
// Oversized carries are replaced by a fresh small sample of the same kind.
struct HopPolicy {
    std::size_t carry_limit = 20000;
    RegionParams resample_params{1, 0};
};

template <class Field>
struct HopOutcome {
    bool ok = false;
    std::string mode;  // "concrete", "resampled", "degree-only"
    std::optional<StarState> out;
    std::optional<Polynomial<Field>> carry;
    Counterexample cx;
};

template <class Field>
HopOutcome<Field> run_hop(const Endomorphism<Field>& gamma, const std::string& label, const StarState& in,
                          RegionKind target, std::optional<Polynomial<Field>> carry, std::uint64_t seed,
                          const HopPolicy& policy, const TermBudget& budget) {
    const Field& f = gamma.field();
    HopOutcome<Field> res;
    auto pred = predict_hop(gamma, in, target);
    if (!pred.certified) {
        res.cx = {in.to_string(), label, to_string(star_kind(target)), "degree certificate failed: " + pred.reason};
        return res;
    }
    res.out = pred.out;
    StarState check_in = in;
    StarState check_out = *pred.out;
    if (!carry || carry->size() > policy.carry_limit ||
        region_size(base_kind(pred.out->kind), pred.out->params) > 4 * policy.carry_limit) {
        check_in = StarState{in.kind, policy.resample_params};
        auto small = predict_hop(gamma, check_in, target);
        if (!small.certified) {
            res.cx = {check_in.to_string(), label, to_string(star_kind(target)),
                      "degree certificate failed: " + small.reason};
            return res;
        }
        check_out = *small.out;
        carry = random_star_element(in.kind, check_in.params, 0.2, f, seed);
        res.mode = "resampled";
    } else {
        res.mode = "concrete";
    }
    try {
        auto img = apply(*carry, gamma, budget);
        if (!poly_in_star(img, check_out.kind, check_out.params)) {
            auto inferred = infer_star_params(img, check_out.kind);
            std::ostringstream got;
            if (inferred)
                got << to_string(check_out.kind) << *inferred;
            else
                got << "outside " << to_string(check_out.kind);
            res.cx = {describe(*carry), label, check_out.to_string(), got.str()};
            return res;
        }
        if (res.mode == "concrete") res.carry = std::move(img);
    } catch (const BudgetExceeded&) {
        res.mode = "degree-only";
    }
    res.ok = true;
    return res;
}

template <class Field>
VerificationReport check_theorem_stability(const AffineMap<Field>& alpha, const RegionParams& params,
                                           std::uint64_t samples, std::uint64_t seed, const TermBudget& budget = {},
                                           const HopPolicy& policy = {}) {
    auto label = stratum_classify(alpha);
    if (label.stratum == Stratum::a4)
        throw PreconditionError("alpha lies in A4; the long word reduces to pi alpha and need not preserve P*");
    const Field& f = alpha.field();
    VerificationReport rep("theorem", f.name(), seed);
    rep.params = {{"alpha", to_string(Endomorphism<Field>(alpha))},
                  {"stratum", to_string(label.stratum)},
                  {"m", params.m()},
                  {"n", params.n()}};
    auto route = theorem_route(alpha);
    std::vector<Endomorphism<Field>> maps;
    for (const auto& h : route) maps.push_back(hop_map(h.word, budget));
    auto pb = hop_map(pi_beta(f)), pbi = hop_map(pi_beta_inv(f));
    Json trail = Json::array();
    for (std::uint64_t s = 0; s < samples; ++s) {
        auto sd = detail::mix_seed(seed, s);
        StarState start{RegionKind::Pstar, params};
        auto p = random_star_element(RegionKind::Pstar, params, sample_density(s), f, sd);
        // The two short generators.
        for (const auto* g : {&pb, &pbi}) {
            auto r = run_hop(*g, std::string(g == &pb ? "pi beta" : "pi beta_inv"), start, RegionKind::Pstar,
                             std::optional<Polynomial<Field>>(p), sd, policy, budget);
            rep.record(r.ok, r.cx);
        }
        // The long word, hop by hop.
        StarState state = start;
        std::optional<Polynomial<Field>> carry = p;
        bool ok = true;
        for (std::size_t h = 0; h < route.size() && ok; ++h) {
            auto r = run_hop(maps[h], route[h].label, state, route[h].target, std::move(carry),
                             detail::mix_seed(sd, h + 1), policy, budget);
            if (s == 0)
                trail.push_back({{"hop", route[h].label},
                                 {"from", state.to_string()},
                                 {"to", r.out ? r.out->to_string() : "-"},
                                 {"mode", r.mode}});
            if (!r.ok) {
                rep.record_fail(r.cx);
                ok = false;
                break;
            }
            state = *r.out;
            carry = std::move(r.carry);
        }
        if (ok) {
            bool back_in_p = state.kind == RegionKind::Pstar;
            rep.record(back_in_p, {start.to_string(), "route end", "P*", state.to_string()});
        }
    }
    rep.details["route"] = trail;
    return rep;
}

// Direct expansion of (y)(pi beta)^k, checking the parameters at every step.
template <class Field>
VerificationReport check_pi_beta_chain(const Field& f, unsigned hops, const TermBudget& budget = {}) {
    VerificationReport rep("pi-beta-chain", f.name(), 0);
    rep.params = {{"hops", hops}};
    auto pb = hop_map(pi_beta(f));
    auto p = Polynomial<Field>::variable(f, 1);
    Json steps = Json::array();
    std::uint64_t expected_m = 1;
    try {
        for (unsigned h = 1; h <= hops; ++h) {
            p = apply(p, pb, budget);
            auto inferred = infer_star_params(p, RegionKind::Pstar);
            bool ok = inferred && inferred->m() == expected_m && inferred->n() == 0;
            std::ostringstream got;
            if (inferred) got << *inferred;
            rep.record(ok, {"(y)(pi beta)^" + std::to_string(h), "hop " + std::to_string(h),
                            "(" + std::to_string(expected_m) + ",0)", inferred ? got.str() : "not in P*"});
            steps.push_back({{"hop", h}, {"m", inferred ? inferred->m() : 0}, {"terms", p.size()}});
            expected_m *= 4;
        }
    } catch (const BudgetExceeded&) {
        rep.budget_exhausted = true;
    }
    rep.details["steps"] = steps;
    return rep;
}

}  // namespace tamecert
