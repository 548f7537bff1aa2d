#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tamecert/extension.hpp"
#include "tamecert/stability.hpp"

namespace tamecert {

// alpha_0 theta alpha_1 theta ... theta alpha_r with theta = theta_N.
template <class Field>
struct AlternatingWord {
    std::vector<AffineMap<Field>> alphas;
    unsigned N = 3;

    std::size_t r() const { return alphas.empty() ? 0 : alphas.size() - 1; }
    const Field& field() const { return alphas.front().field(); }

    Word<Field> to_word() const {
        const Field& f = field();
        Word<Field> w(f);
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            if (i) w += Word<Field>::theta(f, N);
            w += Word<Field>::affine(alphas[i]);
        }
        return w;
    }
};

template <class Field>
std::string to_string(const AlternatingWord<Field>& w) {
    std::string s;
    for (std::size_t i = 0; i < w.alphas.size(); ++i) {
        if (i) s += " ; theta(" + std::to_string(w.N) + ") ; ";
        s += to_string(Endomorphism<Field>(w.alphas[i]));
    }
    return s;
}

// Absorbs interior alpha_i in A4: theta alpha_i theta = alpha_i, since alpha_i
// commutes with theta and theta is an involution.
template <class Field>
AlternatingWord<Field> normalize_word(AlternatingWord<Field> w) {
    if (w.alphas.empty()) throw PreconditionError("empty alternating word");
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 1; i + 1 < w.alphas.size(); ++i) {
            if (stratum_classify(w.alphas[i]).stratum != Stratum::a4) continue;
            auto merged = w.alphas[i - 1] * w.alphas[i] * w.alphas[i + 1];
            w.alphas.erase(w.alphas.begin() + static_cast<std::ptrdiff_t>(i - 1),
                           w.alphas.begin() + static_cast<std::ptrdiff_t>(i + 2));
            w.alphas.insert(w.alphas.begin() + static_cast<std::ptrdiff_t>(i - 1), merged);
            changed = true;
            break;
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// Pointwise evaluation over a prime field

constexpr std::uint64_t evaluation_prime = 2147483647;

inline PrimeField evaluation_field(const PrimeField& f) { return f; }
inline PrimeField evaluation_field(const RationalField&) { return PrimeField(evaluation_prime); }

inline std::uint64_t embed_scalar(const PrimeField&, std::uint64_t c) { return c; }
inline std::uint64_t embed_scalar(const PrimeField& target, const mpq_class& c) {
    return target.from_fraction(c.get_num(), c.get_den());
}

struct PointwiseOutcome {
    std::uint64_t checked = 0;
    bool agree = true;
    bool skipped = false;  // a coefficient is not invertible in the evaluation field
    std::string witness;
};

// Compares two words as point maps at random points of F_p, reducing rational
// coefficients modulo a large prime.
template <class Field>
PointwiseOutcome pointwise_compare(const Word<Field>& a, const Word<Field>& b, std::uint64_t points,
                                   std::uint64_t seed) {
    PointwiseOutcome out;
    const PrimeField ef = evaluation_field(a.field());
    auto embed = [&ef](const typename Field::value_type& c) { return embed_scalar(ef, c); };
    std::mt19937_64 rng(seed);
    try {
        for (std::uint64_t s = 0; s < points; ++s) {
            std::array<std::uint64_t, 3> pt{ef.random(rng), ef.random(rng), ef.random(rng)};
            auto pa = eval_word_in(a, ef, pt, embed);
            auto pb = eval_word_in(b, ef, pt, embed);
            ++out.checked;
            if (pa != pb) {
                out.agree = false;
                out.witness = "(" + std::to_string(pt[0]) + "," + std::to_string(pt[1]) + "," + std::to_string(pt[2]) +
                              ")";
                return out;
            }
        }
    } catch (const NotInvertible&) {
        out.skipped = true;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Certificates

struct HopRecord {
    std::string label;
    std::string from;
    std::string to;
    std::string mode;
};

template <class Field>
struct Certificate {
    std::string mode;
    unsigned N = 0;
    std::size_t r = 0;
    AlternatingWord<Field> normalized;
    AffineMap<Field> alpha, alpha_prime;
    Word<Field> rewritten;
    std::vector<HopRecord> trail;
    std::optional<Polynomial<Field>> witness;
    std::optional<RegionParams> params;
    PointwiseOutcome pointwise;

    Json to_json() const {
        Json j;
        j["mode"] = mode;
        j["N"] = N;
        j["r"] = r;
        j["alpha"] = to_string(Endomorphism<Field>(alpha));
        j["alpha_prime"] = to_string(Endomorphism<Field>(alpha_prime));
        j["rewritten_atoms"] = rewritten.size();
        Json t = Json::array();
        for (std::size_t h = 0; h < trail.size(); ++h)
            t.push_back({{"hop", h + 1},
                         {"label", trail[h].label},
                         {"from", trail[h].from},
                         {"to", trail[h].to},
                         {"mode", trail[h].mode}});
        j["trail"] = t;
        if (params) j["params"] = {{"m", params->m()}, {"n", params->n()}};
        if (witness) j["witness_terms"] = witness->size();
        j["pointwise"] = {{"points", pointwise.checked}, {"agree", pointwise.agree}, {"skipped", pointwise.skipped}};
        return j;
    }
};

enum class CertificateMode { eager, stepwise };

inline CertificateMode parse_certificate_mode(const std::string& s) {
    if (s == "eager") return CertificateMode::eager;
    if (s == "stepwise") return CertificateMode::stepwise;
    throw PreconditionError("unknown certificate mode '" + s + "'");
}

namespace detail {

template <class Field>
struct PlannedHop {
    std::string label;
    Word<Field> word;
    RegionKind target;
};

// Hops after the first (y) -> (y) pi beta, following the rewritten word.
template <class Field>
std::vector<PlannedHop<Field>> plan_hops(const Field& f, const std::vector<AffineMap<Field>>& inner, unsigned N,
                                         bool stepwise) {
    auto pb = pi_beta(f), pbi = pi_beta_inv(f);
    std::vector<PlannedHop<Field>> hops;
    auto push = [&hops](const std::string& l, const Word<Field>& w, RegionKind k) { hops.push_back({l, w, k}); };
    for (unsigned t = 1; t < N; ++t) push("pi beta", pb, RegionKind::Pstar);
    for (const auto& a : inner) {
        if (stepwise) {
            for (unsigned t = 3; t < N; ++t) push("pi beta_inv", pbi, RegionKind::Pstar);
            for (const auto& h : theorem_route(a)) push(h.label, h.word, h.target);
            for (unsigned t = 3; t < N; ++t) push("pi beta", pb, RegionKind::Pstar);
        } else {
            push("block", pbi.repeated(N) + Word<Field>::affine(a) + Word<Field>::pi(f) + pb.repeated(N),
                 RegionKind::Pstar);
        }
    }
    for (unsigned t = 0; t < N; ++t) push("pi beta_inv", pbi, RegionKind::Pstar);
    return hops;
}

}  // namespace detail

// Brackets a normalized word with alpha = alpha_0^{-1} and alpha' = alpha_r^{-1} pi,
// giving (pi beta)^N (prod (pi beta^{-1})^N alpha_i' pi (pi beta)^N) (pi beta^{-1})^N
// with alpha_i' = pi alpha_i pi, then follows (y) through it hop by hop. The
// final polynomial lies in P*, so the word is not affine.
template <class Field>
Certificate<Field> build_certificate(const AlternatingWord<Field>& input, CertificateMode mode,
                                     const TermBudget& budget = {}, std::uint64_t seed = 0,
                                     const HopPolicy& policy = {}) {
    auto w = normalize_word(input);
    if (w.r() == 0) throw PreconditionError("word normalizes to a single affine map");
    if (w.N == 0) throw PreconditionError("theta parameter must be positive");
    const Field& f = w.field();
    const unsigned N = w.N;
    const auto swap = AffineMap<Field>::swap_xy(f);

    std::vector<AffineMap<Field>> inner;
    for (std::size_t i = 1; i < w.r(); ++i) inner.push_back(swap * w.alphas[i] * swap);
    if (mode == CertificateMode::stepwise && !inner.empty() && N < 3)
        throw PreconditionError("stepwise certificates with interior affines need N >= 3");
    const std::size_t eager_hops = 2 * N + 6 * (w.r() - 1);
    if (mode == CertificateMode::eager && eager_hops > 5) throw BudgetExceeded(eager_hops, 5, "eager certificate hops");

    using W = Word<Field>;
    auto pb = pi_beta(f), pbi = pi_beta_inv(f);
    W rewritten = pb + pb.repeated(N - 1);
    for (const auto& a : inner) rewritten += pbi.repeated(N) + W::affine(a) + W::pi(f) + pb.repeated(N);
    rewritten += pbi.repeated(N);

    Certificate<Field> cert{mode == CertificateMode::eager ? "eager" : "stepwise",
                            N,
                            w.r(),
                            w,
                            affine_invert(w.alphas.front()),
                            affine_invert(w.alphas.back()) * swap,
                            rewritten,
                            {},
                            std::nullopt,
                            std::nullopt,
                            {}};

    auto bracketed = W::affine(cert.alpha) + input.to_word() + W::affine(cert.alpha_prime);
    cert.pointwise = pointwise_compare(bracketed, rewritten, 100, seed);
    if (!cert.pointwise.agree)
        throw HopFailure("rewritten word disagrees with the bracketed word at " + cert.pointwise.witness);

    // (y) pi beta in P*_{1,0}.
    auto y = Polynomial<Field>::variable(f, 1);
    auto p = apply(y, hop_map(pb), budget);
    StarState state{RegionKind::Pstar, RegionParams(1, 0)};
    if (!poly_in_star(p, RegionKind::Pstar, state.params)) throw HopFailure("(y) pi beta is not in P*_{1,0}");
    cert.trail.push_back({"pi beta", "y", state.to_string(), "concrete"});

    std::optional<Polynomial<Field>> carry = p;
    auto hops = detail::plan_hops(f, inner, N, mode == CertificateMode::stepwise);
    for (std::size_t h = 0; h < hops.size(); ++h) {
        auto gamma = hop_map(hops[h].word, budget);
        if (mode == CertificateMode::eager) {
            auto img = apply(*carry, gamma, budget);
            auto inferred = infer_star_params(img, hops[h].target);
            if (!inferred)
                throw HopFailure("hop " + std::to_string(h + 2) + " (" + hops[h].label + ") left " +
                                 to_string(hops[h].target));
            StarState next{star_kind(hops[h].target), *inferred};
            cert.trail.push_back({hops[h].label, state.to_string(), next.to_string(), "concrete"});
            state = next;
            carry = std::move(img);
        } else {
            auto r = run_hop(gamma, hops[h].label, state, hops[h].target, std::move(carry),
                             detail::mix_seed(seed, h + 1), policy, budget);
            if (!r.ok)
                throw HopFailure("hop " + std::to_string(h + 2) + " (" + hops[h].label + ") from " + r.cx.input +
                                 ": expected " + r.cx.expected + ", got " + r.cx.got);
            cert.trail.push_back({hops[h].label, state.to_string(), r.out->to_string(), r.mode});
            state = *r.out;
            carry = std::move(r.carry);
        }
    }
    if (state.kind != RegionKind::Pstar) throw HopFailure("certificate ends outside P*");
    cert.params = state.params;
    if (mode == CertificateMode::eager) cert.witness = std::move(carry);
    return cert;
}

// ---------------------------------------------------------------------------
// Degree-bound exclusion

// Maps in <A, theta_N> either are affine or send some coordinate to a
// polynomial of total degree >= 6, so a non-affine map whose coordinate images
// all have total degree <= 5 lies outside.
template <class Field>
bool excluded_by_degree_bound(const Endomorphism<Field>& phi, unsigned /*N*/ = 3) {
    if (phi.as_affine()) return false;
    std::uint64_t top = 0;
    for (int r = 0; r < 3; ++r) top = std::max(top, phi[r].total_degree());
    return top <= 5;
}

// ---------------------------------------------------------------------------
// Centralizer

inline ExtensionField exclusion_ring(const PrimeField& f, std::uint64_t seed) {
    return ExtensionField::with_size_at_least(f, 40, seed);
}
inline ExtensionField exclusion_ring(const RationalField&, std::uint64_t seed) {
    return ExtensionField::with_size_at_least(PrimeField(evaluation_prime), 40, seed);
}

// Inclusion: every (u^2 x, u^2 y, u z) with u^6 = 1 commutes with beta and pi
// exactly. Exclusion: sampled affine maps outside A4 fail to commute with
// theta at some point of a large extension field.
template <class Field>
VerificationReport centralizer_report(const Field& f, std::uint64_t trials, std::uint64_t seed, unsigned N = 3) {
    VerificationReport rep("centralizer", f.name(), seed);
    rep.params = {{"trials", trials}, {"N", N}};
    auto b = beta(f), p = pi(f);
    auto elems = centralizer_elements(f);
    Json members = Json::array();
    for (const auto& a : elems) {
        Endomorphism<Field> e(a);
        bool ok = compose(e, b) == compose(b, e) && compose(e, p) == compose(p, e);
        members.push_back(to_string(e));
        rep.record(ok, {to_string(e), "inclusion", "commutes with beta and pi", "does not commute"});
    }
    rep.details["order"] = elems.size();
    rep.details["members"] = members;

    auto ring = exclusion_ring(f, seed);
    const PrimeField ef = ring.base();
    rep.details["exclusion_ring"] = ring.name();
    auto embed = [&ring, &ef](const typename Field::value_type& c) { return ring.constant(embed_scalar(ef, c)); };
    const auto theta = Word<Field>::theta(f, N);
    static const Stratum cycle[4] = {Stratum::a0_minus_a1, Stratum::a1_minus_a2, Stratum::a2_minus_a3,
                                     Stratum::a3_minus_a4};
    std::mt19937_64 rng(seed);
    std::uint64_t skipped = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        auto a = random_affine_in(cycle[t % 4], f, rng);
        auto lhs = Word<Field>::affine(a) + theta;
        auto rhs = theta + Word<Field>::affine(a);
        bool differ = false;
        try {
            for (int s = 0; s < 8 && !differ; ++s) {
                std::array<ExtensionField::value_type, 3> pt{ring.random(rng), ring.random(rng), ring.random(rng)};
                differ = eval_word_in(lhs, ring, pt, embed) != eval_word_in(rhs, ring, pt, embed);
            }
        } catch (const NotInvertible&) {
            ++skipped;
            continue;
        }
        rep.record(differ, {to_string(Endomorphism<Field>(a)), "exclusion", "alpha theta != theta alpha",
                            "agreement at every sampled point"});
    }
    rep.details["exclusion_skipped"] = skipped;
    return rep;
}

// ---------------------------------------------------------------------------
// Amalgam words

// rho_1 alpha_1 rho_2 ... alpha_{r-1} rho_r with rho_i = theta c_i, c_i in A4
// and alpha_i affine outside A4.
template <class Field>
struct AmalgamWord {
    std::vector<AffineMap<Field>> c;
    std::vector<AffineMap<Field>> alphas;
    unsigned N = 3;

    Word<Field> to_word() const {
        const Field& f = c.front().field();
        Word<Field> w(f);
        for (std::size_t i = 0; i < c.size(); ++i) {
            w += Word<Field>::theta(f, N) + Word<Field>::affine(c[i]);
            if (i < alphas.size()) w += Word<Field>::affine(alphas[i]);
        }
        return w;
    }
};

template <class Field>
AlternatingWord<Field> amalgam_to_alternating(const AmalgamWord<Field>& w) {
    if (w.c.empty()) throw PreconditionError("empty amalgam word");
    if (w.alphas.size() + 1 != w.c.size()) throw PreconditionError("amalgam word must alternate rho and alpha");
    for (const auto& c : w.c)
        if (stratum_classify(c).stratum != Stratum::a4) throw PreconditionError("rho factor outside the centralizer");
    for (const auto& a : w.alphas)
        if (stratum_classify(a).stratum == Stratum::a4) throw PreconditionError("alpha lies in the centralizer");
    const Field& f = w.c.front().field();
    AlternatingWord<Field> out;
    out.N = w.N;
    out.alphas.push_back(AffineMap<Field>::identity(f));
    for (std::size_t i = 0; i < w.alphas.size(); ++i) out.alphas.push_back(w.c[i] * w.alphas[i]);
    out.alphas.push_back(w.c.back());
    return out;
}

template <class Field>
Certificate<Field> amalgam_certificate(const AmalgamWord<Field>& w, const TermBudget& budget = {},
                                       std::uint64_t seed = 0) {
    return build_certificate(amalgam_to_alternating(w), CertificateMode::stepwise, budget, seed);
}

// True when a stepwise certificate shows the word is not affine.
template <class Field>
bool amalgam_nontriviality(const AmalgamWord<Field>& w, const TermBudget& budget = {}, std::uint64_t seed = 0) {
    try {
        auto cert = amalgam_certificate(w, budget, seed);
        return cert.pointwise.agree;
    } catch (const HopFailure&) {
        return false;
    }
}

}  // namespace tamecert
