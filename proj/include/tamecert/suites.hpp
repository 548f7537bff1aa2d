#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <future>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tamecert/certificate.hpp"
#include "tamecert/parse.hpp"

namespace tamecert {

struct SuiteOptions {
    FieldSpec field = FieldSpec::rationals();
    std::uint64_t seed = 0;
    TermBudget budget;
    std::optional<std::uint64_t> m, n;
    std::optional<std::uint64_t> samples;
    unsigned N = 3;
    bool timing = false;
    unsigned threads = 0;  // 0 = hardware concurrency
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"degrees", "regions",  "lemma-max", "qtop",      "strata",
                                                "theorem", "certify",  "centralizer"};
    return names;
}

using SuiteTask = std::function<VerificationReport()>;

namespace suites {

inline std::uint64_t sub_seed(const SuiteOptions& o, std::uint64_t tag) { return detail::mix_seed(o.seed, tag); }

template <class Field>
Polynomial<Field> random_polynomial(const Field& f, std::mt19937_64& rng, int terms, std::uint32_t max_exp) {
    std::uniform_int_distribution<std::uint32_t> ex(0, max_exp);
    std::vector<Term<Field>> t;
    for (int s = 0; s < terms; ++s) t.push_back({Exponent{ex(rng), ex(rng), ex(rng)}, f.random_nonzero(rng)});
    return Polynomial<Field>::from_terms(f, std::move(t));
}

template <class Field>
void degrees(const Field& f, const SuiteOptions& o, std::vector<SuiteTask>& out) {
    out.push_back([f] {
        VerificationReport rep("degrees.example", f.name(), 0);
        auto p = beta(f)[0];
        rep.params = {{"polynomial", to_string(p)}};
        auto w = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint64_t want) {
            auto got = weighted_deg(p, {a, b, c});
            rep.record(got == DegreeValue::weighted(want),
                       {"deg_(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")", "weighted",
                        std::to_string(want), got.to_string()});
        };
        w(4, 1, 0, 4);
        w(4, 0, 1, 4);
        w(8, 2, 1, 8);
        const Exponent lex[3] = {{1, 0, 0}, {0, 4, 0}, {0, 2, 4}};
        for (int i = 1; i <= 3; ++i) {
            auto got = ldeg(p, i);
            rep.record(got.vector() == lex[i - 1], {"ldeg_" + std::to_string(i), "lex",
                                                    DegreeValue::lex(lex[i - 1], i).to_string(), got.to_string()});
        }
        return rep;
    });
    out.push_back([f] {
        VerificationReport rep("degrees.beta-table", f.name(), 0);
        const auto& table = beta_shape_table();
        for (const auto* name : {"beta", "beta_inv"}) {
            auto g = std::string(name) == "beta" ? beta(f) : beta_inv(f);
            auto t = shape_of(g);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) {
                    std::string cell = std::string(name) + "[" + std::to_string(r) + "]";
                    rep.record(t.weighted[r][c] == table.weighted[r][c],
                               {cell, "weighted column " + std::to_string(c), std::to_string(table.weighted[r][c]),
                                std::to_string(t.weighted[r][c])});
                    std::ostringstream want, got;
                    want << table.lex[r][c];
                    got << t.lex[r][c];
                    rep.record(t.lex[r][c] == table.lex[r][c],
                               {cell, "ldeg_" + std::to_string(c + 1), want.str(), got.str()});
                }
        }
        return rep;
    });
    out.push_back([f, seed = sub_seed(o, 1), samples = o.samples.value_or(40)] {
        VerificationReport rep("degrees.axioms", f.name(), seed);
        rep.params = {{"samples_per_function", samples}};
        std::mt19937_64 rng(seed);
        for (const auto& deg : registered_degree_functions())
            for (std::uint64_t s = 0; s < samples; ++s) {
                auto a = random_polynomial(f, rng, 1 + static_cast<int>(s % 6), 4);
                auto b = random_polynomial(f, rng, 1 + static_cast<int>(s % 5), 4);
                bool mult = deg(a * b) == deg(a) + deg(b);
                bool sum = deg(a + b) <= std::max(deg(a), deg(b));
                rep.record(mult && sum, {to_string(a) + " | " + to_string(b), deg.name(),
                                         "multiplicative and subadditive", mult ? "sum bound fails" : "product fails"});
            }
        return rep;
    });
    out.push_back([f] {
        VerificationReport rep("degrees.beta-lexicographic", f.name(), 0);
        for (const auto& deg : registered_degree_functions())
            rep.record(check_beta_lexicographic(deg, f), {deg.name(), "deg X > deg Y > deg Z", "true", "false"});
        return rep;
    });
}

inline void regions(const SuiteOptions& o, std::vector<SuiteTask>& out) {
    const std::uint64_t M = o.m.value_or(3), Nn = o.n.value_or(3);
    out.push_back([] {
        VerificationReport rep("regions.size", "none", 0);
        auto box = [](RegionKind k, std::uint64_t m, std::uint64_t n) {
            std::uint64_t count = 0, bound = 8 * m + n;
            for (std::uint64_t i = 0; i <= bound; ++i)
                for (std::uint64_t j = 0; j <= bound; ++j)
                    for (std::uint64_t kk = 0; kk <= bound; ++kk) {
                        bool in = k == RegionKind::P ? 4 * i + j <= 4 * m && 4 * i + kk <= 4 * m + n &&
                                                           8 * i + 2 * j + kk <= 8 * m + n
                                                     : i + j <= m && 3 * i + 3 * j + kk <= 3 * m + n;
                        count += in;
                    }
            return count;
        };
        rep.record(region_size(RegionKind::P, {1, 0}) == 20, {"P_(1,0)", "size", "20",
                                                              std::to_string(region_size(RegionKind::P, {1, 0}))});
        rep.record(region_size(RegionKind::Q, {1, 0}) == 6, {"Q_(1,0)", "size", "6",
                                                             std::to_string(region_size(RegionKind::Q, {1, 0}))});
        for (auto k : {RegionKind::P, RegionKind::Q})
            for (std::uint64_t m = 1; m <= 3; ++m)
                for (std::uint64_t n = 0; n <= 3; ++n) {
                    auto want = box(k, m, n);
                    auto got = enumerate_region(k, {m, n}).size();
                    rep.record(want == got && got == region_size(k, {m, n}),
                               {to_string(k) + "(" + std::to_string(m) + "," + std::to_string(n) + ")",
                                "enumeration vs box scan", std::to_string(want), std::to_string(got)});
                }
        return rep;
    });
    out.push_back([] {
        VerificationReport rep("regions.inclusion", "none", 0);
        for (std::uint64_t m = 1; m <= 4; ++m)
            for (std::uint64_t n = 0; n <= 4; ++n) {
                bool ok = true;
                for (const auto& v : *RegionCache::instance().get(RegionKind::P, {m, n}))
                    ok = ok && in_region(v, RegionKind::Q, {4 * m, n});
                rep.record(ok, {"P_(" + std::to_string(m) + "," + std::to_string(n) + ")", "inside Q_(4m,n)", "true",
                                "false"});
            }
        return rep;
    });
    out.push_back([M, Nn, budget = o.budget] {
        VerificationReport rep("regions.cub", "q", 0);
        rep.params = {{"max_m", M}, {"max_n", Nn}};
        RationalField q;
        auto bx = beta(q)[0];
        auto z = Polynomial<RationalField>::variable(q, 2);
        try {
            for (std::uint64_t m = 1; m <= M; ++m)
                for (std::uint64_t n = 0; n <= Nn; ++n) {
                    auto p = mul(pow(bx, m, budget), pow(z, n), budget);
                    auto hull = cub_closure(p.support());
                    auto reg = enumerate_region(RegionKind::P, {m, n});
                    std::set<Exponent> want(reg.begin(), reg.end());
                    rep.record(hull == want, {"(x+y^2(y+z^2)^2)^" + std::to_string(m) + " z^" + std::to_string(n),
                                              "cub(supp)", std::to_string(want.size()) + " points",
                                              std::to_string(hull.size()) + " points"});
                }
        } catch (const BudgetExceeded&) {
            rep.budget_exhausted = true;
        }
        return rep;
    });
    out.push_back([f = o.field, budget = o.budget] {
        return with_field(f, [&](const auto& fld) {
            VerificationReport rep("regions.beta-image", fld.name(), 0);
            using F = std::decay_t<decltype(fld)>;
            auto b = beta(fld);
            auto x = Polynomial<F>::variable(fld, 0), z = Polynomial<F>::variable(fld, 2);
            try {
                for (std::uint64_t m = 1; m <= 5; ++m)
                    for (std::uint64_t n = 0; n <= 5; ++n) {
                        auto img = apply(mul(pow(x, m), pow(z, n)), b, budget);
                        auto inferred = infer_star_params(img, RegionKind::Pstar);
                        std::ostringstream got;
                        if (inferred) got << *inferred;
                        rep.record(inferred && *inferred == RegionParams(m, n),
                                   {"(x^" + std::to_string(m) + " z^" + std::to_string(n) + ")beta", "P* membership",
                                    "(" + std::to_string(m) + "," + std::to_string(n) + ")",
                                    inferred ? got.str() : "not in P*"});
                    }
            } catch (const BudgetExceeded&) {
                rep.budget_exhausted = true;
            }
            return rep;
        });
    });
}

template <class Field>
void qtop(const Field& f, const SuiteOptions& o, std::vector<SuiteTask>& out) {
    const std::uint64_t M = o.m.value_or(3), Nn = o.n.value_or(3), samples = o.samples.value_or(100);
    std::uint64_t tag = 100;
    for (const auto* name : {"beta", "beta_inv"}) {
        auto g = std::string(name) == "beta" ? beta(f) : beta_inv(f);
        out.push_back([=, seed = sub_seed(o, tag++), budget = o.budget] {
            VerificationReport rep("qtop", f.name(), seed);
            rep.params = {{"gamma", name}, {"max_m", M}, {"max_n", Nn}, {"samples", samples}};
            const std::uint64_t cells = M * (Nn + 1);
            for (std::uint64_t c = 0; c < cells; ++c) {
                std::uint64_t share = samples / cells + (c < samples % cells ? 1 : 0);
                if (share == 0) continue;
                RegionParams p(1 + c / (Nn + 1), c % (Nn + 1));
                rep.absorb(check_QtoP(g, p, share, detail::mix_seed(seed, c), budget));
            }
            return rep;
        });
    }
}

template <class Field>
void strata(const Field& f, const SuiteOptions& o, std::vector<SuiteTask>& out) {
    const std::uint64_t M = o.m.value_or(2), Nn = o.n.value_or(2), samples = o.samples.value_or(25);
    std::uint64_t tag = 200;
    for (auto level : {StrataLevel::A0A1, StrataLevel::A1A2, StrataLevel::A2A3, StrataLevel::A3A4}) {
        out.push_back([=, seed = sub_seed(o, tag++), budget = o.budget] {
            VerificationReport rep("strata", f.name(), seed);
            rep.params = {{"level", to_string(level)}, {"alphas", 5}, {"samples", samples}, {"max_m", M},
                          {"max_n", Nn}};
            std::mt19937_64 rng(seed);
            Json alphas = Json::array();
            for (int a = 0; a < 5; ++a) {
                auto alpha = random_affine_in(stratum_of(level), f, rng);
                alphas.push_back(to_string(Endomorphism<Field>(alpha)));
                const std::uint64_t cells = M * (Nn + 1);
                for (std::uint64_t c = 0; c < cells; ++c) {
                    std::uint64_t share = samples / cells + (c < samples % cells ? 1 : 0);
                    if (share == 0) continue;
                    RegionParams p(1 + c / (Nn + 1), c % (Nn + 1));
                    rep.absorb(check_strata_proposition(level, alpha, p, share, rng(), budget));
                }
            }
            rep.details["alphas"] = alphas;
            return rep;
        });
    }
    for (auto level : {StrataLevel::A1A2, StrataLevel::A2A3, StrataLevel::A3A4}) {
        out.push_back([=, seed = sub_seed(o, tag++)] {
            VerificationReport rep("conjugation", f.name(), seed);
            const std::uint64_t tuples = o.samples.value_or(20);
            rep.params = {{"level", to_string(level)}, {"tuples", tuples}};
            std::mt19937_64 rng(seed);
            for (std::uint64_t t = 0; t < tuples; ++t)
                rep.absorb(conjugation_formula_check(level, random_affine_in(stratum_of(level), f, rng)));
            return rep;
        });
    }
}

inline const Stratum non_central_strata[4] = {Stratum::a0_minus_a1, Stratum::a1_minus_a2, Stratum::a2_minus_a3,
                                              Stratum::a3_minus_a4};

template <class Field>
void theorem(const Field& f, const SuiteOptions& o, std::vector<SuiteTask>& out) {
    const std::uint64_t samples = o.samples.value_or(3);
    const RegionParams params(o.m.value_or(1), o.n.value_or(0));
    std::uint64_t tag = 300;
    for (auto s : non_central_strata) {
        out.push_back([=, seed = sub_seed(o, tag++), budget = o.budget] {
            VerificationReport rep("theorem", f.name(), seed);
            rep.params = {{"stratum", to_string(s)}, {"alphas", 3}, {"samples", samples}, {"m", params.m()},
                          {"n", params.n()}};
            std::mt19937_64 rng(seed);
            Json runs = Json::array();
            for (int a = 0; a < 3; ++a) {
                auto alpha = random_affine_in(s, f, rng);
                auto r = check_theorem_stability(alpha, params, samples, rng(), budget);
                runs.push_back({{"alpha", to_string(Endomorphism<Field>(alpha))}, {"route", r.details["route"]}});
                rep.absorb(r);
            }
            rep.details["runs"] = runs;
            return rep;
        });
    }
    out.push_back([=, budget = o.budget] { return check_pi_beta_chain(f, 4, budget); });
}

template <class Field>
VerificationReport certificate_report(const AlternatingWord<Field>& w, CertificateMode mode, std::uint64_t seed,
                                      const TermBudget& budget) {
    VerificationReport rep("certify", w.field().name(), seed);
    rep.params = {{"word", to_string(w)}, {"mode", mode == CertificateMode::eager ? "eager" : "stepwise"},
                  {"N", w.N}, {"r", w.r()}};
    try {
        auto cert = build_certificate(w, mode, budget, seed);
        rep.record(cert.pointwise.agree, {to_string(w), "pointwise", "agreement", "disagreement"});
        rep.record(cert.params.has_value(), {to_string(w), "final hop", "P*", "none"});
        rep.details = cert.to_json();
    } catch (const HopFailure& e) {
        rep.record_fail({to_string(w), "hop", "P*", e.what()});
    } catch (const BudgetExceeded& e) {
        rep.budget_exhausted = true;
        rep.details["budget"] = e.what();
    }
    return rep;
}

template <class Field>
void certify(const Field& f, const SuiteOptions& o, std::vector<SuiteTask>& out) {
    const auto id = AffineMap<Field>::identity(f);
    auto word = [](std::vector<AffineMap<Field>> a, unsigned N) {
        AlternatingWord<Field> w;
        w.alphas = std::move(a);
        w.N = N;
        return w;
    };
    out.push_back([=, budget = o.budget] {
        return certificate_report(word({id, id}, 2), CertificateMode::eager, sub_seed(o, 400), budget);
    });
    out.push_back([=, budget = o.budget] {
        return certificate_report(word({id, id}, o.N), CertificateMode::stepwise, sub_seed(o, 401), budget);
    });
    std::uint64_t tag = 410;
    for (auto s : non_central_strata) {
        out.push_back([=, seed = sub_seed(o, tag++), budget = o.budget] {
            std::mt19937_64 rng(seed);
            auto w = word({random_affine(f, rng), random_affine_in(s, f, rng), random_affine(f, rng)}, o.N);
            return certificate_report(w, CertificateMode::stepwise, seed, budget);
        });
    }
    out.push_back([=] {
        VerificationReport rep("certify.degree-bound", f.name(), 0);
        for (const auto& [text, want] : std::vector<std::pair<std::string, bool>>{
                 {"(x+y^2, y, z)", true}, {"(x+y^6, y, z)", false}, {"(x+y, y, z)", false}}) {
            bool got = excluded_by_degree_bound(parse_map(text, f), o.N);
            rep.record(got == want, {text, "excluded_by_degree_bound", want ? "true" : "false", got ? "true" : "false"});
        }
        return rep;
    });
    out.push_back([=, seed = sub_seed(o, 420)] {
        VerificationReport rep("certify.total-degree", f.name(), seed);
        const std::uint64_t samples = o.samples.value_or(60);
        rep.params = {{"samples", samples}};
        for (std::uint64_t s = 0; s < samples; ++s) {
            RegionParams p(1 + s % 3, (s / 3) % 4);
            auto e = random_star_element(RegionKind::Pstar, p, sample_density(s), f, detail::mix_seed(seed, s));
            std::ostringstream in;
            in << "P*" << p;
            rep.record(e.total_degree() >= 6 * p.m() + p.n() && e.total_degree() >= 6,
                       {in.str(), "total degree", ">= 6m+n", std::to_string(e.total_degree())});
        }
        return rep;
    });
    out.push_back([=, seed = sub_seed(o, 430), budget = o.budget] {
        VerificationReport rep("certify.amalgam", f.name(), seed);
        typename AffineMap<Field>::Matrix sh{{{f.one(), f.one(), f.zero()},
                                              {f.zero(), f.one(), f.zero()},
                                              {f.zero(), f.zero(), f.one()}}};
        AffineMap<Field> shear(f, sh, {f.zero(), f.zero(), f.zero()});
        AmalgamWord<Field> two{{id, id}, {shear}, 3};
        AmalgamWord<Field> one{{id}, {}, 3};
        try {
            rep.record(amalgam_nontriviality(two, budget, seed), {"rho alpha rho", "certificate", "true", "false"});
            rep.record(amalgam_nontriviality(one, budget, seed), {"rho", "certificate", "true", "false"});
        } catch (const BudgetExceeded&) {
            rep.budget_exhausted = true;
        }
        return rep;
    });
}

template <class Field>
void centralizer(const Field& f, const SuiteOptions& o, std::vector<SuiteTask>& out) {
    out.push_back([=] { return centralizer_report(f, o.samples.value_or(50), sub_seed(o, 500), o.N); });
}

inline void lemma_max(const SuiteOptions& o, std::vector<SuiteTask>& out) {
    out.push_back([m = o.m.value_or(3), n = o.n.value_or(3)] {
        return check_maximization_lemma(12, static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n));
    });
}

}  // namespace suites

inline std::vector<SuiteTask> suite_tasks(const std::string& name, const SuiteOptions& o) {
    std::vector<SuiteTask> tasks;
    if (name == "all") {
        for (const auto& s : suite_names()) {
            auto more = suite_tasks(s, o);
            tasks.insert(tasks.end(), more.begin(), more.end());
        }
        return tasks;
    }
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
        throw PreconditionError("unknown suite '" + name + "'");
    if (name == "regions") {
        suites::regions(o, tasks);
    } else if (name == "lemma-max") {
        suites::lemma_max(o, tasks);
    } else {
        with_field(o.field, [&](const auto& f) {
            if (name == "degrees") suites::degrees(f, o, tasks);
            if (name == "qtop") suites::qtop(f, o, tasks);
            if (name == "strata") suites::strata(f, o, tasks);
            if (name == "theorem") suites::theorem(f, o, tasks);
            if (name == "certify") suites::certify(f, o, tasks);
            if (name == "centralizer") suites::centralizer(f, o, tasks);
        });
    }
    return tasks;
}

// Runs the checks on worker threads; results come back in check order.
inline std::vector<VerificationReport> run_suite(const std::string& name, const SuiteOptions& o) {
    auto tasks = suite_tasks(name, o);
    unsigned workers = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
    std::vector<VerificationReport> out(tasks.size());
    auto run = [&](std::size_t t) {
        Stopwatch sw;
        VerificationReport rep;
        try {
            rep = tasks[t]();
        } catch (const BudgetExceeded& e) {
            rep = VerificationReport("budget", o.field.name(), o.seed);
            rep.budget_exhausted = true;
            rep.details["budget"] = e.what();
        } catch (const Error& e) {
            rep = VerificationReport("error", o.field.name(), o.seed);
            rep.record_fail({"task " + std::to_string(t), "error", "completion", e.what()});
        }
        if (o.timing) rep.wall_time_ms = sw.elapsed_ms();
        out[t] = std::move(rep);
    };
    if (workers <= 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t) run(t);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t t = next++; t < tasks.size(); t = next++) run(t);
        });
    for (auto& th : pool) th.join();
    return out;
}

inline int exit_code(const std::vector<VerificationReport>& reports) {
    bool budget = false;
    for (const auto& r : reports) {
        if (r.status() == Status::fail) return 1;
        budget = budget || r.status() == Status::budget;
    }
    return budget ? 2 : 0;
}

}  // namespace tamecert
