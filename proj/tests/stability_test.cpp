#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tamecert/stability.hpp"

using namespace tamecert;

namespace {

using Q = RationalField;
using W = Word<Q>;

std::vector<Exponent> brute_argmax(std::uint32_t a, std::uint32_t b, std::uint32_t c, unsigned m, unsigned n) {
    std::vector<Exponent> best;
    std::uint64_t top = 0;
    for (const auto& v : oracle::brute_region(true, m, n)) {
        std::uint64_t val = std::uint64_t{a} * v.i + std::uint64_t{b} * v.j + std::uint64_t{c} * v.k;
        if (best.empty() || val > top) {
            top = val;
            best = {v};
        } else if (val == top) {
            best.push_back(v);
        }
    }
    return best;
}

AffineMap<Q> a2_map(const Q& q, long u, long b, long c, long d) {
    typename AffineMap<Q>::Matrix m{{{q.pow(q.from_int(u), 8), b, c}, {0, u * u, 0}, {0, 0, u}}};
    return AffineMap<Q>(q, m, {d, 0, 0});
}

}  // namespace

TEST(Maximization, AgreesWithBruteForce) {
    for (unsigned m = 1; m <= 2; ++m)
        for (unsigned n = 0; n <= 2; ++n)
            for (std::uint32_t a = 0; a <= 6; ++a)
                for (std::uint32_t b = 0; b <= 6; ++b)
                    for (std::uint32_t c = 0; c <= 6; ++c) {
                        if (a + b + c == 0) continue;
                        auto out = maximize_linear_form(LinearForm(a, b, c), RegionParams(m, n));
                        EXPECT_EQ(out.argmax, brute_argmax(a, b, c, m, n));
                    }
}

TEST(Maximization, CasesAreExclusive) {
    for (std::uint32_t a = 0; a <= 20; ++a)
        for (std::uint32_t b = 0; b <= 20; ++b)
            for (std::uint32_t c = 0; c <= 20; ++c)
                if (a + b + c) EXPECT_LE(linear_form_cases(LinearForm(a, b, c)).size(), 1u);
}

TEST(Maximization, CasesOneToFourHold) {
    for (std::uint32_t a = 0; a <= 10; ++a)
        for (std::uint32_t b = 0; b <= 10; ++b)
            for (std::uint32_t c = 0; c <= 10; ++c) {
                if (a + b + c == 0) continue;
                auto cases = linear_form_cases(LinearForm(a, b, c));
                if (cases.empty() || cases[0] == 5) continue;
                for (unsigned m = 1; m <= 3; ++m)
                    for (unsigned n = 0; n <= 3; ++n)
                        EXPECT_TRUE(maximize_linear_form(LinearForm(a, b, c), RegionParams(m, n)).matches)
                            << a << ' ' << b << ' ' << c << ' ' << m << ' ' << n;
            }
}

TEST(Maximization, CaseFiveWithPositiveB) {
    // (a, b, c) = (4c + 2b, b, c) with 2c > b > 0.
    for (std::uint32_t b = 1; b <= 4; ++b)
        for (std::uint32_t c = b / 2 + 1; c <= 5; ++c) {
            LinearForm f(4 * c + 2 * b, b, c);
            ASSERT_EQ(linear_form_cases(f), std::vector<int>{5});
            for (unsigned m = 1; m <= 3; ++m)
                for (unsigned n = 0; n <= 3; ++n) EXPECT_TRUE(maximize_linear_form(f, RegionParams(m, n)).matches);
        }
}

TEST(Maximization, CaseFiveFailsWithoutY) {
    // (4, 0, 1) is maximized on the whole face 4i + k = 4m + n.
    auto out = maximize_linear_form(LinearForm(4, 0, 1), RegionParams(1, 0));
    EXPECT_EQ(out.case_label, 5);
    EXPECT_FALSE(out.matches);
    EXPECT_EQ(out.argmax, brute_argmax(4, 0, 1, 1, 0));
    EXPECT_GT(out.argmax.size(), out.predicted.size());
}

TEST(Maximization, Budget) {
    EXPECT_THROW(maximize_linear_form(LinearForm(1, 1, 1), RegionParams(3, 3), 10), BudgetExceeded);
}

TEST(BetaShape, BetaAndInverse) {
    Q q;
    EXPECT_TRUE(is_beta_shaped(beta(q)));
    EXPECT_TRUE(is_beta_shaped(beta_inv(q)));
    EXPECT_FALSE(is_beta_shaped(pi(q)));
    EXPECT_FALSE(is_beta_shaped(compose(beta(q), beta(q))));
}

TEST(BetaShape, TableMatchesDirectDegrees) {
    Q q;
    auto b = beta(q);
    const auto& t = beta_shape_table();
    // Computed by hand from x + y^4 + 2y^3z^2 + y^2z^4, y + z^2, z.
    EXPECT_EQ(t.weighted[0][0], 4u);
    EXPECT_EQ(t.weighted[0][2], 8u);
    EXPECT_EQ(t.lex[0][2], (Exponent{0, 2, 4}));
    EXPECT_EQ(t.lex[1][2], (Exponent{0, 0, 2}));
    EXPECT_EQ(weighted_deg(b[1], WeightVector(8, 2, 1)).scalar(), 2u);
}

TEST(HopPrediction, PiBetaQuadruplesM) {
    Q q;
    auto pb = compose(pi(q), beta(q));
    for (unsigned m = 1; m <= 3; ++m)
        for (unsigned n = 0; n <= 3; ++n) {
            auto pred = predict_hop(pb, {RegionKind::Pstar, RegionParams(m, n)}, RegionKind::Pstar);
            ASSERT_TRUE(pred.certified) << pred.reason;
            EXPECT_EQ(pred.out->params, RegionParams(4 * m, n));
        }
}

TEST(HopPrediction, AgreesWithConcreteImages) {
    PrimeField f(101);
    std::mt19937_64 rng(3);
    std::vector<Endomorphism<PrimeField>> maps{compose(pi(f), beta(f)), compose(pi(f), beta_inv(f))};
    for (const auto& g : maps)
        for (unsigned m = 1; m <= 2; ++m)
            for (unsigned n = 0; n <= 2; ++n) {
                RegionParams p(m, n);
                auto pred = predict_hop(g, {RegionKind::Pstar, p}, RegionKind::Pstar);
                ASSERT_TRUE(pred.certified);
                auto s = random_star_element(RegionKind::Pstar, p, 0.5, f, rng());
                auto img = apply(s, g);
                auto inferred = infer_star_params(img, RegionKind::Pstar);
                ASSERT_TRUE(inferred);
                EXPECT_EQ(*inferred, pred.out->params);
            }
}

TEST(HopPrediction, IdentityAndSwap) {
    Q q;
    StarState in{RegionKind::Pstar, RegionParams(2, 1)};
    auto id = predict_hop(Endomorphism<Q>::identity(q), in, RegionKind::Pstar);
    ASSERT_TRUE(id.certified);
    EXPECT_EQ(*id.out, in);
    EXPECT_FALSE(predict_hop(pi(q), in, RegionKind::Pstar).certified);
}

TEST(InsideOut, MatchesLeftToRight) {
    Q q;
    auto a = a2_map(q, 2, 3, 5, 7);
    auto w = W::pi(q) + W::beta_inv(q) + W::affine(a) + W::beta(q) + W::pi(q) + W::beta(q);
    EXPECT_EQ(compose_inside_out(w, 2), to_endomorphism(w));
    EXPECT_EQ(hop_map(w), to_endomorphism(w));
}

TEST(QtoP, BetaAndInverse) {
    Q q;
    for (const auto& g : {beta(q), beta_inv(q)})
        for (unsigned m = 1; m <= 2; ++m)
            for (unsigned n = 0; n <= 2; ++n) {
                auto rep = check_QtoP(g, RegionParams(m, n), 3, 11);
                EXPECT_TRUE(rep.ok()) << rep.to_json().dump();
            }
}

TEST(QtoP, RejectsNonBetaShaped) {
    Q q;
    EXPECT_THROW(check_QtoP(pi(q), RegionParams(1, 0), 1, 0), PreconditionError);
}

TEST(StrataProposition, AllLevels) {
    PrimeField f(101);
    std::mt19937_64 rng(5);
    for (auto level : {StrataLevel::A0A1, StrataLevel::A1A2, StrataLevel::A2A3, StrataLevel::A3A4}) {
        for (int s = 0; s < 3; ++s) {
            auto a = random_affine_in(stratum_of(level), f, rng);
            auto rep = check_strata_proposition(level, a, RegionParams(1, 1), 3, rng());
            EXPECT_TRUE(rep.ok()) << rep.to_json().dump();
        }
    }
}

TEST(StrataProposition, WrongStratumIsPrecondition) {
    Q q;
    EXPECT_THROW(check_strata_proposition(StrataLevel::A1A2, AffineMap<Q>::swap_xy(q), RegionParams(1, 0), 1, 0),
                 PreconditionError);
}

TEST(Conjugation, ClosedFormsMatchComposition) {
    Q q;
    std::mt19937_64 rng(7);
    for (auto level : {StrataLevel::A1A2, StrataLevel::A2A3, StrataLevel::A3A4})
        for (int s = 0; s < 5; ++s) {
            auto a = random_affine_in(stratum_of(level), q, rng);
            auto rep = conjugation_formula_check(level, a);
            EXPECT_TRUE(rep.ok()) << rep.to_json().dump();
        }
}

TEST(Conjugation, A3Example) {
    Q q;
    auto a = a2_map(q, 2, 0, 5, 7);
    auto [target, got] = conjugation_pair(StrataLevel::A3A4, a);
    EXPECT_EQ(to_string(got), "(4*x, 256*y + 5*z + 7, 2*z)");
    EXPECT_EQ(target, got);
}

TEST(FifteenTriples, NonTriangularMapsMatchOne) {
    PrimeField f(101);
    std::mt19937_64 rng(9);
    for (int s = 0; s < 10; ++s) {
        auto a = random_affine_in(Stratum::a0_minus_a1, f, rng);
        EXPECT_TRUE(match_fifteen_triples(a).has_value()) << to_string(Endomorphism<PrimeField>(a));
    }
    EXPECT_EQ(fifteen_triples().size(), 15u);
}

TEST(Theorem, EachStratum) {
    PrimeField f(101);
    std::mt19937_64 rng(13);
    for (auto s : {Stratum::a0_minus_a1, Stratum::a1_minus_a2, Stratum::a2_minus_a3, Stratum::a3_minus_a4}) {
        auto a = random_affine_in(s, f, rng);
        auto rep = check_theorem_stability(a, RegionParams(1, 0), 2, 17);
        EXPECT_TRUE(rep.ok()) << rep.to_json().dump();
    }
}

TEST(Theorem, A4IsPrecondition) {
    Q q;
    EXPECT_THROW(check_theorem_stability(AffineMap<Q>::identity(q), RegionParams(1, 0), 1, 0), PreconditionError);
}

TEST(Theorem, RouteCoversTheWord) {
    Q q;
    std::mt19937_64 rng(21);
    for (auto s : {Stratum::a0_minus_a1, Stratum::a1_minus_a2, Stratum::a2_minus_a3, Stratum::a3_minus_a4}) {
        auto a = random_affine_in(s, q, rng);
        W joined(q);
        for (const auto& h : theorem_route(a)) joined += h.word;
        EXPECT_EQ(to_string(joined), to_string(word_free_reduce(theorem_word(a))));
    }
}

TEST(PiBetaChain, QuadruplesEachHop) {
    PrimeField f(101);
    auto rep = check_pi_beta_chain(f, 3);
    EXPECT_TRUE(rep.ok()) << rep.to_json().dump();
}
