#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tamecert/degree.hpp"

using namespace tamecert;

namespace {

Polynomial<RationalField> beta_x() { return beta(RationalField{})[0]; }

Exponent ev(std::uint32_t i, std::uint32_t j, std::uint32_t k) { return {i, j, k}; }

}  // namespace

TEST(Degree, ExampleValuesForBetaFirstComponent) {
    auto p = beta_x();
    EXPECT_EQ(weighted_deg(p, {4, 1, 0}).scalar(), 4u);
    EXPECT_EQ(weighted_deg(p, {4, 0, 1}).scalar(), 4u);
    EXPECT_EQ(weighted_deg(p, {8, 2, 1}).scalar(), 8u);
    EXPECT_EQ(ldeg(p, 1).vector(), ev(1, 0, 0));
    EXPECT_EQ(ldeg(p, 2).vector(), ev(0, 4, 0));
    EXPECT_EQ(ldeg(p, 3).vector(), ev(0, 2, 4));
}

TEST(Degree, ZeroAndConstants) {
    RationalField q;
    Polynomial<RationalField> zero(q);
    EXPECT_TRUE(weighted_deg(zero, {1, 2, 3}).is_minus_infinity());
    EXPECT_TRUE(ldeg(zero, 2).is_minus_infinity());
    auto seven = Polynomial<RationalField>::constant(q, q.from_int(7));
    EXPECT_EQ(ldeg(seven, 1).vector(), ev(0, 0, 0));
    EXPECT_LT(ldeg(zero, 1), ldeg(seven, 1));
    EXPECT_THROW(WeightVector(0, 0, 0), PreconditionError);
}

TEST(Degree, CyclicLexCompare) {
    EXPECT_EQ(cyclic_lex_compare(ev(0, 1, 0), ev(0, 0, 5), 2), std::strong_ordering::greater);
    EXPECT_EQ(cyclic_lex_compare(ev(0, 4, 0), ev(0, 2, 4), 3), std::strong_ordering::less);
    EXPECT_EQ(cyclic_lex_compare(ev(1, 2, 3), ev(1, 2, 3), 1), std::strong_ordering::equal);
    EXPECT_EQ(cyclic_lex_compare(ev(5, 0, 0), ev(0, 0, 1), 3), std::strong_ordering::less);
    EXPECT_EQ(cyclic_lex_compare(ev(1, 0, 0), ev(0, 9, 9), 1), std::strong_ordering::greater);
}

TEST(Degree, MinusInfinityAbsorbs) {
    auto minf = DegreeValue::minus_infinity(0);
    EXPECT_TRUE((minf + DegreeValue::weighted(3)).is_minus_infinity());
    EXPECT_LT(minf, DegreeValue::weighted(0));
}

TEST(Degree, BetaLexicographicFamily) {
    for (const auto& d : registered_degree_functions()) EXPECT_TRUE(check_beta_lexicographic(d)) << d.name();
    EXPECT_FALSE(check_beta_lexicographic(DegreeFunction::weighted(1, 0, 0)));
    EXPECT_TRUE(check_beta_lexicographic(DegreeFunction::weighted(0, 0, 1)));
    EXPECT_TRUE(check_beta_lexicographic(DegreeFunction::lex(3), PrimeField(101)));
}

TEST(Degree, BetaShapedTable) {
    // Rows X, Y, Z; columns deg(4,1,0), deg(4,0,1), deg(8,2,1), ldeg1, ldeg2, ldeg3.
    const std::uint64_t weights[3][3] = {{4, 4, 8}, {1, 2, 2}, {0, 1, 1}};
    const Exponent lex[3][3] = {{ev(1, 0, 0), ev(0, 4, 0), ev(0, 2, 4)},
                                {ev(0, 1, 0), ev(0, 1, 0), ev(0, 0, 2)},
                                {ev(0, 0, 1), ev(0, 0, 1), ev(0, 0, 1)}};
    RationalField q;
    for (const auto& gamma : {beta(q), beta_inv(q)})
        for (int r = 0; r < 3; ++r) {
            EXPECT_EQ(weighted_deg(gamma[r], {4, 1, 0}).scalar(), weights[r][0]);
            EXPECT_EQ(weighted_deg(gamma[r], {4, 0, 1}).scalar(), weights[r][1]);
            EXPECT_EQ(weighted_deg(gamma[r], {8, 2, 1}).scalar(), weights[r][2]);
            for (int i = 1; i <= 3; ++i) EXPECT_EQ(ldeg(gamma[r], i).vector(), lex[r][i - 1]);
        }
}

template <class Field>
void check_axioms(const Field& f, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (const auto& deg : registered_degree_functions())
        for (int t = 0; t < 40; ++t) {
            auto a = oracle::random_poly(f, rng, 1 + t % 6, 4);
            auto b = oracle::random_poly(f, rng, 1 + t % 5, 4);
            EXPECT_EQ(deg(a * b), deg(a) + deg(b)) << deg.name();
            auto s = a + b;
            auto bound = std::max(deg(a), deg(b));
            EXPECT_LE(deg(s), bound) << deg.name();
            if (deg(a) != deg(b)) EXPECT_EQ(deg(s), bound) << deg.name();
        }
}

TEST(Degree, AxiomsOverRationals) { check_axioms(RationalField{}, 1); }
TEST(Degree, AxiomsOverF2) { check_axioms(PrimeField(2), 2); }
TEST(Degree, AxiomsOverF101) { check_axioms(PrimeField(101), 3); }

// deg((x^v)gamma) <= m on the support forces deg((P)gamma) <= m, with
// equality when a single support point attains m.
TEST(Degree, ImageDegreeLemma) {
    RationalField q;
    std::mt19937_64 rng(9);
    std::vector<Endomorphism<RationalField>> gammas{beta(q), beta_inv(q), pi(q)};
    for (const auto& deg : registered_degree_functions())
        for (int t = 0; t < 30; ++t) {
            const auto& gamma = gammas[t % 3];
            auto p = oracle::random_poly(q, rng, 1 + t % 5, 3);
            auto comp = component_degrees(gamma, deg);
            DegreeValue best = deg.minus_infinity();
            int attained = 0;
            for (const auto& term : p.terms()) {
                auto d = monomial_image_degree(comp, term.exponent);
                auto direct = deg(apply(Polynomial<RationalField>::monomial(q, term.exponent, q.one()), gamma));
                EXPECT_EQ(d, direct);
                if (d > best) {
                    best = d;
                    attained = 1;
                } else if (d == best) {
                    ++attained;
                }
            }
            auto image = deg(apply(p, gamma));
            EXPECT_LE(image, best);
            if (attained == 1) EXPECT_EQ(image, best);
        }
}
