#include <gtest/gtest.h>

#include <random>

#include "tamecert/strata.hpp"

using namespace tamecert;

namespace {

using Q = RationalField;

AffineMap<Q> tri(const Q& q, std::array<long, 9> c) {
    typename AffineMap<Q>::Matrix m{{{c[0], c[1], c[2]}, {0, c[4], c[5]}, {0, 0, c[7]}}};
    return AffineMap<Q>(q, m, {c[3], c[6], c[8]});
}

}  // namespace

TEST(Strata, Examples) {
    Q q;
    EXPECT_EQ(stratum_classify(AffineMap<Q>::swap_xy(q)).stratum, Stratum::a0_minus_a1);
    EXPECT_EQ(stratum_classify(tri(q, {1, 2, 3, 1, 4, 5, 6, 7, 8})).stratum, Stratum::a1_minus_a2);
    PrimeField f7(7);
    auto a = AffineMap<PrimeField>::diagonal(f7, 4, 4, 2);
    auto label = stratum_classify(a);
    EXPECT_EQ(label.stratum, Stratum::a4);
    EXPECT_EQ(*label.u, 2u);
    EXPECT_EQ(stratum_classify(tri(q, {1, 1, 0, 0, 1, 0, 0, 1, 0})).stratum, Stratum::a2_minus_a3);
    EXPECT_EQ(stratum_classify(tri(q, {1, 0, 1, 0, 1, 0, 0, 1, 0})).stratum, Stratum::a3_minus_a4);
    EXPECT_EQ(stratum_classify(AffineMap<Q>::identity(q)).stratum, Stratum::a4);
    EXPECT_EQ(stratum_classify(Endomorphism<Q>(beta(q))).stratum, Stratum::not_affine);
}

TEST(Strata, A2NeedsEighthPower) {
    Q q;
    // u = 2: (256x + y, 4y, 2z) is in A2, (255x + y, 4y, 2z) is not.
    EXPECT_EQ(stratum_classify(tri(q, {256, 1, 0, 0, 4, 0, 0, 2, 0})).stratum, Stratum::a2_minus_a3);
    EXPECT_EQ(stratum_classify(tri(q, {255, 1, 0, 0, 4, 0, 0, 2, 0})).stratum, Stratum::a1_minus_a2);
    // u = 2 is not a sixth root of unity over Q, so (4x, 4y, 2z) is in A3 but not A4.
    EXPECT_EQ(stratum_classify(tri(q, {256, 0, 0, 0, 4, 0, 0, 2, 0})).stratum, Stratum::a3_minus_a4);
    EXPECT_EQ(stratum_classify(tri(q, {1, 0, 0, 0, 1, 0, 0, -1, 0})).stratum, Stratum::a4);
}

TEST(Strata, ReconstructionReproducesInput) {
    PrimeField f(7);
    std::mt19937_64 rng(3);
    int seen[6] = {};
    for (int t = 0; t < 4000; ++t) {
        typename AffineMap<PrimeField>::Matrix m;
        typename AffineMap<PrimeField>::Vector v;
        bool triangular = t % 2 == 0;
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] = (triangular && c < r) ? 0 : (rng() % 3 == 0 ? 0 : f.random(rng));
            v[r] = rng() % 2 ? 0 : f.random(rng);
        }
        if (t % 4 == 0) {
            std::uint64_t u = 1 + rng() % 6;
            m[0][0] = f.pow(u, 8);
            m[1][1] = f.pow(u, 2);
            m[2][2] = u;
            m[1][2] = v[1] = v[2] = 0;
            if (t % 8 == 0) m[0][1] = 0;
            if (t % 16 == 0) m[0][2] = v[0] = 0;
        }
        try {
            AffineMap<PrimeField> a(f, m, v);
            auto label = stratum_classify(a);
            ++seen[static_cast<int>(label.stratum)];
            if (label.stratum != Stratum::a0_minus_a1) {
                auto back = label.reconstruct(f);
                ASSERT_TRUE(back.has_value());
                EXPECT_EQ(*back, a);
            }
        } catch (const NotInvertible&) {
        }
    }
    for (int s = 0; s < 5; ++s) EXPECT_GT(seen[s], 0) << to_string(static_cast<Stratum>(s));
}

TEST(Strata, SixthRootsMatchExhaustiveSearch) {
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 31u, 101u}) {
        PrimeField f(p);
        std::vector<std::uint64_t> expected;
        for (std::uint64_t u = 1; u < p; ++u)
            if (f.pow(u, 6) == 1) expected.push_back(u);
        EXPECT_EQ(sixth_roots(f), expected) << p;
    }
    EXPECT_EQ(sixth_roots(PrimeField(7)).size(), 6u);
    EXPECT_EQ(sixth_roots(PrimeField(5)), (std::vector<std::uint64_t>{1, 4}));
    EXPECT_EQ(sixth_roots(Q{}), (std::vector<mpq_class>{1, -1}));
}

template <class Field>
void check_centralizer_commutes(const Field& f) {
    auto b = beta(f), p = pi(f);
    for (const auto& a : centralizer_elements(f)) {
        Endomorphism<Field> e(a);
        EXPECT_EQ(compose(e, b), compose(b, e));
        EXPECT_EQ(compose(e, p), compose(p, e));
        EXPECT_EQ(stratum_classify(a).stratum, Stratum::a4);
    }
}

TEST(Strata, A4CommutesWithGenerators) {
    check_centralizer_commutes(Q{});
    check_centralizer_commutes(PrimeField(7));
    check_centralizer_commutes(PrimeField(13));
    check_centralizer_commutes(PrimeField(2));
}
