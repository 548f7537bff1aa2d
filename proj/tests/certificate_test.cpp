#include <gtest/gtest.h>

#include <random>

#include "tamecert/certificate.hpp"

using namespace tamecert;

namespace {

using Q = RationalField;

template <class Field>
AlternatingWord<Field> alternating(std::vector<AffineMap<Field>> alphas, unsigned N) {
    AlternatingWord<Field> w;
    w.alphas = std::move(alphas);
    w.N = N;
    return w;
}

AffineMap<Q> shear(const Q& q) {
    // (x + y, y, z)
    typename AffineMap<Q>::Matrix m{{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}};
    return AffineMap<Q>(q, m, {0, 0, 0});
}

}  // namespace

TEST(Extension, IrreducibilityAgainstRootSearch) {
    // Degree 2 and 3 polynomials over F_7 are irreducible iff they have no root.
    PrimeField f(7);
    for (std::uint64_t a = 0; a < 7; ++a)
        for (std::uint64_t b = 0; b < 7; ++b)
            for (std::uint64_t c = 0; c < 7; ++c) {
                upoly::Poly m{c, b, a, 1};
                bool root = false;
                for (std::uint64_t x = 0; x < 7; ++x)
                    root = root || f.add(f.add(f.add(f.pow(x, 3), f.mul(a, f.mul(x, x))), f.mul(b, x)), c) == 0;
                EXPECT_EQ(upoly::is_irreducible(f, m), !root);
            }
}

TEST(Extension, FieldAxiomsOnSamples) {
    PrimeField f(2);
    auto ring = ExtensionField::with_size_at_least(f, 40, 1);
    EXPECT_EQ(ring.degree(), 40u);
    std::mt19937_64 rng(2);
    for (int s = 0; s < 50; ++s) {
        auto a = ring.random(rng), b = ring.random(rng), c = ring.random(rng);
        EXPECT_EQ(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c)));
        EXPECT_EQ(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)));
        EXPECT_EQ(ring.mul(a, ring.one()), a);
        // No zero divisors in a field.
        if (a != ring.zero() && b != ring.zero()) EXPECT_NE(ring.mul(a, b), ring.zero());
    }
    EXPECT_EQ(ExtensionField::with_size_at_least(PrimeField(101), 40).degree(), 7u);
    EXPECT_EQ(ExtensionField::with_size_at_least(PrimeField(2147483647), 40).degree(), 2u);
}

TEST(Normalize, AbsorbsInteriorCentralizer) {
    PrimeField f(7);
    std::mt19937_64 rng(4);
    auto a0 = random_affine(f, rng), a2 = random_affine(f, rng);
    auto c = AffineMap<PrimeField>::diagonal(f, 4, 4, 2);
    auto w = alternating<PrimeField>({a0, c, a2}, 3);
    auto n = normalize_word(w);
    ASSERT_EQ(n.r(), 0u);
    EXPECT_EQ(n.alphas[0], a0 * c * a2);
    auto pw = pointwise_compare(w.to_word(), n.to_word(), 100, 5);
    EXPECT_TRUE(pw.agree);
}

TEST(Normalize, ThetaSquaredIsIdentity) {
    Q q;
    auto id = AffineMap<Q>::identity(q);
    auto n = normalize_word(alternating<Q>({id, id, id}, 2));
    ASSERT_EQ(n.r(), 0u);
    EXPECT_TRUE(n.alphas[0].is_identity());
}

TEST(Normalize, NormalWordUnchanged) {
    Q q;
    auto id = AffineMap<Q>::identity(q);
    auto w = alternating<Q>({id, shear(q), id}, 3);
    auto n = normalize_word(w);
    EXPECT_EQ(n.alphas, w.alphas);
}

TEST(Normalize, PreservesMapOnRandomWords) {
    PrimeField f(101);
    std::mt19937_64 rng(8);
    for (int s = 0; s < 10; ++s) {
        std::vector<AffineMap<PrimeField>> alphas;
        for (int i = 0; i < 5; ++i)
            alphas.push_back(rng() % 2 ? random_affine_in(Stratum::a4, f, rng) : random_affine(f, rng));
        auto w = alternating(alphas, 2);
        EXPECT_TRUE(pointwise_compare(w.to_word(), normalize_word(w).to_word(), 100, rng()).agree);
    }
}

TEST(Certificate, StepwiseThetaAlone) {
    Q q;
    auto id = AffineMap<Q>::identity(q);
    auto cert = build_certificate(alternating<Q>({id, id}, 3), CertificateMode::stepwise);
    ASSERT_EQ(cert.trail.size(), 6u);
    ASSERT_TRUE(cert.params);
    EXPECT_EQ(*cert.params, RegionParams(1024, 0));
    EXPECT_TRUE(cert.pointwise.agree);
    EXPECT_EQ(cert.pointwise.checked, 100u);
}

TEST(Certificate, StepwiseWithInteriorAffine) {
    PrimeField f(101);
    std::mt19937_64 rng(12);
    for (auto s : {Stratum::a0_minus_a1, Stratum::a1_minus_a2, Stratum::a2_minus_a3, Stratum::a3_minus_a4}) {
        auto w = alternating<PrimeField>({random_affine(f, rng), random_affine_in(s, f, rng), random_affine(f, rng)}, 3);
        auto cert = build_certificate(w, CertificateMode::stepwise, {}, rng());
        EXPECT_TRUE(cert.pointwise.agree);
        EXPECT_EQ(cert.r, 2u);
    }
}

TEST(Certificate, StepwiseLargerN) {
    Q q;
    auto id = AffineMap<Q>::identity(q);
    auto cert = build_certificate(alternating<Q>({id, id}, 5), CertificateMode::stepwise);
    ASSERT_EQ(cert.trail.size(), 10u);
    EXPECT_EQ(*cert.params, RegionParams(1u << 18, 0));
    // Parameters grow fourfold per hop and leave the exponent range.
    EXPECT_THROW(build_certificate(alternating<Q>({id, shear(q), id}, 4), CertificateMode::stepwise),
                 BudgetExceeded);
}

TEST(Certificate, EagerSmall) {
    PrimeField f(101);
    auto id = AffineMap<PrimeField>::identity(f);
    auto cert = build_certificate(alternating<PrimeField>({id, id}, 1), CertificateMode::eager);
    ASSERT_TRUE(cert.witness);
    EXPECT_EQ(*cert.params, RegionParams(4, 0));
    EXPECT_TRUE(poly_in_star(*cert.witness, RegionKind::Pstar, *cert.params));
    // (y) pi beta pi beta^{-1} computed directly.
    auto direct = apply_word(Polynomial<PrimeField>::variable(f, 1), cert.rewritten);
    EXPECT_EQ(direct, *cert.witness);
}

TEST(Certificate, EagerHopCap) {
    Q q;
    auto id = AffineMap<Q>::identity(q);
    EXPECT_THROW(build_certificate(alternating<Q>({id, id}, 3), CertificateMode::eager), BudgetExceeded);
}

TEST(Certificate, AffineWordIsPrecondition) {
    Q q;
    auto id = AffineMap<Q>::identity(q);
    EXPECT_THROW(build_certificate(alternating<Q>({id, id, id}, 3), CertificateMode::stepwise), PreconditionError);
}

TEST(DegreeBound, Examples) {
    Q q;
    auto x = Polynomial<Q>::variable(q, 0), y = Polynomial<Q>::variable(q, 1), z = Polynomial<Q>::variable(q, 2);
    EXPECT_TRUE(excluded_by_degree_bound(Endomorphism<Q>(x + y * y, y, z)));
    EXPECT_FALSE(excluded_by_degree_bound(Endomorphism<Q>(x + pow(y, 6), y, z)));
    EXPECT_FALSE(excluded_by_degree_bound(Endomorphism<Q>(shear(q))));
    EXPECT_FALSE(excluded_by_degree_bound(beta(q)));
}

TEST(Centralizer, OrdersAndExclusion) {
    EXPECT_EQ(centralizer_report(PrimeField(7), 8, 1).details["order"], 6);
    EXPECT_EQ(centralizer_report(PrimeField(5), 8, 1).details["order"], 2);
    EXPECT_EQ(centralizer_report(PrimeField(2), 8, 1).details["order"], 1);
    auto rq = centralizer_report(Q{}, 8, 1);
    EXPECT_EQ(rq.details["order"], 2);
    EXPECT_TRUE(rq.ok()) << rq.to_json().dump();
    EXPECT_TRUE(centralizer_report(PrimeField(7), 20, 3).ok());
    EXPECT_TRUE(centralizer_report(PrimeField(2), 20, 3).ok());
}

TEST(Amalgam, Examples) {
    Q q;
    auto id = AffineMap<Q>::identity(q);
    AmalgamWord<Q> two{{id, id}, {shear(q)}, 3};
    EXPECT_TRUE(amalgam_nontriviality(two));
    AmalgamWord<Q> one{{id}, {}, 3};
    EXPECT_TRUE(amalgam_nontriviality(one));
    AmalgamWord<Q> empty{{}, {}, 3};
    EXPECT_THROW(amalgam_nontriviality(empty), PreconditionError);
    AmalgamWord<Q> bad{{id, id}, {id}, 3};
    EXPECT_THROW(amalgam_nontriviality(bad), PreconditionError);
}

TEST(Amalgam, RewriteDenotesSameMap) {
    PrimeField f(7);
    std::mt19937_64 rng(6);
    auto c1 = AffineMap<PrimeField>::diagonal(f, 4, 4, 2), c2 = AffineMap<PrimeField>::diagonal(f, 1, 1, 6);
    AmalgamWord<PrimeField> w{{c1, c2}, {random_affine(f, rng)}, 2};
    EXPECT_TRUE(pointwise_compare(w.to_word(), amalgam_to_alternating(w).to_word(), 100, 1).agree);
}
