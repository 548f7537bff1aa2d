#include <gtest/gtest.h>

#include <random>

#include "tamecert/field.hpp"

using namespace tamecert;

TEST(RationalField, ArithmeticIsExact) {
    RationalField q;
    auto half = q.from_fraction(1, 2);
    auto third = q.from_fraction(-2, -6);
    EXPECT_EQ(q.to_string(q.add(half, third)), "5/6");
    EXPECT_EQ(q.to_string(q.inv(q.from_int(-4))), "-1/4");
    EXPECT_EQ(q.characteristic(), 0u);
    EXPECT_THROW(q.inv(q.zero()), NotInvertible);
    EXPECT_THROW(q.from_fraction(1, 0), NotInvertible);
}

TEST(PrimeField, RejectsComposite) {
    EXPECT_THROW(PrimeField(15), PreconditionError);
    EXPECT_THROW(PrimeField(1), PreconditionError);
    EXPECT_NO_THROW(PrimeField(4294967291ull));
}

TEST(PrimeField, InverseAgreesWithExhaustiveSearch) {
    PrimeField f(101);
    for (std::uint64_t a = 1; a < 101; ++a) {
        std::uint64_t found = 0;
        for (std::uint64_t b = 1; b < 101; ++b)
            if ((a * b) % 101 == 1) found = b;
        EXPECT_EQ(f.inv(a), found);
    }
}

TEST(PrimeField, LargeModulusProductsDoNotOverflow) {
    PrimeField f(4294967291ull);
    auto a = f.from_int(-1);
    EXPECT_EQ(f.mul(a, a), 1u);
    EXPECT_EQ(f.to_string(a), "-1");
}

TEST(PrimeField, FractionsNeedInvertibleDenominator) {
    PrimeField f2(2);
    EXPECT_THROW(f2.from_fraction(1, 2), NotInvertible);
    PrimeField f7(7);
    EXPECT_EQ(f7.from_fraction(1, 2), 4u);
    EXPECT_EQ(f7.from_int(-10), 4u);
}

TEST(FieldSpec, ParsesBothKinds) {
    EXPECT_EQ(FieldSpec::parse("q").name(), "q");
    EXPECT_EQ(FieldSpec::parse("fp=101").name(), "fp=101");
    EXPECT_THROW(FieldSpec::parse("fp=100"), PreconditionError);
    EXPECT_THROW(FieldSpec::parse("z"), PreconditionError);
    auto chars = with_field(FieldSpec::parse("fp=7"), [](const auto& f) { return f.characteristic(); });
    EXPECT_EQ(chars, 7u);
}

TEST(Field, RandomNonzeroIsNonzero) {
    std::mt19937_64 rng(3);
    PrimeField f(2);
    RationalField q;
    for (int t = 0; t < 200; ++t) {
        EXPECT_FALSE(f.is_zero(f.random_nonzero(rng)));
        EXPECT_FALSE(q.is_zero(q.random_nonzero(rng)));
    }
}
