#include <gtest/gtest.h>

#include <random>

#include "sghh/scalar.hpp"

using namespace sghh;

TEST(Scalar, PrimeFieldExamples) {
    auto F7 = FieldSpec::prime(7);
    EXPECT_EQ(F7.from_int(3) * F7.from_int(4), F7.from_int(5));
    EXPECT_EQ(F7.from_int(2) / F7.from_int(5), F7.from_int(6));
    EXPECT_EQ(F7.from_int(-1), F7.from_int(6));
    EXPECT_TRUE((F7.from_int(3) + F7.from_int(4)).is_zero());
}

TEST(Scalar, RationalExamples) {
    auto Q = FieldSpec::rational();
    EXPECT_TRUE((Q.one() - Q.one()).is_zero());
    EXPECT_EQ(Q.parse("2/4"), Q.parse("1/2"));
    EXPECT_EQ(Q.parse("-3/7") * Q.parse("7/3"), -Q.one());
    EXPECT_EQ(Q.parse("1/3").str(), "1/3");
}

TEST(Scalar, DivisionByZeroThrows) {
    EXPECT_THROW(FieldSpec::prime(101).zero().inv(), DivisionByZero);
    EXPECT_THROW(FieldSpec::rational().zero().inv(), DivisionByZero);
}

TEST(Scalar, FieldMismatchThrows) {
    EXPECT_THROW(FieldSpec::prime(7).one() + FieldSpec::prime(11).one(), FieldMismatch);
    EXPECT_THROW(FieldSpec::prime(7).one() * FieldSpec::rational().one(), FieldMismatch);
}

TEST(Scalar, NonPrimeRejected) {
    EXPECT_THROW(FieldSpec::prime(100), InvalidParameter);
    EXPECT_THROW(FieldSpec::prime(1), InvalidParameter);
}

TEST(Scalar, UnboundZeroAdopts) {
    Scalar z;
    auto F = FieldSpec::prime(13);
    Scalar s = z + F.from_int(5);
    EXPECT_EQ(s, F.from_int(5));
    EXPECT_EQ(s.field(), F);
}

TEST(Scalar, ExhaustiveInversesSmallPrimes) {
    for (std::uint64_t p = 2; p <= 101; ++p) {
        if (!is_prime(p)) continue;
        auto F = FieldSpec::prime(p);
        for (std::uint64_t a = 1; a < p; ++a) ASSERT_TRUE((F.from_int(a) * F.from_int(a).inv()).is_one()) << p << " " << a;
    }
}

template <class Gen>
void field_axioms(const FieldSpec& F, Gen gen) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 10000; ++t) {
        Scalar a = gen(rng), b = gen(rng), c = gen(rng);
        ASSERT_EQ(a + b, b + a);
        ASSERT_EQ(a * b, b * a);
        ASSERT_EQ((a + b) + c, a + (b + c));
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_TRUE((a - a).is_zero());
        ASSERT_EQ(a * F.one(), a);
        if (!b.is_zero()) ASSERT_EQ(a / b * b, a);
    }
}

TEST(Scalar, FieldAxiomsF101) {
    auto F = FieldSpec::prime(101);
    field_axioms(F, [&](std::mt19937_64& r) { return F.from_int(std::uniform_int_distribution<long>(0, 100)(r)); });
}

TEST(Scalar, FieldAxiomsQ) {
    auto Q = FieldSpec::rational();
    field_axioms(Q, [&](std::mt19937_64& r) {
        std::uniform_int_distribution<long> n(-20, 20), d(1, 9);
        return Q.from_int(n(r)) / Q.from_int(d(r));
    });
}
