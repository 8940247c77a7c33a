#include <gtest/gtest.h>

#include <random>

#include "qbound/quadfield.hpp"
#include "support.hpp"

using namespace qbound;

namespace {

QuadNum random_element(std::mt19937_64& rng, long d)
{
    std::uniform_int_distribution<long> num(-30, 30), den(1, 12);
    return QuadNum(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), Integer(d));
}

} // namespace

TEST(QuadField, SquarefreeSplitExtractsSquares)
{
    auto s = squarefree_split(Integer(72));
    EXPECT_EQ(s.squarefree, 2);
    EXPECT_EQ(s.factor, 6);
    QuadNum x = make_quadnum(Rational(0), Rational(1), Integer(12));
    EXPECT_EQ(x.radicand(), 3);
    EXPECT_EQ(x.b(), 2);
}

TEST(QuadField, RingAxiomsHoldExactly)
{
    std::mt19937_64 rng(11);
    for (long d : {2L, 3L, 5L, 7L, 13L, 30L}) {
        for (int i = 0; i < 100; ++i) {
            QuadNum x = random_element(rng, d), y = random_element(rng, d), z = random_element(rng, d);
            EXPECT_EQ(x + y, y + x);
            EXPECT_EQ(x * y, y * x);
            EXPECT_EQ((x + y) + z, x + (y + z));
            EXPECT_EQ((x * y) * z, x * (y * z));
            EXPECT_EQ(x * (y + z), x * y + x * z);
            EXPECT_EQ((x * y).norm(), x.norm() * y.norm());
            EXPECT_EQ((x * y).conjugate(), x.conjugate() * y.conjugate());
            if (!(y == QuadNum::rational(0, d))) {
                EXPECT_EQ((x / y) * y, x);
            }
        }
    }
}

TEST(QuadField, MixedFieldsAreRejected)
{
    QuadNum a(Rational(1), Rational(1), Integer(2));
    QuadNum b(Rational(1), Rational(1), Integer(3));
    EXPECT_THROW(a + b, Error);
    EXPECT_THROW(a * b, Error);
}

TEST(QuadField, SignAgreesWithEnclosure)
{
    std::mt19937_64 rng(12);
    for (int i = 0; i < 500; ++i) {
        QuadNum x = random_element(rng, 7);
        Interval e = enclose(x, 128);
        int s = sign(x);
        if (s > 0) {
            EXPECT_GT(mpfr_sgn(e.lo()), 0);
        }
        else if (s < 0)
            EXPECT_LT(mpfr_sgn(e.hi()), 0);
        else
            EXPECT_TRUE(e.contains_zero());
    }
}

TEST(QuadField, FloorIsExact)
{
    QuadNum phi(Rational(1, 2), Rational(1, 2), Integer(5));
    EXPECT_EQ(floor(phi), 1);
    EXPECT_EQ(floor(-phi), -2);
    EXPECT_EQ(floor(pow(phi, 20)), 15126); // L_20 - 1
    QuadNum r7(Rational(0), Rational(1), Integer(7));
    EXPECT_EQ(floor(r7 * Rational(1000)), 2645);
}

TEST(QuadField, EnclosuresNestAcrossPrecisions)
{
    QuadNum x(Rational(3, 7), Rational(-5, 11), Integer(13));
    Interval coarse = enclose(x, 64);
    Interval fine = enclose(x, 256);
    EXPECT_LE(mpfr_cmp(coarse.lo(), fine.lo()), 0);
    EXPECT_GE(mpfr_cmp(coarse.hi(), fine.hi()), 0);
}

TEST(QuadField, DegenerateInputIsFlagged)
{
    QuadNum x = make_quadnum(Rational(1), Rational(2), Integer(9));
    EXPECT_TRUE(x.degenerate());
    EXPECT_EQ(x.a(), 7);
}
