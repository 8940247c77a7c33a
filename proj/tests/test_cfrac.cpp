#include <gtest/gtest.h>

#include "qbound/cfrac.hpp"
#include "qbound/numeration.hpp"
#include "support.hpp"

using namespace qbound;
using testsupport::AlphaSpec;

TEST(ContinuedFraction, SqrtTwo)
{
    ContinuedFraction cf = expand(make_quadnum(Rational(0), Rational(1), Integer(2)));
    EXPECT_EQ(cf.a0, 1);
    EXPECT_TRUE(cf.preperiod.empty());
    ASSERT_EQ(cf.period.size(), 1u);
    EXPECT_EQ(cf.period[0], 2);
    EXPECT_EQ(cf.r(), 1u);
}

TEST(ContinuedFraction, SqrtSevenPeriod)
{
    ContinuedFraction cf = expand(make_quadnum(Rational(0), Rational(1), Integer(7)));
    EXPECT_EQ(cf.a0, 2);
    std::vector<Integer> want{1, 1, 1, 4};
    EXPECT_EQ(cf.period, want);
}

TEST(ContinuedFraction, RationalInputIsRejected)
{
    EXPECT_THROW(expand(QuadNum::rational(Rational(3, 4), Integer(5))), Error);
}

TEST(ContinuedFraction, MatchesClassicalAlgorithmOnRandomInputs)
{
    for (const AlphaSpec& a : testsupport::fixed_alphas(99, 60)) {
        ContinuedFraction got = expand(testsupport::to_quad(a));
        ContinuedFraction want = testsupport::expansion_oracle(a);
        EXPECT_EQ(got, want) << a.p << " " << a.q << " " << a.r << " " << a.D;
    }
}

TEST(ContinuedFraction, ExpansionIsMinimal)
{
    for (const AlphaSpec& a : testsupport::fixed_alphas(5, 40)) {
        ContinuedFraction cf = expand(testsupport::to_quad(a));
        const std::size_t s = cf.s();
        for (std::size_t p = 1; p < s; ++p) {
            if (s % p)
                continue;
            bool same = true;
            for (std::size_t i = 0; i < s; ++i)
                same = same && cf.period[i] == cf.period[(i + p) % s];
            EXPECT_FALSE(same);
        }
        if (!cf.preperiod.empty()) {
            EXPECT_NE(cf.preperiod.back(), cf.period.back());
        }
    }
}

TEST(ContinuedFraction, ConvergentsMatchMatrixProduct)
{
    for (const AlphaSpec& a : testsupport::fixed_alphas(6, 20)) {
        ContinuedFraction cf = expand(testsupport::to_quad(a));
        auto q = convergents(cf, 80).q;
        EXPECT_EQ(q, testsupport::denominators_oracle(testsupport::quotient_stream(cf, 80), 80));
        ConvergentSequence seq(cf);
        EXPECT_EQ(seq[80], q[80]);
        EXPECT_EQ(seq[3], q[3]);
    }
}

TEST(ContinuedFraction, GoldenDenominatorsAreFibonacci)
{
    ContinuedFraction cf = expand(make_quadnum(Rational(-1, 2), Rational(1, 2), Integer(5)));
    EXPECT_EQ(cf.a0, 0);
    auto q = convergents(cf, 60).q;
    for (std::size_t i = 0; i <= 60; ++i) {
        EXPECT_EQ(q[i], fibonacci(i + 1));
    }
}

TEST(Binet, GoldenConstants)
{
    ContinuedFraction cf = expand(make_quadnum(Rational(-1, 2), Rational(1, 2), Integer(5)));
    BinetData bd = binet_data(cf, 128, Integer(5));
    EXPECT_EQ(bd.t_alpha, 1);
    EXPECT_EQ(bd.s, 1u);
    EXPECT_EQ(bd.period_sign, -1);
    EXPECT_EQ(bd.theta1, QuadNum(Rational(1, 2), Rational(1, 2), Integer(5)));
    EXPECT_EQ(bd.c3.hi_string(5), "1.34165e+00");
}

TEST(Binet, SqrtSevenTrace)
{
    QuadNum alpha = make_quadnum(Rational(0), Rational(1), Integer(7));
    BinetData bd = binet_data(expand(alpha), 128, alpha.radicand());
    EXPECT_EQ(bd.t_alpha, 16);
    EXPECT_EQ(bd.s, 4u);
    EXPECT_EQ(bd.period_sign, 1);
    EXPECT_EQ(bd.theta1, QuadNum(Rational(8), Rational(3), Integer(7)));
}

TEST(Binet, ThetaRootsAreConjugateUnits)
{
    for (const AlphaSpec& a : testsupport::fixed_alphas()) {
        QuadNum alpha = testsupport::to_quad(a);
        BinetData bd = binet_data(expand(alpha), 128, alpha.radicand());
        QuadNum one = QuadNum::rational(1, bd.delta);
        EXPECT_EQ(bd.theta1 * bd.theta2, one * Rational(bd.period_sign));
        EXPECT_EQ(bd.theta1 + bd.theta2, one * Rational(bd.t_alpha));
        EXPECT_EQ(bd.delta, alpha.radicand());
    }
}

TEST(Binet, ShiftedRecurrenceOnRandomInputs)
{
    for (const AlphaSpec& a : testsupport::fixed_alphas()) {
        QuadNum alpha = testsupport::to_quad(a);
        ContinuedFraction cf = expand(alpha);
        BinetData bd = binet_data(cf, 128, alpha.radicand());
        EXPECT_TRUE(verify_shifted_recurrence(cf, bd, cf.r() + 2 * cf.s() + 200));
    }
}

TEST(Binet, NonMinimalPeriodStillSatisfiesRecurrence)
{
    ContinuedFraction cf{Integer(1), {}, {Integer(1), Integer(1)}};
    BinetData bd = binet_data(cf, 128);
    EXPECT_EQ(bd.t_alpha, 3);
    EXPECT_TRUE(verify_shifted_recurrence(cf, bd, 100));
}

TEST(Binet, SubsequenceIndex)
{
    QuadNum alpha = make_quadnum(Rational(0), Rational(1), Integer(7));
    BinetData bd = binet_data(expand(alpha), 128, alpha.radicand());
    EXPECT_EQ(subsequence_index(bd, 2, 3), 2u + 1u + 4u * 3u);
}
