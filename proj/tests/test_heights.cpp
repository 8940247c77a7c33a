#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qbound/cfrac.hpp"
#include "qbound/heights.hpp"
#include "support.hpp"

using namespace qbound;

namespace {

long double mahler_height(const QuadNum& x)
{
    MinimalPolynomial mp = minimal_polynomial(x);
    long double sd = std::sqrt(static_cast<long double>(x.radicand().get_d()));
    long double v1 = x.a().get_d() + x.b().get_d() * sd;
    long double v2 = x.a().get_d() - x.b().get_d() * sd;
    return 0.5L * std::log(static_cast<long double>(mp.d0.get_d()) * std::max(1.0L, std::fabs(v1)) *
                           std::max(1.0L, std::fabs(v2)));
}

double mid(const Interval& x) { return 0.5 * (mpfr_get_d(x.lo(), MPFR_RNDN) + mpfr_get_d(x.hi(), MPFR_RNDN)); }

QuadNum random_quad(std::mt19937_64& rng, long d)
{
    std::uniform_int_distribution<long> num(-40, 40), den(1, 9);
    long b = 0;
    while (b == 0)
        b = num(rng);
    return QuadNum(Rational(num(rng), den(rng)), Rational(b, den(rng)), Integer(d));
}

} // namespace

TEST(Heights, KnownValues)
{
    QuadNum phi(Rational(1, 2), Rational(1, 2), Integer(5));
    QuadNum r5(Rational(0), Rational(1), Integer(5));
    EXPECT_EQ(height_quadratic(phi).value.lo_string(8), "2.40605912e-01");
    EXPECT_EQ(height_quadratic(r5).value.lo_string(8), "8.04718956e-01");
    EXPECT_EQ(height_rational(Rational(-7, 3)).value.lo_string(6), "1.945910e+00");
    EXPECT_TRUE(height_rational(Rational(1)).value.is_point());
}

TEST(Heights, MinimalPolynomialIsPrimitive)
{
    MinimalPolynomial mp = minimal_polynomial(QuadNum(Rational(1, 2), Rational(1, 2), Integer(5)));
    EXPECT_EQ(mp.d0, 1);
    EXPECT_EQ(mp.d1, -1);
    EXPECT_EQ(mp.d2, -1);
    MinimalPolynomial mq = minimal_polynomial(QuadNum(Rational(2, 3), Rational(1, 6), Integer(7)));
    Integer g = gcd(gcd(mq.d0, mq.d1), mq.d2);
    EXPECT_EQ(g, 1);
    EXPECT_EQ(mq.d0, 12); // 12 X^2 - 16 X + 3
    EXPECT_EQ(mq.d1, -16);
    EXPECT_EQ(mq.d2, 3);
}

TEST(Heights, MatchesFloatingMahlerMeasure)
{
    std::mt19937_64 rng(101);
    for (long d : {2L, 3L, 5L, 6L, 7L, 11L}) {
        for (int i = 0; i < 100; ++i) {
            QuadNum x = random_quad(rng, d);
            double h = mid(height_quadratic(x).value);
            EXPECT_NEAR(h, static_cast<double>(mahler_height(x)), 1e-9 * std::max(1.0, h));
        }
    }
}

TEST(Heights, PowerAndProductRules)
{
    std::mt19937_64 rng(102);
    for (int i = 0; i < 200; ++i) {
        QuadNum x = random_quad(rng, 13), y = random_quad(rng, 13);
        HeightBound hx = height_quadratic(x), hy = height_quadratic(y);
        Interval hx3 = height_quadratic(pow(x, 3)).value;
        Interval three = height_power(hx, -3).value;
        EXPECT_FALSE(certainly_lt(hx3, three));
        EXPECT_FALSE(certainly_lt(three, hx3));
        // Equality is attainable, so only a certified violation counts.
        QuadNum xy = x * y;
        if (!xy.degenerate()) {
            EXPECT_FALSE(certainly_lt(height_combine(hx, hy).value, height_quadratic(xy).value));
        }
        QuadNum q = x / y;
        if (!q.degenerate()) {
            EXPECT_FALSE(certainly_lt(height_combine(hx, hy, HeightOp::quotient).value,
                                      height_quadratic(q).value));
        }
    }
}

TEST(Heights, Delta3BoundsDominateTrueHeight)
{
    std::mt19937_64 rng(103);
    for (const auto& a : testsupport::fixed_alphas(7, 12)) {
        QuadNum alpha = testsupport::to_quad(a);
        BinetData bd = binet_data(expand(alpha), 128, alpha.radicand());
        std::uniform_int_distribution<std::size_t> wd(1, 3), dd(1, 3), gd(1, 12), jd(0, bd.s - 1);
        QuadNum inv = QuadNum::rational(1, bd.delta) / bd.theta1;
        for (int t = 0; t < 10; ++t) {
            std::size_t w = wd(rng);
            std::vector<std::size_t> d(w), gaps(w), res(w);
            gaps[0] = 0;
            for (std::size_t i = 0; i < w; ++i) {
                d[i] = dd(rng);
                res[i] = jd(rng);
                if (i > 0)
                    gaps[i] = gaps[i - 1] + gd(rng);
            }
            QuadNum delta3 = QuadNum::rational(0, bd.delta);
            for (std::size_t i = 0; i < w; ++i)
                delta3 += bd.c1[res[i]] * pow(inv, gaps[i]) * Rational(static_cast<long>(d[i]));
            Interval h = height_quadratic(delta3).value;
            Delta3Bound b = delta3_height_bound(w, d, gaps, bd, res);
            EXPECT_FALSE(certainly_lt(b.direct.value, h));
            EXPECT_FALSE(certainly_lt(b.via_poly.value, h));
            Delta3Bound u = delta3_height_bound(w, d, gaps, bd);
            Interval scale = Interval::from_int(static_cast<long>(w * std::max<std::size_t>(gaps[w - 1], 1)), 128);
            EXPECT_FALSE(certainly_lt(u.uniform * scale, h));
        }
    }
}

TEST(Heights, Delta3GoldenInstance)
{
    ContinuedFraction cf = expand(make_quadnum(Rational(-1, 2), Rational(1, 2), Integer(5)));
    BinetData bd = binet_data(cf, 128, Integer(5));
    Delta3Bound b = delta3_height_bound(2, {1, 1}, {0, 24}, bd);
    // 2 h(c1) + 24 h(phi) + log 2 and h(c1) + h(phi) + log 2 with c1 = (5 + 3 sqrt 5)/10.
    EXPECT_NEAR(mid(b.direct.value), 8.23483168761144376, 1e-12);
    EXPECT_NEAR(mid(b.via_poly.value), 8.23483168761144376, 1e-12);
    EXPECT_NEAR(mid(b.uniform), 1.81732439625787557, 1e-12);
    EXPECT_NEAR(mid(max_height_c1(bd)), 0.88357130316812854, 1e-12);
}

TEST(Heights, Delta5Zeckendorf)
{
    Delta5Bound b = delta5_height_zeckendorf(2, 5);
    EXPECT_EQ(b.final.value.lo_string(3), "2.000e+01");
    EXPECT_EQ(b.intermediate.value.lo_string(3), "1.896e+00");
    EXPECT_TRUE(delta5_height_zeckendorf(1, 0).final.value.is_point());
    for (std::size_t v = 2; v <= 10; ++v)
        for (std::size_t gap = 2 * (v - 1); gap <= 60; ++gap) {
            EXPECT_NO_THROW(delta5_height_zeckendorf(v, gap));
        }
}

TEST(Heights, Delta5Radix)
{
    for (long b : {2L, 3L, 10L, 16L})
        for (std::size_t v = 2; v <= 6; ++v) {
            Integer digit_sum = (b - 1) * static_cast<long>(v);
            EXPECT_NO_THROW(delta5_height_radix(v, v - 1, Integer(b), digit_sum)) << b << " " << v;
        }
    EXPECT_THROW(delta5_height_radix(2, 1, Integer(1), Integer(1)), Error);
}
