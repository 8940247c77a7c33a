#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <random>
#include <string>

#include "qbound/linforms.hpp"

using namespace qbound;
using Dec = boost::multiprecision::cpp_dec_float_50;

namespace {

struct Sample {
    unsigned T, D;
    std::vector<std::string> A;
    std::string B;
};

Sample random_sample(std::mt19937_64& rng)
{
    std::uniform_int_distribution<unsigned> td(1, 6), dd(1, 4);
    std::uniform_int_distribution<long> ad(160, 20000), bd(1, 1'000'000);
    Sample s{td(rng), dd(rng), {}, std::to_string(bd(rng))};
    for (unsigned j = 0; j < s.T; ++j)
        s.A.push_back(std::to_string(ad(rng)) + "e-3");
    return s;
}

LinFormInstance to_instance(const Sample& s, mpfr_prec_t prec = 128)
{
    LinFormInstance inst;
    inst.T = s.T;
    inst.D = s.D;
    for (const auto& a : s.A)
        inst.A.push_back(Interval::from_decimal(a, a, prec));
    inst.B = Interval::from_decimal(s.B, s.B, prec);
    return inst;
}

Dec oracle(const Sample& s, bool lambda)
{
    Dec T1 = s.T + 1, D = s.D, e = boost::multiprecision::exp(Dec(1));
    Dec lead = lambda ? Dec(2) * boost::multiprecision::pow(Dec(30), s.T + 4) * boost::multiprecision::pow(T1, 6)
                      : Dec("1.4") * boost::multiprecision::pow(Dec(30), s.T + 3) *
                            boost::multiprecision::pow(T1, Dec("4.5"));
    Dec r = lead * D * D * boost::multiprecision::log(e * D);
    for (const auto& a : s.A)
        r *= Dec(a);
    return -r * boost::multiprecision::log(e * Dec(s.B));
}

Dec to_dec(const Interval& x, bool upper) { return Dec(upper ? x.hi_string(40) : x.lo_string(40)); }

void expect_matches(const Interval& got, const Dec& want)
{
    Dec lo = to_dec(got, false), hi = to_dec(got, true);
    Dec mid = (lo + hi) / 2;
    EXPECT_LT(boost::multiprecision::abs((mid - want) / want), Dec("1e-6"));
    Dec slack = boost::multiprecision::abs(want) * Dec("1e-30");
    EXPECT_LE(lo, want + slack);
    EXPECT_GE(hi, want - slack);
}

double mid(const Interval& x) { return 0.5 * (mpfr_get_d(x.lo(), MPFR_RNDN) + mpfr_get_d(x.hi(), MPFR_RNDN)); }

Interval iv(long v) { return Interval::from_int(v, 128); }

} // namespace

TEST(Matveev, SmallestInstance)
{
    Sample s{1, 1, {"0.16"}, "1"};
    expect_matches(matveev_gamma_bound(to_instance(s)), oracle(s, false));
    expect_matches(matveev_lambda_bound(to_instance(s)), oracle(s, true));
}

TEST(Matveev, RandomInstancesMatchDecimalOracle)
{
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 50; ++i) {
        Sample s = random_sample(rng);
        expect_matches(matveev_gamma_bound(to_instance(s)), oracle(s, false));
        expect_matches(matveev_lambda_bound(to_instance(s)), oracle(s, true));
    }
}

TEST(Matveev, RatioAtTFive)
{
    Sample s{5, 2, {"1", "2", "3", "0.5", "0.25"}, "7"};
    Interval ratio = matveev_lambda_bound(to_instance(s)) / matveev_gamma_bound(to_instance(s));
    Interval want = Interval::from_rational(mpq_class(2 * 30, 1) / mpq_class(7, 5), 128) *
                    pow(iv(6), Interval::from_rational(mpq_class(3, 2), 128));
    EXPECT_FALSE(certainly_lt(ratio, want));
    EXPECT_FALSE(certainly_lt(want, ratio));
}

TEST(Matveev, LinearInEachA)
{
    Sample s{3, 2, {"1.386", "0.481", "0.16"}, "10"};
    Interval base = matveev_gamma_bound(to_instance(s));
    Sample s2 = s;
    s2.A[1] = "0.962";
    Interval doubled = matveev_gamma_bound(to_instance(s2));
    Interval twice = base * 2;
    EXPECT_FALSE(certainly_lt(doubled, twice));
    EXPECT_FALSE(certainly_lt(twice, doubled));
}

TEST(Matveev, DecreasingInT)
{
    for (unsigned T = 1; T < 6; ++T) {
        Sample a{T, 2, std::vector<std::string>(T, "1"), "100"};
        Sample b{T + 1, 2, std::vector<std::string>(T + 1, "1"), "100"};
        EXPECT_TRUE(certainly_lt(matveev_gamma_bound(to_instance(b)), matveev_gamma_bound(to_instance(a))));
        EXPECT_TRUE(certainly_lt(matveev_lambda_bound(to_instance(b)), matveev_lambda_bound(to_instance(a))));
    }
}

TEST(Matveev, InvalidInstances)
{
    EXPECT_THROW(matveev_gamma_bound(to_instance({1, 1, {"0.1"}, "1"})), Error);
    EXPECT_THROW(matveev_gamma_bound(to_instance({1, 1, {"1"}, "0.5"})), Error);
    Sample bad{2, 1, {"1"}, "1"};
    EXPECT_THROW(matveev_gamma_bound(to_instance(bad)), Error);
}

TEST(PethoDeWeger, Examples)
{
    EXPECT_NEAR(mid(pw_transfer(0, 1, iv(10))), 46.0517018598809136, 1e-12);
    EXPECT_NEAR(mid(pw_largest_root(0, 1, iv(10))), 35.7715206395729722, 1e-10);
    EXPECT_NEAR(mid(pw_transfer(0, 1, iv(8))), 16 * std::log(8.0), 1e-12);
    EXPECT_NEAR(mid(pw_largest_root(0, 1, iv(8))), 26.0934854766119102, 1e-10);
    EXPECT_NEAR(mid(pw_largest_root(5, 1, iv(10))), 42.4935146868231658, 1e-10);
    EXPECT_NEAR(mid(pw_largest_root(0, 2, iv(100))), 8099.11906263803782, 1e-7);
    EXPECT_NEAR(mid(pw_transfer(0, 2, iv(100))), 4 * std::pow(10 * std::log(400.0), 2), 1e-8);
}

TEST(PethoDeWeger, TransferDominatesRootOnGrid)
{
    int checked = 0;
    for (long a : {0L, 10L, 100L})
        for (long c : {1L, 2L, 3L})
            for (long g : {10L, 100L, 1000L}) {
                Interval ci = iv(c);
                Interval threshold = pow(ivl::e(128) * ivl::e(128) / ci, static_cast<unsigned long>(c));
                if (!certainly_lt(threshold, iv(g))) {
                    EXPECT_THROW(pw_transfer(a, c, iv(g)), Error);
                    continue;
                }
                Interval bound = pw_transfer(a, c, iv(g));
                Interval root = pw_largest_root(a, c, iv(g));
                EXPECT_GE(mpfr_cmp(bound.lo(), root.hi()), 0) << a << " " << c << " " << g;
                ++checked;
            }
    EXPECT_GE(checked, 18);
}

TEST(PethoDeWeger, PreconditionFailure)
{
    try {
        pw_transfer(0, 3, iv(10));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), errc::pw_precondition);
    }
}

TEST(GammaToLog, Domain)
{
    Interval q = Interval::from_rational(mpq_class(1, 4), 64);
    EXPECT_EQ(log_from_gamma(q).lo_string(3), "5.000e-01");
    EXPECT_EQ(log_from_gamma(Interval::from_rational(mpq_class(1, 2), 64)).hi_string(3), "1.000e+00");
    try {
        log_from_gamma(Interval::from_rational(mpq_class(3, 5), 64));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), errc::g2l_domain);
    }
}

TEST(GammaToLog, BoundsTheLogarithm)
{
    for (int k = 0; k <= 100; ++k) {
        mpq_class x(50 + k, 100);
        Interval lx = abs(log(Interval::from_rational(x, 128)));
        mpq_class dev = x - 1;
        if (dev < 0)
            dev = -dev;
        EXPECT_TRUE(certainly_le(lx, log_from_gamma(Interval::from_rational(dev, 128))) || dev == 0);
    }
}
