#pragma once

// Matveev's lower bounds for linear forms in logarithms, the Petho-de Weger
// transfer x = a + g (log x)^c  =>  x < 2^c (a^(1/c) + g^(1/c) log(c^c g))^c,
// and |log x| <= 2|x - 1| for |x - 1| <= 1/2.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "qbound/error.hpp"
#include "qbound/interval.hpp"

namespace qbound {

struct LinFormInstance {
    unsigned T = 1;
    unsigned D = 1;
    std::vector<Interval> A;
    Interval B;

    void validate() const
    {
        if (T < 1 || D < 1)
            throw Error(errc::precondition, "T and D must be positive");
        if (A.size() != T)
            throw Error(errc::precondition, "need exactly T values A_j");
        mpq_class floor16(4, 25);
        for (const auto& a : A)
            if (mpfr_cmp_q(a.hi(), floor16.get_mpq_t()) < 0)
                throw Error(errc::precondition, "A_j below 0.16");
        if (mpfr_cmp_si(B.lo(), 1) < 0)
            throw Error(errc::precondition, "B must be at least 1");
    }
};

namespace detail {

inline Interval matveev_common(const LinFormInstance& inst, mpfr_prec_t prec)
{
    Interval dd = Interval::from_int(inst.D, prec);
    Interval r = dd * dd * log(ivl::e(prec) * dd);
    for (const auto& a : inst.A)
        r = r * a;
    return r * log(ivl::e(prec) * inst.B);
}

inline Interval power_of(long base, unsigned long n, mpfr_prec_t prec)
{
    return pow(Interval::from_int(base, prec), n);
}

} // namespace detail

/// -1.4 * 30^(T+3) (T+1)^4.5 D^2 log(eD) A_1..A_T log(eB), a strict lower bound for log|Gamma - 1|.
inline Interval matveev_gamma_bound(const LinFormInstance& inst)
{
    inst.validate();
    mpfr_prec_t prec = inst.B.precision();
    Interval t1 = Interval::from_int(inst.T + 1, prec);
    Interval lead = Interval::from_rational(mpq_class(7, 5), prec) * detail::power_of(30, inst.T + 3, prec) *
                    pow(t1, 4) * sqrt(t1);
    return -(lead * detail::matveev_common(inst, prec));
}

/// -2 * 30^(T+4) (T+1)^6 D^2 log(eD) A_1..A_T log(eB), a strict lower bound for log|Lambda|.
inline Interval matveev_lambda_bound(const LinFormInstance& inst)
{
    inst.validate();
    mpfr_prec_t prec = inst.B.precision();
    Interval lead = 2 * detail::power_of(30, inst.T + 4, prec) * pow(Interval::from_int(inst.T + 1, prec), 6);
    return -(lead * detail::matveev_common(inst, prec));
}

namespace detail {

inline void pw_check(const Interval& a, const Interval& c, const Interval& g)
{
    if (mpfr_sgn(a.lo()) < 0)
        throw Error(errc::pw_precondition, "a must be non-negative");
    if (mpfr_cmp_si(c.lo(), 1) < 0)
        throw Error(errc::pw_precondition, "c must be at least 1");
    Interval e2 = exp(Interval::from_int(2, g.precision()));
    Interval threshold = pow(e2 / c, c);
    if (!certainly_lt(threshold, g))
        throw Error(errc::pw_precondition, "g > (e^2/c)^c not certified, g = " + g.lo_string(12));
}

} // namespace detail

/// 2^c (a^(1/c) + g^(1/c) log(c^c g))^c.
inline Interval pw_transfer(const Interval& a, const Interval& c, const Interval& g)
{
    detail::pw_check(a, c, g);
    mpfr_prec_t prec = std::max({a.precision(), c.precision(), g.precision()});
    Interval inv = Interval::from_int(1, prec) / c;
    Interval a_root = a.is_point() && mpfr_zero_p(a.lo()) ? Interval(prec) : pow(a, inv);
    Interval inner = a_root + pow(g, inv) * log(pow(c, c) * g);
    return pow(Interval::from_int(2, prec), c) * pow(inner, c);
}

inline Interval pw_transfer(long a, long c, const Interval& g)
{
    mpfr_prec_t prec = g.precision();
    return pw_transfer(Interval::from_int(a, prec), Interval::from_int(c, prec), g);
}

/// Enclosure of the largest solution of x = a + g (log x)^c. On [e^c, inf)
/// the map a + g (log x)^c - x is concave, positive at e^c and negative at the
/// transfer bound, so bisection there isolates the largest root.
inline Interval pw_largest_root(const Interval& a, const Interval& c, const Interval& g, unsigned max_iterations = 0)
{
    Interval hi_start = pw_transfer(a, c, g);
    mpfr_prec_t prec = hi_start.precision();
    if (max_iterations == 0)
        max_iterations = 4 * static_cast<unsigned>(prec);
    auto f = [&](const Interval& x) { return a + g * pow(log(x), c) - x; };

    Interval lo = exp(c).lower_point();
    Interval hi = hi_start.upper_point();
    if (f(lo).certain_sign() <= 0)
        throw Error(errc::pw_precondition, "root bracket lost at e^c");
    if (f(hi).certain_sign() >= 0)
        throw Error(errc::pw_precondition, "transfer bound is not above the largest root");

    for (unsigned it = 0; it < max_iterations; ++it) {
        Interval mid = ((lo + hi) / 2).lower_point();
        Interval fm = f(mid);
        if (fm.contains_zero())
            return Interval::hull(lo, hi);
        if (mpfr_sgn(fm.lo()) > 0)
            lo = mid;
        else
            hi = mid;
        Interval rel = (hi - lo) / hi;
        if (mpfr_cmp_d(rel.hi(), std::ldexp(1.0, -static_cast<int>(prec) + 8)) < 0)
            return Interval::hull(lo, hi);
    }
    throw Error(errc::no_convergence, "bisection for the largest root did not converge");
}

inline Interval pw_largest_root(long a, long c, const Interval& g)
{
    mpfr_prec_t prec = g.precision();
    return pw_largest_root(Interval::from_int(a, prec), Interval::from_int(c, prec), g);
}

/// |log x| <= 2 |x - 1| when |x - 1| <= 1/2.
inline Interval log_from_gamma(const Interval& gamma_minus_1_abs)
{
    if (mpfr_sgn(gamma_minus_1_abs.lo()) < 0)
        throw Error(errc::precondition, "|x - 1| must be non-negative");
    if (mpfr_cmp_d(gamma_minus_1_abs.hi(), 0.5) > 0)
        throw Error(errc::g2l_domain, "|x - 1| = " + gamma_minus_1_abs.hi_string(12) + " exceeds 1/2");
    return 2 * gamma_minus_1_abs;
}

} // namespace qbound
