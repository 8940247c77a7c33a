#pragma once

// Exact arithmetic in real quadratic fields Q(sqrt D).
//
// A QuadNum is a + b*sqrt(D) with a, b rational in lowest terms (GMP keeps
// mpq_class canonical) and D squarefree. Values from different fields never
// mix: any binary operation on two QuadNums with different radicands throws
// "mixed-field". Real-valued information (signs, floors, enclosures) is
// always derived exactly; enclose() is the only bridge to the interval engine.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

#include "qbound/error.hpp"
#include "qbound/interval.hpp"

namespace qbound {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr unsigned long default_trial_bound = 1'000'000;

inline Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw Error(errc::precondition, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer floor_of(const Rational& q)
{
    return floor_div(q.get_num(), q.get_den());
}

inline Integer isqrt(const Integer& n)
{
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Integer& n)
{
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline std::size_t bit_length(const Integer& n)
{
    return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

/// d = squarefree * factor^2.
struct SquarefreeSplit {
    Integer squarefree;
    Integer factor;
};

/// Squarefree decomposition by trial division. Fails with "cannot-factor"
/// when d <= 0 or d keeps a prime factor above trial_bound.
inline SquarefreeSplit squarefree_split(const Integer& d, unsigned long trial_bound = default_trial_bound)
{
    if (d <= 0)
        throw Error(errc::cannot_factor, "radicand must be positive, got " + d.get_str());
    Integer rest = d;
    SquarefreeSplit out{1, 1};
    for (unsigned long p = 2; p <= trial_bound; p += (p == 2 ? 1 : 2)) {
        if (Integer(p) * p > rest)
            break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        for (unsigned i = 0; i < e / 2; ++i)
            out.factor *= p;
        if (e % 2 == 1)
            out.squarefree *= p;
    }
    if (rest > 1) {
        if (rest > trial_bound)
            throw Error(errc::cannot_factor,
                        "prime factor of " + d.get_str() + " exceeds trial-division bound " +
                            std::to_string(trial_bound));
        out.squarefree *= rest;
    }
    return out;
}

class QuadNum {
public:
    /// Zero of Q (radicand 1 marks a purely rational field context).
    QuadNum() : d_(1) {}

    /// Trusted constructor: `d` must already be squarefree.
    QuadNum(Rational a, Rational b, Integer d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d))
    {
        a_.canonicalize();
        b_.canonicalize();
        if (d_ == 1) {
            a_ += b_;
            b_ = 0;
        }
    }

    static QuadNum rational(Rational a, Integer d) { return QuadNum(std::move(a), 0, std::move(d)); }

    const Rational& a() const noexcept { return a_; }
    const Rational& b() const noexcept { return b_; }
    const Integer& radicand() const noexcept { return d_; }

    /// Rational-valued (b = 0). Callers needing an irrational must reject these.
    bool degenerate() const noexcept { return b_ == 0; }

    Rational norm() const { return a_ * a_ - b_ * b_ * d_; }
    Rational trace() const { return 2 * a_; }

    QuadNum conjugate() const { return QuadNum(a_, -b_, d_); }

    friend QuadNum operator+(const QuadNum& x, const QuadNum& y)
    {
        same_field(x, y);
        return QuadNum(x.a_ + y.a_, x.b_ + y.b_, x.d_);
    }

    friend QuadNum operator-(const QuadNum& x, const QuadNum& y)
    {
        same_field(x, y);
        return QuadNum(x.a_ - y.a_, x.b_ - y.b_, x.d_);
    }

    friend QuadNum operator-(const QuadNum& x) { return QuadNum(-x.a_, -x.b_, x.d_); }

    friend QuadNum operator*(const QuadNum& x, const QuadNum& y)
    {
        same_field(x, y);
        return QuadNum(x.a_ * y.a_ + x.b_ * y.b_ * x.d_, x.a_ * y.b_ + x.b_ * y.a_, x.d_);
    }

    friend QuadNum operator/(const QuadNum& x, const QuadNum& y)
    {
        same_field(x, y);
        Rational n = y.norm();
        if (n == 0)
            throw Error(errc::precondition, "division by zero in Q(sqrt " + y.d_.get_str() + ")");
        QuadNum num = x * y.conjugate();
        return QuadNum(num.a_ / n, num.b_ / n, x.d_);
    }

    friend QuadNum operator+(const QuadNum& x, const Rational& q) { return QuadNum(x.a_ + q, x.b_, x.d_); }
    friend QuadNum operator-(const QuadNum& x, const Rational& q) { return QuadNum(x.a_ - q, x.b_, x.d_); }
    friend QuadNum operator*(const QuadNum& x, const Rational& q) { return QuadNum(x.a_ * q, x.b_ * q, x.d_); }
    friend QuadNum operator*(const Rational& q, const QuadNum& x) { return x * q; }
    friend QuadNum operator/(const QuadNum& x, const Rational& q)
    {
        if (q == 0)
            throw Error(errc::precondition, "division by zero");
        return QuadNum(x.a_ / q, x.b_ / q, x.d_);
    }

    QuadNum& operator+=(const QuadNum& y) { return *this = *this + y; }
    QuadNum& operator-=(const QuadNum& y) { return *this = *this - y; }
    QuadNum& operator*=(const QuadNum& y) { return *this = *this * y; }

    /// Structural equality; comparing values of different fields is an error.
    friend bool operator==(const QuadNum& x, const QuadNum& y)
    {
        same_field(x, y);
        return x.a_ == y.a_ && x.b_ == y.b_;
    }

    std::string to_string() const
    {
        if (b_ == 0)
            return a_.get_str();
        return a_.get_str() + (b_ < 0 ? " - " : " + ") + Rational(abs(b_)).get_str() + "*sqrt(" + d_.get_str() + ")";
    }

private:
    static void same_field(const QuadNum& x, const QuadNum& y)
    {
        if (x.d_ != y.d_)
            throw Error(errc::mixed_field,
                        "Q(sqrt " + x.d_.get_str() + ") vs Q(sqrt " + y.d_.get_str() + ")");
    }

    Rational a_;
    Rational b_;
    Integer d_;
};

/// a + b*sqrt(d), with d reduced to its squarefree part and b rescaled by
/// the extracted square factor. A square d or b = 0 gives a degenerate value.
inline QuadNum make_quadnum(const Rational& a, const Rational& b, const Integer& d,
                            unsigned long trial_bound = default_trial_bound)
{
    if (d < 2)
        throw Error(errc::cannot_factor, "radicand must be at least 2, got " + d.get_str());
    SquarefreeSplit split = squarefree_split(d, trial_bound);
    return QuadNum(a, b * Rational(split.factor), split.squarefree);
}

/// Exact sign of a + b*sqrt(D).
inline int sign(const QuadNum& x)
{
    int sa = sgn(x.a());
    int sb = sgn(x.b());
    if (sb == 0)
        return sa;
    if (sa == 0 || sa == sb)
        return sb;
    int cmp = ::cmp(x.a() * x.a(), x.b() * x.b() * Rational(x.radicand()));
    if (cmp > 0)
        return sa;
    if (cmp < 0)
        return sb;
    return 0;
}

inline int compare(const QuadNum& x, const QuadNum& y) { return sign(x - y); }

inline QuadNum abs(const QuadNum& x) { return sign(x) < 0 ? -x : x; }

inline QuadNum pow(QuadNum base, unsigned long n)
{
    QuadNum result = QuadNum::rational(1, base.radicand());
    while (n > 0) {
        if (n & 1u)
            result *= base;
        n >>= 1;
        if (n > 0)
            base *= base;
    }
    return result;
}

/// The unique integer n with n <= x < n + 1.
inline Integer floor(const QuadNum& x)
{
    if (x.degenerate())
        return floor_of(x.a());
    Rational b2d = x.b() * x.b() * Rational(x.radicand());
    Integer m = isqrt(floor_of(b2d)); // m <= |b| sqrt(D) < m + 1
    Integer n = x.b() > 0 ? floor_of(x.a() + Rational(m)) : floor_of(x.a() - Rational(m + 1));
    while (sign(x - Rational(n + 1)) >= 0)
        ++n;
    while (sign(x - Rational(n)) < 0)
        --n;
    return n;
}

/// Dyadic enclosure of width <= 2^(2 - precision_bits) * max(1, |x|).
///
/// The endpoints are floor(x 2^k) / 2^k and the next grid point, with k
/// depending only on the magnitude of x and on precision_bits. Grids refine
/// as precision grows, so enclosures at higher precision nest inside those
/// at lower precision.
inline Interval enclose(const QuadNum& x, mpfr_prec_t precision_bits)
{
    if (precision_bits < 4)
        throw Error(errc::precondition, "enclose needs at least 4 bits of precision");
    QuadNum ax = abs(x);
    long e = 0;
    if (compare(ax, QuadNum::rational(1, x.radicand())) >= 0)
        e = static_cast<long>(bit_length(floor(ax))) - 1;
    long k = static_cast<long>(precision_bits) - 2 - e;
    Rational scale = 1;
    if (k >= 0)
        mpq_mul_2exp(scale.get_mpq_t(), scale.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
    else
        mpq_div_2exp(scale.get_mpq_t(), scale.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
    QuadNum scaled = x * scale;
    Integer m = floor(scaled);
    bool exact = sign(scaled - Rational(m)) == 0;
    return Interval::from_dyadic(m, exact ? m : Integer(m + 1), -k, precision_bits);
}

} // namespace qbound
