#pragma once

// Closed intervals with dyadic (binary floating point) endpoints.
//
// Every operation rounds the lower endpoint toward -inf and the upper
// endpoint toward +inf, so the true real result of an operation applied to
// any points of the operands lies inside the returned interval. Endpoints are
// MPFR numbers; the interval's working precision is the precision used for
// rounded results.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>

#include "qbound/error.hpp"

namespace qbound {

inline constexpr mpfr_prec_t default_precision = 128;

class Interval {
public:
    explicit Interval(mpfr_prec_t prec = default_precision) : prec_(prec)
    {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }

    Interval(const Interval& o) : prec_(o.prec_)
    {
        mpfr_init2(lo_, mpfr_get_prec(o.lo_));
        mpfr_init2(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDN);
        mpfr_set(hi_, o.hi_, MPFR_RNDN);
    }

    Interval(Interval&& o) noexcept : prec_(o.prec_)
    {
        mpfr_init2(lo_, MPFR_PREC_MIN);
        mpfr_init2(hi_, MPFR_PREC_MIN);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }

    Interval& operator=(const Interval& o)
    {
        if (this != &o) {
            Interval tmp(o);
            swap(tmp);
        }
        return *this;
    }

    Interval& operator=(Interval&& o) noexcept
    {
        swap(o);
        return *this;
    }

    ~Interval()
    {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    void swap(Interval& o) noexcept
    {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        std::swap(prec_, o.prec_);
    }

    // --- construction -----------------------------------------------------

    static Interval from_integer(const mpz_class& z, mpfr_prec_t prec = default_precision)
    {
        Interval r(prec);
        mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
        return r;
    }

    static Interval from_int(long v, mpfr_prec_t prec = default_precision)
    {
        return from_integer(mpz_class(v), prec);
    }

    static Interval from_rational(const mpq_class& q, mpfr_prec_t prec = default_precision)
    {
        Interval r(prec);
        mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    /// Exact dyadic endpoints lo_mant * 2^exp and hi_mant * 2^exp.
    static Interval from_dyadic(const mpz_class& lo_mant, const mpz_class& hi_mant, long exp,
                                mpfr_prec_t prec)
    {
        auto bits = [](const mpz_class& m) {
            return static_cast<mpfr_prec_t>(std::max<std::size_t>(mpz_sizeinbase(m.get_mpz_t(), 2), 2));
        };
        Interval r(prec);
        mpfr_set_prec(r.lo_, bits(lo_mant));
        mpfr_set_prec(r.hi_, bits(hi_mant));
        mpfr_set_z(r.lo_, lo_mant.get_mpz_t(), MPFR_RNDN);
        mpfr_set_z(r.hi_, hi_mant.get_mpz_t(), MPFR_RNDN);
        mpfr_mul_2si(r.lo_, r.lo_, exp, MPFR_RNDN);
        mpfr_mul_2si(r.hi_, r.hi_, exp, MPFR_RNDN);
        return r;
    }

    /// Decimal endpoints, each rounded outward.
    static Interval from_decimal(const std::string& lo, const std::string& hi,
                                 mpfr_prec_t prec = default_precision)
    {
        Interval r(prec);
        if (mpfr_set_str(r.lo_, lo.c_str(), 10, MPFR_RNDD) != 0 || !mpfr_number_p(r.lo_))
            throw Error(errc::malformed_input, "bad decimal '" + lo + "'");
        if (mpfr_set_str(r.hi_, hi.c_str(), 10, MPFR_RNDU) != 0 || !mpfr_number_p(r.hi_))
            throw Error(errc::malformed_input, "bad decimal '" + hi + "'");
        r.check();
        return r;
    }

    static Interval hull(const Interval& a, const Interval& b)
    {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    // --- access -------------------------------------------------------------

    mpfr_prec_t precision() const noexcept { return prec_; }
    mpfr_srcptr lo() const noexcept { return lo_; }
    mpfr_srcptr hi() const noexcept { return hi_; }
    double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double mid_double() const { return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)); }

    /// Interval with the same endpoints rounded (outward) to a new precision.
    Interval with_precision(mpfr_prec_t prec) const
    {
        Interval r(prec);
        mpfr_set(r.lo_, lo_, MPFR_RNDD);
        mpfr_set(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    Interval lower_point() const
    {
        Interval r(*this);
        mpfr_set_prec(r.hi_, mpfr_get_prec(lo_));
        mpfr_set(r.hi_, lo_, MPFR_RNDN);
        return r;
    }

    Interval upper_point() const
    {
        Interval r(*this);
        mpfr_set_prec(r.lo_, mpfr_get_prec(hi_));
        mpfr_set(r.lo_, hi_, MPFR_RNDN);
        return r;
    }

    bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }
    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

    bool contains(const Interval& o) const
    {
        return mpfr_lessequal_p(lo_, o.lo_) && mpfr_lessequal_p(o.hi_, hi_);
    }

    bool contains(const mpq_class& q) const
    {
        return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
    }

    bool contains(const mpz_class& z) const
    {
        return mpfr_cmp_z(lo_, z.get_mpz_t()) <= 0 && mpfr_cmp_z(hi_, z.get_mpz_t()) >= 0;
    }

    /// Upper bound on hi - lo.
    Interval width() const
    {
        Interval r(prec_);
        mpfr_sub(r.hi_, hi_, lo_, MPFR_RNDU);
        mpfr_set(r.lo_, r.hi_, MPFR_RNDD);
        return r;
    }

    /// -1, +1 when the sign is certain, 0 when the interval is exactly {0};
    /// throws "indeterminate" when the interval straddles zero.
    int certain_sign() const
    {
        if (mpfr_sgn(lo_) > 0)
            return 1;
        if (mpfr_sgn(hi_) < 0)
            return -1;
        if (mpfr_zero_p(lo_) && mpfr_zero_p(hi_))
            return 0;
        throw Error(errc::indeterminate, "interval straddles zero");
    }

    /// Decimal rendering of the endpoints, lower rounded down and upper rounded up.
    std::string lo_string(int digits = 25) const { return render(lo_, digits, 'D'); }
    std::string hi_string(int digits = 25) const { return render(hi_, digits, 'U'); }

    // --- arithmetic -----------------------------------------------------------

    friend Interval operator+(const Interval& a, const Interval& b)
    {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r.checked();
    }

    friend Interval operator-(const Interval& a, const Interval& b)
    {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r.checked();
    }

    friend Interval operator-(const Interval& a)
    {
        Interval r(a.prec_);
        mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator*(const Interval& a, const Interval& b)
    {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_t t;
        mpfr_init2(t, r.prec_);
        mpfr_srcptr xs[2] = {a.lo_, a.hi_};
        mpfr_srcptr ys[2] = {b.lo_, b.hi_};
        bool first = true;
        for (auto x : xs) {
            for (auto y : ys) {
                mpfr_mul(t, x, y, MPFR_RNDD);
                if (first || mpfr_less_p(t, r.lo_))
                    mpfr_set(r.lo_, t, MPFR_RNDD);
                mpfr_mul(t, x, y, MPFR_RNDU);
                if (first || mpfr_greater_p(t, r.hi_))
                    mpfr_set(r.hi_, t, MPFR_RNDU);
                first = false;
            }
        }
        mpfr_clear(t);
        return r.checked();
    }

    friend Interval operator/(const Interval& a, const Interval& b)
    {
        if (b.contains_zero())
            throw Error(errc::indeterminate, "interval division by an interval containing zero");
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_t t;
        mpfr_init2(t, r.prec_);
        mpfr_srcptr xs[2] = {a.lo_, a.hi_};
        mpfr_srcptr ys[2] = {b.lo_, b.hi_};
        bool first = true;
        for (auto x : xs) {
            for (auto y : ys) {
                mpfr_div(t, x, y, MPFR_RNDD);
                if (first || mpfr_less_p(t, r.lo_))
                    mpfr_set(r.lo_, t, MPFR_RNDD);
                mpfr_div(t, x, y, MPFR_RNDU);
                if (first || mpfr_greater_p(t, r.hi_))
                    mpfr_set(r.hi_, t, MPFR_RNDU);
                first = false;
            }
        }
        mpfr_clear(t);
        return r.checked();
    }

    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }
    Interval& operator/=(const Interval& o) { return *this = *this / o; }

    friend Interval operator*(const Interval& a, long k) { return a * from_int(k, a.prec_); }
    friend Interval operator*(long k, const Interval& a) { return a * from_int(k, a.prec_); }
    friend Interval operator/(const Interval& a, long k) { return a / from_int(k, a.prec_); }
    friend Interval operator+(const Interval& a, long k) { return a + from_int(k, a.prec_); }
    friend Interval operator-(const Interval& a, long k) { return a - from_int(k, a.prec_); }

    friend Interval abs(const Interval& a)
    {
        if (mpfr_sgn(a.lo_) >= 0)
            return a;
        if (mpfr_sgn(a.hi_) <= 0)
            return -a;
        Interval r(a.prec_);
        mpfr_set_zero(r.lo_, 1);
        mpfr_t t;
        mpfr_init2(t, a.prec_);
        mpfr_neg(t, a.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, t, a.hi_, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }

    friend Interval max(const Interval& a, const Interval& b)
    {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval min(const Interval& a, const Interval& b)
    {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval log(const Interval& a)
    {
        if (mpfr_sgn(a.lo_) <= 0)
            throw Error(errc::indeterminate, "log of an interval not certainly positive");
        Interval r(a.prec_);
        mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
        return r.checked();
    }

    friend Interval exp(const Interval& a)
    {
        Interval r(a.prec_);
        mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
        return r.checked();
    }

    friend Interval sqrt(const Interval& a)
    {
        if (mpfr_sgn(a.lo_) < 0)
            throw Error(errc::indeterminate, "sqrt of an interval not certainly non-negative");
        Interval r(a.prec_);
        mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
        return r.checked();
    }

    friend Interval pow(const Interval& a, unsigned long n)
    {
        if (n == 0)
            return from_int(1, a.prec_);
        Interval r(a.prec_);
        if (mpfr_sgn(a.lo_) >= 0) {
            mpfr_pow_ui(r.lo_, a.lo_, n, MPFR_RNDD);
            mpfr_pow_ui(r.hi_, a.hi_, n, MPFR_RNDU);
            return r.checked();
        }
        if (n % 2 == 1) {
            mpfr_pow_ui(r.lo_, a.lo_, n, MPFR_RNDD);
            mpfr_pow_ui(r.hi_, a.hi_, n, MPFR_RNDU);
            return r.checked();
        }
        return pow(abs(a), n);
    }

    /// x^y for x certainly positive; x = [0, 0] yields 0 for y > 0.
    friend Interval pow(const Interval& x, const Interval& y)
    {
        if (mpfr_zero_p(x.lo_) && mpfr_zero_p(x.hi_) && mpfr_sgn(y.lo_) > 0)
            return Interval(std::max(x.prec_, y.prec_));
        return exp(y * log(x));
    }

    // --- certain comparisons ---------------------------------------------------

    /// less / greater when every point of a compares that way with every point
    /// of b; equivalent when both are the same point; unordered otherwise.
    friend std::partial_ordering operator<=>(const Interval& a, const Interval& b)
    {
        if (mpfr_less_p(a.hi_, b.lo_))
            return std::partial_ordering::less;
        if (mpfr_greater_p(a.lo_, b.hi_))
            return std::partial_ordering::greater;
        if (a.is_point() && b.is_point() && mpfr_equal_p(a.lo_, b.lo_))
            return std::partial_ordering::equivalent;
        return std::partial_ordering::unordered;
    }

    friend bool operator==(const Interval& a, const Interval& b)
    {
        return mpfr_equal_p(a.lo_, b.lo_) && mpfr_equal_p(a.hi_, b.hi_);
    }

    friend bool certainly_le(const Interval& a, const Interval& b) { return mpfr_lessequal_p(a.hi_, b.lo_); }
    friend bool certainly_lt(const Interval& a, const Interval& b) { return mpfr_less_p(a.hi_, b.lo_); }

private:
    void check() const
    {
        if (mpfr_nan_p(lo_) || mpfr_nan_p(hi_))
            throw Error(errc::indeterminate, "interval operation produced NaN");
        if (mpfr_greater_p(lo_, hi_))
            throw Error(errc::indeterminate, "interval endpoints out of order");
    }

    Interval checked()
    {
        check();
        return std::move(*this);
    }

    static std::string render(mpfr_srcptr x, int digits, char dir)
    {
        if (mpfr_zero_p(x))
            return "0";
        std::string fmt = std::string("%.*R") + dir + "e";
        char* buf = nullptr;
        mpfr_asprintf(&buf, fmt.c_str(), digits, x);
        std::string out(buf);
        mpfr_free_str(buf);
        return out;
    }

    mpfr_t lo_;
    mpfr_t hi_;
    mpfr_prec_t prec_;
};

namespace ivl {

inline Interval e(mpfr_prec_t prec = default_precision)
{
    return exp(Interval::from_int(1, prec));
}

inline Interval log_of(long v, mpfr_prec_t prec = default_precision)
{
    return log(Interval::from_int(v, prec));
}

inline Interval log_of(const mpz_class& v, mpfr_prec_t prec = default_precision)
{
    return log(Interval::from_integer(v, prec));
}

/// log max{x, 3}.
inline Interval log_plus(const Interval& x)
{
    return log(max(x, Interval::from_int(3, x.precision())));
}

/// max{0, x}.
inline Interval positive_part(const Interval& x)
{
    return max(x, Interval(x.precision()));
}

} // namespace ivl

} // namespace qbound
