#pragma once

// Absolute logarithmic heights of rationals and quadratic numbers, the
// product/power rules, the polynomial-value bound, and the two specialised
// bounds for delta_3 (sums of c1 theta1^(n_i - n_1)) and delta_5 (the
// numeration-side sums) used by the bound pipelines.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "qbound/cfrac.hpp"
#include "qbound/error.hpp"
#include "qbound/interval.hpp"
#include "qbound/quadfield.hpp"

namespace qbound {

/// log+ x = log max{x, 3}.
inline Interval log_plus(const Interval& x) { return ivl::log_plus(x); }

struct HeightBound {
    enum class Kind { exact, bound };

    Interval value;
    Kind kind = Kind::exact;

    bool exact() const noexcept { return kind == Kind::exact; }
};

inline HeightBound height_rational(const Rational& q, mpfr_prec_t prec = default_precision)
{
    Integer top = abs(q.get_num());
    if (q.get_den() > top)
        top = q.get_den();
    if (top == 1)
        return {Interval(prec), HeightBound::Kind::exact};
    return {log(Interval::from_integer(top, prec)), HeightBound::Kind::exact};
}

/// Primitive integer minimal polynomial d0 X^2 + d1 X + d2 with d0 > 0.
struct MinimalPolynomial {
    Integer d0, d1, d2;
};

inline MinimalPolynomial minimal_polynomial(const QuadNum& x)
{
    if (x.degenerate())
        throw Error(errc::precondition, "minimal polynomial of a rational is linear");
    Rational tr = x.trace();
    Rational nm = x.norm();
    Integer d0 = lcm(tr.get_den(), nm.get_den());
    Rational d1 = -tr * Rational(d0);
    Rational d2 = nm * Rational(d0);
    return {d0, d1.get_num(), d2.get_num()};
}

/// h(x) = (1/2) log(d0 max{1,|x|} max{1,|x'|}); the product is formed exactly
/// in the field before a single enclosure and logarithm.
inline HeightBound height_quadratic(const QuadNum& x, mpfr_prec_t prec = default_precision)
{
    if (x.degenerate())
        return height_rational(x.a(), prec);
    MinimalPolynomial mp = minimal_polynomial(x);
    const QuadNum one = QuadNum::rational(1, x.radicand());
    QuadNum m1 = abs(x);
    QuadNum m2 = abs(x.conjugate());
    if (compare(m1, one) < 0)
        m1 = one;
    if (compare(m2, one) < 0)
        m2 = one;
    QuadNum product = m1 * m2 * Rational(mp.d0);
    return {log(enclose(product, prec)) / 2, HeightBound::Kind::exact};
}

enum class HeightOp { product, quotient };

/// h(x y^{+-1}) <= h(x) + h(y).
inline HeightBound height_combine(const HeightBound& h1, const HeightBound& h2, HeightOp = HeightOp::product)
{
    return {h1.value + h2.value, HeightBound::Kind::bound};
}

/// h(x^k) = |k| h(x).
inline HeightBound height_power(const HeightBound& h, long k)
{
    long ak = k < 0 ? -k : k;
    return {h.value * ak, h.kind};
}

/// h(f(x_1..x_T)) <= sum deg_i h(x_i) + log L(f).
inline HeightBound height_poly_bound(const std::vector<Integer>& degrees, const Integer& L,
                                     const std::vector<HeightBound>& h_list, mpfr_prec_t prec = default_precision)
{
    if (degrees.size() != h_list.size())
        throw Error(errc::precondition, "degree and height lists differ in length");
    if (L < 1)
        throw Error(errc::precondition, "L(f) must be positive");
    Interval total = log(Interval::from_integer(L, prec));
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] < 0)
            throw Error(errc::precondition, "negative degree");
        total = total + Interval::from_integer(degrees[i], prec) * h_list[i].value;
    }
    return {total, HeightBound::Kind::bound};
}

inline HeightBound height_theta1(const BinetData& bd, mpfr_prec_t prec = default_precision)
{
    return height_quadratic(bd.theta1, prec);
}

/// max_j h(c1^(j)).
inline Interval max_height_c1(const BinetData& bd, mpfr_prec_t prec = default_precision)
{
    Interval m(prec);
    for (const auto& c : bd.c1)
        m = max(m, height_quadratic(c, prec).value);
    return m;
}

/// Coefficient H with h(delta_3) <= H * w * max{n1 - n_w, 1} whenever the
/// multiplicities sum to at most K: max_j h(c1) + h(theta1) + log K.
inline Interval delta3_uniform_coefficient(const BinetData& bd, std::size_t K, mpfr_prec_t prec = default_precision)
{
    if (K < 1)
        throw Error(errc::precondition, "K must be positive");
    return max_height_c1(bd, prec) + height_theta1(bd, prec).value +
           log(Interval::from_int(static_cast<long>(K), prec));
}

struct Delta3Bound {
    HeightBound direct;  ///< sum h(c1^(j_i)) + (n1 - n_w) h(theta1) + log(sum d_i)
    HeightBound via_poly; ///< the same quantity through height_poly_bound
    Interval uniform;     ///< coefficient of w * max{n1 - n_w, 1}, for K = sum d_i
};

/// `d` and `gaps` (n1 - n_i, so gaps[0] = 0) need at least w entries.
/// `residues` selects c1^(j_i); when empty every c1 is bounded by the largest height.
inline Delta3Bound delta3_height_bound(std::size_t w, const std::vector<std::size_t>& d,
                                       const std::vector<std::size_t>& gaps, const BinetData& bd,
                                       const std::vector<std::size_t>& residues = {},
                                       mpfr_prec_t prec = default_precision)
{
    if (w < 1 || d.size() < w || gaps.size() < w || (!residues.empty() && residues.size() < w))
        throw Error(errc::precondition, "delta3 bound needs 1 <= w <= k");
    HeightBound ht = height_theta1(bd, prec);
    Interval hmax = max_height_c1(bd, prec);
    std::vector<HeightBound> hc;
    Integer dsum = 0;
    for (std::size_t i = 0; i < w; ++i) {
        if (residues.empty())
            hc.push_back({hmax, HeightBound::Kind::bound});
        else
            hc.push_back(height_quadratic(bd.c1.at(residues[i]), prec));
        dsum += static_cast<unsigned long>(d[i]);
    }
    Integer gap = static_cast<unsigned long>(gaps[w - 1]);

    Interval direct = Interval::from_integer(gap, prec) * ht.value + log(Interval::from_integer(dsum, prec));
    for (const auto& h : hc)
        direct = direct + h.value;

    // f(X_1..X_w, Y) = sum d_i X_i Y^(n1 - n_i) at (c1.., theta1^-1).
    std::vector<Integer> degrees(w, 1);
    degrees.push_back(gap);
    hc.push_back(ht);
    HeightBound poly = height_poly_bound(degrees, dsum, hc, prec);

    Integer K = dsum;
    return {{direct, HeightBound::Kind::bound}, poly,
            delta3_uniform_coefficient(bd, static_cast<std::size_t>(K.get_ui()), prec)};
}

struct Delta5Bound {
    HeightBound intermediate;
    HeightBound final;
};

/// Zeckendorf: (m1 - m_v) h(phi) + log v <= 2 v (m1 - m_v).
inline Delta5Bound delta5_height_zeckendorf(std::size_t v, std::size_t gap, mpfr_prec_t prec = default_precision)
{
    if (v < 1)
        throw Error(errc::precondition, "v must be positive");
    if (v == 1)
        return {{Interval(prec), HeightBound::Kind::exact}, {Interval(prec), HeightBound::Kind::exact}};
    QuadNum phi(Rational(1, 2), Rational(1, 2), 5);
    Interval hphi = height_quadratic(phi, prec).value;
    Interval inter = Interval::from_int(static_cast<long>(gap), prec) * hphi +
                     log(Interval::from_int(static_cast<long>(v), prec));
    Interval fin = Interval::from_int(2 * static_cast<long>(v) * static_cast<long>(gap), prec);
    if (!certainly_le(inter, fin))
        throw Error(errc::precondition, "Zeckendorf gaps too small for the number of terms");
    return {{inter, HeightBound::Kind::bound}, {fin, HeightBound::Kind::bound}};
}

/// Radix b: (m1 - m_v) log b + 2 log(sum D_i) <= 5 (m1 - m_v) log+ b.
inline Delta5Bound delta5_height_radix(std::size_t v, std::size_t gap, const Integer& b, const Integer& digit_sum,
                                       mpfr_prec_t prec = default_precision)
{
    if (v < 1)
        throw Error(errc::precondition, "v must be positive");
    if (b < 2 || digit_sum < 1)
        throw Error(errc::precondition, "radix bound needs b >= 2 and a positive digit sum");
    if (v == 1)
        return {{Interval(prec), HeightBound::Kind::exact}, {Interval(prec), HeightBound::Kind::exact}};
    Interval lb = log(Interval::from_integer(b, prec));
    Interval g = Interval::from_int(static_cast<long>(gap), prec);
    Interval inter = g * lb + 2 * log(Interval::from_integer(digit_sum, prec));
    Interval fin = 5 * g * log_plus(Interval::from_integer(b, prec));
    if (!certainly_le(inter, fin))
        throw Error(errc::precondition, "radix gaps too small for the digit sum");
    return {{inter, HeightBound::Kind::bound}, {fin, HeightBound::Kind::bound}};
}

} // namespace qbound
