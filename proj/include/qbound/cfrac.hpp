#pragma once

// Periodic continued fractions of quadratic irrationals, their convergent
// denominators, and the splitting of (q_N) into s binary-recurrent
// subsequences q^(j)_i = q_{j + r + s i}.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qbound/error.hpp"
#include "qbound/interval.hpp"
#include "qbound/quadfield.hpp"

namespace qbound {

/// alpha = [a0; a_1, ..., a_{r-1}, period...]. `preperiod` holds a_1..a_{r-1},
/// so r = preperiod.size() + 1 counts a0 as well.
struct ContinuedFraction {
    Integer a0;
    std::vector<Integer> preperiod;
    std::vector<Integer> period;

    std::size_t r() const noexcept { return preperiod.size() + 1; }
    std::size_t s() const noexcept { return period.size(); }

    /// Partial quotient a_i read from a0, the preperiod, then the period cyclically.
    const Integer& quotient(std::size_t i) const
    {
        if (i == 0)
            return a0;
        if (i < r())
            return preperiod[i - 1];
        return period[(i - r()) % s()];
    }

    void validate() const
    {
        if (period.empty())
            throw Error(errc::malformed_input, "continued fraction needs a nonempty period");
        for (const auto& v : preperiod)
            if (v < 1)
                throw Error(errc::malformed_input, "partial quotients after a0 must be positive");
        for (const auto& v : period)
            if (v < 1)
                throw Error(errc::malformed_input, "partial quotients after a0 must be positive");
    }

    friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

/// Minimal periodic expansion, tracking tail states (P + sqrt d) / Q with
/// Q | d - P^2. The first state seen twice (from index 1 on) fixes (r, s).
inline ContinuedFraction expand(const QuadNum& alpha)
{
    if (alpha.degenerate())
        throw Error(errc::not_quadratic_irrational, "rational input " + alpha.to_string());

    // alpha = (A + B sqrt D) / C with integers, then (P + sqrt d) / Q.
    Integer c = lcm(alpha.a().get_den(), alpha.b().get_den());
    Integer A = alpha.a().get_num() * (c / alpha.a().get_den());
    Integer B = alpha.b().get_num() * (c / alpha.b().get_den());
    Integer P = B > 0 ? A : Integer(-A);
    Integer Q = B > 0 ? c : Integer(-c);
    Integer d = B * B * alpha.radicand();
    if ((d - P * P) % Q != 0) {
        Integer aq = abs(Q);
        P *= aq;
        d *= Q * Q;
        Q *= aq;
    }
    const Integer root = isqrt(d);

    std::vector<Integer> quotients;
    std::map<std::pair<Integer, Integer>, std::size_t> seen;
    for (std::size_t k = 0;; ++k) {
        if (k >= 1) {
            auto [it, fresh] = seen.emplace(std::make_pair(P, Q), k);
            if (!fresh) {
                std::size_t r = it->second;
                ContinuedFraction cf;
                cf.a0 = quotients[0];
                cf.preperiod.assign(quotients.begin() + 1, quotients.begin() + static_cast<std::ptrdiff_t>(r));
                cf.period.assign(quotients.begin() + static_cast<std::ptrdiff_t>(r), quotients.end());
                return cf;
            }
        }
        Integer a = Q > 0 ? floor_div(P + root, Q) : floor_div(P + root + 1, Q);
        quotients.push_back(a);
        P = a * Q - P;
        Q = (d - P * P) / Q;
    }
}

/// q_0..q_n (and numerators p_0..p_n) by q_{i+1} = a_{i+1} q_i + q_{i-1}.
struct ConvergentTable {
    std::vector<Integer> q;
    std::vector<Integer> p;
};

inline ConvergentTable convergents(const ContinuedFraction& cf, std::size_t n)
{
    ConvergentTable t;
    t.q.reserve(n + 1);
    t.p.reserve(n + 1);
    Integer q_prev = 0, q_cur = 1;
    Integer p_prev = 1, p_cur = cf.a0;
    t.q.push_back(q_cur);
    t.p.push_back(p_cur);
    for (std::size_t i = 1; i <= n; ++i) {
        const Integer& a = cf.quotient(i);
        Integer q_next = a * q_cur + q_prev;
        Integer p_next = a * p_cur + p_prev;
        q_prev = std::move(q_cur);
        q_cur = std::move(q_next);
        p_prev = std::move(p_cur);
        p_cur = std::move(p_next);
        t.q.push_back(q_cur);
        t.p.push_back(p_cur);
    }
    return t;
}

/// Denominators only, grown on demand. Not thread-safe.
class ConvergentSequence {
public:
    explicit ConvergentSequence(ContinuedFraction cf) : cf_(std::move(cf)), q_{1} {}

    const Integer& operator[](std::size_t i)
    {
        while (q_.size() <= i) {
            std::size_t n = q_.size();
            const Integer& prev2 = n >= 2 ? q_[n - 2] : zero_;
            q_.push_back(cf_.quotient(n) * q_[n - 1] + prev2);
        }
        return q_[i];
    }

    const ContinuedFraction& fraction() const noexcept { return cf_; }

private:
    ContinuedFraction cf_;
    std::vector<Integer> q_;
    Integer zero_ = 0;
};

/// Data of the binary recurrence x_{i+2} = t x_{i+1} - (-1)^s x_i shared by the
/// s subsequences, with Binet coefficients q^(j)_i = c1[j] theta1^i - c2[j] theta2^i.
struct BinetData {
    Integer t_alpha;
    std::size_t s = 1;
    std::size_t r = 1;
    int period_sign = -1; ///< (-1)^s
    Integer delta;        ///< squarefree radicand of Q(theta1)
    QuadNum theta1;
    QuadNum theta2;
    std::vector<QuadNum> c1;
    std::vector<QuadNum> c2;
    Interval c3; ///< enclosure of max_j (c1 + |c2|); use hi()
    Interval c4; ///< enclosure of min_j c1 / 2; use lo()
    std::size_t n0 = 0;
    std::vector<Integer> initial_terms; ///< q_0..q_{r+2s-1}
};

inline constexpr std::size_t n0_cap = 1'000'000;

/// Trace of prod_j [[b_j, 1], [1, 0]] over the period.
inline Integer period_trace(const ContinuedFraction& cf)
{
    std::array<Integer, 4> m{1, 0, 0, 1};
    for (const auto& b : cf.period) {
        std::array<Integer, 4> n{m[0] * b + m[1], m[0], m[2] * b + m[3], m[2]};
        m = std::move(n);
    }
    return m[0] + m[3];
}

/// theta1 = (t + sqrt(t^2 - 4(-1)^s)) / 2. When `field` is given and
/// t^2 - 4(-1)^s = field * u^2 exactly, no factoring is needed.
inline QuadNum dominant_root(const Integer& t, int period_sign, const std::optional<Integer>& field = std::nullopt)
{
    Integer disc = t * t - 4 * period_sign;
    if (field && *field >= 2 && disc % *field == 0 && is_perfect_square(disc / *field)) {
        Integer u = isqrt(disc / *field);
        return QuadNum(make_rational(t, 2), make_rational(u, 2), *field);
    }
    QuadNum theta = make_quadnum(make_rational(t, 2), Rational(1, 2), disc);
    if (theta.degenerate())
        throw Error(errc::not_quadratic_irrational, "t^2 - 4(-1)^s is a perfect square");
    return theta;
}

inline BinetData binet_data(const ContinuedFraction& cf, mpfr_prec_t precision_bits = default_precision,
                            const std::optional<Integer>& field_hint = std::nullopt)
{
    cf.validate();
    BinetData bd;
    bd.s = cf.s();
    bd.r = cf.r();
    bd.period_sign = bd.s % 2 == 0 ? 1 : -1;
    bd.t_alpha = period_trace(cf);
    bd.theta1 = dominant_root(bd.t_alpha, bd.period_sign, field_hint);
    bd.theta2 = bd.theta1.conjugate();
    bd.delta = bd.theta1.radicand();
    bd.initial_terms = convergents(cf, bd.r + 2 * bd.s).q;

    const QuadNum one = QuadNum::rational(1, bd.delta);
    const QuadNum gap = bd.theta1 - bd.theta2;
    for (std::size_t j = 0; j < bd.s; ++j) {
        Rational q0(bd.initial_terms[j + bd.r]);
        Rational q1(bd.initial_terms[j + bd.r + bd.s]);
        bd.c1.push_back((one * q1 - bd.theta2 * q0) / gap);
        bd.c2.push_back((one * q1 - bd.theta1 * q0) / gap);
    }

    // Invariants the rest of the toolkit relies on; all exact.
    if (!(bd.theta1 * bd.theta2 == one * Rational(bd.period_sign)) ||
        !(bd.theta1 + bd.theta2 == one * Rational(bd.t_alpha)))
        throw Error(errc::precondition, "theta1, theta2 are not the roots of the period recurrence");
    if (compare(bd.theta1, one) <= 0 || compare(abs(bd.theta2), one) >= 0)
        throw Error(errc::precondition, "theta1 > 1 > |theta2| fails");
    for (std::size_t j = 0; j < bd.s; ++j) {
        if (sign(bd.c1[j]) <= 0)
            throw Error(errc::precondition, "c1 must be positive");
        if (!(bd.c1[j].conjugate() == -bd.c2[j]))
            throw Error(errc::precondition, "sigma(c1) != -c2");
    }

    std::size_t arg_max = 0, arg_min = 0;
    for (std::size_t j = 1; j < bd.s; ++j) {
        if (compare(bd.c1[j] + abs(bd.c2[j]), bd.c1[arg_max] + abs(bd.c2[arg_max])) > 0)
            arg_max = j;
        if (compare(bd.c1[j], bd.c1[arg_min]) < 0)
            arg_min = j;
    }
    bd.c3 = enclose(bd.c1[arg_max] + abs(bd.c2[arg_max]), precision_bits);
    bd.c4 = enclose(bd.c1[arg_min] / Rational(2), precision_bits);

    // Smallest i with 2 |c2| rho^i < c1 for every j, rho = |theta2 / theta1|.
    const QuadNum rho = abs(bd.theta2 / bd.theta1);
    QuadNum rho_pow = one;
    for (std::size_t i = 0;; ++i) {
        bool all = true;
        for (std::size_t j = 0; j < bd.s && all; ++j)
            all = sign(bd.c1[j] - abs(bd.c2[j]) * rho_pow * Rational(2)) > 0;
        if (all) {
            bd.n0 = i;
            break;
        }
        if (i >= n0_cap)
            throw Error(errc::no_convergence, "N0 search exceeded cap");
        rho_pow *= rho;
    }
    return bd;
}

/// q_{i+2s} = t q_{i+s} - (-1)^s q_i for all r <= i <= i_max - 2s.
inline bool verify_shifted_recurrence(const ContinuedFraction& cf, const BinetData& bd, std::size_t i_max)
{
    const std::size_t r = cf.r(), s = cf.s();
    if (i_max < r + 2 * s)
        throw Error(errc::precondition, "i_max must be at least r + 2s");
    ConvergentTable t = convergents(cf, i_max);
    for (std::size_t i = r; i + 2 * s <= i_max; ++i) {
        if (t.q[i + 2 * s] != bd.t_alpha * t.q[i + s] - bd.period_sign * t.q[i])
            return false;
    }
    return true;
}

/// q^(j)_i = q_{j + r + s i}.
inline std::size_t subsequence_index(const BinetData& bd, std::size_t j, std::size_t i)
{
    return j + bd.r + bd.s * i;
}

} // namespace qbound
