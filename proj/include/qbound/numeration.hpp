#pragma once

// Numeration systems: Ostrowski alpha-representations over convergent
// denominators, Zeckendorf (the golden-ratio case), radix-b expansions, and
// the regrouping of a K-term sum of convergent denominators into distinct
// indices with multiplicities split by residue class modulo the period.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "qbound/cfrac.hpp"
#include "qbound/error.hpp"
#include "qbound/interval.hpp"
#include "qbound/quadfield.hpp"

namespace qbound {

/// n = sum_i digits[i] * q_i, little-endian.
struct OstrowskiRep {
    std::vector<Integer> digits;
    friend bool operator==(const OstrowskiRep&, const OstrowskiRep&) = default;
};

/// y = sum_i F_{indices[i]}, indices strictly decreasing with gaps >= 2, all >= 2.
struct ZeckendorfRep {
    std::vector<std::size_t> indices;
    friend bool operator==(const ZeckendorfRep&, const ZeckendorfRep&) = default;
};

/// y = sum_i digits[i] * base^positions[i], positions strictly decreasing, digits nonzero.
struct RadixRep {
    Integer base;
    std::vector<std::size_t> positions;
    std::vector<Integer> digits;
    friend bool operator==(const RadixRep&, const RadixRep&) = default;
};

inline OstrowskiRep ostrowski_encode(const Integer& n, const ContinuedFraction& cf)
{
    if (n < 0)
        throw Error(errc::precondition, "Ostrowski encoding needs n >= 0");
    OstrowskiRep rep;
    if (n == 0)
        return rep;
    std::vector<Integer> q{1};
    while (true) {
        std::size_t i = q.size();
        Integer next = cf.quotient(i) * q[i - 1] + (i >= 2 ? q[i - 2] : Integer(0));
        if (next > n)
            break;
        q.push_back(std::move(next));
    }
    rep.digits.assign(q.size(), 0);
    Integer rest = n;
    for (std::size_t l = q.size(); l-- > 0;) {
        rep.digits[l] = floor_div(rest, q[l]);
        rest -= rep.digits[l] * q[l];
    }
    return rep;
}

inline Integer ostrowski_decode(const OstrowskiRep& rep, const ContinuedFraction& cf)
{
    ConvergentTable t = convergents(cf, rep.digits.empty() ? 0 : rep.digits.size() - 1);
    Integer n = 0;
    for (std::size_t i = 0; i < rep.digits.size(); ++i)
        n += rep.digits[i] * t.q[i];
    return n;
}

/// Digit conditions: 0 <= e_0 < a_1; 0 <= e_i <= a_{i+1}; e_i = a_{i+1} forces e_{i-1} = 0.
inline bool ostrowski_conditions(const OstrowskiRep& rep, const ContinuedFraction& cf)
{
    const auto& e = rep.digits;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const Integer& a_next = cf.quotient(i + 1);
        if (e[i] < 0)
            return false;
        if (i == 0 && e[0] >= a_next)
            return false;
        if (i >= 1) {
            if (e[i] > a_next)
                return false;
            if (e[i] == a_next && e[i - 1] != 0)
                return false;
        }
    }
    return true;
}

/// Partial sums: sum_{i <= j} e_i q_i < q_{j+1} for every j.
inline bool ostrowski_greedy(const OstrowskiRep& rep, const ContinuedFraction& cf)
{
    const auto& e = rep.digits;
    ConvergentTable t = convergents(cf, e.size());
    Integer partial = 0;
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] < 0)
            return false;
        partial += e[j] * t.q[j];
        if (partial >= t.q[j + 1])
            return false;
    }
    return true;
}

/// True iff the digit conditions hold. The partial-sum characterisation is
/// evaluated independently and must agree.
inline bool ostrowski_validate(const OstrowskiRep& rep, const ContinuedFraction& cf)
{
    bool conditions = ostrowski_conditions(rep, cf);
    if (conditions != ostrowski_greedy(rep, cf))
        throw Error(errc::precondition, "digit conditions and partial-sum test disagree");
    return conditions;
}

/// F_0 = 0, F_1 = 1.
inline Integer fibonacci(std::size_t t)
{
    Integer f;
    mpz_fib_ui(f.get_mpz_t(), t);
    return f;
}

/// phi^(t-2) <= F_t <= phi^(t-1), certified with interval powers of phi.
inline bool fib_bounds_check(std::size_t t, mpfr_prec_t prec = default_precision)
{
    if (t == 0)
        return true;
    prec = std::max<mpfr_prec_t>(prec, static_cast<mpfr_prec_t>(t) + 64);
    Interval phi = (Interval::from_int(1, prec) + sqrt(Interval::from_int(5, prec))) / 2;
    Interval f = Interval::from_integer(fibonacci(t), prec);
    Interval lower = t >= 2 ? pow(phi, t - 2) : Interval::from_int(1, prec) / phi;
    Interval upper = pow(phi, t - 1);
    return certainly_le(lower, f) && certainly_le(f, upper);
}

inline ZeckendorfRep zeckendorf_encode(const Integer& y)
{
    if (y < 1)
        throw Error(errc::precondition, "Zeckendorf encoding needs y >= 1");
    std::vector<Integer> fib{0, 1, 1};
    while (fib.back() <= y)
        fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
    ZeckendorfRep rep;
    Integer rest = y;
    for (std::size_t m = fib.size() - 1; m >= 2 && rest > 0; --m) {
        if (fib[m] <= rest) {
            rep.indices.push_back(m);
            rest -= fib[m];
        }
    }
    return rep;
}

inline Integer zeckendorf_decode(const ZeckendorfRep& rep)
{
    Integer y = 0;
    for (auto m : rep.indices)
        y += fibonacci(m);
    return y;
}

/// Re-encodes an arbitrary multiset of Fibonacci indices (repeats, neighbours,
/// index 1 allowed) as the Zeckendorf representation of its value.
inline ZeckendorfRep canonicalize(const std::vector<std::size_t>& fib_indices)
{
    Integer y = 0;
    for (auto m : fib_indices)
        y += fibonacci(m);
    if (y == 0)
        return {};
    return zeckendorf_encode(y);
}

inline RadixRep radix_encode(const Integer& y, const Integer& base)
{
    if (y < 1)
        throw Error(errc::precondition, "radix encoding needs y >= 1");
    if (base < 2)
        throw Error(errc::precondition, "radix base must be at least 2");
    RadixRep rep;
    rep.base = base;
    std::vector<Integer> little;
    Integer rest = y;
    while (rest > 0) {
        Integer digit;
        mpz_fdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(), base.get_mpz_t());
        little.push_back(std::move(digit));
    }
    for (std::size_t pos = little.size(); pos-- > 0;) {
        if (little[pos] != 0) {
            rep.positions.push_back(pos);
            rep.digits.push_back(little[pos]);
        }
    }
    return rep;
}

inline Integer radix_decode(const RadixRep& rep)
{
    Integer y = 0;
    for (std::size_t i = 0; i < rep.positions.size(); ++i) {
        Integer p;
        mpz_pow_ui(p.get_mpz_t(), rep.base.get_mpz_t(), rep.positions[i]);
        y += rep.digits[i] * p;
    }
    return y;
}

struct SumTerm {
    std::size_t multiplicity; ///< d_i
    std::size_t index;        ///< N'_i
    std::size_t n;            ///< N'_i = s n + j + r
    std::size_t residue;      ///< j
};

/// A K-term sum regrouped as sum_i d_i q_{N'_i}, N'_1 > ... > N'_k, plus the
/// indices below the preperiod that take no part in the residue split.
struct SumRepresentation {
    std::size_t K = 0;
    std::vector<SumTerm> terms;
    std::vector<std::size_t> small_terms;

    std::size_t k() const noexcept { return terms.size(); }
};

inline SumRepresentation partition_sum(const std::vector<std::size_t>& N, std::size_t r, std::size_t s)
{
    if (N.empty())
        throw Error(errc::precondition, "partition_sum needs K >= 1");
    if (s == 0)
        throw Error(errc::precondition, "period length must be positive");
    if (!std::is_sorted(N.rbegin(), N.rend()))
        throw Error(errc::precondition, "indices must be weakly decreasing");
    SumRepresentation rep;
    rep.K = N.size();
    for (std::size_t i = 0; i < N.size();) {
        std::size_t j = i;
        while (j < N.size() && N[j] == N[i])
            ++j;
        if (N[i] < r) {
            rep.small_terms.insert(rep.small_terms.end(), j - i, N[i]);
        } else {
            std::size_t shifted = N[i] - r;
            rep.terms.push_back({j - i, N[i], shifted / s, shifted % s});
        }
        i = j;
    }
    return rep;
}

inline SumRepresentation partition_sum(const std::vector<std::size_t>& N, const ContinuedFraction& cf)
{
    return partition_sum(N, cf.r(), cf.s());
}

} // namespace qbound
