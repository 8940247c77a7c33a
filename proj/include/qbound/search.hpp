#pragma once

// Brute-force enumeration of y^a = q_{N_1} + ... + q_{N_K} with
// N_1 >= ... >= N_K >= 0, perfect-power detection, filtering by Hamming
// weight of y, and empirical checks of bound reports.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "qbound/bounds.hpp"
#include "qbound/cfrac.hpp"
#include "qbound/error.hpp"
#include "qbound/numeration.hpp"
#include "qbound/quadfield.hpp"

namespace qbound {

struct PerfectPower {
    Integer y;
    unsigned long a;
    friend bool operator==(const PerfectPower&, const PerfectPower&) = default;
};

/// Every (y, a) with a >= 2 and y^a = n, by increasing a.
inline std::vector<PerfectPower> perfect_powers(const Integer& n)
{
    std::vector<PerfectPower> out;
    if (n < 2 || mpz_perfect_power_p(n.get_mpz_t()) == 0)
        return out;
    const std::size_t bits = bit_length(n);
    for (unsigned long a = 2; a <= bits; ++a) {
        Integer y;
        if (mpz_root(y.get_mpz_t(), n.get_mpz_t(), a) != 0 && y >= 2)
            out.push_back({y, a});
    }
    return out;
}

/// (y, a) with the largest exponent, if n >= 2 is a perfect power.
inline std::optional<PerfectPower> is_perfect_power(const Integer& n)
{
    auto all = perfect_powers(n);
    if (all.empty())
        return std::nullopt;
    return all.back();
}

struct Solution {
    Integer y;
    unsigned long a = 2;
    std::vector<std::size_t> N;
    Integer value;
    unsigned long max_a = 2; ///< largest exponent for this value
    friend bool operator==(const Solution&, const Solution&) = default;
};

struct SearchRange {
    std::size_t N_max = 0;
    unsigned long a_max = 2;
    std::size_t K = 1;
};

struct SearchOptions {
    unsigned threads = 0;                 ///< 0: hardware concurrency
    unsigned long long tuple_budget = 0;  ///< 0: unlimited
};

/// Thrown when the tuple budget is exhausted; carries every solution with N_1 < frontier.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::vector<Solution> partial, std::size_t frontier)
        : Error(errc::budget_exceeded, "tuple budget exhausted at N1 = " + std::to_string(frontier)),
          partial_(std::move(partial)), frontier_(frontier)
    {
    }

    const std::vector<Solution>& partial() const noexcept { return partial_; }
    std::size_t frontier() const noexcept { return frontier_; }

private:
    std::vector<Solution> partial_;
    std::size_t frontier_;
};

namespace detail {

inline Integer binomial(unsigned long n, unsigned long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// Weakly decreasing tails N_2..N_K <= N_1 in lexicographic order.
inline void enumerate_partition(std::size_t n1, const std::vector<Integer>& q, const SearchRange& range,
                                std::vector<Solution>& out)
{
    std::vector<std::size_t> N(range.K, 0);
    N[0] = n1;
    auto emit = [&]() {
        Integer sum = 0;
        for (auto i : N)
            sum += q[i];
        if (sum < 4)
            return;
        auto pw = perfect_powers(sum);
        if (pw.empty())
            return;
        unsigned long max_a = pw.back().a;
        for (const auto& p : pw)
            if (p.a <= range.a_max)
                out.push_back({p.y, p.a, N, sum, max_a});
    };
    // Odometer over positions 1..K-1 with N[i] <= N[i-1].
    if (range.K == 1) {
        emit();
        return;
    }
    while (true) {
        emit();
        std::size_t i = range.K - 1;
        while (i >= 1 && N[i] == N[i - 1])
            --i;
        if (i == 0)
            return;
        ++N[i];
        for (std::size_t t = i + 1; t < range.K; ++t)
            N[t] = 0;
    }
}

} // namespace detail

/// All solutions with N_1 <= N_max and 2 <= a <= a_max, ordered by N
/// lexicographically (then by a). Partitions by N_1 run in parallel.
inline std::vector<Solution> enumerate_solutions(const ContinuedFraction& cf, const SearchRange& range,
                                                 const SearchOptions& opts = {})
{
    if (range.K < 1 || range.a_max < 2)
        throw Error(errc::precondition, "search needs K >= 1 and a_max >= 2");
    cf.validate();
    const std::vector<Integer> q = convergents(cf, range.N_max).q;

    // Largest prefix of N_1 partitions that fits the budget.
    std::size_t last = range.N_max;
    bool truncated = false;
    if (opts.tuple_budget > 0) {
        Integer used = 0;
        for (std::size_t n1 = 0; n1 <= range.N_max; ++n1) {
            Integer size = detail::binomial(n1 + range.K - 1, range.K - 1);
            if (used + size > Integer(static_cast<unsigned long>(opts.tuple_budget))) {
                truncated = true;
                break;
            }
            used += size;
            last = n1;
        }
        if (truncated && used == 0)
            throw BudgetExceeded({}, 0);
    }
    const std::size_t parts = truncated ? last + 1 : range.N_max + 1;

    std::vector<std::vector<Solution>> results(parts);
    unsigned threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, parts));
    if (threads <= 1) {
        for (std::size_t n1 = 0; n1 < parts; ++n1)
            detail::enumerate_partition(n1, q, range, results[n1]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t]() {
                for (std::size_t n1 = t; n1 < parts; n1 += threads)
                    detail::enumerate_partition(n1, q, range, results[n1]);
            });
        for (auto& th : pool)
            th.join();
    }

    std::vector<Solution> out;
    for (auto& r : results)
        for (auto& s : r)
            out.push_back(std::move(s));
    // Lexicographic in N: ascending N_1 first, then the tails.
    std::stable_sort(out.begin(), out.end(), [](const Solution& x, const Solution& y) {
        if (x.N != y.N)
            return x.N < y.N;
        return x.a < y.a;
    });
    if (truncated)
        throw BudgetExceeded(std::move(out), parts);
    return out;
}

inline std::size_t zeckendorf_weight(const Integer& y) { return zeckendorf_encode(y).indices.size(); }

inline std::size_t radix_weight(const Integer& y, const Integer& b) { return radix_encode(y, b).positions.size(); }

inline std::vector<Solution> filter_by_weight(const std::vector<Solution>& solutions, const VariantSpec& variant)
{
    std::vector<Solution> out;
    for (const auto& s : solutions) {
        std::size_t wt = variant.kind == VariantSpec::Kind::zeckendorf ? zeckendorf_weight(s.y)
                                                                       : radix_weight(s.y, variant.b);
        if (wt <= variant.l)
            out.push_back(s);
    }
    return out;
}

/// n1 of a solution: (N_1 - r) / s, or 0 when N_1 lies below the period.
inline std::size_t solution_n1(const Solution& s, std::size_t r, std::size_t period)
{
    if (s.N.empty() || s.N.front() < r)
        return 0;
    return (s.N.front() - r) / period;
}

inline std::size_t solution_n1(const Solution& s, const ContinuedFraction& cf) { return solution_n1(s, cf.r(), cf.s()); }

/// Exact recomputation of y^a and of the sum of denominators.
inline bool check_solution(const Solution& s, const ContinuedFraction& cf)
{
    if (s.y < 2 || s.a < 2 || s.N.empty() || !std::is_sorted(s.N.rbegin(), s.N.rend()))
        return false;
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), s.y.get_mpz_t(), s.a);
    ConvergentTable t = convergents(cf, s.N.front());
    Integer sum = 0;
    for (auto i : s.N)
        sum += t.q[i];
    return p == s.value && sum == s.value;
}

/// n1 <= n1_bound, a <= a_bound and log(y^a) <= log_ya_bound, all against hi().
inline bool verify_bounds(const std::vector<Solution>& solutions, const BoundReport& report, std::size_t r, std::size_t s)
{
    for (const auto& sol : solutions) {
        Integer n1 = static_cast<unsigned long>(solution_n1(sol, r, s));
        if (mpfr_cmp_z(report.n1_bound.hi(), n1.get_mpz_t()) < 0)
            return false;
        Integer a = sol.a;
        if (mpfr_cmp_z(report.a_bound.hi(), a.get_mpz_t()) < 0)
            return false;
        Interval lv = log(Interval::from_integer(sol.value, report.precision));
        if (mpfr_cmp(lv.hi(), report.log_ya_bound.hi()) > 0)
            return false;
    }
    return true;
}

inline bool verify_bounds(const std::vector<Solution>& solutions, const BoundReport& report, const ContinuedFraction& cf)
{
    return verify_bounds(solutions, report, cf.r(), cf.s());
}

inline bool verify_bounds(const std::vector<Solution>& solutions, const BoundReport& report, const BinetData& bd)
{
    return verify_bounds(solutions, report, bd.r, bd.s);
}

} // namespace qbound
