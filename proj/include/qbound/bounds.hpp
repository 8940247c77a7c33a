#pragma once

// Explicit constants and the three bound pipelines:
//   theorem_y_bound     n1 in terms of y,
//   theorem_ham_bound   n1 for y of bounded Zeckendorf weight (Q(alpha) != Q(sqrt5)),
//   theorem_ham2_bound  n1 for y of bounded base-b weight.
// Every constant is an outward-rounded interval; only hi() is a certified
// upper bound for quantities that are bounded from above.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbound/cfrac.hpp"
#include "qbound/error.hpp"
#include "qbound/heights.hpp"
#include "qbound/interval.hpp"
#include "qbound/linforms.hpp"
#include "qbound/numeration.hpp"
#include "qbound/quadfield.hpp"
#include "qbound/walk.hpp"

namespace qbound {

struct VariantSpec {
    enum class Kind { zeckendorf, radix };

    Kind kind = Kind::zeckendorf;
    std::size_t l = 2;
    Integer b = 2;

    static VariantSpec zeckendorf(std::size_t l) { return {Kind::zeckendorf, l, 2}; }
    static VariantSpec radix(std::size_t l, Integer b) { return {Kind::radix, l, std::move(b)}; }
};

/// Named constants in insertion order.
class ConstantLedger {
public:
    void set(const std::string& name, Interval value)
    {
        for (auto& [n, v] : entries_)
            if (n == name) {
                v = std::move(value);
                return;
            }
        entries_.emplace_back(name, std::move(value));
    }

    bool has(const std::string& name) const
    {
        for (const auto& e : entries_)
            if (e.first == name)
                return true;
        return false;
    }

    const Interval& get(const std::string& name) const
    {
        for (const auto& e : entries_)
            if (e.first == name)
                return e.second;
        throw Error(errc::precondition, "constant " + name + " not in ledger");
    }

    const std::vector<std::pair<std::string, Interval>>& entries() const noexcept { return entries_; }

private:
    std::vector<std::pair<std::string, Interval>> entries_;
};

enum class BoundCase { main, gamma_equals_one, k_equals_one, below_n0 };

inline const char* to_string(BoundCase c)
{
    switch (c) {
    case BoundCase::main: return "main";
    case BoundCase::gamma_equals_one: return "gamma_equals_one";
    case BoundCase::k_equals_one: return "k_equals_one";
    case BoundCase::below_n0: return "below_N0";
    }
    return "main";
}

struct PerKBound {
    std::size_t k = 0;
    Interval n1_bound;
    std::string exit; ///< "pw" (bound in y), "n1" or "m1" (walk exits)
};

struct BoundReport {
    std::string theorem; ///< "y", "ham", "ham2"
    std::size_t K = 1;
    std::optional<Integer> y;
    std::size_t l = 0;
    Integer b = 0;
    mpfr_prec_t precision = default_precision;

    ConstantLedger ledger;
    Interval n1_bound;
    Interval a_bound;
    Interval log_ya_bound;
    BoundCase bound_case = BoundCase::main;
    bool field_not_q_sqrt5 = true;
    bool petho_preconditions_ok = true;
    bool k1_covered = true;
    std::vector<PerKBound> per_k;
};

/// t^2 - 4(-1)^s is not a square and t^2 != j (-1)^s for 1 <= j <= 4.
inline bool petho_preconditions(const BinetData& bd)
{
    Integer t2 = bd.t_alpha * bd.t_alpha;
    if (is_perfect_square(t2 - 4 * bd.period_sign))
        return false;
    for (int j = 1; j <= 4; ++j)
        if (t2 == j * bd.period_sign)
            return false;
    return true;
}

/// `gaps[i]` = m_1 - m_{i+1}; only gaps[v-1] enters. `digit_sum` is used by the radix variant.
inline Delta5Bound delta5_height_bound(std::size_t v, const std::vector<std::size_t>& gaps, const VariantSpec& variant,
                                       const Integer& digit_sum = 1, mpfr_prec_t prec = default_precision)
{
    if (v < 1 || gaps.size() < v)
        throw Error(errc::precondition, "delta5 bound needs 1 <= v <= number of gaps");
    if (variant.kind == VariantSpec::Kind::zeckendorf)
        return delta5_height_zeckendorf(v, gaps[v - 1], prec);
    return delta5_height_radix(v, gaps[v - 1], variant.b, digit_sum, prec);
}

inline bool nonvanishing_check(const BinetData& bd, VariantSpec::Kind kind)
{
    if (kind == VariantSpec::Kind::radix)
        return true;
    return bd.delta != 5;
}

namespace detail {

inline const QuadNum& argmax(const std::vector<QuadNum>& xs)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (compare(xs[i], xs[best]) > 0)
            best = i;
    return xs[best];
}

inline const QuadNum& argmin(const std::vector<QuadNum>& xs)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (compare(xs[i], xs[best]) < 0)
            best = i;
    return xs[best];
}

inline std::vector<QuadNum> abs_all(const std::vector<QuadNum>& xs)
{
    std::vector<QuadNum> out;
    for (const auto& x : xs)
        out.push_back(abs(x));
    return out;
}

inline std::vector<QuadNum> c1_plus_abs_c2(const BinetData& bd)
{
    std::vector<QuadNum> out;
    for (std::size_t j = 0; j < bd.s; ++j)
        out.push_back(bd.c1[j] + abs(bd.c2[j]));
    return out;
}

inline Interval ival(long v, mpfr_prec_t prec) { return Interval::from_int(v, prec); }

inline Interval golden(mpfr_prec_t prec) { return enclose(QuadNum(Rational(1, 2), Rational(1, 2), 5), prec); }

} // namespace detail

/// Growth constants re-enclosed at the working precision.
inline Interval growth_c3(const BinetData& bd, mpfr_prec_t prec)
{
    return enclose(detail::argmax(detail::c1_plus_abs_c2(bd)), prec);
}

inline Interval growth_c4(const BinetData& bd, mpfr_prec_t prec)
{
    return enclose(detail::argmin(bd.c1) / Rational(2), prec);
}

/// max{0, log(K max|c2| / min c1) / log theta1}: n1 below this whenever some Gamma_{A,w} = 1.
inline Interval degenerate_n1_bound(const BinetData& bd, std::size_t K, mpfr_prec_t prec = default_precision)
{
    QuadNum ratio = detail::argmax(detail::abs_all(bd.c2)) * Rational(static_cast<unsigned long>(K)) /
                    detail::argmin(bd.c1);
    if (sign(ratio) == 0)
        return Interval(prec);
    QuadNum one = QuadNum::rational(1, bd.delta);
    if (compare(ratio, one) <= 0)
        return Interval(prec);
    Interval v = log(enclose(ratio, prec)) / log(enclose(bd.theta1, prec));
    return ivl::positive_part(v);
}

/// c5..c12 and auxiliaries. Without a variant only the constants of the bound in y are built.
inline ConstantLedger elementary_constants(const BinetData& bd, std::size_t K,
                                           const std::optional<VariantSpec>& variant = std::nullopt,
                                           mpfr_prec_t prec = default_precision)
{
    using detail::ival;
    if (K < 1)
        throw Error(errc::precondition, "K must be positive");
    if (variant && variant->l < 2)
        throw Error(errc::precondition, "l must be at least 2");
    if (variant && variant->kind == VariantSpec::Kind::radix && variant->b < 2)
        throw Error(errc::precondition, "b must be at least 2");

    ConstantLedger L;
    const Interval Kv = ival(static_cast<long>(K), prec);
    const Interval one = ival(1, prec);
    const Interval three = ival(3, prec);
    const Interval log2 = log(ival(2, prec));
    const Interval log3 = log(three);
    const Interval e = ivl::e(prec);
    const Interval theta1 = enclose(bd.theta1, prec);
    const Interval log_theta1 = log(theta1);
    const Interval c3 = growth_c3(bd, prec);
    const Interval c4 = growth_c4(bd, prec);
    L.set("c3", c3);
    L.set("c4", c4);
    L.set("theta1", theta1);

    const Interval c5 = log_plus(Kv * c3) + log_theta1;
    const Interval c6 = c5 / log2;
    L.set("c5", c5);
    L.set("c6", c6);

    const Interval min_c1 = enclose(detail::argmin(bd.c1), prec);
    const Interval max_c1 = enclose(detail::argmax(bd.c1), prec);
    const Interval max_c2 = enclose(detail::argmax(detail::abs_all(bd.c2)), prec);
    const Interval q_r = Interval::from_integer(bd.initial_terms.at(bd.r), prec);

    const Interval hd3 = delta3_uniform_coefficient(bd, K, prec);
    const Interval L3 = max(abs(log(min_c1)), abs(log(Kv * max_c1)));
    const Interval E = Kv * (max_c2 + c3 + q_r) / min_c1;
    L.set("hd3", hd3);
    L.set("L3", L3);
    L.set("E_tail", E);

    const Interval floor16 = Interval::from_rational(Rational(4, 25), prec);
    const auto matveev_lead = [&](unsigned T, unsigned D, bool lambda) {
        LinFormInstance inst{T, D, std::vector<Interval>(T, one), one};
        return lambda ? -matveev_lambda_bound(inst) : -matveev_gamma_bound(inst);
    };

    // Bound in y: T = 3, D = 2, A = (2 log y, log theta1, a3 max{n1 - n_w, 1}), B = max{c6, 1} n1.
    const Interval a3 = max(max(2 * Kv * hd3, L3), floor16);
    const Interval c9 = matveev_lead(3, 2, false) * 2 * log_theta1 * a3;
    const Interval factor_y = one + (one + log(max(c6, one))) / log3;
    Interval c10 = (c9 * factor_y + log_plus(E) / (log2 * log3)) / log_theta1;
    c10 = max(c10, exp(ival(2, prec)) / log2 + Interval::from_rational(Rational(1, 1024), prec));
    L.set("a3", a3);
    L.set("c9", c9);
    L.set("c10", c10);

    if (!variant)
        return L;

    const Interval G_A = ivl::positive_part(log(2 * E) / log_theta1);
    L.set("G_A", G_A);

    if (variant->kind == VariantSpec::Kind::zeckendorf) {
        const Interval phi = detail::golden(prec);
        const Interval log_phi = log(phi);
        const Interval c7 = (log_plus(Kv * phi * phi * c3) + log_theta1) / log_phi;
        const Interval c8 = max((log_phi + log_plus(one / c4)) / log_theta1, one);
        L.set("c7", c7);
        L.set("c8", c8);

        // T = 5, D = 4; A = (2 log 5, 2 log phi, a3' w max{N_w,1}, 2 log theta1, 8 v max{M_v,1}).
        const Interval a3p = max(max(4 * hd3, L3), floor16);
        const Interval factor_b = ival(2, prec) + (one + log(c8) + log_plus(c6) + log_plus(c7)) / log3;
        const Interval c11 = matveev_lead(5, 4, true) * (2 * log(ival(5, prec))) * (2 * log_phi) * a3p *
                             (2 * log_theta1) * 8 * factor_b;
        const Interval mu = min(theta1, phi);
        const Interval Q = (c11 + one + (log_plus(c6) + log(ival(12, prec) + 2 * E)) / log3) / log(mu);
        const Interval C12 = max(max(max(ival(6, prec), G_A), Q), exp(ival(2, prec)));
        L.set("a3p", a3p);
        L.set("c11", c11);
        L.set("Q", Q);
        L.set("C12", C12);
    } else {
        const Interval bI = Interval::from_integer(variant->b, prec);
        const Interval log_b = log(bI);
        const Interval c7p = (log_plus(Kv * c3) + log_theta1) / log_b;
        const Interval c8p = max((log_b + log_plus(one / c4)) / log_theta1, one);
        L.set("c7p", c7p);
        L.set("c8p", c8p);

        // T = 5, D = 2; A = (2 log b, 2 log b, a3'' w max{N_w,1}, log theta1, 10 log+ b v max{M_v,1}).
        const Interval a3pp = max(max(2 * hd3, L3), floor16);
        const Interval factor_b = ival(2, prec) + (one + log(c8p) + log_plus(c6) + log(c7p + one)) / log3;
        const Interval c11 = matveev_lead(5, 2, true) * (2 * log_b) * (2 * log_b) * a3pp * log_theta1 *
                             (10 * log_plus(bI)) * factor_b;
        const Interval mu = min(theta1, bI);
        const Interval Q = (c11 + one + (log_plus(c6) + log(2 * bI + 2 * E)) / log3) / log(mu);
        const Interval C12 = max(max(max(ival(2, prec), G_A), Q), exp(ival(2, prec)));
        L.set("a3pp", a3pp);
        L.set("c11", c11);
        L.set("Q", Q);
        L.set("C12", C12);
    }
    return L;
}

/// Runs `f(prec)`, doubling the precision up to four times while comparisons stay indeterminate.
template <class F>
auto with_precision_escalation(F&& f, mpfr_prec_t prec) -> decltype(f(prec))
{
    for (int round = 0;; ++round) {
        try {
            return f(prec);
        } catch (const Error& e) {
            if (e.code() != errc::indeterminate && e.code() != errc::pw_precondition)
                throw;
            if (round == 4)
                throw;
            prec *= 2;
        }
    }
}

namespace detail {

/// Folds the effective side branches into the report and fills a and log(y^a).
inline void finish_report(BoundReport& rep, const BinetData& bd, const Interval& main_bound, bool has_main)
{
    mpfr_prec_t prec = rep.precision;
    Interval degenerate = degenerate_n1_bound(bd, rep.K, prec);
    Interval n0 = Interval::from_int(static_cast<long>(bd.n0), prec);
    Interval floor3 = ival(3, prec);
    rep.ledger.set("n1_gamma_equals_one", degenerate);

    Interval best = max(n0, floor3);
    BoundCase which = BoundCase::below_n0;
    if (mpfr_cmp(degenerate.hi(), best.hi()) > 0) {
        best = degenerate;
        which = BoundCase::gamma_equals_one;
    }
    if (has_main && mpfr_cmp(main_bound.hi(), best.hi()) > 0) {
        best = main_bound;
        which = BoundCase::main;
    }
    rep.n1_bound = best;
    if (rep.bound_case != BoundCase::k_equals_one)
        rep.bound_case = which;

    Interval n1_floor = max(best, ival(1, prec));
    rep.a_bound = rep.ledger.get("c6") * n1_floor;
    rep.log_ya_bound = rep.ledger.get("c5") * n1_floor;
}

inline Interval max_hi(const Interval& a, const Interval& b) { return mpfr_cmp(a.hi(), b.hi()) >= 0 ? a : b; }

} // namespace detail

inline BoundReport theorem_y_bound(const BinetData& bd, std::size_t K, const Integer& y,
                                   mpfr_prec_t prec = default_precision)
{
    if (y < 2)
        throw Error(errc::precondition, "y must be at least 2");
    if (K < 1)
        throw Error(errc::precondition, "K must be positive");
    return with_precision_escalation(
        [&](mpfr_prec_t p) {
            BoundReport rep;
            rep.theorem = "y";
            rep.K = K;
            rep.y = y;
            rep.precision = p;
            rep.petho_preconditions_ok = petho_preconditions(bd);
            rep.field_not_q_sqrt5 = bd.delta != 5;
            rep.ledger = elementary_constants(bd, K, std::nullopt, p);

            const Interval g1 = rep.ledger.get("c10") * log(Interval::from_integer(y, p));
            Interval main(p);
            for (std::size_t k = 1; k <= K; ++k) {
                Interval nk = pw_transfer(0, static_cast<long>(k), pow(g1, k));
                rep.per_k.push_back({k, nk, "pw"});
                main = k == 1 ? nk : detail::max_hi(main, nk);
            }
            detail::finish_report(rep, bd, main, true);
            return rep;
        },
        prec);
}

namespace detail {

inline BoundReport walk_bound(const BinetData& bd, std::size_t K, const VariantSpec& variant, mpfr_prec_t p)
{
    BoundReport rep;
    rep.theorem = variant.kind == VariantSpec::Kind::zeckendorf ? "ham" : "ham2";
    rep.K = K;
    rep.l = variant.l;
    rep.b = variant.kind == VariantSpec::Kind::radix ? variant.b : Integer(0);
    rep.precision = p;
    rep.petho_preconditions_ok = petho_preconditions(bd);
    rep.field_not_q_sqrt5 = bd.delta != 5;
    rep.k1_covered = false;
    rep.ledger = elementary_constants(bd, K, variant, p);

    if (K == 1) {
        rep.bound_case = BoundCase::k_equals_one;
        finish_report(rep, bd, Interval(p), false);
        return rep;
    }

    const Interval& C12 = rep.ledger.get("C12");
    const Interval& c10 = rep.ledger.get("c10");
    const Interval beta = variant.kind == VariantSpec::Kind::zeckendorf
                              ? c10 * log(golden(p))
                              : 2 * c10 * log(Interval::from_integer(variant.b, p));
    const std::size_t l = variant.l;
    Interval main(p);
    for (std::size_t k = 2; k <= K; ++k) {
        // min{m1, n1} <= g (log n1)^c at step j = k + l - 1.
        auto ex = closed_form_exponents(k + l - 1);
        const long c = static_cast<long>(ex.c12_and_log);
        const Interval g = pow(C12, ex.c12_and_log) * pow(ival(static_cast<long>(l * k), p), ex.lk);
        Interval n1_exit = pw_transfer(0, c, g);
        // m1 exit: n1 <= (c10 log y log n1)^k with log y < m1 log phi (resp. (m1+1) log b <= 2 g (log n1)^c log b).
        Interval m1_exit = pw_transfer(0, static_cast<long>(k) * (c + 1), pow(beta * g, k));
        bool m1_wins = mpfr_cmp(m1_exit.hi(), n1_exit.hi()) > 0;
        Interval nk = m1_wins ? m1_exit : n1_exit;
        rep.per_k.push_back({k, nk, m1_wins ? "m1" : "n1"});
        main = k == 2 ? nk : max_hi(main, nk);
    }
    finish_report(rep, bd, main, true);
    return rep;
}

} // namespace detail

inline BoundReport theorem_ham_bound(const BinetData& bd, std::size_t K, std::size_t l,
                                     mpfr_prec_t prec = default_precision)
{
    if (!nonvanishing_check(bd, VariantSpec::Kind::zeckendorf))
        throw Error(errc::inapplicable, "Q(alpha) = Q(sqrt5)");
    if (K < 1)
        throw Error(errc::precondition, "K must be positive");
    return with_precision_escalation(
        [&](mpfr_prec_t p) { return detail::walk_bound(bd, K, VariantSpec::zeckendorf(l), p); }, prec);
}

inline BoundReport theorem_ham2_bound(const BinetData& bd, std::size_t K, std::size_t l, const Integer& b,
                                      mpfr_prec_t prec = default_precision)
{
    if (K < 1)
        throw Error(errc::precondition, "K must be positive");
    return with_precision_escalation(
        [&](mpfr_prec_t p) { return detail::walk_bound(bd, K, VariantSpec::radix(l, b), p); }, prec);
}

} // namespace qbound
