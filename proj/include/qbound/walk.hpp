#pragma once

// The double-indexed step counter (v_j, w_j) and the recursive bounds
//   u(0) = 1, u(1) = C12 log n1,
//   u(j) = C12 (v_j - 1)(w_j - 1) u(j-1) u(j-2) log n1   (j >= 2),
// together with the closed form C12^(F_{j+2}-1) (lk)^(F_{j+1}-1) (log n1)^(F_{j+2}-1).
//
// Templated over the value type: Integer for exact checks, Interval for the
// certified pipelines.

#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "qbound/error.hpp"
#include "qbound/interval.hpp"
#include "qbound/numeration.hpp"
#include "qbound/quadfield.hpp"

namespace qbound {

/// down: the minimum was m1 - m_{v_j}; right: it was n1 - n_{w_j}.
enum class Move { down, right };

template <class T>
struct WalkState {
    std::size_t j = 1;
    std::size_t v = 2;
    std::size_t w = 2;
    std::vector<T> u;                 ///< u(0)..u(j)
    std::vector<std::size_t> v_hist;  ///< v_1..v_j
    std::vector<std::size_t> w_hist;  ///< w_1..w_j
    std::vector<Move> path;
    bool exited = false;
    Move exit_via = Move::down; ///< down: m1 bounded (last row), right: n1 bounded (last column)
};

namespace detail {

template <class T>
T lift(long v, const T& like)
{
    if constexpr (std::is_same_v<T, Interval>)
        return Interval::from_int(v, like.precision());
    else
        return T(v);
}

template <class T>
T power(const T& base, unsigned long n)
{
    if constexpr (std::is_same_v<T, Interval>) {
        return pow(base, n);
    } else {
        T r;
        mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), n);
        return r;
    }
}

inline void check_walk_dims(std::size_t k, std::size_t l)
{
    if (k < 2 || l < 2)
        throw Error(errc::precondition, "walk needs k, l >= 2");
}

} // namespace detail

template <class T>
WalkState<T> walk_start(std::size_t k, std::size_t l, const T& c12, const T& log_n1)
{
    detail::check_walk_dims(k, l);
    WalkState<T> st;
    st.u.push_back(detail::lift<T>(1, c12));
    st.u.push_back(c12 * log_n1);
    st.v_hist.push_back(2);
    st.w_hist.push_back(2);
    return st;
}

/// Applies one move. Moving down from v = l+1 or right from w = k+1 exits.
template <class T>
void walk_step(WalkState<T>& st, std::size_t k, std::size_t l, const T& c12, const T& log_n1, Move m)
{
    if (st.exited)
        throw Error(errc::malformed_path, "move after exit at step " + std::to_string(st.j));
    st.path.push_back(m);
    if (m == Move::down && st.v == l + 1) {
        st.exited = true;
        st.exit_via = Move::down;
        return;
    }
    if (m == Move::right && st.w == k + 1) {
        st.exited = true;
        st.exit_via = Move::right;
        return;
    }
    if (m == Move::down)
        ++st.v;
    else
        ++st.w;
    ++st.j;
    const std::size_t j = st.j;
    T next = c12 * detail::lift<T>(static_cast<long>(st.v - 1), c12) *
             detail::lift<T>(static_cast<long>(st.w - 1), c12) * st.u[j - 1] * st.u[j - 2] * log_n1;
    st.u.push_back(std::move(next));
    st.v_hist.push_back(st.v);
    st.w_hist.push_back(st.w);
}

/// Follows `path` to its exit; the path must end exactly at an exit move.
template <class T>
WalkState<T> walk_simulate(std::size_t k, std::size_t l, const T& c12, const T& log_n1, const std::vector<Move>& path)
{
    WalkState<T> st = walk_start(k, l, c12, log_n1);
    for (Move m : path)
        walk_step(st, k, l, c12, log_n1, m);
    if (!st.exited)
        throw Error(errc::malformed_path, "path ends before an exit after " + std::to_string(path.size()) + " moves");
    if (st.j > k + l - 1)
        throw Error(errc::malformed_path, "walk exceeded k + l - 1 steps");
    return st;
}

/// Every complete path, in lexicographic order with down before right.
inline std::vector<std::vector<Move>> walk_all_paths(std::size_t k, std::size_t l)
{
    detail::check_walk_dims(k, l);
    std::vector<std::vector<Move>> out;
    std::vector<Move> cur;
    auto rec = [&](auto&& self, std::size_t v, std::size_t w) -> void {
        for (Move m : {Move::down, Move::right}) {
            cur.push_back(m);
            bool exits = (m == Move::down && v == l + 1) || (m == Move::right && w == k + 1);
            if (exits)
                out.push_back(cur);
            else
                self(self, m == Move::down ? v + 1 : v, m == Move::right ? w + 1 : w);
            cur.pop_back();
        }
    };
    rec(rec, 2, 2);
    return out;
}

/// The path whose final u is largest; ties go to the earliest path.
template <class T>
WalkState<T> walk_worst(std::size_t k, std::size_t l, const T& c12, const T& log_n1)
{
    auto paths = walk_all_paths(k, l);
    WalkState<T> best = walk_simulate(k, l, c12, log_n1, paths.front());
    for (std::size_t i = 1; i < paths.size(); ++i) {
        WalkState<T> st = walk_simulate(k, l, c12, log_n1, paths[i]);
        bool larger;
        if constexpr (std::is_same_v<T, Interval>)
            larger = mpfr_cmp(st.u.back().hi(), best.u.back().hi()) > 0;
        else
            larger = st.u.back() > best.u.back();
        if (larger)
            best = std::move(st);
    }
    return best;
}

/// Exponents of the closed form at step j.
struct ClosedFormExponents {
    unsigned long c12_and_log; ///< F_{j+2} - 1
    unsigned long lk;          ///< F_{j+1} - 1
};

inline ClosedFormExponents closed_form_exponents(std::size_t j)
{
    return {fibonacci(j + 2).get_ui() - 1, fibonacci(j + 1).get_ui() - 1};
}

template <class T>
T walk_closed_form(std::size_t j, std::size_t k, std::size_t l, const T& c12, const T& log_n1)
{
    auto e = closed_form_exponents(j);
    T lk = detail::lift<T>(static_cast<long>(l * k), c12);
    return detail::power(c12, e.c12_and_log) * detail::power(lk, e.lk) * detail::power(log_n1, e.c12_and_log);
}

} // namespace qbound
