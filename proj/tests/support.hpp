#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "qbound/cfrac.hpp"
#include "qbound/quadfield.hpp"

namespace testsupport {

using qbound::Integer;
using qbound::Rational;

struct AlphaSpec {
    long p, q, r, D;
};

/// (p + q sqrt D)/r with |p|, |q|, r <= 10, 2 <= D <= 50 and D not a square.
inline AlphaSpec random_alpha(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> pq(-10, 10), rr(1, 10), dd(2, 50);
    AlphaSpec a{};
    do {
        a.p = pq(rng);
        a.q = pq(rng);
        a.r = rr(rng);
        a.D = dd(rng);
    } while (a.q == 0 || qbound::is_perfect_square(Integer(a.D)));
    return a;
}

inline qbound::QuadNum to_quad(const AlphaSpec& a)
{
    return qbound::make_quadnum(Rational(a.p, a.r), Rational(a.q, a.r), Integer(a.D));
}

inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Classical (P + sqrt d)/Q expansion with state-repeat detection, a0 excluded
/// from the period.
inline qbound::ContinuedFraction expansion_oracle(const AlphaSpec& a)
{
    Integer r = a.r;
    Integer d = Integer(a.q) * a.q * a.D * r * r;
    Integer P = Integer(a.p) * r;
    Integer Q = r * r;
    if (a.q < 0) {
        P = -P;
        Q = -Q;
    }
    Integer s;
    mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());
    std::vector<Integer> quotients;
    std::map<std::pair<Integer, Integer>, std::size_t> seen;
    for (std::size_t i = 0;; ++i) {
        if (i >= 1) {
            auto key = std::make_pair(P, Q);
            auto it = seen.find(key);
            if (it != seen.end()) {
                qbound::ContinuedFraction cf;
                cf.a0 = quotients[0];
                cf.preperiod.assign(quotients.begin() + 1, quotients.begin() + static_cast<long>(it->second));
                cf.period.assign(quotients.begin() + static_cast<long>(it->second), quotients.end());
                return cf;
            }
            seen.emplace(key, i);
        }
        Integer q = Q > 0 ? floor_div(P + s, Q) : floor_div(-P - s - 1, -Q);
        quotients.push_back(q);
        Integer P2 = q * Q - P;
        Integer Q2 = (d - P2 * P2) / Q;
        P = P2;
        Q = Q2;
    }
}

/// q_0..q_n from the 2x2 matrix product of [[a_i, 1], [1, 0]].
inline std::vector<Integer> denominators_oracle(const std::vector<Integer>& quotients, std::size_t n)
{
    std::vector<Integer> out;
    Integer m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    out.push_back(1);
    for (std::size_t i = 1; i <= n; ++i) {
        const Integer& a = quotients[i];
        Integer n00 = m00 * a + m01, n01 = m00;
        Integer n10 = m10 * a + m11, n11 = m10;
        m00 = n00;
        m01 = n01;
        m10 = n10;
        m11 = n11;
        out.push_back(m00);
    }
    return out;
}

inline std::vector<Integer> quotient_stream(const qbound::ContinuedFraction& cf, std::size_t n)
{
    std::vector<Integer> out{cf.a0};
    for (std::size_t i = 1; i <= n; ++i) {
        std::size_t k = i - 1;
        if (k < cf.preperiod.size())
            out.push_back(cf.preperiod[k]);
        else
            out.push_back(cf.period[(k - cf.preperiod.size()) % cf.period.size()]);
    }
    return out;
}

/// Twenty irrationals shared by the exactness suites.
inline std::vector<AlphaSpec> fixed_alphas(std::uint64_t seed = 20240611, std::size_t count = 20)
{
    std::mt19937_64 rng(seed);
    std::vector<AlphaSpec> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(random_alpha(rng));
    return out;
}

} // namespace testsupport
