#pragma once

// JSON forms of the toolkit's values. Big integers travel as decimal strings;
// partial quotients, digits and indices are plain numbers when they fit in
// 64 bits. Interval values are {"lo", "hi"} with outward-rounded decimals.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "qbound/bounds.hpp"
#include "qbound/cfrac.hpp"
#include "qbound/numeration.hpp"
#include "qbound/quadfield.hpp"
#include "qbound/search.hpp"

namespace qbound {

using json = nlohmann::ordered_json;

inline constexpr int json_digits = 25;

inline json small_or_string(const Integer& z)
{
    if (z.fits_slong_p())
        return static_cast<std::int64_t>(z.get_si());
    return z.get_str();
}

inline Integer integer_from_json(const json& j)
{
    if (j.is_number_integer())
        return Integer(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) {
        Integer z;
        if (z.set_str(j.get<std::string>(), 10) != 0)
            throw Error(errc::malformed_input, "not a decimal integer: " + j.get<std::string>());
        return z;
    }
    throw Error(errc::malformed_input, "expected an integer, got " + j.dump());
}

inline json to_json(const Interval& x)
{
    return json{{"lo", x.lo_string(json_digits)}, {"hi", x.hi_string(json_digits)}};
}

inline json to_json(const QuadNum& x)
{
    return json{{"a_num", x.a().get_num().get_str()}, {"a_den", x.a().get_den().get_str()},
                {"b_num", x.b().get_num().get_str()}, {"b_den", x.b().get_den().get_str()},
                {"D", x.radicand().get_str()}};
}

inline json integers_to_json(const std::vector<Integer>& xs)
{
    json arr = json::array();
    for (const auto& x : xs)
        arr.push_back(small_or_string(x));
    return arr;
}

inline json to_json(const ContinuedFraction& cf)
{
    return json{{"a0", small_or_string(cf.a0)},
                {"preperiod", integers_to_json(cf.preperiod)},
                {"period", integers_to_json(cf.period)}};
}

inline ContinuedFraction continued_fraction_from_json(const json& j)
{
    ContinuedFraction cf;
    cf.a0 = integer_from_json(j.at("a0"));
    for (const auto& v : j.at("preperiod"))
        cf.preperiod.push_back(integer_from_json(v));
    for (const auto& v : j.at("period"))
        cf.period.push_back(integer_from_json(v));
    cf.validate();
    return cf;
}

inline json to_json(const ConvergentTable& t)
{
    json q = json::array();
    for (const auto& v : t.q)
        q.push_back(v.get_str());
    return json{{"q", q}};
}

inline json to_json(const BinetData& bd)
{
    json c1 = json::array(), c2 = json::array();
    for (const auto& c : bd.c1)
        c1.push_back(to_json(c));
    for (const auto& c : bd.c2)
        c2.push_back(to_json(c));
    return json{{"t_alpha", bd.t_alpha.get_str()},
                {"r", bd.r},
                {"s", bd.s},
                {"delta", bd.delta.get_str()},
                {"theta1", to_json(bd.theta1)},
                {"theta2", to_json(bd.theta2)},
                {"c1", c1},
                {"c2", c2},
                {"c3", to_json(bd.c3)},
                {"c4", to_json(bd.c4)},
                {"N0", bd.n0}};
}

inline json to_json(const OstrowskiRep& rep) { return json{{"digits", integers_to_json(rep.digits)}}; }

inline json to_json(const ZeckendorfRep& rep) { return json{{"indices", rep.indices}}; }

inline json to_json(const RadixRep& rep)
{
    return json{{"base", small_or_string(rep.base)}, {"positions", rep.positions}, {"digits", integers_to_json(rep.digits)}};
}

inline json to_json(const BoundReport& rep)
{
    json ledger = json::object();
    for (const auto& [name, value] : rep.ledger.entries())
        ledger[name] = to_json(value);
    json per_k = json::array();
    for (const auto& pk : rep.per_k)
        per_k.push_back(json{{"k", pk.k}, {"n1_bound", pk.n1_bound.hi_string(json_digits)}, {"exit", pk.exit}});
    json j{{"theorem", rep.theorem}, {"K", rep.K}};
    if (rep.y)
        j["y"] = rep.y->get_str();
    if (rep.theorem != "y")
        j["l"] = rep.l;
    if (rep.theorem == "ham2")
        j["b"] = rep.b.get_str();
    j["precision_bits"] = rep.precision;
    j["case"] = to_string(rep.bound_case);
    j["applicability"] = json{{"field_not_Q_sqrt5", rep.field_not_q_sqrt5},
                              {"petho_preconditions_ok", rep.petho_preconditions_ok},
                              {"k1_covered", rep.k1_covered}};
    j["n1_bound"] = rep.n1_bound.hi_string(json_digits);
    j["a_bound"] = rep.a_bound.hi_string(json_digits);
    j["log_ya_bound"] = rep.log_ya_bound.hi_string(json_digits);
    j["per_k"] = per_k;
    j["ledger"] = ledger;
    return j;
}

/// Reads back what verification needs: the three upper bounds and the run parameters.
inline BoundReport bound_report_from_json(const json& j)
{
    BoundReport rep;
    try {
        rep.theorem = j.at("theorem").get<std::string>();
        rep.K = j.at("K").get<std::size_t>();
        rep.precision = j.value("precision_bits", static_cast<long>(default_precision));
        auto upper = [&](const char* key) {
            std::string s = j.at(key).get<std::string>();
            return Interval::from_decimal(s, s, rep.precision);
        };
        rep.n1_bound = upper("n1_bound");
        rep.a_bound = upper("a_bound");
        rep.log_ya_bound = upper("log_ya_bound");
    } catch (const nlohmann::json::exception& e) {
        throw Error(errc::malformed_input, std::string("bound report: ") + e.what());
    }
    return rep;
}

inline json to_json(const Solution& s)
{
    return json{{"y", s.y.get_str()}, {"a", s.a}, {"N", s.N}, {"value", s.value.get_str()}};
}

inline Solution solution_from_json(const json& j)
{
    Solution s;
    try {
        s.y = integer_from_json(j.at("y"));
        s.a = j.at("a").get<unsigned long>();
        s.N = j.at("N").get<std::vector<std::size_t>>();
        s.value = integer_from_json(j.at("value"));
    } catch (const nlohmann::json::exception& e) {
        throw Error(errc::malformed_input, std::string("solution: ") + e.what());
    }
    s.max_a = s.a;
    return s;
}

inline json error_json(const std::string& code, const std::string& detail)
{
    return json{{"error", code}, {"detail", detail}};
}

} // namespace qbound
