#pragma once

// Command-line frontend. `run` parses arguments, executes one subcommand and
// writes a JSON document (JSON lines for `search`) to `out`.
//
// Exit codes: 0 success, 2 inapplicable theorem, 3 malformed input or failed
// precondition. Errors are written to `out` as {"error": code, "detail": text}.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qbound/bounds.hpp"
#include "qbound/cfrac.hpp"
#include "qbound/error.hpp"
#include "qbound/json_io.hpp"
#include "qbound/numeration.hpp"
#include "qbound/quadfield.hpp"
#include "qbound/search.hpp"

namespace qbound::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_inapplicable = 2;
inline constexpr int exit_error = 3;

struct AlphaSpec {
    std::string p = "0";
    std::string q = "1";
    std::string r = "1";
    std::string D;
};

struct RunConfig {
    mpfr_prec_t precision_bits = default_precision;
    unsigned threads = 0;
    AlphaSpec alpha;
};

inline Integer parse_integer(const std::string& s, const char* what)
{
    Integer z;
    if (s.empty() || z.set_str(s, 10) != 0)
        throw Error(errc::malformed_input, std::string(what) + " is not a decimal integer: '" + s + "'");
    return z;
}

/// alpha = (p + q sqrt D) / r.
inline QuadNum make_alpha(const AlphaSpec& spec)
{
    if (spec.D.empty())
        throw Error(errc::malformed_input, "alpha needs --D");
    Integer p = parse_integer(spec.p, "--p");
    Integer q = parse_integer(spec.q, "--q");
    Integer r = parse_integer(spec.r, "--r");
    Integer D = parse_integer(spec.D, "--D");
    if (r == 0)
        throw Error(errc::malformed_input, "--r must be nonzero");
    if (D < 2)
        throw Error(errc::not_quadratic_irrational, "D must be at least 2");
    QuadNum alpha = make_quadnum(make_rational(p, r), make_rational(q, r), D);
    if (alpha.degenerate())
        throw Error(errc::not_quadratic_irrational, "alpha = " + alpha.to_string() + " is rational");
    return alpha;
}

inline BinetData binet_for(const QuadNum& alpha, const ContinuedFraction& cf, mpfr_prec_t prec)
{
    return binet_data(cf, prec, alpha.radicand());
}

inline std::vector<Solution> read_solutions(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(errc::malformed_input, "cannot open " + path);
    std::vector<Solution> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            out.push_back(solution_from_json(json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw Error(errc::malformed_input, path + ": " + e.what());
        }
    }
    return out;
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(errc::malformed_input, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(errc::malformed_input, path + ": " + e.what());
    }
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    if (const char* env = std::getenv("QBOUND_PRECISION")) {
        try {
            cfg.precision_bits = std::stol(env);
        } catch (const std::exception&) {
            emit(out, error_json(errc::malformed_input, std::string("QBOUND_PRECISION is not an integer: ") + env));
            return exit_error;
        }
    }

    CLI::App app{"Exact continued-fraction, numeration and effective-bound toolkit", "qbound"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--p", cfg.alpha.p, "alpha = (p + q sqrt D) / r");
    app.add_option("--q", cfg.alpha.q, "coefficient of sqrt D");
    app.add_option("--r", cfg.alpha.r, "common denominator");
    app.add_option("--D", cfg.alpha.D, "radicand");
    app.add_option("--precision", cfg.precision_bits, "interval precision in bits (>= 32)");
    app.add_option("--threads", cfg.threads, "search threads (0: all cores)");

    auto* cf_cmd = app.add_subcommand("cf", "continued fractions");
    cf_cmd->require_subcommand(1);
    auto* cf_expand = cf_cmd->add_subcommand("expand", "periodic expansion of alpha");
    auto* cf_conv = cf_cmd->add_subcommand("convergents", "denominators q_0..q_n");
    std::size_t conv_n = 10;
    cf_conv->add_option("--n", conv_n, "last index")->required();
    auto* cf_binet = cf_cmd->add_subcommand("binet", "trace, roots, Binet coefficients, growth constants");

    auto* rep_cmd = app.add_subcommand("rep", "numeration systems");
    rep_cmd->require_subcommand(1);
    std::string rep_value;
    std::string rep_base = "10";
    auto* rep_ostrowski = rep_cmd->add_subcommand("ostrowski", "Ostrowski digits over the convergents of alpha");
    auto* rep_zeck = rep_cmd->add_subcommand("zeckendorf", "Zeckendorf indices");
    auto* rep_radix = rep_cmd->add_subcommand("radix", "nonzero base-b digits");
    for (auto* sc : {rep_ostrowski, rep_zeck, rep_radix})
        sc->add_option("--value", rep_value, "integer to encode")->required();
    rep_radix->add_option("--base", rep_base, "base b >= 2");

    auto* bounds_cmd = app.add_subcommand("bounds", "explicit bounds");
    bounds_cmd->require_subcommand(1);
    std::size_t K = 2, l = 2;
    std::string y_str, b_str = "10";
    auto* b_y = bounds_cmd->add_subcommand("y", "n1 in terms of y");
    b_y->add_option("--K", K)->required();
    b_y->add_option("--y", y_str)->required();
    auto* b_ham = bounds_cmd->add_subcommand("ham", "bounded Zeckendorf weight of y");
    b_ham->add_option("--K", K)->required();
    b_ham->add_option("--l", l)->required();
    auto* b_ham2 = bounds_cmd->add_subcommand("ham2", "bounded base-b weight of y");
    b_ham2->add_option("--K", K)->required();
    b_ham2->add_option("--l", l)->required();
    b_ham2->add_option("--b", b_str)->required();

    auto* search_cmd = app.add_subcommand("search", "enumerate y^a = q_N1 + ... + q_NK");
    SearchRange range;
    std::optional<std::size_t> filter_zeck;
    std::string filter_radix;
    unsigned long long budget = 0;
    search_cmd->add_option("--K", range.K)->required();
    search_cmd->add_option("--N-max", range.N_max)->required();
    search_cmd->add_option("--a-max", range.a_max)->required();
    auto* fz = search_cmd->add_option("--filter-zeckendorf", filter_zeck, "keep y of Zeckendorf weight <= L");
    auto* fr = search_cmd->add_option("--filter-radix", filter_radix, "L,B: keep y with <= L nonzero base-B digits");
    fz->excludes(fr);
    search_cmd->add_option("--budget", budget, "maximum number of tuples (0: unlimited)");

    auto* verify_cmd = app.add_subcommand("verify", "check solutions against a bound report");
    std::string sol_path, report_path;
    verify_cmd->add_option("--solutions", sol_path, "JSON lines from search")->required();
    verify_cmd->add_option("--report", report_path, "JSON from bounds")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        emit(out, error_json(errc::malformed_input, e.what()));
        return exit_error;
    }

    try {
        if (cfg.precision_bits < 32)
            throw Error(errc::malformed_input, "precision must be at least 32 bits");
        const mpfr_prec_t prec = cfg.precision_bits;

        if (*cf_cmd) {
            QuadNum alpha = make_alpha(cfg.alpha);
            ContinuedFraction cf = expand(alpha);
            if (*cf_expand)
                emit(out, to_json(cf));
            else if (*cf_conv)
                emit(out, to_json(convergents(cf, conv_n)));
            else if (*cf_binet)
                emit(out, to_json(binet_for(alpha, cf, prec)));
            return exit_ok;
        }

        if (*rep_cmd) {
            Integer value = parse_integer(rep_value, "--value");
            if (*rep_ostrowski) {
                ContinuedFraction cf = expand(make_alpha(cfg.alpha));
                OstrowskiRep rep = ostrowski_encode(value, cf);
                emit(out, to_json(rep));
            } else if (*rep_zeck) {
                emit(out, to_json(zeckendorf_encode(value)));
            } else {
                emit(out, to_json(radix_encode(value, parse_integer(rep_base, "--base"))));
            }
            return exit_ok;
        }

        if (*bounds_cmd) {
            QuadNum alpha = make_alpha(cfg.alpha);
            ContinuedFraction cf = expand(alpha);
            BinetData bd = binet_for(alpha, cf, prec);
            if (*b_y)
                emit(out, to_json(theorem_y_bound(bd, K, parse_integer(y_str, "--y"), prec)));
            else if (*b_ham)
                emit(out, to_json(theorem_ham_bound(bd, K, l, prec)));
            else
                emit(out, to_json(theorem_ham2_bound(bd, K, l, parse_integer(b_str, "--b"), prec)));
            return exit_ok;
        }

        if (*search_cmd) {
            ContinuedFraction cf = expand(make_alpha(cfg.alpha));
            std::optional<VariantSpec> filter;
            if (filter_zeck)
                filter = VariantSpec::zeckendorf(*filter_zeck);
            if (!filter_radix.empty()) {
                auto comma = filter_radix.find(',');
                if (comma == std::string::npos)
                    throw Error(errc::malformed_input, "--filter-radix expects L,B");
                Integer L = parse_integer(filter_radix.substr(0, comma), "L");
                Integer B = parse_integer(filter_radix.substr(comma + 1), "B");
                if (B < 2 || L < 0)
                    throw Error(errc::malformed_input, "--filter-radix needs L >= 0 and B >= 2");
                filter = VariantSpec::radix(L.get_ui(), B);
            }
            auto sols = enumerate_solutions(cf, range, {cfg.threads, budget});
            if (filter)
                sols = filter_by_weight(sols, *filter);
            for (const auto& s : sols)
                out << to_json(s).dump() << '\n';
            return exit_ok;
        }

        if (*verify_cmd) {
            ContinuedFraction cf = expand(make_alpha(cfg.alpha));
            auto sols = read_solutions(sol_path);
            BoundReport rep = bound_report_from_json(read_json_file(report_path));
            json failures = json::array();
            for (const auto& s : sols) {
                if (!check_solution(s, cf))
                    failures.push_back(json{{"N", s.N}, {"reason", "not a solution"}});
                else if (!verify_bounds({s}, rep, cf))
                    failures.push_back(json{{"N", s.N}, {"reason", "exceeds bound"}});
            }
            emit(out, json{{"ok", failures.empty()}, {"checked", sols.size()}, {"failures", failures}});
            return failures.empty() ? exit_ok : exit_error;
        }
    } catch (const BudgetExceeded& e) {
        json j = error_json(e.code(), e.detail());
        j["frontier"] = e.frontier();
        json partial = json::array();
        for (const auto& s : e.partial())
            partial.push_back(to_json(s));
        j["partial"] = partial;
        emit(out, j);
        return exit_error;
    } catch (const Error& e) {
        emit(out, error_json(e.code(), e.detail()));
        return e.code() == errc::inapplicable ? exit_inapplicable : exit_error;
    } catch (const std::exception& e) {
        emit(out, error_json("internal", e.what()));
        return exit_error;
    }
    err << "no command\n";
    return exit_error;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(args, out, err);
}

} // namespace qbound::cli
