// SPDX-License-Identifier: MIT
#pragma once

// Command-line front end.  Kept in a header (run_cli) so the test suite can
// drive the exact code path of the installed binary in-process.
//
// Exit codes: 0 success, 1 domain error (singular input, infeasible target,
// nonlinear permutation, failed verification, ...), 2 parse/usage error.

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "triblock/blocked.hpp"
#include "triblock/decompose.hpp"
#include "triblock/errors.hpp"
#include "triblock/oracle.hpp"
#include "triblock/report.hpp"
#include "triblock/slp.hpp"
#include "triblock/textio.hpp"

namespace triblock {

namespace cli_detail {

struct Options {
    std::string input = "-";
    std::string field;                 // expected field tag; empty = accept any
    std::vector<std::uint64_t> split;  // m n
    std::vector<std::uint64_t> target; // l r
    std::string format = "text";
    std::string output;                // empty = stdout
    std::uint64_t seed = 0;            // reserved for randomized self-tests
};

inline std::string slurp_input(const Options& opt, std::istream& in) {
    if (opt.input == "-") {
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream file(opt.input);
    if (!file) throw ParseError("cannot open input file '" + opt.input + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

inline void check_expected_field(const Options& opt, const std::string& actual) {
    if (!opt.field.empty() && opt.field != actual)
        throw ParseError("input is over '" + actual + "' but --field requested '" + opt.field + "'");
}

inline AnyMatrix read_matrix(const Options& opt, std::istream& in) {
    const std::string text = slurp_input(opt, in);
    std::istringstream stream(text);
    AnyMatrix m = parse_matrix_text(stream);
    check_expected_field(opt, std::visit([](const auto& mm) { return mm.field().tag(); }, m));
    return m;
}

inline Json read_json(const Options& opt, std::istream& in) {
    const std::string text = slurp_input(opt, in);
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed JSON input: ") + e.what());
    }
}

inline std::pair<std::size_t, std::size_t> split_of(const Options& opt) {
    if (opt.split.size() != 2) throw ParseError("--split m n is required for this subcommand");
    return {static_cast<std::size_t>(opt.split[0]), static_cast<std::size_t>(opt.split[1])};
}

// Where the report goes.
class OutputTarget {
public:
    OutputTarget(const Options& opt, std::ostream& fallback) {
        if (opt.output.empty()) {
            os_ = &fallback;
        } else {
            file_.open(opt.output);
            if (!file_) throw ParseError("cannot open output file '" + opt.output + "'");
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_ = nullptr;
};

inline void emit_json(std::ostream& os, const Json& j) { os << j.dump(2) << '\n'; }

// --- subcommand bodies (templated over the field) -------------------------

template <FieldType F>
int do_decompose(const BlockedMatrix<F>& bm, const Options& opt, std::ostream& os) {
    Decomposition<F> d = [&] {
        if (opt.target.empty()) return decompose_optimal(bm);
        if (opt.target.size() != 2) throw ParseError("--target expects two values: l r");
        return decompose_pareto(bm, ParetoTarget{static_cast<std::size_t>(opt.target[0]),
                                                 static_cast<std::size_t>(opt.target[1])});
    }();
    if (opt.format == "json")
        emit_json(os, decomposition_report(bm, d));
    else
        render_decomposition(os, bm, d);
    return 0;
}

template <FieldType F>
int do_bounds(const BlockedMatrix<F>& bm, const Options& opt, std::ostream& os) {
    const RankProfile prof = rank_profile(bm);
    const LowerBounds b = lower_bounds(prof, bm.m(), bm.n());
    if (opt.format == "json") {
        Json j;
        j["schema"] = "triblock.bounds/1";
        j["field"] = bm.field().tag();
        j["m"] = bm.m();
        j["n"] = bm.n();
        j["profile"] = profile_json(prof);
        j["bounds"] = bounds_json(b);
        emit_json(os, j);
    } else {
        os << "bounds over " << bm.field().tag() << ", size " << bm.size() << " (m=" << bm.m()
           << ", n=" << bm.n() << ")\n";
        os << "profile: p1=" << prof.p1 << " p2=" << prof.p2 << " p3=" << prof.p3
           << " p4=" << prof.p4 << '\n';
        os << "bounds: rank_C3=" << b.c3_rank << " rank_L>=" << b.l_min << " rank_R>=" << b.r_min
           << " sum>=" << b.sum_min << '\n';
    }
    return 0;
}

template <FieldType F>
int do_verify(const ReportData<F>& data, const Options& opt, std::ostream& os, std::ostream& err) {
    const VerificationReport rep = verify_decomposition(data.bm, data.d);
    if (opt.format == "json")
        emit_json(os, verification_report(data.bm, rep));
    else
        render_verification(os, data.bm, rep);
    if (rep.valid()) return 0;
    err << "verification failed:";
    if (!rep.shapes_ok) err << " shapes";
    if (!rep.product_ok) err << " product";
    if (!rep.c1_invertible) err << " C1-singular";
    if (!rep.c4_invertible) err << " C4-singular";
    if (!rep.ranks_declared_ok) err << " declared-ranks";
    if (!rep.c3_rank_ok) err << " rank(C3)!=p3";
    if (!rep.l_bound_ok) err << " rank(L)<n-p1";
    if (!rep.r_bound_ok) err << " rank(R)<m-p4";
    if (!rep.sum_p2_ok) err << " rank-sum<p2";
    if (!rep.sum_bound_ok) err << " rank-sum<max(p2,m+n-p1-p4)";
    err << '\n';
    return 1;
}

template <FieldType F>
int do_exchange(const ReportData<F>& data, const Options& opt, std::ostream& os) {
    const Matrix<F> next = rank_exchange(data.bm, data.d.L);
    const Decomposition<F> d = complete_decomposition(data.bm, next);
    if (opt.format == "json")
        emit_json(os, decomposition_report(data.bm, d));
    else
        render_decomposition(os, data.bm, d);
    return 0;
}

inline int do_slp_synth(const BlockedMatrix<F2>& bm, const Options& opt, std::ostream& os) {
    const CircuitSpec spec = synthesize_circuit(bm);
    if (opt.format == "json")
        emit_json(os, circuit_report(spec));
    else
        render_circuit(os, spec);
    return 0;
}

inline int do_slp_sim(const CircuitSpec& spec, const Options& opt, std::ostream& os) {
    const PermutationTable table = simulate_stream(spec);
    // end-to-end product check: the realized permutation must match pi(P)
    const F2Matrix product = spec.post_stage * spec.ram_stage * spec.pre_stage;
    const bool matches = table == apply_linear_perm(product);
    if (opt.format == "json") {
        Json j;
        j["schema"] = "triblock.permutation/1";
        j["size"] = table.size();
        j["mapping"] = table.mapping();
        j["matches_matrix_product"] = matches;
        emit_json(os, j);
    } else {
        os << "permutation of " << table.size() << " elements (matches_matrix_product="
           << (matches ? "true" : "false") << ")\n";
        for (std::size_t i = 0; i < table.size(); ++i) os << i << ' ' << table[i] << '\n';
    }
    return matches ? 0 : 1;
}

inline int do_perm_recover(const Options& opt, std::istream& in, std::ostream& os) {
    const std::string text = slurp_input(opt, in);
    std::istringstream stream(text);
    std::vector<std::uint64_t> mapping;
    std::string token;
    while (stream >> token) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(token, &used, 10);
            if (used != token.size()) throw std::invalid_argument(token);
            mapping.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("bad permutation entry '" + token + "'");
        }
    }
    PermutationTable table = [&] {
        try {
            return PermutationTable(std::move(mapping));
        } catch (const PreconditionError& e) {
            throw ParseError(e.what());  // malformed table is an input problem
        }
    }();
    const F2Matrix p = recover_matrix(table);
    if (opt.format == "json") {
        Json j;
        j["schema"] = "triblock.matrix/1";
        j["field"] = "f2";
        j["rows"] = p.rows();
        j["cols"] = p.cols();
        j["data"] = matrix_rows_json(p);
        emit_json(os, j);
    } else {
        write_matrix_text(os, p);
    }
    return 0;
}

inline int do_oracle(const BlockedMatrix<F2>& bm, const Options& opt, std::ostream& os) {
    const OracleResult res = min_offdiag_bruteforce(bm);
    if (opt.format == "json")
        emit_json(os, oracle_report(bm, res));
    else
        render_oracle(os, bm, res);
    return 0;
}

template <typename Handler>
int with_blocked_matrix(const Options& opt, std::istream& in, Handler&& handler) {
    const auto [m, n] = split_of(opt);
    AnyMatrix any = read_matrix(opt, in);
    return std::visit(
        [&](auto&& mat) -> int {
            using FT = typename std::decay_t<decltype(mat)>::Field;
            BlockedMatrix<FT> bm(std::move(mat), m, n);
            return handler(bm);
        },
        std::move(any));
}

template <typename Handler>
int with_f2_blocked_matrix(const Options& opt, std::istream& in, Handler&& handler) {
    return with_blocked_matrix(opt, in, [&](auto& bm) -> int {
        using FT = typename std::decay_t<decltype(bm)>::Field;
        if constexpr (std::is_same_v<FT, F2>) {
            return handler(bm);
        } else {
            throw Error("this subcommand requires a matrix over f2");
        }
    });
}

template <typename Handler>
int with_report(const Options& opt, std::istream& in, Handler&& handler) {
    AnyReportData any = parse_decomposition_report(read_json(opt, in));
    return std::visit(
        [&](auto& data) -> int {
            check_expected_field(opt, data.bm.field().tag());
            return handler(data);
        },
        any);
}

}  // namespace cli_detail

// Parse and run one invocation; `args` excludes the program name.
inline int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out,
                   std::ostream& err) {
    using cli_detail::Options;
    Options opt;

    CLI::App app{"minimal-off-diagonal-rank block factorization toolkit"};
    app.require_subcommand(1);

    const auto add_common = [&](CLI::App* sub, bool with_split) {
        sub->add_option("input", opt.input, "input file, or - for stdin")->capture_default_str();
        sub->add_option("--field", opt.field, "require this field tag (f2, fp:<p>, q)");
        sub->add_option("--format", opt.format, "output format: text or json")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
        sub->add_option("--output", opt.output, "write the report to this file");
        sub->add_option("--seed", opt.seed, "seed for randomized self-tests (reserved)");
        if (with_split)
            sub->add_option("--split", opt.split, "block split: m n")->expected(2)->required();
    };

    CLI::App* c_decompose = app.add_subcommand("decompose", "factor P with minimal rank(L)+rank(R)");
    add_common(c_decompose, true);
    c_decompose->add_option("--target", opt.target, "frontier point: rank_L rank_R")->expected(2);
    CLI::App* c_bounds = app.add_subcommand("bounds", "print the rank profile and lower bounds");
    add_common(c_bounds, true);
    CLI::App* c_verify = app.add_subcommand("verify", "re-check a decomposition report");
    add_common(c_verify, false);
    CLI::App* c_exchange = app.add_subcommand("exchange", "trade one unit of rank R for rank L");
    add_common(c_exchange, false);
    CLI::App* c_synth = app.add_subcommand("slp-synth", "synthesize a streaming circuit (f2)");
    add_common(c_synth, true);
    CLI::App* c_sim = app.add_subcommand("slp-sim", "simulate a circuit report");
    add_common(c_sim, false);
    CLI::App* c_recover = app.add_subcommand("perm-recover", "find the bit-matrix inducing a permutation");
    add_common(c_recover, false);
    CLI::App* c_oracle = app.add_subcommand("oracle", "brute-force certification (f2)");
    add_common(c_oracle, true);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        cli_detail::OutputTarget target(opt, out);
        std::ostream& os = target.stream();
        using namespace cli_detail;
        if (app.got_subcommand(c_decompose))
            return with_blocked_matrix(opt, in, [&](auto& bm) { return do_decompose(bm, opt, os); });
        if (app.got_subcommand(c_bounds))
            return with_blocked_matrix(opt, in, [&](auto& bm) { return do_bounds(bm, opt, os); });
        if (app.got_subcommand(c_verify))
            return with_report(opt, in, [&](auto& data) { return do_verify(data, opt, os, err); });
        if (app.got_subcommand(c_exchange))
            return with_report(opt, in, [&](auto& data) { return do_exchange(data, opt, os); });
        if (app.got_subcommand(c_synth))
            return with_f2_blocked_matrix(opt, in, [&](auto& bm) { return do_slp_synth(bm, opt, os); });
        if (app.got_subcommand(c_sim))
            return do_slp_sim(circuit_from_report(read_json(opt, in)), opt, os);
        if (app.got_subcommand(c_recover)) return do_perm_recover(opt, in, os);
        if (app.got_subcommand(c_oracle))
            return with_f2_blocked_matrix(opt, in, [&](auto& bm) { return do_oracle(bm, opt, os); });
        err << "no subcommand selected\n";
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace triblock
