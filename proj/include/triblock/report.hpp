// SPDX-License-Identifier: MIT
#pragma once

// Machine-readable (JSON) and human-readable (text) reports, plus the
// inverse parsers the CLI uses to feed one command's output into another.
// JSON matrices are arrays of row strings in the field's text syntax; the
// surrounding object carries the field tag and the block split, so every
// report is self-contained.

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "triblock/blocked.hpp"
#include "triblock/decompose.hpp"
#include "triblock/errors.hpp"
#include "triblock/matrix.hpp"
#include "triblock/oracle.hpp"
#include "triblock/slp.hpp"
#include "triblock/textio.hpp"

namespace triblock {

using Json = nlohmann::ordered_json;

template <FieldType F>
Json matrix_rows_json(const Matrix<F>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(row_string(m, i));
    return rows;
}

template <FieldType F>
Matrix<F> matrix_from_rows_json(const Json& rows, F field, std::size_t r, std::size_t c) {
    if (!rows.is_array() || rows.size() != r)
        throw ParseError("matrix block must be an array of " + std::to_string(r) + " row strings");
    Matrix<F> m(field, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (!rows[i].is_string()) throw ParseError("matrix row must be a string");
        std::istringstream ls(rows[i].get<std::string>());
        std::string token;
        for (std::size_t j = 0; j < c; ++j) {
            if (!(ls >> token)) throw ParseError("matrix row has too few entries");
            m(i, j) = field.parse(token);
        }
        if (ls >> token) throw ParseError("matrix row has too many entries");
    }
    return m;
}

inline Json profile_json(const RankProfile& p) {
    return Json{{"p1", p.p1}, {"p2", p.p2}, {"p3", p.p3}, {"p4", p.p4}};
}

inline Json bounds_json(const LowerBounds& b) {
    return Json{{"c3_rank", b.c3_rank}, {"l_min", b.l_min}, {"r_min", b.r_min}, {"sum_min", b.sum_min}};
}

// --- decomposition ---------------------------------------------------------

template <FieldType F>
Json decomposition_report(const BlockedMatrix<F>& bm, const Decomposition<F>& d) {
    const LowerBounds b = lower_bounds(bm);
    Json j;
    j["schema"] = "triblock.decomposition/1";
    j["field"] = bm.field().tag();
    j["m"] = bm.m();
    j["n"] = bm.n();
    j["P"] = matrix_rows_json(bm.matrix());
    j["profile"] = profile_json(rank_profile(bm));
    j["bounds"] = bounds_json(b);
    j["L"] = matrix_rows_json(d.L);
    j["C4"] = matrix_rows_json(d.C4);
    j["C3"] = matrix_rows_json(d.C3);
    j["C1"] = matrix_rows_json(d.C1);
    j["R"] = matrix_rows_json(d.R);
    j["rank_L"] = d.rank_L;
    j["rank_R"] = d.rank_R;
    j["optimal"] = d.rank_L + d.rank_R == b.sum_min;
    return j;
}

template <FieldType F>
struct ReportData {
    BlockedMatrix<F> bm;
    Decomposition<F> d;
};

using AnyReportData = std::variant<ReportData<F2>, ReportData<Fp>, ReportData<Rationals>>;

namespace detail {

inline std::size_t json_size(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned())
        throw ParseError(std::string("report is missing a non-negative integer field '") + key + "'");
    return j[key].get<std::size_t>();
}

template <FieldType F>
ReportData<F> parse_report_typed(const Json& j, F field) {
    const std::size_t m = json_size(j, "m"), n = json_size(j, "n");
    if (!j.contains("P")) throw ParseError("report is missing the input matrix P");
    BlockedMatrix<F> bm(matrix_from_rows_json(j["P"], field, m + n, m + n), m, n);
    Decomposition<F> d{matrix_from_rows_json(j.at("L"), field, n, m),
                       matrix_from_rows_json(j.at("C4"), field, m, m),
                       matrix_from_rows_json(j.at("C3"), field, m, n),
                       matrix_from_rows_json(j.at("C1"), field, n, n),
                       matrix_from_rows_json(j.at("R"), field, n, m),
                       json_size(j, "rank_L"),
                       json_size(j, "rank_R")};
    return ReportData<F>{std::move(bm), std::move(d)};
}

}  // namespace detail

inline AnyReportData parse_decomposition_report(const Json& j) {
    if (!j.is_object()) throw ParseError("decomposition report must be a JSON object");
    if (!j.contains("field") || !j["field"].is_string())
        throw ParseError("decomposition report is missing the field tag");
    const AnyField field = parse_field_tag(j["field"].get<std::string>());
    try {
        return std::visit(
            [&](auto f) -> AnyReportData { return detail::parse_report_typed(j, std::move(f)); }, field);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed decomposition report: ") + e.what());
    }
}

template <FieldType F>
void render_matrix(std::ostream& out, const std::string& name, const Matrix<F>& m) {
    out << name << " (" << m.rows() << " x " << m.cols() << "):\n";
    for (std::size_t i = 0; i < m.rows(); ++i) out << "  " << row_string(m, i) << '\n';
}

template <FieldType F>
void render_decomposition(std::ostream& out, const BlockedMatrix<F>& bm, const Decomposition<F>& d) {
    const RankProfile p = rank_profile(bm);
    const LowerBounds b = lower_bounds(bm);
    out << "factorization over " << bm.field().tag() << ", size " << bm.size() << " (m=" << bm.m()
        << ", n=" << bm.n() << ")\n";
    out << "profile: p1=" << p.p1 << " p2=" << p.p2 << " p3=" << p.p3 << " p4=" << p.p4 << '\n';
    out << "bounds: rank_C3=" << b.c3_rank << " rank_L>=" << b.l_min << " rank_R>=" << b.r_min
        << " sum>=" << b.sum_min << '\n';
    out << "rank_L=" << d.rank_L << " rank_R=" << d.rank_R << " optimal="
        << (d.rank_L + d.rank_R == b.sum_min ? "true" : "false") << '\n';
    render_matrix(out, "P", bm.matrix());
    render_matrix(out, "L", d.L);
    render_matrix(out, "C4", d.C4);
    render_matrix(out, "C3", d.C3);
    render_matrix(out, "C1", d.C1);
    render_matrix(out, "R", d.R);
}

// --- verification ------------------------------------------------------------

template <FieldType F>
Json verification_report(const BlockedMatrix<F>& bm, const VerificationReport& rep) {
    Json j;
    j["schema"] = "triblock.verification/1";
    j["field"] = bm.field().tag();
    j["m"] = bm.m();
    j["n"] = bm.n();
    j["profile"] = profile_json(rep.profile);
    j["bounds"] = bounds_json(rep.bounds);
    j["rank_L"] = rep.rank_L;
    j["rank_R"] = rep.rank_R;
    j["rank_C3"] = rep.rank_C3;
    j["checks"] = Json{{"shapes_ok", rep.shapes_ok},
                       {"product_ok", rep.product_ok},
                       {"c1_invertible", rep.c1_invertible},
                       {"c4_invertible", rep.c4_invertible},
                       {"ranks_declared_ok", rep.ranks_declared_ok},
                       {"c3_rank_ok", rep.c3_rank_ok},
                       {"l_bound_ok", rep.l_bound_ok},
                       {"r_bound_ok", rep.r_bound_ok},
                       {"sum_p2_ok", rep.sum_p2_ok},
                       {"sum_bound_ok", rep.sum_bound_ok}};
    j["optimal"] = rep.optimal;
    j["valid"] = rep.valid();
    return j;
}

template <FieldType F>
void render_verification(std::ostream& out, const BlockedMatrix<F>& bm, const VerificationReport& rep) {
    const auto flags = out.flags();
    out << std::boolalpha;
    out << "verification over " << bm.field().tag() << ", size " << bm.size() << " (m=" << bm.m()
        << ", n=" << bm.n() << ")\n";
    out << "profile: p1=" << rep.profile.p1 << " p2=" << rep.profile.p2 << " p3=" << rep.profile.p3
        << " p4=" << rep.profile.p4 << '\n';
    out << "bounds: rank_C3=" << rep.bounds.c3_rank << " rank_L>=" << rep.bounds.l_min
        << " rank_R>=" << rep.bounds.r_min << " sum>=" << rep.bounds.sum_min << '\n';
    out << "rank_L=" << rep.rank_L << " rank_R=" << rep.rank_R << " rank_C3=" << rep.rank_C3 << '\n';
    out << "checks: shapes_ok=" << rep.shapes_ok << " product_ok=" << rep.product_ok
        << " c1_invertible=" << rep.c1_invertible << " c4_invertible=" << rep.c4_invertible
        << " ranks_declared_ok=" << rep.ranks_declared_ok << " c3_rank_ok=" << rep.c3_rank_ok
        << " l_bound_ok=" << rep.l_bound_ok << " r_bound_ok=" << rep.r_bound_ok
        << " sum_p2_ok=" << rep.sum_p2_ok << " sum_bound_ok=" << rep.sum_bound_ok << '\n';
    out << "optimal=" << rep.optimal << " valid=" << rep.valid() << '\n';
    out.flags(flags);
}

// --- circuits ----------------------------------------------------------------

inline Json circuit_report(const CircuitSpec& spec) {
    Json j;
    j["schema"] = "triblock.circuit/1";
    j["m"] = spec.m;
    j["n"] = spec.n;
    j["stages"] = Json::array({Json{{"kind", "switch"},
                                    {"matrix", matrix_rows_json(spec.pre_stage)},
                                    {"switches", spec.pre_switches}},
                               Json{{"kind", "ram"},
                                    {"matrix", matrix_rows_json(spec.ram_stage)},
                                    {"banks", spec.ram_banks}},
                               Json{{"kind", "switch"},
                                    {"matrix", matrix_rows_json(spec.post_stage)},
                                    {"switches", spec.post_switches}}});
    j["total_switches"] = spec.total_switches();
    return j;
}

inline CircuitSpec circuit_from_report(const Json& j) {
    try {
        const std::size_t m = detail::json_size(j, "m"), n = detail::json_size(j, "n");
        const auto& stages = j.at("stages");
        if (!stages.is_array() || stages.size() != 3)
            throw ParseError("circuit report must have exactly three stages");
        const auto stage_matrix = [&](std::size_t idx, const char* kind) {
            const auto& st = stages[idx];
            if (!st.contains("kind") || st["kind"] != kind)
                throw ParseError("circuit stages must be switch / ram / switch");
            return matrix_from_rows_json(st.at("matrix"), F2{}, m + n, m + n);
        };
        CircuitSpec spec{m,
                         n,
                         stage_matrix(0, "switch"),
                         stage_matrix(1, "ram"),
                         stage_matrix(2, "switch"),
                         detail::json_size(stages[0], "switches"),
                         detail::json_size(stages[2], "switches"),
                         detail::json_size(stages[1], "banks")};
        return spec;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed circuit report: ") + e.what());
    }
}

inline void render_circuit(std::ostream& out, const CircuitSpec& spec) {
    out << "streaming circuit for m=" << spec.m << ", n=" << spec.n << " (" << (std::size_t{1} << spec.n)
        << " ports, " << (std::size_t{1} << spec.m) << " cycles)\n";
    out << "pre_switches=" << spec.pre_switches << " ram_banks=" << spec.ram_banks
        << " post_switches=" << spec.post_switches << " total_switches=" << spec.total_switches()
        << '\n';
    render_matrix(out, "pre_stage", spec.pre_stage);
    render_matrix(out, "ram_stage", spec.ram_stage);
    render_matrix(out, "post_stage", spec.post_stage);
}

// --- oracle ------------------------------------------------------------------

inline Json oracle_report(const BlockedMatrix<F2>& bm, const OracleResult& res) {
    Json j;
    j["schema"] = "triblock.oracle/1";
    j["field"] = bm.field().tag();
    j["m"] = bm.m();
    j["n"] = bm.n();
    j["profile"] = profile_json(rank_profile(bm));
    j["bounds"] = bounds_json(lower_bounds(bm));
    j["min_sum"] = res.min_sum;
    Json pareto = Json::array();
    for (std::size_t i = 0; i < res.pareto_set.size(); ++i) {
        const auto [l, r] = res.pareto_set[i];
        const Decomposition<F2> d = complete_decomposition(bm, res.witnesses[i]);
        const VerificationReport rep = verify_decomposition(bm, d);
        pareto.push_back(Json{{"rank_L", l},
                              {"rank_R", r},
                              {"witness_L", matrix_rows_json(res.witnesses[i])},
                              {"witness_valid", rep.valid()}});
    }
    j["pareto_set"] = std::move(pareto);
    return j;
}

inline void render_oracle(std::ostream& out, const BlockedMatrix<F2>& bm, const OracleResult& res) {
    const RankProfile p = rank_profile(bm);
    const LowerBounds b = lower_bounds(bm);
    out << "brute-force certification over f2, size " << bm.size() << " (m=" << bm.m() << ", n="
        << bm.n() << ")\n";
    out << "profile: p1=" << p.p1 << " p2=" << p.p2 << " p3=" << p.p3 << " p4=" << p.p4 << '\n';
    out << "bounds: rank_C3=" << b.c3_rank << " rank_L>=" << b.l_min << " rank_R>=" << b.r_min
        << " sum>=" << b.sum_min << '\n';
    out << "min_sum=" << res.min_sum << '\n';
    for (std::size_t i = 0; i < res.pareto_set.size(); ++i) {
        const auto [l, r] = res.pareto_set[i];
        out << "pareto: rank_L=" << l << " rank_R=" << r << '\n';
        render_matrix(out, "witness_L", res.witnesses[i]);
    }
}

}  // namespace triblock
