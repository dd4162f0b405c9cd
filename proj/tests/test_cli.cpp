// SPDX-License-Identifier: MIT
#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "triblock/cli.hpp"

using namespace triblock;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    RunResult r;
    r.code = run_cli(std::move(args), in, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

const std::string kCase1 = std::string(TRIBLOCK_FIXTURE_DIR) + "/f2_7x7_case1.mat";
const std::string kCase2 = std::string(TRIBLOCK_FIXTURE_DIR) + "/f2_7x7_case2.mat";

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("bounds subcommand", "[cli]") {
    auto r = run({"bounds", kCase1, "--split", "4", "3"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "p1=1 p2=3 p3=3 p4=3"));
    CHECK(contains(r.out, "rank_C3=3 rank_L>=2 rank_R>=1 sum>=3"));

    auto j = run({"bounds", kCase1, "--split", "4", "3", "--format", "json"});
    CHECK(j.code == 0);
    auto parsed = Json::parse(j.out);
    CHECK(parsed["profile"]["p1"] == 1);
    CHECK(parsed["bounds"]["sum_min"] == 3);
}

TEST_CASE("decompose and verify round-trip through JSON", "[cli]") {
    auto dec = run({"decompose", kCase1, "--split", "4", "3", "--format", "json"});
    REQUIRE(dec.code == 0);
    auto rep = Json::parse(dec.out);
    CHECK(rep["rank_L"] == 2);
    CHECK(rep["rank_R"] == 1);
    CHECK(rep["optimal"] == true);

    // the verifier accepts the decomposer's own output
    auto ver = run({"verify", "-"}, dec.out);
    CHECK(ver.code == 0);
    CHECK(contains(ver.out, "valid=true"));

    // ... and rejects a tampered report
    std::string row = rep["L"][0].get<std::string>();
    row[0] = row[0] == '1' ? '0' : '1';
    rep["L"][0] = row;
    auto bad = run({"verify", "-"}, rep.dump());
    CHECK(bad.code == 1);
    CHECK(contains(bad.err, "verification failed"));
}

TEST_CASE("text and JSON reports carry the same numbers", "[cli]") {
    auto text = run({"decompose", kCase2, "--split", "4", "3"});
    auto json = run({"decompose", kCase2, "--split", "4", "3", "--format", "json"});
    REQUIRE(text.code == 0);
    REQUIRE(json.code == 0);
    auto rep = Json::parse(json.out);

    CHECK(contains(text.out, "rank_L=" + rep["rank_L"].dump()));
    CHECK(contains(text.out, "rank_R=" + rep["rank_R"].dump()));
    for (const char* key : {"L", "C4", "C3", "C1", "R", "P"})
        for (const auto& row : rep[key]) CHECK(contains(text.out, row.get<std::string>()));
}

TEST_CASE("frontier targets through the CLI", "[cli]") {
    auto ok = run({"decompose", kCase2, "--split", "4", "3", "--target", "2", "1"});
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "rank_L=2 rank_R=1"));

    auto bad = run({"decompose", kCase1, "--split", "4", "3", "--target", "3", "1"});
    CHECK(bad.code == 1);
    CHECK(contains(bad.err, "frontier"));

    auto low = run({"decompose", kCase2, "--split", "4", "3", "--target", "0", "3"});
    CHECK(low.code == 1);
    CHECK(contains(low.err, "rank L >= n - p1"));
}

TEST_CASE("exchange consumes a decomposition report", "[cli]") {
    auto dec = run({"decompose", kCase2, "--split", "4", "3", "--format", "json"});
    REQUIRE(dec.code == 0);
    auto ex = run({"exchange", "-", "--format", "json"}, dec.out);
    CHECK(ex.code == 0);
    auto rep = Json::parse(ex.out);
    CHECK(rep["rank_L"] == 2);
    CHECK(rep["rank_R"] == 1);

    // at the end of the frontier the exchange reports the bound
    auto stuck = run({"exchange", "-"}, ex.out);
    CHECK(stuck.code == 1);
    CHECK(contains(stuck.err, "error:"));
}

TEST_CASE("streaming circuit synthesis and simulation", "[cli]") {
    auto synth = run({"slp-synth", kCase1, "--split", "4", "3", "--format", "json"});
    REQUIRE(synth.code == 0);
    auto rep = Json::parse(synth.out);
    CHECK(rep["total_switches"] == 12);
    CHECK(rep["stages"].size() == 3);

    auto sim = run({"slp-sim", "-", "--format", "json"}, synth.out);
    CHECK(sim.code == 0);
    auto table = Json::parse(sim.out);
    CHECK(table["matches_matrix_product"] == true);
    CHECK(table["size"] == 128);
    CHECK(table["mapping"].size() == 128);

    // non-f2 inputs cannot be synthesized
    std::string qmat = "q 2 2\n1 0\n1/2 1\n";
    auto bad = run({"slp-synth", "-", "--split", "1", "1"}, qmat);
    CHECK(bad.code == 1);
    CHECK(contains(bad.err, "f2"));
}

TEST_CASE("permutation recovery", "[cli]") {
    auto r = run({"perm-recover", "-"}, "0 1 2 3 7 6 5 4\n");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "f2 3 3"));
    CHECK(contains(r.out, "1 0 0"));
    CHECK(contains(r.out, "1 1 0"));
    CHECK(contains(r.out, "1 0 1"));

    auto nonlinear = run({"perm-recover", "-"}, "0 1 2 3 4 5 7 6\n");
    CHECK(nonlinear.code == 1);

    auto garbage = run({"perm-recover", "-"}, "0 1 zwei 3\n");
    CHECK(garbage.code == 2);

    auto not_bijective = run({"perm-recover", "-"}, "0 0 1 2\n");
    CHECK(not_bijective.code == 2);
}

TEST_CASE("oracle subcommand certifies a fixture", "[cli]") {
    auto r = run({"oracle", kCase2, "--split", "4", "3", "--format", "json"});
    REQUIRE(r.code == 0);
    auto rep = Json::parse(r.out);
    CHECK(rep["min_sum"] == 3);
    REQUIRE(rep["pareto_set"].size() == 2);
    CHECK(rep["pareto_set"][0]["rank_L"] == 1);
    CHECK(rep["pareto_set"][0]["rank_R"] == 2);
    for (const auto& entry : rep["pareto_set"]) CHECK(entry["witness_valid"] == true);
}

TEST_CASE("exit code two covers usage and parse problems", "[cli]") {
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"decompose", kCase1}).code == 2);  // --split missing
    CHECK(run({"decompose", "-", "--split", "1", "1"}, "f2 2 2\n1 junk\n0 1\n").code == 2);
    CHECK(run({"decompose", "/no/such/file", "--split", "4", "3"}).code == 2);
    CHECK(run({"decompose", kCase1, "--split", "4", "3", "--field", "q"}).code == 2);
    CHECK(run({"decompose", kCase1, "--split", "4", "3", "--format", "yaml"}).code == 2);
    CHECK(run({"verify", "-"}, "this is not json").code == 2);
    CHECK(run({"decompose", "-", "--split", "1", "1"}, "f2 2 2\n1 0\n").code == 2);  // short body
}

TEST_CASE("exit code one covers domain failures", "[cli]") {
    // singular input
    auto singular = run({"decompose", "-", "--split", "1", "1"}, "f2 2 2\n1 1\n1 1\n");
    CHECK(singular.code == 1);
    CHECK(contains(singular.err, "singular"));
    // split/size mismatch
    CHECK(run({"decompose", "-", "--split", "2", "2"}, "f2 2 2\n1 0\n0 1\n").code == 1);
}

TEST_CASE("other fields flow through the same pipeline", "[cli]") {
    std::string qmat = "q 3 3\n1 0 0\n1/2 1 0\n-3 2/5 1\n";
    auto r = run({"decompose", "-", "--split", "1", "2", "--format", "json"}, qmat);
    REQUIRE(r.code == 0);
    auto rep = Json::parse(r.out);
    CHECK(rep["field"] == "q");
    auto ver = run({"verify", "-"}, r.out);
    CHECK(ver.code == 0);

    std::string pmat = "fp:7 3 3\n2 0 1\n6 1 0\n3 3 4\n";
    auto p = run({"decompose", "-", "--split", "2", "1", "--format", "json"}, pmat);
    REQUIRE(p.code == 0);
    CHECK(run({"verify", "-"}, p.out).code == 0);
    // field guard matches the parsed modulus
    CHECK(run({"bounds", "-", "--split", "2", "1", "--field", "fp:7"}, pmat).code == 0);
    CHECK(run({"bounds", "-", "--split", "2", "1", "--field", "fp:5"}, pmat).code == 2);
}

TEST_CASE("output file and miscellaneous flags", "[cli]") {
    const std::string path = std::string(TRIBLOCK_FIXTURE_DIR) + "/../.tmp_cli_out.json";
    auto r = run({"decompose", kCase1, "--split", "4", "3", "--format", "json", "--output", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(Json::parse(buf.str())["rank_L"] == 2);
    f.close();
    std::remove(path.c_str());

    CHECK(run({"--help"}).code == 0);
    CHECK(contains(run({"--help"}).out, "decompose"));
    CHECK(run({"bounds", kCase1, "--split", "4", "3", "--seed", "42"}).code == 0);
}
