#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"

// Spawns the installed command-line binary (path injected by the build) and
// checks the user-visible contract: output bytes, notices, and exit codes.

namespace {

struct CmdResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string temp_name(const char* tag) {
    static int counter = 0;
    return "/tmp/cfr_cli_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter++) + "_" + tag;
}

// `prefix` lets a test set environment variables for the child process.
CmdResult run_cli(const std::string& args, const std::string& prefix = "") {
    std::string out_path = temp_name("out"), err_path = temp_name("err");
    std::string cmd = prefix + " \"" + CFR_CLI_PATH + "\" " + args + " > " +
                      out_path + " 2> " + err_path;
    int raw = std::system(cmd.c_str());
    CmdResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

std::string write_config(const std::string& body) {
    std::string path = temp_name("cfg") + ".json";
    std::ofstream f(path);
    f << body;
    return path;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("extremal density command prints a unit score") {
    auto r = run_cli("gaussian --lambda 2 --dim 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "\"cfr\": 1,"));
    CHECK(contains(r.out, "\"method\": \"quadrature\""));

    auto shannon = run_cli("gaussian --lambda 1 --dim 1");
    CHECK(shannon.exit_code == 0);
    CHECK(contains(shannon.out, "\"cfr\": 1,"));
}

TEST_CASE("inadmissible order renders the violated bound and exits 1") {
    auto r = run_cli("gaussian --lambda 0.5 --dim 3");
    CHECK(r.exit_code == 1);
    CHECK(contains(r.err, "lambda must exceed max{2/3, 3/5}"));
    CHECK(r.out.empty());

    auto r1 = run_cli("gaussian --lambda 0.2 --dim 1");
    CHECK(r1.exit_code == 1);
    CHECK(contains(r1.err, "max{0, 1/3}"));
}

TEST_CASE("usage errors exit 1") {
    CHECK(run_cli("").exit_code == 1);                        // no subcommand
    CHECK(run_cli("gaussian --dim 2").exit_code == 1);        // missing lambda
    CHECK(run_cli("gaussian --lambda 2 --dim 7").exit_code == 1);
    CHECK(run_cli("frobnicate").exit_code == 1);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("hydrogenic command: dual path, fallback notice, exit codes") {
    auto both = run_cli("hydrogenic -n 1 -l 0 -m 0 --lambda 2 --method both");
    CHECK(both.exit_code == 0);
    CHECK(contains(both.out, "\"cfr\": 7.56401482435,"));
    CHECK(contains(both.out, "\"method\": \"both\""));
    CHECK(both.err.empty());

    auto circ = run_cli("hydrogenic -n 2 -l 1 -m 1 --lambda 1.5 --method closed");
    CHECK(circ.exit_code == 0);
    CHECK(contains(circ.out, "\"cfr\": 2.51868453944,"));
    CHECK(contains(circ.out, "\"method\": \"analytic\""));

    // No closed form at this order: automatic quadrature plus a notice.
    auto fallback =
        run_cli("hydrogenic -n 2 -l 0 -m 0 --lambda 1.3 --method closed");
    CHECK(fallback.exit_code == 0);
    CHECK(contains(fallback.err, "notice"));
    CHECK(contains(fallback.err, "quadrature"));
    CHECK(contains(fallback.out, "\"method\": \"quadrature\""));

    // Nodal state below the integrability threshold: divergence, exit 2.
    auto nodal =
        run_cli("hydrogenic -n 2 -l 0 -m 0 --lambda 0.7 --method quadrature");
    CHECK(nodal.exit_code == 2);
    CHECK(contains(nodal.err, "diverges"));

    // Invalid quantum numbers: domain error, exit 1.
    CHECK(run_cli("hydrogenic -n 1 -l 1 -m 0 --lambda 2").exit_code == 1);
}

TEST_CASE("verify command reports suites and exit status") {
    auto r = run_cli("verify replication");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "[PASS] replication/replication-law"));
    CHECK(contains(r.out, "all checks passed"));

    CHECK(run_cli("verify nosuchsuite").exit_code == 1);
}

TEST_CASE("sweep: deterministic CSV with in-row errors") {
    std::string cfg = write_config(R"({
        "states": [{"n":1,"l":0,"m":0},{"n":2,"l":0,"m":0}],
        "lambdas": [0.7, 2],
        "method": "both"
    })");
    auto first = run_cli("sweep --config " + cfg);
    CHECK(first.exit_code == 0);

    // Header plus one row per (state, order).
    CHECK(contains(first.out,
                   "lambda,n,l,m,fisher_lambda,renyi_power,d_norm,cfr,method,"
                   "discrepancy,error"));
    // State-major, order-minor sequencing.
    auto pos_1s_07 = first.out.find("\n0.7,1,0,0,");
    auto pos_1s_2 = first.out.find("\n2,1,0,0,");
    auto pos_2s_07 = first.out.find("\n0.7,2,0,0,");
    auto pos_2s_2 = first.out.find("\n2,2,0,0,");
    REQUIRE(pos_1s_07 != std::string::npos);
    REQUIRE(pos_1s_2 != std::string::npos);
    REQUIRE(pos_2s_07 != std::string::npos);
    REQUIRE(pos_2s_2 != std::string::npos);
    CHECK(pos_1s_07 < pos_1s_2);
    CHECK(pos_1s_2 < pos_2s_07);
    CHECK(pos_2s_07 < pos_2s_2);

    // The ground state converges at both orders; the excited s state records
    // its divergence in-row at 0.7 and still evaluates at 2.
    CHECK(contains(first.out, "2,1,0,0,") );
    CHECK(contains(first.out, "7.56401482435"));
    CHECK(contains(first.out, "540.585600309"));
    CHECK(contains(first.out, "diverges"));

    // Bit-identical rerun.
    auto second = run_cli("sweep --config " + cfg);
    CHECK(second.exit_code == 0);
    CHECK(first.out == second.out);
    std::remove(cfg.c_str());
}

TEST_CASE("sweep: JSON carries the same digits as CSV") {
    std::string csv_cfg = write_config(R"({
        "states": [{"n":2,"l":1,"m":1}],
        "lambdas": [1.5],
        "method": "closed",
        "format": "csv"
    })");
    std::string json_cfg = write_config(R"({
        "states": [{"n":2,"l":1,"m":1}],
        "lambdas": [1.5],
        "method": "closed",
        "format": "json"
    })");
    auto csv = run_cli("sweep --config " + csv_cfg);
    auto json = run_cli("sweep --config " + json_cfg);
    CHECK(csv.exit_code == 0);
    CHECK(json.exit_code == 0);
    CHECK(contains(csv.out, ",2.51868453944,analytic,"));
    CHECK(contains(json.out, "\"cfr\": 2.51868453944"));
    CHECK(contains(json.out, "\"method\": \"analytic\""));
    std::remove(csv_cfg.c_str());
    std::remove(json_cfg.c_str());
}

TEST_CASE("sweep: range expansion and config validation") {
    std::string range_cfg = write_config(R"({
        "states": [{"n":1,"l":0,"m":0}],
        "lambdas": {"min": 1.1, "max": 1.4, "step": 0.1},
        "method": "closed"
    })");
    auto r = run_cli("sweep --config " + range_cfg);
    CHECK(r.exit_code == 0);
    int rows = 0;
    for (char c : r.out)
        if (c == '\n') ++rows;
    CHECK(rows == 5);  // header + 4 orders
    std::remove(range_cfg.c_str());

    std::string empty_cfg = write_config(R"({
        "states": [{"n":1,"l":0,"m":0}],
        "lambdas": []
    })");
    auto empty = run_cli("sweep --config " + empty_cfg);
    CHECK(empty.exit_code == 1);
    CHECK(contains(empty.err, "empty"));
    std::remove(empty_cfg.c_str());

    std::string bad_json = write_config("{not json");
    CHECK(run_cli("sweep --config " + bad_json).exit_code == 1);
    std::remove(bad_json.c_str());

    CHECK(run_cli("sweep --config /tmp/definitely_missing_cfg.json").exit_code ==
          1);
}

TEST_CASE("sweep: output file sink") {
    std::string out_path = temp_name("sink") + ".csv";
    std::string cfg = write_config(std::string(R"({
        "states": [{"n":1,"l":0,"m":0}],
        "lambdas": [2],
        "method": "closed",
        "output": ")") + out_path + "\"}");
    auto r = run_cli("sweep --config " + cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    std::string sunk = slurp(out_path);
    CHECK(contains(sunk, "7.56401482435"));
    std::remove(cfg.c_str());
    std::remove(out_path.c_str());
}

TEST_CASE("tolerance override via environment") {
    auto loose = run_cli("hydrogenic -n 1 -l 0 -m 0 --lambda 1.5 --method quadrature",
                         "CFR_TOL=1e-5");
    CHECK(loose.exit_code == 0);
    auto tight = run_cli("hydrogenic -n 1 -l 0 -m 0 --lambda 1.5 --method quadrature",
                         "CFR_TOL=1e-12");
    CHECK(tight.exit_code == 0);
    CHECK(loose.out != tight.out);  // different error estimates at least

    auto bogus = run_cli("gaussian --lambda 2 --dim 1", "CFR_TOL=bogus");
    CHECK(bogus.exit_code == 1);
    CHECK(contains(bogus.err, "CFR_TOL"));

    auto negative = run_cli("gaussian --lambda 2 --dim 1", "CFR_TOL=-1e-8");
    CHECK(negative.exit_code == 1);
}

TEST_CASE("single-report reruns are bit-identical") {
    std::string cmd = "hydrogenic -n 3 -l 2 -m 2 --lambda 1.25 --method both";
    auto a = run_cli(cmd);
    auto b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(contains(a.out, "\"cfr\": 2.05810198622,"));
}
