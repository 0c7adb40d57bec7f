#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

#ifndef SKDV_CLI_PATH
#error "SKDV_CLI_PATH must be defined by the build"
#endif

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string out_file = "cli_test_stdout.txt";
    const std::string cmd =
        std::string(SKDV_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    int code = -1;
    if (status != -1) code = WEXITSTATUS(status);
    return {code, ss.str()};
}

} // namespace

TEST_CASE("verify subcommand runs single cases") {
    const RunResult r = run_cli("verify --case a1");
    INFO(r.output);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("case a1: PASS") != std::string::npos);
}

TEST_CASE("verify emits machine-readable reports") {
    const RunResult r = run_cli("verify --case two-boson --json");
    INFO(r.output);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"case\": \"two-boson\"") != std::string::npos);
    CHECK(r.output.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("unknown case is a usage error") {
    const RunResult r = run_cli("verify --case nope");
    CHECK(r.exit_code == 2);
}

TEST_CASE("bell subcommand prints expansions") {
    const RunResult one = run_cli("bell --index 3x");
    INFO(one.output);
    CHECK(one.exit_code == 0);
    CHECK(one.output.find("f_xxx") != std::string::npos);
    CHECK(one.output.find("f_x^3") != std::string::npos);

    const RunResult two = run_cli("bell --index 3x --fields \"i*B,-p\"");
    INFO(two.output);
    CHECK(two.exit_code == 0);
    CHECK(two.output.find("B_xxx") != std::string::npos);

    const RunResult bad = run_cli("bell --index 3y");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("hirota subcommand evaluates operator strings on tau pairs") {
    const RunResult zero = run_cli("hirota --op \"Dt+Dx^3\" --pair f1g1");
    INFO(zero.output);
    CHECK(zero.exit_code == 0);
    CHECK(zero.output.find("= 0") != std::string::npos);

    const RunResult nonzero = run_cli("hirota --op \"Dx\" --pair f1g1");
    CHECK(nonzero.exit_code == 1);

    const RunResult tilde = run_cli("hirota --op \"Dx^2\" --pair ft2gt2");
    CHECK(tilde.exit_code == 0);
}

TEST_CASE("soliton subcommand writes CSV and plot script") {
    const RunResult r = run_cli(
        "soliton --profile u11 --x-min -2 --x-max 2 --samples 5 --times 0 "
        "--out cli_profile.csv --plot-script cli_profile.gp");
    INFO(r.output);
    CHECK(r.exit_code == 0);
    std::ifstream csv("cli_profile.csv");
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "x,t,value");
    std::size_t rows = 0;
    for (std::string lin; std::getline(csv, lin);) ++rows;
    CHECK(rows == 5);
    std::ifstream gp("cli_profile.gp");
    REQUIRE(gp.good());
    std::stringstream ss;
    ss << gp.rdbuf();
    CHECK(ss.str().find("cli_profile.csv") != std::string::npos);
}

TEST_CASE("config file sets wave numbers and flags override") {
    {
        std::ofstream cfg("cli_test_config.json");
        cfg << "{\"kappa\": \"1\", \"kappa_tilde\": \"1/2\"}\n";
    }
    const RunResult r = run_cli(
        "soliton --profile u11 --config cli_test_config.json --x-min 0 --x-max 1 "
        "--samples 2 --times 0 --out cli_cfg.csv");
    CHECK(r.exit_code == 0);
    std::ifstream csv("cli_cfg.csv");
    std::string header, first;
    std::getline(csv, header);
    std::getline(csv, first);
    // u(0, 0) = kappa_tilde = 0.5 with the config value.
    CHECK(first.find("0,0,0.5") != std::string::npos);

    const RunResult o = run_cli(
        "soliton --profile u11 --config cli_test_config.json --kappa-tilde 4/5 "
        "--x-min 0 --x-max 1 --samples 2 --times 0 --out cli_cfg2.csv");
    CHECK(o.exit_code == 0);
    std::ifstream csv2("cli_cfg2.csv");
    std::getline(csv2, header);
    std::getline(csv2, first);
    CHECK(first.find("0,0,0.8") != std::string::npos);

    const RunResult bad = run_cli("soliton --profile u11 --config missing.json --out x.csv");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("soliton").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
}
