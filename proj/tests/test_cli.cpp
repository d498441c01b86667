#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef PHASEKIT_CLI_PATH
#error "PHASEKIT_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int counter = 0;

// Runs the CLI with the given arguments, capturing stdout/stderr.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string out_path = "cli_test_stdout_" + std::to_string(counter) + ".txt";
    const std::string err_path = "cli_test_stderr_" + std::to_string(counter) + ".txt";
    ++counter;
    const std::string cmd = env_prefix + " \"" + std::string(PHASEKIT_CLI_PATH) + "\" " +
                            args + " > " + out_path + " 2> " + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> ls;
    std::istringstream ss(s);
    std::string l;
    while (std::getline(ss, l)) ls.push_back(l);
    return ls;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    return fields;
}

const std::string uniform_spec = R"({"type":"number","params":{"l":0}})";
const std::string two_mode_spec =
    R"({"type":"two_mode","params":{"l":0,"L":1,"gamma":0.785398163397448,"beta":0.3}})";

} // namespace

TEST_CASE("help exits zero and names every subcommand") {
    const auto r = run_cli("--help");
    CHECK(r.exit_code == 0);
    for (const char* sub : {"state", "uncertainty", "verify", "repro", "sweep"})
        CHECK(r.out.find(sub) != std::string::npos);
}

TEST_CASE("uncertainty emits the documented csv") {
    const auto r = run_cli("uncertainty --json '" + uniform_spec + "'");
    REQUIRE(r.exit_code == 0);
    const auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "state,alpha0,delta_theta,variance,edge_density,n_extrema");
    CHECK(r.out.find('\r') == std::string::npos);
    const auto fields = split_csv(ls[1]);
    REQUIRE(fields.size() == 6);
    CHECK(fields[0] == "number");
    CHECK(std::stod(fields[2]) ==
          doctest::Approx(std::numbers::pi / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(fields[5] == "1");
}

TEST_CASE("oracle column reports a small discrepancy") {
    const auto r = run_cli("uncertainty --json '" + two_mode_spec + "' --oracle");
    REQUIRE(r.exit_code == 0);
    const auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 2);
    const auto fields = split_csv(ls[1]);
    REQUIRE(fields.size() == 8);
    CHECK(std::stod(fields[7]) <= 1e-6);
}

TEST_CASE("jsonl output is valid json with the same keys") {
    const auto r = run_cli("uncertainty --json '" + two_mode_spec + "' --format jsonl");
    REQUIRE(r.exit_code == 0);
    const auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 1);
    const auto obj = nlohmann::json::parse(ls[0]);
    CHECK(obj.at("state") == "two_mode");
    CHECK(obj.at("variance").get<double>() ==
          doctest::Approx(std::numbers::pi * std::numbers::pi / 3.0 - 2.0).epsilon(1e-9));
}

TEST_CASE("state writes mode and density tables") {
    const auto r = run_cli("state --json '" + two_mode_spec + "' --out cli_state_test");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("modes: 2") != std::string::npos);
    CHECK(r.out.find("wrote: cli_state_test_modes.csv cli_state_test_density.csv") !=
          std::string::npos);
    const auto modes = lines_of(slurp("cli_state_test_modes.csv"));
    REQUIRE(modes.size() == 3);
    CHECK(modes[0] == "l,re,im,abs2");
    const auto density = lines_of(slurp("cli_state_test_density.csv"));
    CHECK(density.size() == 513); // header + grid_n samples
    CHECK(density[0] == "theta,rho");
    std::remove("cli_state_test_modes.csv");
    std::remove("cli_state_test_density.csv");

    // piecewise states have no mode table
    const auto p = run_cli(
        R"(state --json '{"type":"two_peak","params":{"delta":1.0}}' --out cli_state_peak)");
    REQUIRE(p.exit_code == 0);
    CHECK(p.out.find("modes: none") != std::string::npos);
    CHECK(slurp("cli_state_peak_density.csv").size() > 0);
    CHECK(slurp("cli_state_peak_modes.csv").empty());
    std::remove("cli_state_peak_density.csv");
}

TEST_CASE("invalid inputs exit with code 2") {
    CHECK(run_cli("uncertainty --json '{bad json'").exit_code == 2);
    CHECK(run_cli(R"(uncertainty --json '{"type":"nope","params":{}}')").exit_code == 2);
    CHECK(run_cli(R"(uncertainty --json '{"type":"number","params":{}}')").exit_code == 2);
    CHECK(run_cli(R"(uncertainty --json '{"type":"number","params":{"l":1,"x":2}}')")
              .exit_code == 2);
    CHECK(run_cli(R"(uncertainty --json '{"type":"number","params":{"l":0.5}}')").exit_code ==
          2);
    CHECK(run_cli("uncertainty --json '" + uniform_spec + "' --format xml").exit_code == 2);
    CHECK(run_cli("uncertainty").exit_code == 2);                 // no spec at all
    CHECK(run_cli("verify bogus_suite").exit_code == 2);
    CHECK(run_cli("sweep --json '" + uniform_spec + "' --param nope --values 1").exit_code ==
          2);
    CHECK(run_cli("--grid-n 8 uncertainty --json '" + uniform_spec + "'").exit_code == 2);
    const auto err = run_cli(R"(uncertainty --json '{"type":"number","params":{}}')").err;
    CHECK(err.find("l") != std::string::npos); // the message names the missing field
}

TEST_CASE("resource exhaustion exits with code 3") {
    // localization far beyond the mode cap
    const auto r = run_cli(
        R"(uncertainty --json '{"type":"wavepacket","params":{"epsilon":1e-8,"beta":0}}')");
    CHECK(r.exit_code == 3);
}

TEST_CASE("explicit coefficient specs round trip") {
    const std::string spec =
        R"({"type":"explicit","coeffs":[[0,0.7071067811865476,0],[3,0,0.7071067811865476]]})";
    const auto r = run_cli("uncertainty --json '" + spec + "' --format jsonl");
    REQUIRE(r.exit_code == 0);
    const auto obj = nlohmann::json::parse(lines_of(r.out)[0]);
    // equal-weight two-mode state with |l - L| = 3
    CHECK(obj.at("variance").get<double>() ==
          doctest::Approx(std::numbers::pi * std::numbers::pi / 3.0 - 2.0 / 9.0)
              .epsilon(1e-9));

    CHECK(run_cli(R"(uncertainty --json '{"type":"explicit","coeffs":[[0,1,0],[0,0,1]]}')")
              .exit_code == 2); // duplicate mode
    CHECK(run_cli(R"(uncertainty --json '{"type":"explicit","coeffs":[[0,0.4,0]]}')")
              .exit_code == 2); // norm too far off
}

TEST_CASE("spec files load from disk") {
    {
        std::ofstream f("cli_spec_test.json");
        f << two_mode_spec;
    }
    const auto r = run_cli("uncertainty --spec cli_spec_test.json");
    CHECK(r.exit_code == 0);
    CHECK(run_cli("uncertainty --spec missing_file.json").exit_code == 2);
    std::remove("cli_spec_test.json");
}

TEST_CASE("sweep emits one row per value with relation columns") {
    const auto r = run_cli("sweep --json '" + two_mode_spec +
                           "' --param gamma --values 0.2,0.5,0.8 --plot cli_sweep_plot.csv");
    REQUIRE(r.exit_code == 0);
    const auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 4);
    CHECK(ls[0] ==
          "param,value,alpha0,delta_theta,variance,edge_density,n_extrema,dl,lhs,rhs,margin,"
          "satisfied");
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const auto f = split_csv(ls[i]);
        REQUIRE(f.size() == 12);
        CHECK(f[0] == "gamma");
        CHECK(f[11] == "true");
    }
    const auto plot = lines_of(slurp("cli_sweep_plot.csv"));
    REQUIRE(plot.size() == 4);
    CHECK(plot[0] == "gamma,delta_theta,variance,margin");
    std::remove("cli_sweep_plot.csv");

    // piecewise sweeps leave the relation columns empty
    const auto p = run_cli(
        R"(sweep --json '{"type":"two_peak","params":{"delta":1.0}}' --param delta --values 1.0,2.0 --format jsonl)");
    REQUIRE(p.exit_code == 0);
    const auto obj = nlohmann::json::parse(lines_of(p.out)[0]);
    CHECK(obj.at("margin").is_null());
}

TEST_CASE("verify suites pass and report to stderr") {
    for (const char* suite : {"identities", "bases"}) {
        const auto r = run_cli(std::string("verify ") + suite);
        CHECK(r.exit_code == 0);
        CHECK(r.err.find("checks passed") != std::string::npos);
        const auto ls = lines_of(r.out);
        REQUIRE(ls.size() >= 2);
        CHECK(ls[0] == "suite,check,case,seed,value,bound,margin,pass");
        for (std::size_t i = 1; i < ls.size(); ++i)
            CHECK(ls[i].substr(ls[i].rfind(',') + 1) == "true");
    }
}

TEST_CASE("repro table passes every row") {
    const auto r = run_cli("repro");
    REQUIRE(r.exit_code == 0);
    const auto ls = lines_of(r.out);
    REQUIRE(ls.size() >= 10);
    CHECK(ls[0] ==
          "example_id,quantity,paper_value_or_asymptote,computed_value,abs_or_rel_error,"
          "tolerance,pass");
    for (std::size_t i = 1; i < ls.size(); ++i)
        CHECK(ls[i].substr(ls[i].rfind(',') + 1) == "true");
}

TEST_CASE("outputs are byte-identical across runs and thread caps") {
    const auto a = run_cli("verify bases --out cli_det_a.csv");
    const auto b = run_cli("verify bases --out cli_det_b.csv");
    const auto c = run_cli("verify bases --out cli_det_c.csv", "PHASEKIT_THREADS=2");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    REQUIRE(c.exit_code == 0);
    const auto fa = slurp("cli_det_a.csv");
    CHECK(fa == slurp("cli_det_b.csv"));
    CHECK(fa == slurp("cli_det_c.csv"));
    CHECK(!fa.empty());

    // the seed actually feeds the random suites
    const auto d = run_cli("--seed 7 verify bases --out cli_det_d.csv");
    REQUIRE(d.exit_code == 0);
    CHECK(slurp("cli_det_d.csv") != fa);

    for (const char* p : {"cli_det_a.csv", "cli_det_b.csv", "cli_det_c.csv", "cli_det_d.csv"})
        std::remove(p);
}
