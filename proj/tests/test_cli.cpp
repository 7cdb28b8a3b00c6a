// End-to-end checks of the command-line tool: exit codes, golden CSV
// header, byte determinism, and the verify negative control.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#ifndef QCORR_CLI_PATH
#error "QCORR_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(QCORR_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::fgets(buf.data(), buf.size(), pipe))
        out += buf.data();
    const int status = pclose(pipe);
    return RunResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

const char* kHeader =
    "g1bar,g2bar,x,dperp_ratio,pop_11,pop_10,pop_1m1,pop_00,concurrence,qmi,"
    "ccl_1,ccl_2,discord_1,discord_2,geo_discord_1,geo_discord_2,linear_entropy,"
    "numeric_deviation";

} // namespace

TEST_CASE("steady: solves a point and reports the closed-form deviation") {
    const RunResult r = run("steady --g1 0.5 --g2 0 --x 1.5707963267948966 --dperp 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("max |numeric - closed form|") != std::string::npos);
    CHECK(r.output.find("concurrence") != std::string::npos);
}

TEST_CASE("steady: coupled-basis printing and undriven ground state") {
    const RunResult r = run("steady --g1 0 --g2 0 --x 3 --dperp 1 --basis coupled");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("triplet-singlet basis") != std::string::npos);
    // without drive the atoms settle into the ground state: no correlations
    CHECK(r.output.find("concurrence      0\n") != std::string::npos);
    CHECK(r.output.find("linear_entropy   0\n") != std::string::npos);
}

TEST_CASE("steady: the degenerate configuration names the missing flag") {
    const RunResult r = run("steady --g1 1 --g2 1 --x 0 --dperp 1");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("--p00") != std::string::npos);

    const RunResult ok = run("steady --g1 1 --g2 1 --x 0 --dperp 1 --p00 0.3");
    CHECK(ok.exit_code == 0);
}

TEST_CASE("steady: invalid flags exit with the usage code") {
    CHECK(run("steady --g1 0.5").exit_code == 2);
    CHECK(run("steady --g1 0.5 --g2 0 --x -1 --dperp 1").exit_code == 2);
    CHECK(run("nonsense").exit_code == 2);
}

TEST_CASE("sweep: golden header, determinism, config errors, --out") {
    const auto cfg = temp_file("qcorr_test_sweep.json");
    {
        std::ofstream f(cfg);
        f << R"({"mode":"g2zero",)"
          << R"("g1_values":{"start":0.05,"stop":2.0,"count":3,"spacing":"log"},)"
          << R"("x_values":[0.7,2.0],"dperp_ratio":1.0,"numeric_check":true})";
    }
    const auto out1 = temp_file("qcorr_test_sweep1.csv");
    const auto out2 = temp_file("qcorr_test_sweep2.csv");
    CHECK(run("sweep " + cfg.string() + " --out " + out1.string()).exit_code == 0);
    CHECK(run("sweep " + cfg.string() + " --out " + out2.string()).exit_code == 0);

    std::ifstream f1(out1), f2(out2);
    const std::string s1((std::istreambuf_iterator<char>(f1)),
                         std::istreambuf_iterator<char>());
    const std::string s2((std::istreambuf_iterator<char>(f2)),
                         std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    CHECK(s1.rfind(std::string(kHeader) + "\n", 0) == 0);
    CHECK(std::count(s1.begin(), s1.end(), '\n') == 7);  // header + 6 rows

    const auto bad = temp_file("qcorr_test_bad.json");
    {
        std::ofstream f(bad);
        f << "{ not json";
    }
    CHECK(run("sweep " + bad.string()).exit_code == 2);
    CHECK(run("sweep /no/such/file.json").exit_code == 2);

    std::filesystem::remove(cfg);
    std::filesystem::remove(out1);
    std::filesystem::remove(out2);
    std::filesystem::remove(bad);
}

TEST_CASE("figure: unknown ids are rejected with the list of valid ones") {
    const RunResult r = run("figure bogus_id");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("conc_vs_g1") != std::string::npos);
    CHECK(r.output.find("discord_limits") != std::string::npos);
}

TEST_CASE("figure: emits provenance comment plus CSV") {
    const auto out = temp_file("qcorr_test_fig.csv");
    CHECK(run("figure discord_limits --out " + out.string()).exit_code == 0);
    std::ifstream f(out);
    std::string first, second;
    std::getline(f, first);
    std::getline(f, second);
    CHECK(first.rfind("# figure=discord_limits params=", 0) == 0);
    CHECK(second == kHeader);
    std::filesystem::remove(out);
}

TEST_CASE("verify: corrupted coupling is caught by the oracle check") {
    const RunResult r = run("verify --grid-size 3 --corrupt-f");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("[FAIL] oracle-equivalence") != std::string::npos);
}
