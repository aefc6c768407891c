// Black-box tests of the command-line tool. COSPARSE_CLI holds its path.
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string("\"") + COSPARSE_CLI + "\" " + args + " 2>/tmp/cosparse_cli_stderr";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string last_stderr() {
    std::ifstream f("/tmp/cosparse_cli_stderr");
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("version") {
    const Run r = run("version");
    CHECK(r.status == 0);
    CHECK(r.out == "cosparse 0.1.0\n");
}

TEST_CASE("print-resolved output round-trips through --instance") {
    std::mt19937_64 rng(71);
    auto pick = [&](std::initializer_list<const char*> options) {
        std::vector<const char*> v(options);
        return std::string(v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]);
    };
    const std::string path = "/tmp/cosparse_cli_instance.json";
    for (int trial = 0; trial < 100; ++trial) {
        std::string args = "ic --print-resolved";
        if (rng() & 1u) args += " --phi " + pick({"id", "blur:sigma=0.75", "gauss:q=12,seed=5", "gauss:seed=2,q=20"});
        if (rng() & 1u) args += " --dict " + pick({"tv", "id", "haar", "haar:tau=1", "fused", "fused:eps=0.5"});
        args += " --signal " + pick({"boxcar", "boxcar:n=16,eta=0.25", "staircase:n=12", "two-boxcar:n=32", "file:/tmp/x.csv"});
        if (rng() & 1u) args += " --noise " + pick({"none", "gaussian", "gaussian:sigma=0.05,seed=3"});
        if (rng() & 1u) args += " --lambda " + quoted(pick({"0.3", "auto-small", "auto-noise", "auto-noise(2.5)"}));
        const Run first = run(args);
        REQUIRE(first.status == 0);
        {
            std::ofstream f(path);
            f << first.out;
        }
        const Run second = run("arc --print-resolved --instance " + path);
        CHECK(second.status == 0);
        CHECK(second.out == first.out);
        CHECK(nlohmann::json::parse(first.out).is_object());
    }
    std::filesystem::remove(path);
}

TEST_CASE("solve then certify") {
    const std::string report = "/tmp/cosparse_cli_report.json";
    const Run s = run("solve --signal boxcar:n=32,eta=0.2 --noise gaussian:sigma=0.001,seed=2 --lambda auto-small --out " +
                      report);
    REQUIRE(s.status == 0);
    std::ifstream f(report);
    const auto j = nlohmann::json::parse(f);
    CHECK(j["converged"].get<bool>());
    CHECK(j["sign_matches_x0"].get<bool>());
    const Run c = run("certify --report " + report);
    REQUIRE(c.status == 0);
    const auto cert = nlohmann::json::parse(c.out);
    CHECK(cert["certified"].get<bool>());
    std::filesystem::remove(report);
}

TEST_CASE("staircase IC is 1") {
    const Run r = run("ic --signal staircase:n=32");
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["value"].get<double>() - 1.0) <= 1e-6);
}

TEST_CASE("automatic bounded-noise lambda refuses ARC >= 1") {
    const Run r = run("solve --signal staircase:n=16 --noise gaussian --lambda auto-noise");
    CHECK(r.status == 4);
    CHECK(last_stderr().find("ARC ≥ 1") != std::string::npos);
}

TEST_CASE("exit codes for bad usage and bad data") {
    CHECK(run("solve --no-such-flag").status == 2);
    CHECK(run("").status == 2);
    CHECK(run("solve --signal boxcar --lambda banana").status == 2);
    CHECK(run("ic --signal /nonexistent/file.csv").status == 3);
}

TEST_CASE("experiment writes a CSV") {
    const Run r = run("experiment tv_staircase --param n=8 --param eps=0.5 --param points=4");
    REQUIRE(r.status == 0);
    CHECK(r.out.find("lambda,") != std::string::npos);
    CHECK(run("experiment tv_staircase --param nope=1").status == 2);
}

}
