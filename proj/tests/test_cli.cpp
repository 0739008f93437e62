#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "divball/scenario.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace divball;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(DIVBALL_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) res.out.append(buf.data(), n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

double grep_value(const std::string& out, const std::string& key) {
    std::stringstream ss(out);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.rfind(key + "=", 0) == 0) return std::stod(line.substr(key.size() + 1));
    }
    FAIL("key '" << key << "' not found in output:\n" << out);
    return 0.0;
}

std::string grep_text(const std::string& out, const std::string& key) {
    std::stringstream ss(out);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
    }
    FAIL("key '" << key << "' not found in output:\n" << out);
    return {};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Fixture {
    fs::path dir;
    std::string burg2r, kl2pt, one_atom;

    Fixture() {
        dir = fs::temp_directory_path() / "divball_cli_test";
        fs::create_directories(dir);
        burg2r = (dir / "burg2r.csv").string();
        save_scenario_csv(divball::testing::burg_2r(), burg2r);
        kl2pt = (dir / "kl2pt.csv").string();
        save_scenario_csv(divball::testing::kl_2pt(), kl2pt);
        one_atom = (dir / "one_atom.csv").string();
        std::ofstream out(one_atom);
        out << "node_id,coordinate,weight,payoff,p0\na,0,1,0,1\n";
    }
};

}  // namespace

TEST_CASE("vk reproduces the closed form") {
    Fixture fx;
    auto res = run_cli("vk --scenario " + fx.burg2r + " --divergence burg --k 1.0");
    CHECK(res.exit_code == 0);
    CHECK(grep_value(res.out, "v") == doctest::Approx(0.22313016).epsilon(1e-5 / 0.22));
    CHECK(grep_text(res.out, "is_density") == "false");
}

TEST_CASE("classify reports the critical regime") {
    Fixture fx;
    auto res = run_cli("classify --scenario " + fx.burg2r + " --divergence burg");
    CHECK(res.exit_code == 0);
    CHECK(grep_text(res.out, "regime") == "CRITICAL");
    CHECK(grep_value(res.out, "k_critical") == doctest::Approx(0.1931472).epsilon(1e-5));

    // with a uniform reference the Bregman ball behaves like the
    // f-divergence ball: the probe route must find the same threshold
    auto breg = run_cli("classify --scenario " + fx.burg2r + " --divergence burg --bregman");
    CHECK(breg.exit_code == 0);
    CHECK(grep_text(breg.out, "regime") == "CRITICAL");
    CHECK(grep_value(breg.out, "k_critical") == doctest::Approx(0.1931472).epsilon(1e-4));
}

TEST_CASE("validation failures exit with code 1") {
    Fixture fx;
    CHECK(run_cli("vk --scenario " + fx.one_atom + " --divergence kl --k 0.1").exit_code == 1);
    CHECK(run_cli("vk --scenario " + fx.kl2pt + " --divergence bogus --k 0.1").exit_code == 1);
    CHECK(run_cli("vk --scenario " + fx.kl2pt + " --divergence kl").exit_code != 0);
    CHECK(run_cli("vk --scenario missing.csv --divergence kl --k 0.1").exit_code == 1);
}

TEST_CASE("wlambda") {
    Fixture fx;
    auto res = run_cli("wlambda --scenario " + fx.burg2r + " --divergence burg --lambda 0.25");
    CHECK(res.exit_code == 0);
    CHECK(grep_value(res.out, "w") == doctest::Approx(0.4715735902).epsilon(1e-5));
}

TEST_CASE("localiser table") {
    Fixture fx;
    const std::string out_file = (fx.dir / "localiser.csv").string();
    auto res = run_cli("localiser --scenario " + fx.burg2r +
                       " --divergence burg --k 1.0 --out " + out_file);
    CHECK(res.exit_code == 0);
    std::ifstream in(out_file);
    std::string header;
    std::getline(in, header);
    CHECK(header == "node_id,coordinate,q_hat");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 200);
}

TEST_CASE("certify exit codes") {
    Fixture fx;
    const std::string pfile = (fx.dir / "p0.csv").string();
    {
        auto space = divball::testing::burg_2r();
        std::ofstream out(pfile);
        out << "node_id,p\n";
        for (std::size_t i = 0; i < space.size(); ++i) out << space.node_id(i) << ",1\n";
    }
    auto good = run_cli("certify --scenario " + fx.burg2r +
                        " --divergence burg --p " + pfile +
                        " --k 1.0 --eps 0.45 --gamma 0");
    CHECK(good.exit_code == 0);
    CHECK(grep_text(good.out, "is_awcd") == "true");
    CHECK(grep_value(good.out, "bregman_to_localiser") ==
          doctest::Approx(0.987793).epsilon(1e-4));
    CHECK(grep_value(good.out, "bound") == doctest::Approx(2.016760).epsilon(1e-4));

    // eps = gamma = 0: p0 is no worst-case density, the zero-radius ball
    // cannot contain it
    auto bad = run_cli("certify --scenario " + fx.burg2r +
                       " --divergence burg --p " + pfile +
                       " --k 1.0 --eps 0 --gamma 0");
    CHECK(bad.exit_code == 3);
    CHECK(grep_text(bad.out, "bound_holds") == "false");
}

TEST_CASE("gcurve, check and byte-identical reruns") {
    Fixture fx;
    const std::string gfile = (fx.dir / "gcurve.csv").string();
    const std::string args = "gcurve --scenario " + fx.burg2r +
                             " --divergence burg --theta2-from -8 --theta2-to -0.25 "
                             "--steps 32 --out " + gfile;
    CHECK(run_cli(args).exit_code == 0);
    const std::string first = slurp(gfile);
    CHECK(run_cli(args).exit_code == 0);
    CHECK(slurp(gfile) == first);

    auto chk = run_cli("check --gcurve " + gfile + " --b0 0.6666666666666666");
    CHECK(chk.exit_code == 0);
    CHECK(grep_text(chk.out, "convex") == "true");
}

TEST_CASE("fcurve") {
    Fixture fx;
    const std::string ffile = (fx.dir / "fcurve.csv").string();
    auto res = run_cli("fcurve --scenario " + fx.burg2r +
                       " --divergence burg --b-from 0.2 --b-to 0.6 --steps 9 --out " + ffile);
    CHECK(res.exit_code == 0);
    std::ifstream in(ffile);
    std::string header;
    std::getline(in, header);
    CHECK(header == "b,F");
    // F decreases toward b0
    double prev = 1e300;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const double f = std::stod(line.substr(line.find(',') + 1));
        CHECK(f <= prev + 1e-12);
        prev = f;
    }
}
