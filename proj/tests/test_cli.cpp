#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "reference_tables.hpp"
#include "sharpfr/cli.hpp"

using namespace sharpfr;
using namespace sharpfr::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string(SHARPFR_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("sharpfr_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("command names round-trip") {
    for (auto name : {"sphere-tables", "sphere-verify", "schrod-verify", "wave-audit", "penrose-check", "deficit-demo",
                      "all"}) {
        const auto c = parse_command(name);
        REQUIRE(c.has_value());
        CHECK(to_string(*c) == name);
    }
    CHECK_FALSE(parse_command("nope").has_value());
}

TEST_CASE("verdicts map to exit codes") {
    CHECK(exit_code(Verdict::Pass) == 0);
    CHECK(exit_code(Verdict::Fail) == 1);
    CHECK(exit_code(Verdict::Inconclusive) == 2);
}

TEST_CASE("configuration validation") {
    RunConfig c;
    c.d_min = 10;
    c.d_max = 3;
    std::ostringstream out, err;
    CHECK(run(c, out, err) == kExitUsage);
    CHECK(err.str().find("d-min") != std::string::npos);
    RunConfig t;
    t.tol = 0.0;
    CHECK(run(t, out, err) == kExitUsage);
}

TEST_CASE("sphere-verify over the certified range") {
    const auto dir = scratch("verify");
    const auto r = run_cli("sphere-verify --d-min 3 --d-max 60 --output " + dir.string());
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "sphere_verify.json"));
    CHECK(j["schema"] == 1);
    CHECK(j["entries"].size() == 58);
    CHECK(j["entries"][0]["d"] == 3);
    CHECK(j["entries"][0]["k_numeric"] == 7);
    CHECK(j["entries"][0]["report"]["verdict"] == "PASS");
    CHECK(r.out.find("sphere-verify d=60 PASS") != std::string::npos);
}

TEST_CASE("sphere-tables csv against the reference c0 column") {
    const auto dir = scratch("tables");
    CHECK(run_cli("sphere-tables --format csv --output " + dir.string()).code == 0);
    std::istringstream csv(slurp(dir / "sphere_thresholds.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "d,pm1_bk_threshold,k_threshold,c0_tilde");
    std::size_t rows = 0;
    while (std::getline(csv, line)) {
        int d = 0;
        std::string field;
        std::istringstream ls(line);
        std::getline(ls, field, ',');
        d = std::stoi(field);
        std::getline(ls, field, ',');
        std::getline(ls, field, ',');
        std::getline(ls, field, ',');
        const double c0 = std::stod(field);
        for (const auto& ref : reference::kThresholds) {
            if (ref.d != d) continue;
            CHECK(std::abs(c0 - ref.c0 * 1e-5) <= 2e-5);
        }
        ++rows;
    }
    CHECK(rows == 59);
    CHECK(fs::exists(dir / "sphere_cells.csv"));
}

TEST_CASE("wave-audit for d = 3") {
    const auto dir = scratch("wave");
    CHECK(run_cli("wave-audit --d 3 --output " + dir.string()).code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "wave_audit.json"));
    const auto& e = j["entries"][0];
    CHECK(std::abs(e["modes"]["rho_implied"].get<double>() - 2.0 / 3.0) <= 1e-12);
    CHECK(e["c_sharp"].contains("c1_scanned"));
    CHECK(e["c_sharp"].contains("c1_closed_form"));
    CHECK(e["c_sharp"].contains("c1_discrepancy"));
}

TEST_CASE("inconclusive verdicts exit with 2") {
    const auto dir = scratch("wave5");
    CHECK(run_cli("wave-audit --d 5 --output " + dir.string()).code == 2);
}

TEST_CASE("I/O failures exit with 3") {
    const auto blocker = scratch("blocker");
    std::ofstream(blocker) << "x";
    CHECK(run_cli("penrose-check --output " + (blocker / "sub").string()).code == 3);
    fs::remove(blocker);
}

TEST_CASE("usage errors exit with 4") {
    CHECK(run_cli("sphere-verify --d-min 9 --d-max 4").code == kExitUsage);
    CHECK(run_cli("no-such-command").code == kExitUsage);
    CHECK(run_cli("wave-audit --format xml").code == kExitUsage);
}

TEST_CASE("output directory from the environment") {
    const auto dir = scratch("env");
    const std::string cmd = "SHARPFR_OUTPUT_DIR=" + dir.string() + " " + SHARPFR_CLI_PATH + " penrose-check >/dev/null";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(dir / "penrose_check.json"));
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
    const auto a = scratch("det_a"), b = scratch("det_b");
    const std::string args = "sphere-tables --d-min 10 --d-max 16 --format csv";
    CHECK(run_cli(args + " --jobs 1 --output " + a.string()).code == 0);
    CHECK(run_cli(args + " --jobs 4 --output " + b.string()).code == 0);
    CHECK(slurp(a / "sphere_cells.csv") == slurp(b / "sphere_cells.csv"));
    CHECK(slurp(a / "sphere_thresholds.csv") == slurp(b / "sphere_thresholds.csv"));

    const std::string sargs = "schrod-verify --d-min 1 --d-max 6 --m-max 120";
    CHECK(run_cli(sargs + " --jobs 1 --output " + a.string()).code == 0);
    CHECK(run_cli(sargs + " --jobs 3 --output " + b.string()).code == 0);
    CHECK(slurp(a / "schrod_verify.json") == slurp(b / "schrod_verify.json"));
}

TEST_CASE("deficit demo and penrose check pass") {
    const auto dir = scratch("demo");
    CHECK(run_cli("deficit-demo --output " + dir.string()).code == 0);
    CHECK(run_cli("penrose-check --format csv --output " + dir.string()).code == 0);
    CHECK(slurp(dir / "penrose_check.csv").rfind("check,value,bound,verdict\n", 0) == 0);
}
