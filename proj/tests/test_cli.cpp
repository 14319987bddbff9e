// End-to-end tests for the command-line tool: golden outputs, exit codes,
// --expect-fail inversion, registry resolution, and output determinism.
// The binary and data paths arrive as compile definitions from CMake.

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args, bool merge_stderr = false, const std::string& env_prefix = "") {
    const std::string cmd =
        env_prefix + std::string(CLI_BINARY_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("compute prints golden values") {
    const auto res = run_cli("compute --seq gamma --n 3 --format table");
    CHECK(res.exit_code == 0);
    CHECK(res.output == "1\n5\n73\n1445\n");
}

TEST_CASE("compute prints the formal derivative as exact rationals") {
    const auto res = run_cli("compute --seq D --n 3 --derivative --format table");
    CHECK(res.exit_code == 0);
    CHECK(res.output == "0\n5\n75/2\n1855/6\n");
}

TEST_CASE("compute emits json with string-encoded values") {
    const auto res = run_cli("compute --seq gamma --n 3");
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.output);
    CHECK(j["label"] == "gamma");
    CHECK(j["derivative"] == false);
    CHECK(j["n"] == 3);
    CHECK(j["values"] == nlohmann::json::array({"1", "5", "73", "1445"}));
}

TEST_CASE("verify lucas reports a clean sweep") {
    const auto res = run_cli("verify lucas --seq gamma --p 5 --bound 100");
    REQUIRE(res.exit_code == 0);
    const auto arr = nlohmann::json::parse(res.output);
    REQUIRE(arr.size() == 1);
    CHECK(arr[0]["kind"] == "lucas");
    CHECK(arr[0]["label"] == "gamma");
    CHECK(arr[0]["p"] == 5);
    CHECK(arr[0]["verdict"] == "holds on range");
    CHECK(arr[0]["violations"].empty());
}

TEST_CASE("expect-fail inverts the exit code in both directions") {
    const auto plain = run_cli("verify super --seq B --p 2 --bound 100");
    CHECK(plain.exit_code == 1);
    const auto arr = nlohmann::json::parse(plain.output);
    CHECK(arr[0]["violation_count"] == 25);
    CHECK(arr[0]["verdict"] == "violations found");

    CHECK(run_cli("verify super --seq B --p 2 --bound 100 --expect-fail").exit_code == 0);
    CHECK(run_cli("verify lucas --seq gamma --p 5 --bound 100 --expect-fail").exit_code == 1);
}

TEST_CASE("configuration errors exit 2") {
    CHECK(run_cli("compute --seq nope --n 3").exit_code == 2);
    CHECK(run_cli("verify lucas --seq gamma --p 4 --bound 50").exit_code == 2);
    CHECK(run_cli("verify lucas --seq gamma --bound 50").exit_code == 2);  // no --p
    CHECK(run_cli("verify super --seq gamma --p 3 --lambda 3 --bound 50").exit_code == 2);
    CHECK(run_cli("verify jacobsthal --p 5 --n 0").exit_code == 2);
    CHECK(run_cli("compute --seq gamma --registry /nonexistent/registry.json").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);  // a subcommand is required
    CHECK(run_cli("compute --seq gamma --format yaml").exit_code == 2);
}

TEST_CASE("help exits 0") {
    const auto res = run_cli("--help");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("compute") != std::string::npos);
    CHECK(res.output.find("verify") != std::string::npos);
}

TEST_CASE("registry resolution: flag, environment, and embedded default agree") {
    const std::string embedded = run_cli("compute --seq gamma --n 5 --format table").output;
    const auto from_flag = run_cli(std::string("compute --seq gamma --n 5 --format table --registry ") +
                                   DATA_REGISTRY_PATH);
    CHECK(from_flag.exit_code == 0);
    CHECK(from_flag.output == embedded);

    const auto from_env = run_cli("compute --seq gamma --n 5 --format table", false,
                                  std::string("CONGRUENCE_LAB_REGISTRY=") + DATA_REGISTRY_PATH + " ");
    CHECK(from_env.exit_code == 0);
    CHECK(from_env.output == embedded);

    CHECK(run_cli("compute --seq gamma --n 5", false,
                  "CONGRUENCE_LAB_REGISTRY=/nonexistent/registry.json ").exit_code == 2);
    // an explicit flag wins over a broken environment value
    const auto flag_wins = run_cli(std::string("compute --seq gamma --n 5 --format table --registry ") +
                                       DATA_REGISTRY_PATH,
                                   false, "CONGRUENCE_LAB_REGISTRY=/nonexistent/registry.json ");
    CHECK(flag_wins.exit_code == 0);
    CHECK(flag_wins.output == embedded);
}

TEST_CASE("a registry with one corrupted coefficient is rejected") {
    std::string doc = slurp(DATA_REGISTRY_PATH);
    const auto pos = doc.find("\"c\": -1,");
    REQUIRE(pos != std::string::npos);
    doc.replace(pos, 8, "\"c\": 1,");
    const std::string path = "/tmp/congruence_lab_bad_registry.json";
    {
        std::ofstream f(path, std::ios::binary);
        f << doc;
    }
    const auto res = run_cli("compute --seq D --n 3 --registry " + path, true);
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("non-integral") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("output is deterministic across runs") {
    const std::string args = "report --seq gamma";
    const auto first = run_cli(args);
    const auto second = run_cli(args);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
    CHECK_FALSE(first.output.empty());
}

TEST_CASE("--out writes exactly what stdout would carry") {
    const std::string path = "/tmp/congruence_lab_cli_out.json";
    const auto to_stdout = run_cli("verify lucas --seq gamma --p 3,5 --bound 60");
    const auto to_file = run_cli("verify lucas --seq gamma --p 3,5 --bound 60 --out " + path);
    CHECK(to_file.exit_code == 0);
    CHECK(to_file.output.empty());
    CHECK(slurp(path) == to_stdout.output);
    std::remove(path.c_str());
}

TEST_CASE("crosscheck compares every representation of a sequence") {
    const auto res = run_cli("crosscheck --seq F --bound 10");
    REQUIRE(res.exit_code == 0);
    const auto arr = nlohmann::json::parse(res.output);
    REQUIRE(arr.size() == 1);
    CHECK(arr[0]["label"] == "F");
    const auto& checks = arr[0]["checks"];
    REQUIRE(checks.size() == 3);
    CHECK(checks[0]["representation"] == "binomial_sum_zagier_F");
    CHECK(checks[1]["representation"] == "constant_term");
    CHECK(checks[2]["representation"] == "multiple_sum_U");
    for (const auto& c : checks) CHECK(c["agree"] == true);
}

TEST_CASE("report battery for one sequence is clean and structured") {
    const auto res = run_cli("report --seq gamma");
    REQUIRE(res.exit_code == 0);
    const auto arr = nlohmann::json::parse(res.output);
    CHECK(arr.size() >= 15);
    for (const auto& rep : arr) {
        CHECK(rep["verdict"] == "holds on range");
        CHECK(rep.contains("checked"));
    }
}

TEST_CASE("table format renders one row per report") {
    const auto res = run_cli("verify lucas --seq gamma --p 3 --bound 50 --format table");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("kind") != std::string::npos);
    CHECK(res.output.find("lucas") != std::string::npos);
    CHECK(res.output.find("holds on range") != std::string::npos);
}
