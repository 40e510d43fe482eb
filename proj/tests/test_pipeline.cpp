#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

const std::string fixture_dir = FIXTURE_DIR;
const std::string golden_dir = GOLDEN_DIR;
const std::string cli = CLI_PATH;

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::string& args) {
    auto out_path = fs::temp_directory_path() / "relnet_cli_stdout.txt";
    auto err_path = fs::temp_directory_path() / "relnet_cli_stderr.txt";
    std::string cmd = cli + " " + args + " > " + out_path.string() + " 2> " +
                      err_path.string();
    int status = std::system(cmd.c_str());
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    fs::remove(out_path);
    fs::remove(err_path);
    return r;
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_against_golden(const std::string& args, const std::string& golden) {
    auto r = run_cli(args);
    CAPTURE(golden);
    CAPTURE(r.err);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == slurp_file(golden_dir + "/" + golden));
    // byte-determinism across invocations
    auto again = run_cli(args);
    CHECK(again.out == r.out);
}

} // namespace

TEST_CASE("topology cycle series matches golden and decreases") {
    std::string args = "topology cycles --network " + fixture_dir +
                       "/snapshots --ranking " + fixture_dir +
                       "/ranking.txt --top-k 2";
    check_against_golden(args, "topology_cycles.json");

    auto doc = Json::parse(run_cli(args).out);
    const auto& series = doc["results"]["series"];
    REQUIRE(series.size() == 3);
    double prev = 1e18;
    for (const auto& row : series) {
        double mean = std::stod(row["mean_cycle"].get<std::string>());
        CHECK(mean < prev);
        prev = mean;
        CHECK(row["excluded_fraction"] == "0");
    }
}

TEST_CASE("core ratio report matches golden") {
    check_against_golden("topology core-ratio --network " + fixture_dir +
                             "/snapshots/snap_2012.txt --ranking " + fixture_dir +
                             "/ranking.txt --top-k 2 --mode node",
                         "core_ratio.json");
}

TEST_CASE("motif count report matches golden") {
    check_against_golden("motifs count --network " + fixture_dir +
                             "/motif_net.txt --majors 1,2 --m 3 --l 4",
                         "motif_count.json");
}

TEST_CASE("motif null-model report matches golden") {
    std::string args = "--seed 5 motifs null --network " + fixture_dir +
                       "/motif_net.txt --majors 1,2 --motif double_star "
                       "--m 3 --samples 50";
    check_against_golden(args, "motif_null.json");
    auto doc = Json::parse(run_cli(args).out);
    CHECK(doc["results"]["observed"] == 1);
    CHECK(doc["results"]["samples"] == 50);
}

TEST_CASE("simulation report matches golden") {
    std::string args = "--params " + fixture_dir + "/sim_config.json simulate";
    check_against_golden(args, "simulate.json");
    auto doc = Json::parse(run_cli(args).out);
    for (const auto& run : doc["results"]["runs"]) {
        CHECK(run["converged"] == true);
        CHECK(run["structure"] == "optimal_stable");
    }
}

TEST_CASE("price metrics report matches golden") {
    check_against_golden(
        "--params '{\"a\":4,\"c_a\":\"3/2\",\"c_b\":2,\"delta\":1,\"tau\":1}' "
        "stable prices --na 2 --nb 2",
        "stable_prices.json");
}

TEST_CASE("cost report matches golden") {
    check_against_golden(
        "--params '{\"a\":2,\"c_a\":1,\"c_b\":2,\"delta\":1,\"tau\":1}' cost "
        "--network " + fixture_dir + "/snapshots/snap_2012.txt --majors 1,2",
        "cost.json");
}

TEST_CASE("--out writes the same bytes as stdout") {
    auto out_file = fs::temp_directory_path() / "relnet_pipe_out.json";
    std::string base = "motifs count --network " + fixture_dir +
                       "/motif_net.txt --majors 1,2 --m 3 --l 4";
    auto direct = run_cli(base);
    auto filed = run_cli("--out " + out_file.string() + " " + base);
    REQUIRE(filed.exit_code == 0);
    CHECK(filed.out.empty());
    CHECK(slurp_file(out_file.string()) == direct.out);
    fs::remove(out_file);
}

TEST_CASE("input errors exit with code 2") {
    auto missing = run_cli("cost --network /nonexistent/topology.txt");
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.find("input error") != std::string::npos);

    auto bad_params = run_cli("--params '{\"params\": {\"gamma\": 1}}' "
                              "stable prices --na 2 --nb 2");
    CHECK(bad_params.exit_code == 2);

    auto bad_flag = run_cli("no-such-command");
    CHECK(bad_flag.exit_code == 2);
}

TEST_CASE("enumeration beyond the budget exits with code 3") {
    auto r = run_cli("stable enumerate --na 4 --nb 4");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("budget refusal") != std::string::npos);

    auto ok = run_cli("stable enumerate --na 2 --nb 1");
    CHECK(ok.exit_code == 0);
}
