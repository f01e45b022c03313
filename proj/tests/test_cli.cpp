#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "covert/cli.hpp"
#include "covert/errors.hpp"

using namespace covert;
using namespace covert::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "covert_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string write_config(const std::string& name, const std::string& body) {
    const auto p = scratch(name);
    std::ofstream(p) << body;
    return p.string();
}

std::string value_of(const std::string& text, const std::string& key) {
    const auto pos = text.find("\n" + key + "=");
    if (pos == std::string::npos) return "";
    const auto start = pos + key.size() + 2;
    return text.substr(start, text.find('\n', start) - start);
}

int shell(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::string kBaseline =
    R"({"M": 1, "lambda": 1, "L_max": 1000, "delta": 0.1, "epsilon": 0.3, "gain_ab": 1})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("formatting helpers") {
    CHECK(format_real(-0.0) == "0");
    CHECK(format_real(0.1) == "0.1");
    CHECK(format_real(1.0 / 3.0) == "0.333333333333");
    CHECK(parse_int_list("1:4") == std::vector<std::int64_t>{1, 2, 3, 4});
    CHECK(parse_int_list("1,2,8") == std::vector<std::int64_t>{1, 2, 8});
    CHECK(parse_real_list("0.05,0.3") == std::vector<double>{0.05, 0.3});
    CHECK_THROWS_AS(parse_int_list("4:1"), ConfigError);
    CHECK_THROWS_AS(parse_int_list("a,b"), ConfigError);
}

TEST_CASE("manifest line round trip") {
    RunManifest m;
    m.config = SystemConfig::baseline(3, 77, 0.25);
    m.command = "figure2";
    m.seed = 12345678901234ULL;
    m.output_path = "x.csv";
    m.args_json = R"({"a":1})";
    const RunManifest back = RunManifest::from_line(m.to_line());
    CHECK(back.to_line() == m.to_line());
    CHECK(back.seed == m.seed);
    CHECK(back.tool_version == kToolVersion);
    CHECK_THROWS_AS(RunManifest::from_line("# nothing"), ConfigError);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(invoke({}).code == exit_usage_error);
    CHECK(invoke({"bogus"}).code == exit_usage_error);
    CHECK(invoke({"optimize"}).code == exit_usage_error);  // no config
    CHECK(invoke({"optimize", "--config", "/nonexistent.json"}).code == exit_usage_error);
    CHECK(invoke({"figure1", "--config", write_config("c0.json", kBaseline)}).code == exit_usage_error);
    CHECK(invoke({"validate"}).code == exit_usage_error);  // no seed
    CHECK(invoke({"--help"}).code == exit_ok);
}

TEST_CASE("missing config field is named on stderr") {
    const auto path = write_config(
        "c1.json", R"({"M": 1, "lambda": 1, "L_max": 1000, "delta": 0.1, "gain_ab": 1})");
    const auto r = invoke({"optimize", "--config", path});
    CHECK(r.code == exit_usage_error);
    CHECK(r.err.find("epsilon") != std::string::npos);
}

TEST_CASE("optimize reports a positive throughput") {
    const auto r = invoke({"optimize", "--config", write_config("c2.json", kBaseline)});
    REQUIRE(r.code == exit_ok);
    CHECK(r.out.rfind("# manifest ", 0) == 0);
    CHECK(std::stod(value_of(r.out, "throughput")) > 0.0);
    CHECK(value_of(r.out, "feasible") == "true");
    CHECK(std::stoll(value_of(r.out, "L_star")) >= 1);
}

TEST_CASE("optimize flags an infeasible scenario") {
    const auto r = invoke({"optimize", "--config", write_config("c3.json", kBaseline), "--M", "32",
                           "--epsilon", "0.05"});
    REQUIRE(r.code == exit_ok);
    CHECK(value_of(r.out, "throughput") == "0");
    CHECK(value_of(r.out, "feasible") == "false");
    CHECK(r.out.find("status=infeasible") != std::string::npos);
}

TEST_CASE("figure1 output is reproducible and replayable") {
    const auto cfg = write_config("c4.json", kBaseline);
    const auto a = scratch("fig1_a.csv"), b = scratch("fig1_b.csv");
    REQUIRE(invoke({"figure1", "--config", cfg, "--variant", "100:0.1", "--variant", "1000:0.3",
                    "--points", "11", "--out", a.string()}).code == exit_ok);
    REQUIRE(invoke({"figure1", "--config", cfg, "--variant", "100:0.1", "--variant", "1000:0.3",
                    "--points", "11", "--out", b.string()}).code == exit_ok);
    const std::string first = slurp(a);
    std::string second = slurp(b);
    // the manifest records the output path; everything after it must match exactly
    CHECK(first.substr(first.find('\n')) == second.substr(second.find('\n')));

    const auto before = slurp(a);
    REQUIRE(invoke({"figure1", "--manifest", a.string()}).code == exit_ok);
    CHECK(slurp(a) == before);

    std::istringstream lines(first);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    CHECK(line == "P_a,L_max,epsilon,L_star");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 22);
}

TEST_CASE("figure2 with a single antenna count") {
    const auto r = invoke({"figure2", "--config", write_config("c5.json", kBaseline), "--M", "1",
                           "--epsilon", "0.3"});
    REQUIRE(r.code == exit_ok);
    std::istringstream lines(r.out);
    std::string line;
    std::vector<std::string> all;
    while (std::getline(lines, line)) all.push_back(line);
    REQUIRE(all.size() == 3);
    CHECK(all[1] == "M,epsilon,mode,P_a_star,L_star,throughput");
    CHECK(all[2].rfind("1,0.3,optimal-L,", 0) == 0);

    const auto f = invoke({"figure2", "--config", write_config("c6.json", kBaseline), "--M", "1,2",
                           "--epsilon", "0.3", "--fixed-L", "100"});
    REQUIRE(f.code == exit_ok);
    CHECK(f.out.find("1,0.3,fixed-L,") != std::string::npos);
    CHECK(f.out.find("2,0.3,fixed-L,") != std::string::npos);
    CHECK(invoke({"figure2", "--config", write_config("c7.json", kBaseline), "--M", "1",
                  "--fixed-L", "5000"}).code == exit_usage_error);
}

TEST_CASE("validate passes by default and fails its negative control") {
    const auto ok = invoke({"validate", "--seed", "2024", "--trials", "20000"});
    CHECK(ok.code == exit_ok);
    CHECK(ok.out.find("seed=2024") != std::string::npos);
    CHECK(ok.out.find("result: PASS (5/5)") != std::string::npos);

    const auto bad = invoke({"validate", "--seed", "2024", "--trials", "20000", "--threshold-scale", "2"});
    CHECK(bad.code == exit_validation_failure);
    CHECK(bad.out.find("result: FAIL") != std::string::npos);
    CHECK(invoke({"validate", "--seed", "1", "--trials", "100"}).code == exit_usage_error);
}

TEST_CASE("binary exit codes and byte-identical reruns") {
    const std::string bin = COVERT_CLI_PATH;
    const auto cfg = write_config("c8.json", kBaseline);
    const auto a = scratch("opt_a.txt"), b = scratch("opt_b.txt");
    CHECK(shell(bin + " optimize --config " + cfg + " > " + a.string()) == 0);
    CHECK(shell(bin + " optimize --config " + cfg + " > " + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(shell(bin + " optimize --config /nonexistent.json 2> /dev/null") == 2);
    CHECK(shell(bin + " nonsense > /dev/null 2>&1") == 2);
}

}  // TEST_SUITE
