#include <doctest.h>

#include <fstream>
#include <string>

#include "covert/config.hpp"
#include "covert/errors.hpp"

using namespace covert;

namespace {

const std::string kValid =
    R"({"M": 4, "lambda": 1.5, "L_max": 500, "delta": 0.1, "epsilon": 0.2, "gain_ab": 2.0})";

std::string message_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("valid config parses") {
    const SystemConfig cfg = parse_config(kValid);
    CHECK(cfg.antennas == 4);
    CHECK(cfg.lambda == 1.5);
    CHECK(cfg.max_blocklength == 500);
    CHECK(cfg.delta.value() == 0.1);
    CHECK(cfg.epsilon.value() == 0.2);
    CHECK(cfg.gain_ab == 2.0);
}

TEST_CASE("round trip through to_json is exact") {
    SystemConfig cfg = SystemConfig::baseline(7, 321, 0.123456789012345);
    cfg.lambda = 0.1 + 0.2;
    const SystemConfig back = parse_config(to_json(cfg));
    CHECK(back.antennas == cfg.antennas);
    CHECK(back.lambda == cfg.lambda);
    CHECK(back.max_blocklength == cfg.max_blocklength);
    CHECK(back.epsilon.value() == cfg.epsilon.value());
    CHECK(back.delta.value() == cfg.delta.value());
    CHECK(back.gain_ab == cfg.gain_ab);
}

TEST_CASE("missing field is named") {
    const std::string text = R"({"M": 4, "lambda": 1.5, "L_max": 500, "delta": 0.1, "gain_ab": 2.0})";
    CHECK_THROWS_AS(parse_config(text), ConfigError);
    CHECK(message_of(text).find("epsilon") != std::string::npos);
}

TEST_CASE("unknown field is rejected") {
    const std::string text =
        R"({"M": 4, "lambda": 1.5, "L_max": 500, "delta": 0.1, "epsilon": 0.2, "gain_ab": 2.0, "P": 1})";
    CHECK(message_of(text).find("'P'") != std::string::npos);
}

TEST_CASE("type errors are named") {
    CHECK(message_of(R"({"M": 2.5, "lambda": 1, "L_max": 5, "delta": 0.1, "epsilon": 0.2, "gain_ab": 1})")
              .find("'M'") != std::string::npos);
    CHECK(message_of(R"({"M": 2, "lambda": "x", "L_max": 5, "delta": 0.1, "epsilon": 0.2, "gain_ab": 1})")
              .find("'lambda'") != std::string::npos);
    CHECK(parse_config(R"({"M": 2.0, "lambda": 1, "L_max": 5, "delta": 0.1, "epsilon": 0.2, "gain_ab": 1})")
              .antennas == 2);
}

TEST_CASE("range errors") {
    CHECK_THROWS_AS(parse_config(R"({"M": 0, "lambda": 1, "L_max": 5, "delta": 0.1, "epsilon": 0.2, "gain_ab": 1})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"M": 1, "lambda": -1, "L_max": 5, "delta": 0.1, "epsilon": 0.2, "gain_ab": 1})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"M": 1, "lambda": 1, "L_max": 5, "delta": 0.6, "epsilon": 0.2, "gain_ab": 1})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"M": 1, "lambda": 1, "L_max": 5, "delta": 0.1, "epsilon": 1.2, "gain_ab": 1})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
    CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
}

TEST_CASE("load_config reads a file") {
    const std::string path = "covert_config_test.json";
    {
        std::ofstream out(path);
        out << kValid;
    }
    CHECK(load_config(path).antennas == 4);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_config("does/not/exist.json"), ConfigError);
}

}  // TEST_SUITE
