#include "covert/config.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string_view>

#include "covert/errors.hpp"

namespace covert {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 6> kKeys{"M", "lambda", "L_max", "delta", "epsilon",
                                                "gain_ab"};

std::int64_t integer_field(const json& doc, const char* key) {
    const auto& v = doc.at(key);
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d == static_cast<double>(static_cast<std::int64_t>(d))) {
            return static_cast<std::int64_t>(d);
        }
    }
    throw ConfigError(std::string("config field '") + key + "' must be an integer");
}

double real_field(const json& doc, const char* key) {
    const auto& v = doc.at(key);
    if (!v.is_number()) {
        throw ConfigError(std::string("config field '") + key + "' must be a number");
    }
    return v.get<double>();
}

}  // namespace

SystemConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
            throw ConfigError("unknown config field '" + key + "'");
        }
    }
    for (auto key : kKeys) {
        if (!doc.contains(key)) {
            throw ConfigError("missing required config field '" + std::string(key) + "'");
        }
    }

    SystemConfig cfg;
    cfg.antennas = integer_field(doc, "M");
    cfg.lambda = real_field(doc, "lambda");
    cfg.max_blocklength = integer_field(doc, "L_max");
    const double delta = real_field(doc, "delta");
    const double epsilon = real_field(doc, "epsilon");
    cfg.gain_ab = real_field(doc, "gain_ab");
    try {
        cfg.delta = Probability(delta);
        cfg.epsilon = Probability(epsilon);
        cfg.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    return cfg;
}

SystemConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string to_json(const SystemConfig& cfg) {
    // Field order fixed so manifests are byte-stable.
    nlohmann::ordered_json doc;
    doc["M"] = cfg.antennas;
    doc["lambda"] = cfg.lambda;
    doc["L_max"] = cfg.max_blocklength;
    doc["delta"] = cfg.delta.value();
    doc["epsilon"] = cfg.epsilon.value();
    doc["gain_ab"] = cfg.gain_ab;
    return doc.dump();
}

}  // namespace covert
