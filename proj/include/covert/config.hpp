#pragma once

#include <filesystem>
#include <string>

#include "covert/model.hpp"

namespace covert {

/// Reads a flat JSON object with exactly the keys
/// M, lambda, L_max, delta, epsilon, gain_ab. Missing, unknown or mistyped
/// keys and out-of-range values raise ConfigError naming the key.
SystemConfig parse_config(const std::string& json_text);
SystemConfig load_config(const std::filesystem::path& path);

/// Compact single-line JSON with the same keys, numbers at 17 significant digits.
std::string to_json(const SystemConfig& cfg);

}  // namespace covert
