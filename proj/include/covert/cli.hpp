#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "covert/model.hpp"

namespace covert::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
    exit_ok = 0,
    exit_validation_failure = 1,
    exit_usage_error = 2,
    exit_numeric_failure = 3,
};

/// Everything needed to replay a run. Serialized as a single `# manifest {...}`
/// comment line at the top of every output file.
struct RunManifest {
    SystemConfig config;
    std::string command;
    std::optional<std::uint64_t> seed;
    std::string output_path;
    std::string tool_version = kToolVersion;
    std::string args_json = "{}";  // command-specific parameters, compact JSON object

    [[nodiscard]] std::string to_line() const;
    static RunManifest from_line(const std::string& line);
    /// Scans a file for its manifest line. Throws ConfigError if absent.
    static RunManifest from_file(const std::string& path);
};

/// 12 significant digits, the serialization used for every CSV float.
std::string format_real(double v);

/// Parses "1:32" (inclusive range) or "1,2,4,8".
std::vector<std::int64_t> parse_int_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covert::cli
