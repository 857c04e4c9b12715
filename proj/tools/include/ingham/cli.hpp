#pragma once

// Command-line front end: JSON config in, JSON/CSV report out.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace ingham::cli {

enum class Command { Gaps, Kernel, Poisson, Frame, Haraux, String, Beam, Scan };
enum class Format { Json, Csv };

inline constexpr int exit_ok = 0;
inline constexpr int exit_structural = 1;
inline constexpr int exit_validation = 2;

struct RunConfig {
    Command command = Command::Gaps;
    std::string input_path = "-";   // "-" reads stdin
    std::string output_path = "-";  // "-" writes stdout
    double tol = 1e-9;
    std::uint64_t seed = 0;
    Format format = Format::Json;
};

struct RunResult {
    int exit_code = exit_ok;
    std::string report;  // JSON or CSV text, always newline-terminated
};

std::optional<Command> parse_command(std::string_view name);
std::string to_string(Command c);
std::optional<Format> parse_format(std::string_view name);

std::string version();
std::string sha256_hex(std::string_view data);

/// Pure dispatch: the same config and input text always give the same bytes.
RunResult run(const RunConfig& config, std::string_view input_text);

/// Reads config.input_path, writes config.output_path, returns the exit code.
int run(const RunConfig& config);

/// The command's result object without the report envelope (throws the
/// library's StructuralError / ValidationError on failure).
nlohmann::json execute(Command command, const nlohmann::json& input, double tol, std::uint64_t seed);

/// Table for CSV export: "rows" when the result has them, otherwise the
/// result's scalars as key,value pairs. 17 significant digits.
std::string result_to_csv(const nlohmann::json& result);

} // namespace ingham::cli
