// commands.hpp — Command implementations behind the resrelax CLI
//
// Each command renders its full output as a string so that the caller can
// write it atomically (or to stdout). Floats are printed with %.12e.

#pragma once

#include <filesystem>
#include <string>

#include "resrelax/config.hpp"

namespace resrelax {

enum class OutputFormat { Csv, Json };

struct CommandOptions {
    OutputFormat format{OutputFormat::Csv};
    std::string method{"kk"}; // shift: kk | direct | both
    unsigned jobs{1};         // sweep worker threads
};

std::string cmd_rates(const RunConfig& cfg, const CommandOptions& opt);
std::string cmd_shift(const RunConfig& cfg, const CommandOptions& opt);

struct EvolveOutput {
    std::string trajectory_csv;
    std::string sidecar_json;
};
EvolveOutput cmd_evolve(const RunConfig& cfg, const CommandOptions& opt);

struct KkCheckOutput {
    std::string report;
    double suite_max_rel_error{0.0};
};
// Built-in suite threshold for a passing run.
inline constexpr double kKkSuiteThreshold = 1e-3;
KkCheckOutput cmd_kk_check(const RunConfig& cfg, const CommandOptions& opt);

std::string cmd_sweep(const RunConfig& cfg, const CommandOptions& opt);

// Writes to a sibling temporary file and renames it into place.
void write_atomically(const std::filesystem::path& path, const std::string& content);

std::string format_double(double x); // %.12e

// Diagnostic verbosity from RESRELAX_LOG: 0 silent (default), 1 info, 2 debug.
int log_level();
void log_message(int level, const std::string& msg);

} // namespace resrelax
