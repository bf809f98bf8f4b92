// config.hpp — INI-like run configuration
//
// Grammar (one key per line, arrays may span lines until brackets balance):
//
//   # comment            ; comment
//   [section]
//   key = value
//
//   value   := atom | list
//   list    := '[' [value {',' value}] ']' | '(' [value {',' value}] ')'
//   atom    := number | complex | bare word | "quoted string"
//   complex := re+imj | re-imj | imj       (e.g. 0.5j, 1-2e-3j)
//
// Sections: [system] [reservoir] [quadrature] [shift] [evolve] [kk_check] [sweep].
// Relative file paths are resolved against the config file's directory.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resrelax/quadrature.hpp"
#include "resrelax/reservoir.hpp"
#include "resrelax/system.hpp"

namespace resrelax {

struct ReservoirParams {
    std::string model;
    double acceleration{0.0};
    double eta{0.0};
    double omega_j{0.0};
    double temperature{0.0};
    std::filesystem::path table_file;
    TabulatedKernelSamples samples;

    ReservoirKernel make_kernel() const;
};

struct EvolveParams {
    double h0{0.0};
    double tau_end{0.0};
    std::size_t samples{101};
    std::string method{"both"}; // closed_form | ode | both
};

struct KkCheckParams {
    std::vector<double> omegas{-1.0, -0.2, 0.0, 0.05, 0.2, 1.0};
    double eta{0.1};
    double omega_cutoff_factor{250.0};
    std::filesystem::path table_file; // optional: columns omega,im[,re]
};

struct SweepParams {
    std::vector<std::pair<std::string, std::vector<double>>> grid; // file order; first varies slowest
    std::vector<std::string> quantities;
};

struct RunConfig {
    SystemSpec system;
    std::optional<double> omega0; // two-level shorthand
    ReservoirParams reservoir;
    QuadratureConfig quadrature;
    bool has_omega_cutoff{false};
    std::optional<std::string> shift_level; // label; all levels when empty
    bool shift_cutoff_sensitivity{true};
    EvolveParams evolve;
    KkCheckParams kk_check;
    SweepParams sweep;
    bool has_evolve{false};
    bool has_sweep{false};
};

inline constexpr std::size_t kMaxSweepPoints = 1000000;

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

TabulatedKernelSamples read_kernel_table(const std::filesystem::path& path);

struct SampledFunction {
    std::vector<double> omega;
    std::vector<double> im;
    std::vector<double> re; // empty when the file has no reference column
};
SampledFunction read_sampled_function(const std::filesystem::path& path);

// Sweep parameters understood by apply_sweep_parameter.
const std::vector<std::string>& sweep_parameter_names();
void apply_sweep_parameter(RunConfig& cfg, const std::string& name, double value);

} // namespace resrelax
