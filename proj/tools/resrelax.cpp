// resrelax.cpp — command-line front end
//
//   resrelax rates    --config run.ini [--out rates.csv] [--format csv|json]
//   resrelax shift    --config run.ini [--method kk|direct|both] [--format json|csv]
//   resrelax evolve   --config run.ini [--out traj.csv]   (sidecar: traj.json)
//   resrelax kk-check --config run.ini
//   resrelax sweep    --config run.ini [--jobs N]
//
// Exit codes: 0 success, 2 usage or configuration error, 3 numerical failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "resrelax/commands.hpp"
#include "resrelax/config.hpp"
#include "resrelax/error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void emit(const std::optional<std::string>& out, const std::string& content)
{
    if (out)
        resrelax::write_atomically(*out, content);
    else
        std::cout << content << std::flush;
}

} // namespace

int main(int argc, char** argv)
{
    using namespace resrelax;

    CLI::App app{"Relaxation rates and radiative shifts of small quantum systems coupled to a reservoir"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_path;
    std::string format;
    std::string method = "kk";
    unsigned jobs = 1;

    const auto common = [&](CLI::App* sub, const std::string& default_format) {
        sub->add_option("--config", config_path, "Run configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "Output file (default: stdout)");
        sub->add_option("--format", format, "Output format (default " + default_format + ")")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* rates = app.add_subcommand("rates", "gamma(omega) and per-transition Gamma_ab table");
    common(rates, "csv");
    CLI::App* shift = app.add_subcommand("shift", "Radiative energy shifts");
    common(shift, "json");
    shift->add_option("--method", method, "kk, direct or both")->check(CLI::IsMember({"kk", "direct", "both"}));
    CLI::App* evolve = app.add_subcommand("evolve", "Mean-energy relaxation of the two-level atom");
    common(evolve, "csv");
    CLI::App* kk = app.add_subcommand("kk-check", "Kramers-Kronig engine self-test");
    common(kk, "csv");
    CLI::App* sweep = app.add_subcommand("sweep", "Parameter sweep in long CSV format");
    common(sweep, "csv");
    sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 1024u));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    if (format.empty())
        format = *shift ? "json" : "csv";
    CommandOptions opt;
    opt.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    opt.method = method;
    opt.jobs = jobs;

    try {
        const RunConfig cfg = load_config(config_path);
        if (*rates) {
            emit(out_path, cmd_rates(cfg, opt));
        } else if (*shift) {
            emit(out_path, cmd_shift(cfg, opt));
        } else if (*evolve) {
            const EvolveOutput res = cmd_evolve(cfg, opt);
            if (opt.format == OutputFormat::Json) {
                emit(out_path, res.sidecar_json);
            } else {
                if (out_path) {
                    std::filesystem::path side(*out_path);
                    side.replace_extension(".json");
                    if (side == std::filesystem::path(*out_path))
                        side += ".json";
                    write_atomically(side, res.sidecar_json);
                }
                emit(out_path, res.trajectory_csv);
            }
        } else if (*kk) {
            const KkCheckOutput res = cmd_kk_check(cfg, opt);
            emit(out_path, res.report);
            if (!(res.suite_max_rel_error <= kKkSuiteThreshold)) {
                std::cerr << "resrelax: Lorentzian suite error " << format_double(res.suite_max_rel_error)
                          << " exceeds " << format_double(kKkSuiteThreshold) << '\n';
                return kExitNumerical;
            }
        } else if (*sweep) {
            emit(out_path, cmd_sweep(cfg, opt));
        }
    } catch (const Error& e) {
        std::cerr << "resrelax: " << e.what() << '\n';
        return e.is_numerical() ? kExitNumerical : kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "resrelax: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitOk;
}
