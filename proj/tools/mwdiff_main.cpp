// Command-line front end: scenario ingestion, presets, CSV + report output.
//
// Exit codes: 0 success, 2 configuration error, 3 computation error,
// 4 output I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mwdiff/mwdiff.hpp"
#include "mwdiff/oracle_check.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitComputation = 3;
constexpr int kExitIo = 4;

int run_oracle_verification() {
    std::printf("oracle equivalence sweep (27 parameter triples x 5 screen points)\n");
    const auto report = mwdiff::oracle::equivalence_sweep();
    std::printf("cases: %zu\n", report.cases.size());
    std::printf("max relative error: %.3e\n", report.max_rel_error);
    return report.max_rel_error < 1e-6 ? 0 : kExitComputation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mwdiff: matter-wave multi-slit diffraction simulator"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "compute scenario curves, write CSV + report");
    std::string config_path;
    std::string out_dir = ".";
    std::string preset_name;
    std::string report_format = "text";
    bool verify_oracle = false;
    run_cmd->add_option("config", config_path, "configuration file (key = value lines)");
    run_cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
    run_cmd->add_option("--preset", preset_name, "built-in scenario name");
    run_cmd->add_flag("--verify-oracle", verify_oracle,
                      "run the quadrature-oracle equivalence sweep and report the max "
                      "relative error");
    run_cmd->add_option("--report", report_format, "sidecar metadata format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (verify_oracle) {
            const int code = run_oracle_verification();
            if (code != 0) return code;
            if (config_path.empty() && preset_name.empty()) return 0;
        }

        mwdiff::Scenario scenario;
        if (!preset_name.empty() && !config_path.empty()) {
            std::fprintf(stderr, "error: provide either a config file or --preset, not both\n");
            return kExitConfig;
        }
        if (!preset_name.empty()) {
            const auto preset = mwdiff::find_preset(preset_name);
            if (!preset) {
                std::fprintf(stderr, "error: unknown preset '%s'\n", preset_name.c_str());
                return kExitConfig;
            }
            scenario = *preset;
        } else if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::fprintf(stderr, "error: cannot read config '%s'\n", config_path.c_str());
                return kExitConfig;
            }
            std::ostringstream text;
            text << in.rdbuf();
            scenario = mwdiff::parse_config(text.str());
            scenario.name = std::filesystem::path(config_path).stem().string();
        } else {
            std::fprintf(stderr, "error: provide a config file or --preset\n");
            return kExitConfig;
        }

        const auto format = report_format == "json" ? mwdiff::ReportFormat::Json
                                                    : mwdiff::ReportFormat::Text;
        const mwdiff::RunReport report = mwdiff::run(scenario, out_dir, format);
        std::cout << report.to_text();
        std::cout << "report = " << report.report_path << "\n";
        return 0;
    } catch (const mwdiff::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const mwdiff::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "computation error: %s\n", e.what());
        return kExitComputation;
    }
}
