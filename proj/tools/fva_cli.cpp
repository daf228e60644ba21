// fva: batch value-adjustment runs from a JSON scenario file.
//
//   fva run <config> [--mc] [--out <dir>] [--panels <n>]
//   fva validate <config>
//
// Exit codes: 0 ok, 2 config error, 3 numeric or invariant failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fva/errors.hpp"
#include "fva/report.hpp"
#include "fva/scenario.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

int report_error(const char* kind, int code, const std::string& message) {
    nlohmann::json err{{"error", kind}, {"code", code}, {"message", message}};
    std::cerr << err.dump() << "\n";
    return code;
}

int run_validate(const std::string& path) {
    std::ifstream in(path);
    if (!in) return report_error("config", kExitConfig, "cannot read config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto diagnostics = fva::validate_config_text(buf.str());
    std::cout << fva::format_diagnostics(diagnostics);
    return diagnostics.empty() ? kExitOk : kExitConfig;
}

int run_scenario(const std::string& path, bool mc, const std::string& out_dir, int panels) {
    try {
        const auto config = fva::load_config(path);
        fva::RunOptions options;
        options.monte_carlo = mc;
        if (panels > 0) options.panels_per_year = panels;
        const auto results = fva::run_scenario(config, options);
        fva::write_reports(out_dir.empty() ? config.output_dir : out_dir, results);
        fva::write_summary_csv(std::cout, results);
        return kExitOk;
    } catch (const fva::ConfigError& e) {
        return report_error("config", kExitConfig, e.what());
    } catch (const fva::DomainError& e) {
        return report_error("parameter", kExitConfig, e.what());
    } catch (const fva::InvariantError& e) {
        return report_error("invariant", kExitNumeric, e.what());
    } catch (const fva::NumericError& e) {
        return report_error("numeric", kExitNumeric, e.what());
    } catch (const std::exception& e) {
        return report_error("runtime", kExitNumeric, e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Value adjustments of uncollateralized deterministic cash flows"};
    app.require_subcommand(1);

    std::string config_path;
    bool mc = false;
    std::string out_dir;
    int panels = 0;

    auto* run = app.add_subcommand("run", "Value every sweep point and write CSV reports");
    run->add_option("config", config_path, "Scenario JSON file")->required();
    run->add_flag("--mc", mc, "Also run the Monte Carlo oracle");
    run->add_option("--out", out_dir, "Report directory (overrides output.dir)");
    run->add_option("--panels", panels, "Quadrature panels per year (overrides numerics.panels_per_year)")
        ->check(CLI::PositiveNumber);

    auto* validate = app.add_subcommand("validate", "Check a scenario file without computing");
    validate->add_option("config", config_path, "Scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (*validate) return run_validate(config_path);
    return run_scenario(config_path, mc, out_dir, panels);
}
