#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fva/curves.hpp"
#include "fva/engine.hpp"
#include "fva/instruments.hpp"

namespace fva {

/// Version written to and expected in the "schema_version" field.
inline constexpr int kConfigSchemaVersion = 1;

struct Numerics {
    int panels_per_year = 512;
    std::uint64_t mc_paths = 1'000'000;
    std::uint64_t seed = 20240601;
    unsigned threads = 0;

    bool operator==(const Numerics&) const = default;
};

/// Market-consistency checks reported next to the adjustments.
struct MeasureChecks {
    std::vector<double> bond_maturities{1.0, 5.0, 10.0};
    double contingent_bond_maturity = 1.0;
    std::vector<double> contingency_maturities{0.0, 0.5};

    bool operator==(const MeasureChecks&) const = default;
};

/// One batch valuation: market, credit, contract, regime and sweep.
struct ScenarioConfig {
    Regime regime = Regime::RiskFreeCounterparty;
    MarketRates market;
    TermCurve investor_intensity;
    TermCurve counterparty_intensity;
    double bond_recovery = 0.0;
    CloseoutSpec closeout;
    std::vector<Cashflow> schedule;
    std::vector<TermCurve> lambda_bar_sweep;
    std::vector<double> theta_sweep;
    Numerics numerics;
    MeasureChecks checks;
    std::string output_dir = "out";

    bool operator==(const ScenarioConfig&) const = default;
};

struct Diagnostic {
    std::string path;  // JSON pointer-like location, e.g. "closeout.recovery_counterparty"
    std::string message;
};

/// All problems found in a config document; empty means valid.
std::vector<Diagnostic> validate_config_text(const std::string& text);

/// Parses and validates; throws ConfigError listing every diagnostic.
ScenarioConfig parse_config(const std::string& text);

/// Reads and parses a config file; throws ConfigError if it cannot be read.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Canonical JSON text of a config. parse_config(to_json_text(c)) == c.
std::string to_json_text(const ScenarioConfig& config);

/// Regime parsed from its report name; throws ConfigError otherwise.
Regime regime_from_string(const std::string& name);

std::string format_diagnostics(const std::vector<Diagnostic>& diagnostics);

}  // namespace fva
