#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fva/engine.hpp"
#include "fva/oracle.hpp"
#include "fva/scenario.hpp"

namespace fva {

/// Relative tolerance of the bond repricing check under each internal measure.
inline constexpr double kBondInvarianceTolerance = 1e-12;
/// Absolute tolerance of the conditional-discount expectation identity.
inline constexpr double kConditionalDiscountTolerance = 1e-8;

/// A market-consistency check: a price recomputed under the internal
/// measure against its market value.
struct MeasureCheck {
    std::string name;            // bond_invariance | conditional_discount | contingent_bond
    double maturity = 0.0;       // T or T_I
    double contingency = 0.0;    // T_C (0 for plain bonds)
    double value = 0.0;          // internal-measure price
    double reference = 0.0;      // market price
};

struct SweepResult {
    Regime regime = Regime::RiskFreeCounterparty;
    std::size_t index = 0;
    TermCurve lambda_bar;
    std::optional<double> theta;
    AdjustmentProfile profile;
    std::optional<McEstimate> mc;
    std::vector<MeasureCheck> checks;
};

struct RunOptions {
    bool monte_carlo = false;
    std::optional<int> panels_per_year;
};

/// Values every sweep point of the scenario. Sweep points run in parallel;
/// results come back in sweep order. Throws InvariantError when a measure
/// check fails and NumericError on numeric breakdown.
std::vector<SweepResult> run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// Header of the profile CSV; the column set is fixed.
inline constexpr const char* kProfileColumns =
    "regime,lambda_bar_I,theta,t,v_X,u,v,alpha,beta,mc_mean,mc_stderr";
inline constexpr const char* kSummaryColumns =
    "regime,sweep_index,lambda_bar_I,theta,v_X0,u0,v0,mc_mean,mc_stderr,mc_z";
inline constexpr const char* kChecksColumns =
    "regime,sweep_index,lambda_bar_I,theta,check,maturity,contingency,value,reference,abs_error";

void write_profile_csv(std::ostream& os, const std::vector<SweepResult>& results);
void write_summary_csv(std::ostream& os, const std::vector<SweepResult>& results);
void write_checks_csv(std::ostream& os, const std::vector<SweepResult>& results);

/// Writes profile.csv, summary.csv and checks.csv under `dir`, creating it.
void write_reports(const std::filesystem::path& dir, const std::vector<SweepResult>& results);

/// Round-trip decimal rendering used in every report ("%.17g").
std::string format_number(double x);

}  // namespace fva
