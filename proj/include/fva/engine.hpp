#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "fva/credit.hpp"
#include "fva/curves.hpp"
#include "fva/instruments.hpp"

namespace fva {

enum class Regime { Linear, RiskFreeCounterparty, Independent, Correlated };

/// "linear", "riskfree_cpty", "independent", "correlated".
std::string_view to_string(Regime regime);

/// Decay coefficient alpha of -du/dt + alpha u = beta. `integral` returns
/// the exact integral over [t0, t1]; when empty, it is approximated with
/// Simpson's rule on `value`.
struct RateFunction {
    std::function<double(double)> value;
    std::function<double(double, double)> integral;
};

using SourceFunction = std::function<double(double)>;

/// Solved adjustment u(t) with total value v = v_X + u on the panel grid.
struct AdjustmentProfile {
    Regime regime = Regime::Linear;
    std::vector<double> grid;
    std::vector<double> u;
    std::vector<double> v;
    std::vector<double> v_x;
    std::vector<double> alpha;
    std::vector<double> beta;

    double u0() const { return u.front(); }
    double v0() const { return v.front(); }
};

struct EngineOptions {
    int panels_per_year = 512;
};

/// Panel boundaries on [0, T]: curve breakpoints and flow dates plus a
/// uniform refinement of at least panels_per_year panels per year.
std::vector<double> adjustment_grid(const CashflowSchedule& schedule, std::span<const double> breaks,
                                    int panels_per_year);

/// Solves -du/dt + alpha u = beta, u(T) = 0 through the integral form
/// u(t) = int_t^T beta(s) exp(-int_t^s alpha) ds: Simpson within each panel,
/// exact exponential propagation across panels. Both functions must be
/// smooth inside panels; values at a panel's right end are taken as left
/// limits. The returned profile has v_X = 0 and v = u.
AdjustmentProfile solve_linear_adjustment(const RateFunction& alpha, const SourceFunction& beta,
                                          std::span<const double> grid, double T);

/// Investor-only default under the internal intensity lambda_bar:
/// alpha = r_bar + lambda_bar,
/// beta = (1 - R_I) lambda_bar v_X- - (r_bar - r_X) v_X.
AdjustmentProfile adjustment_riskfree_cpty(const MarketRates& market, const CreditCurve& investor,
                                           double bond_recovery, const TermCurve& lambda_bar,
                                           const CashflowSchedule& schedule, const CloseoutSpec& closeout,
                                           const EngineOptions& options = {});

/// Independent investor and counterparty defaults:
/// alpha = r_bar + lambda_bar + lambda_C,
/// beta = (1 - R_I) lambda_bar v_X- - (1 - R_C) lambda_C v_X+ - (r_bar - r_X) v_X.
AdjustmentProfile adjustment_independent(const MarketRates& market, const CreditCurve& investor,
                                         const CreditCurve& counterparty, double bond_recovery,
                                         const TermCurve& lambda_bar, const CashflowSchedule& schedule,
                                         const CloseoutSpec& closeout, const EngineOptions& options = {});

/// Correlated defaults, zero bond recovery and internally default-free
/// investor: alpha = r + Lambda_I + Lambda_C,
/// beta = -(1 - R_C) lambda_C v_X+ - (r + Lambda_I + Lambda_C - lambda_C - r_X) v_X.
AdjustmentProfile adjustment_correlated(const MarketRates& market, const JointDefaultModel& model,
                                        const CashflowSchedule& schedule, const CloseoutSpec& closeout,
                                        const EngineOptions& options = {});

}  // namespace fva
