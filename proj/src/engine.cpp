#include "fva/engine.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "fva/errors.hpp"
#include "fva/measure.hpp"
#include "fva/quadrature.hpp"

namespace fva {

namespace {

void append_breaks(std::vector<double>& out, const TermCurve& curve, double T) {
    for (double b : curve.breakpoints(0.0, T)) out.push_back(b);
}

double checked(double x, const char* what) {
    if (!std::isfinite(x)) throw NumericError(std::string("non-finite ") + what + " in adjustment equation");
    return x;
}

double simpson_integral(const std::function<double(double)>& f, double a, double b) {
    return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(left_of(b)));
}

RateFunction curve_rate(TermCurve curve) {
    auto shared = std::make_shared<const TermCurve>(std::move(curve));
    return {[shared](double t) { return shared->value_at(t); },
            [shared](double t0, double t1) { return integrated_rate(*shared, t0, t1); }};
}

/// Solves and attaches the collateral value so that v = v_X + u.
AdjustmentProfile finish(Regime regime, const RateFunction& alpha, const SourceFunction& beta,
                         const CashflowSchedule& schedule, const TermCurve& collateral,
                         std::span<const double> breaks, const EngineOptions& options) {
    const auto grid = adjustment_grid(schedule, breaks, options.panels_per_year);
    AdjustmentProfile p = solve_linear_adjustment(alpha, beta, grid, schedule.maturity());
    p.regime = regime;
    for (std::size_t k = 0; k < p.grid.size(); ++k) {
        p.v_x[k] = collateral_value(schedule, collateral, p.grid[k]);
        p.v[k] = p.v_x[k] + p.u[k];
    }
    return p;
}

}  // namespace

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::Linear: return "linear";
        case Regime::RiskFreeCounterparty: return "riskfree_cpty";
        case Regime::Independent: return "independent";
        case Regime::Correlated: return "correlated";
    }
    return "unknown";
}

std::vector<double> adjustment_grid(const CashflowSchedule& schedule, std::span<const double> breaks,
                                    int panels_per_year) {
    std::vector<double> all(breaks.begin(), breaks.end());
    for (double t : schedule.flow_times()) all.push_back(t);
    return panel_grid(0.0, schedule.maturity(), all, panels_per_year);
}

AdjustmentProfile solve_linear_adjustment(const RateFunction& alpha, const SourceFunction& beta,
                                          std::span<const double> grid, double T) {
    detail::require_domain(grid.size() >= 2, "adjustment grid needs at least two points");
    detail::require_domain(grid.front() == 0.0 && grid.back() == T, "adjustment grid must span [0, T]");
    detail::require_domain(std::adjacent_find(grid.begin(), grid.end(), std::greater_equal<>()) == grid.end(),
                           "adjustment grid must be strictly increasing");

    const auto alpha_integral = [&](double a, double b) {
        if (alpha.integral) return alpha.integral(a, b);
        return simpson_integral(alpha.value, a, b);
    };

    const std::size_t n = grid.size();
    AdjustmentProfile p;
    p.grid.assign(grid.begin(), grid.end());
    p.u.assign(n, 0.0);
    p.v_x.assign(n, 0.0);
    p.alpha.resize(n);
    p.beta.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        p.alpha[k] = checked(alpha.value(grid[k]), "alpha");
        p.beta[k] = checked(beta(grid[k]), "beta");
    }

    for (std::size_t k = n - 1; k-- > 0;) {
        const double a = grid[k];
        const double b = grid[k + 1];
        const double m = 0.5 * (a + b);
        const double decay_mid = std::exp(-checked(alpha_integral(a, m), "alpha integral"));
        const double decay_end = std::exp(-checked(alpha_integral(a, b), "alpha integral"));
        const double source = (b - a) / 6.0 *
                              (p.beta[k] + 4.0 * checked(beta(m), "beta") * decay_mid +
                               checked(beta(left_of(b)), "beta") * decay_end);
        p.u[k] = checked(decay_end * p.u[k + 1] + source, "adjustment");
    }
    p.v = p.u;
    return p;
}

AdjustmentProfile adjustment_riskfree_cpty(const MarketRates& market, const CreditCurve& investor,
                                           double bond_recovery, const TermCurve& lambda_bar,
                                           const CashflowSchedule& schedule, const CloseoutSpec& closeout,
                                           const EngineOptions& options) {
    validate(closeout);
    const TermCurve r_bar = internal_rate(market, investor, bond_recovery, lambda_bar);
    const TermCurve& r_x = market.collateral;
    const double loss_I = 1.0 - closeout.recovery_investor;

    const RateFunction alpha = curve_rate(r_bar + lambda_bar);
    const SourceFunction beta = [&](double t) {
        const double vx = collateral_value(schedule, r_x, t);
        return loss_I * lambda_bar.value_at(t) * std::max(-vx, 0.0) - (r_bar.value_at(t) - r_x.value_at(t)) * vx;
    };

    std::vector<double> breaks;
    for (const TermCurve* c : {&r_bar, &r_x, &lambda_bar}) append_breaks(breaks, *c, schedule.maturity());
    return finish(Regime::RiskFreeCounterparty, alpha, beta, schedule, r_x, breaks, options);
}

AdjustmentProfile adjustment_independent(const MarketRates& market, const CreditCurve& investor,
                                         const CreditCurve& counterparty, double bond_recovery,
                                         const TermCurve& lambda_bar, const CashflowSchedule& schedule,
                                         const CloseoutSpec& closeout, const EngineOptions& options) {
    validate(closeout);
    const TermCurve r_bar = internal_rate(market, investor, bond_recovery, lambda_bar);
    const TermCurve& r_x = market.collateral;
    const TermCurve& lambda_C = counterparty.intensity();
    const double loss_I = 1.0 - closeout.recovery_investor;
    const double loss_C = 1.0 - closeout.recovery_counterparty;

    const RateFunction alpha = curve_rate(r_bar + lambda_bar + lambda_C);
    const SourceFunction beta = [&](double t) {
        const double vx = collateral_value(schedule, r_x, t);
        return loss_I * lambda_bar.value_at(t) * std::max(-vx, 0.0) -
               loss_C * lambda_C.value_at(t) * std::max(vx, 0.0) - (r_bar.value_at(t) - r_x.value_at(t)) * vx;
    };

    std::vector<double> breaks;
    for (const TermCurve* c : {&r_bar, &r_x, &lambda_bar, &lambda_C}) append_breaks(breaks, *c, schedule.maturity());
    return finish(Regime::Independent, alpha, beta, schedule, r_x, breaks, options);
}

AdjustmentProfile adjustment_correlated(const MarketRates& market, const JointDefaultModel& model,
                                        const CashflowSchedule& schedule, const CloseoutSpec& closeout,
                                        const EngineOptions& options) {
    validate(closeout);
    const TermCurve& r = market.risk_free;
    const TermCurve& r_x = market.collateral;
    const TermCurve& lambda_C = model.counterparty().intensity();
    const double loss_C = 1.0 - closeout.recovery_counterparty;

    const auto ftd_total = [&](double t) {
        return ftd_intensity(model, Name::Investor, t) + ftd_intensity(model, Name::Counterparty, t);
    };
    // Lambda_I + Lambda_C = -d/dt ln U(t,t), so its integral is exact.
    const RateFunction alpha{
        [&](double t) { return r.value_at(t) + ftd_total(t); },
        [&](double t0, double t1) {
            return integrated_rate(r, t0, t1) + log_joint_survival(model, t0, t0) - log_joint_survival(model, t1, t1);
        }};
    const SourceFunction beta = [&](double t) {
        const double vx = collateral_value(schedule, r_x, t);
        const double lc = lambda_C.value_at(t);
        const double pre_default = r.value_at(t) + ftd_total(t) - lc;
        return -loss_C * lc * std::max(vx, 0.0) - (pre_default - r_x.value_at(t)) * vx;
    };

    std::vector<double> breaks;
    for (const TermCurve* c : {&r, &r_x, &model.investor().intensity(), &lambda_C})
        append_breaks(breaks, *c, schedule.maturity());
    return finish(Regime::Correlated, alpha, beta, schedule, r_x, breaks, options);
}

}  // namespace fva
