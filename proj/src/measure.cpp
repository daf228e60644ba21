#include "fva/measure.hpp"

#include <cmath>
#include <string>

#include "fva/errors.hpp"
#include "fva/quadrature.hpp"

namespace fva {

namespace {

void check_recovery(double R) {
    detail::require_domain(R >= 0.0 && R <= 1.0, "bond recovery must lie in [0, 1]");
}

}  // namespace

TermCurve funding_rate(const MarketRates& market, const CreditCurve& investor, double bond_recovery) {
    check_recovery(bond_recovery);
    return market.risk_free + (1.0 - bond_recovery) * investor.intensity();
}

TermCurve internal_rate(const MarketRates& market, const CreditCurve& investor, double bond_recovery,
                        const TermCurve& lambda_bar) {
    detail::require_domain(lambda_bar.is_non_negative(), "internal investor intensity must be non-negative");
    return funding_rate(market, investor, bond_recovery) - (1.0 - bond_recovery) * lambda_bar;
}

double bond_price(const MarketRates& market, const CreditCurve& investor, double bond_recovery, double T) {
    detail::require_domain(T > 0.0, "bond maturity must be positive");
    return discount_factor(funding_rate(market, investor, bond_recovery), 0.0, T);
}

double bond_price_internal(const TermCurve& internal_rate, const TermCurve& lambda_bar, double bond_recovery,
                           double T) {
    check_recovery(bond_recovery);
    detail::require_domain(T > 0.0, "bond maturity must be positive");
    return discount_factor(internal_rate + (1.0 - bond_recovery) * lambda_bar, 0.0, T);
}

PreDefaultRate::PreDefaultRate(MarketRates market, JointDefaultModel model)
    : market_(std::move(market)), model_(std::move(model)) {}

double PreDefaultRate::operator()(double t) const {
    return market_.risk_free.value_at(t) + ftd_intensity(model_, Name::Investor, t) +
           ftd_intensity(model_, Name::Counterparty, t) - model_.counterparty().intensity().value_at(t);
}

double PreDefaultRate::integrated(double t0, double t1) const {
    // -ln[D(0,t) U(t,t) / U_C(t)] differenced between t0 and t1.
    const double joint = log_joint_survival(model_, t0, t0) - log_joint_survival(model_, t1, t1);
    const double marginal = log_survival(model_.counterparty(), t1) - log_survival(model_.counterparty(), t0);
    return integrated_rate(market_.risk_free, t0, t1) + joint + marginal;
}

PreDefaultRate pre_default_rate(const MarketRates& market, const JointDefaultModel& model) {
    return PreDefaultRate(market, model);
}

double conditional_discount(const MarketRates& market, const JointDefaultModel& model, double T_I,
                            std::optional<double> t_C) {
    detail::require_domain(T_I > 0.0, "bond maturity must be positive");
    const double discount = discount_factor(market.risk_free, 0.0, T_I);
    const CreditCurve& cpty = model.counterparty();

    if (!t_C || *t_C >= T_I) {
        return discount * std::exp(log_joint_survival(model, T_I, T_I) - log_survival(cpty, T_I));
    }
    detail::require_domain(*t_C >= 0.0, "counterparty default time must be non-negative");
    const double lambda_C = cpty.intensity().value_at(*t_C);
    if (lambda_C == 0.0) {
        throw NumericError("conditional discount is singular where the counterparty intensity vanishes (t_C = " +
                           std::to_string(*t_C) + ")");
    }
    const double marginal_slope = -lambda_C * survival(cpty, *t_C);
    return discount * partial_survival_C(model, T_I, *t_C) / marginal_slope;
}

double expected_conditional_discount(const MarketRates& market, const JointDefaultModel& model, double T_I,
                                     double T_C) {
    detail::require_domain(T_I > 0.0, "bond maturity must be positive");
    detail::require_domain(T_C >= 0.0 && T_C < T_I, "contingency maturity must lie in [0, T_I)");

    const CreditCurve& cpty = model.counterparty();
    const auto density = [&](double t) {
        const double lambda = cpty.intensity().value_at(t);
        if (lambda == 0.0) return 0.0;
        return conditional_discount(market, model, T_I, t) * lambda * survival(cpty, t);
    };
    const int per_unit = static_cast<int>(std::ceil(kTauQuadraturePanels / (T_I - T_C)));
    const auto breaks = cpty.intensity().breakpoints(T_C, T_I);
    const auto grid = panel_grid(T_C, T_I, breaks, per_unit);

    const double tail = survival(cpty, T_I) * conditional_discount(market, model, T_I, std::nullopt);
    return composite_simpson(density, grid) + tail;
}

ContingentBondPrice reprice_contingent_bond(const MarketRates& market, const JointDefaultModel& model,
                                            const BondSpec& spec) {
    detail::require_domain(spec.recovery == 0.0, "contingent bond repricing requires zero bond recovery");
    detail::require_domain(spec.maturity > 0.0, "bond maturity must be positive");
    detail::require_domain(spec.contingency_maturity >= 0.0 && spec.contingency_maturity < spec.maturity,
                           "contingency maturity must lie in [0, T_I)");

    ContingentBondPrice price{};
    price.external = discount_factor(market.risk_free, 0.0, spec.maturity) *
                     joint_survival(model, spec.maturity, spec.contingency_maturity);
    price.internal = expected_conditional_discount(market, model, spec.maturity, spec.contingency_maturity);
    if (!(std::abs(price.internal - price.external) <= kContingentBondTolerance)) {
        throw InvariantError("contingent bond repricing mismatch: internal " + std::to_string(price.internal) +
                             " vs external " + std::to_string(price.external));
    }
    return price;
}

InternalMeasure::InternalMeasure(MarketRates market, CreditCurve counterparty,
                                 std::variant<RiskFreeCounterparty, CorrelatedZeroRecovery> mode)
    : market_(std::move(market)), counterparty_(std::move(counterparty)), mode_(std::move(mode)) {}

InternalMeasure InternalMeasure::riskfree_counterparty(const MarketRates& market, const CreditCurve& investor,
                                                       double bond_recovery, const TermCurve& lambda_bar) {
    RiskFreeCounterparty mode{lambda_bar, bond_recovery, internal_rate(market, investor, bond_recovery, lambda_bar)};
    return InternalMeasure(market, CreditCurve(Name::Counterparty, TermCurve()), std::move(mode));
}

InternalMeasure InternalMeasure::independent_defaults(const MarketRates& market, const CreditCurve& investor,
                                                      const CreditCurve& counterparty, double bond_recovery,
                                                      const TermCurve& lambda_bar) {
    RiskFreeCounterparty mode{lambda_bar, bond_recovery, internal_rate(market, investor, bond_recovery, lambda_bar)};
    return InternalMeasure(market, counterparty, std::move(mode));
}

InternalMeasure InternalMeasure::correlated_zero_recovery(const MarketRates& market,
                                                          const JointDefaultModel& model) {
    return InternalMeasure(market, model.counterparty(), CorrelatedZeroRecovery{model});
}

const TermCurve& InternalMeasure::investor_intensity() const {
    if (const auto* rf = std::get_if<RiskFreeCounterparty>(&mode_)) return rf->lambda_bar;
    return zero_;
}

double InternalMeasure::short_rate(double t) const {
    if (const auto* rf = std::get_if<RiskFreeCounterparty>(&mode_)) return rf->internal_rate.value_at(t);
    return PreDefaultRate(market_, std::get<CorrelatedZeroRecovery>(mode_).model)(t);
}

double InternalMeasure::counterparty_survival(double t) const { return survival(counterparty_, t); }

}  // namespace fva
