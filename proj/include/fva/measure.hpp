#pragma once

#include <optional>
#include <variant>

#include "fva/credit.hpp"
#include "fva/curves.hpp"

namespace fva {

/// Investor zero-coupon bond paying 1_{tau_C > T_C} 1_{tau_I > T_I} at T_I,
/// recovering a fraction R_I of its value on investor default. T_C = 0 is the
/// plain bond.
struct BondSpec {
    double maturity = 1.0;              // T_I
    double contingency_maturity = 0.0;  // T_C, strictly below T_I
    double recovery = 0.0;              // R_I
};

/// r_F = r + (1 - R_I) lambda_I.
TermCurve funding_rate(const MarketRates& market, const CreditCurve& investor, double bond_recovery);

/// Internal risk-free rate that keeps the funding rate unchanged when the
/// investor quotes its own intensity as lambda_bar:
/// r_bar = r_F - (1 - R_I) lambda_bar.
TermCurve internal_rate(const MarketRates& market, const CreditCurve& investor, double bond_recovery,
                        const TermCurve& lambda_bar);

/// Time-0 price of the investor's plain zero-coupon bond maturing at T.
double bond_price(const MarketRates& market, const CreditCurve& investor, double bond_recovery, double T);

/// Same bond priced from an internal pair (r_bar, lambda_bar).
double bond_price_internal(const TermCurve& internal_rate, const TermCurve& lambda_bar, double bond_recovery,
                           double T);

/// Internal short rate before counterparty default, r + Lambda_I + Lambda_C -
/// lambda_C, for a zero-recovery, internally default-free investor.
class PreDefaultRate {
public:
    PreDefaultRate(MarketRates market, JointDefaultModel model);

    double operator()(double t) const;

    /// Exact integral over [t0, t1]: -ln of the pre-default internal bank
    /// account ratio D_bar(0,t1)/D_bar(0,t0).
    double integrated(double t0, double t1) const;

private:
    MarketRates market_;
    JointDefaultModel model_;
};

PreDefaultRate pre_default_rate(const MarketRates& market, const JointDefaultModel& model);

/// Internal discount D_bar(0, T_I) conditional on tau_C = t_C; std::nullopt
/// (or any t_C >= T_I) selects the "no counterparty default before T_I"
/// branch. Throws NumericError if lambda_C(t_C) = 0 on the t_C < T_I branch.
double conditional_discount(const MarketRates& market, const JointDefaultModel& model, double T_I,
                            std::optional<double> t_C);

/// Number of Simpson panels used for expectations over tau_C on [0, T_I].
inline constexpr int kTauQuadraturePanels = 2000;
/// Agreement required between the internal and external contingent bond prices.
inline constexpr double kContingentBondTolerance = 1e-8;

/// E_bar[1_{tau_C > T_C} D_bar(0, T_I)] by quadrature over the tau_C law plus
/// the analytic mass beyond T_I.
double expected_conditional_discount(const MarketRates& market, const JointDefaultModel& model, double T_I,
                                     double T_C = 0.0);

struct ContingentBondPrice {
    double external;  // D(0,T_I) U(T_I, T_C)
    double internal;  // quadrature under the internal measure
};

/// Prices the credit-linked bond both ways; throws InvariantError when the
/// two disagree by more than kContingentBondTolerance.
ContingentBondPrice reprice_contingent_bond(const MarketRates& market, const JointDefaultModel& model,
                                            const BondSpec& spec);

/// The investor's internal completion of the market.
class InternalMeasure {
public:
    struct RiskFreeCounterparty {
        TermCurve lambda_bar;
        double bond_recovery;
        TermCurve internal_rate;
    };
    struct CorrelatedZeroRecovery {
        JointDefaultModel model;
    };

    /// Deterministic internal rate, investor intensity lambda_bar >= 0.
    static InternalMeasure riskfree_counterparty(const MarketRates& market, const CreditCurve& investor,
                                                 double bond_recovery, const TermCurve& lambda_bar);
    /// As riskfree_counterparty, with a defaultable counterparty independent
    /// of the investor; the internal rate is unchanged.
    static InternalMeasure independent_defaults(const MarketRates& market, const CreditCurve& investor,
                                                const CreditCurve& counterparty, double bond_recovery,
                                                const TermCurve& lambda_bar);
    /// Zero bond recovery, internally default-free investor.
    static InternalMeasure correlated_zero_recovery(const MarketRates& market, const JointDefaultModel& model);

    bool is_correlated() const { return std::holds_alternative<CorrelatedZeroRecovery>(mode_); }
    const std::variant<RiskFreeCounterparty, CorrelatedZeroRecovery>& mode() const { return mode_; }

    /// Internal investor intensity (identically zero in the correlated mode).
    const TermCurve& investor_intensity() const;

    /// r_bar(t), or r_bar'(t) before counterparty default in the correlated mode.
    double short_rate(double t) const;

    /// Counterparty survival under the internal measure; equals the market one.
    double counterparty_survival(double t) const;

private:
    InternalMeasure(MarketRates market, CreditCurve counterparty,
                    std::variant<RiskFreeCounterparty, CorrelatedZeroRecovery> mode);

    MarketRates market_;
    CreditCurve counterparty_;
    std::variant<RiskFreeCounterparty, CorrelatedZeroRecovery> mode_;
    TermCurve zero_;
};

}  // namespace fva
