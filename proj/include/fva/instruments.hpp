#pragma once

#include <span>
#include <vector>

#include "fva/curves.hpp"

namespace fva {

/// Deterministic contractual flow; positive amounts are received by the investor.
struct Cashflow {
    double time;
    double amount;

    bool operator==(const Cashflow&) const = default;
};

/// Finite stream of deterministic dividends ending at `maturity`.
class CashflowSchedule {
public:
    /// Maturity defaults to the last flow date. Throws DomainError on empty
    /// schedules, non-increasing or non-positive times, non-finite amounts,
    /// or flows after maturity.
    explicit CashflowSchedule(std::vector<Cashflow> flows);
    CashflowSchedule(std::vector<Cashflow> flows, double maturity);

    std::span<const Cashflow> flows() const { return flows_; }
    double maturity() const { return maturity_; }
    std::vector<double> flow_times() const;

    /// Every amount multiplied by k.
    CashflowSchedule scaled(double k) const;

    bool operator==(const CashflowSchedule&) const = default;

private:
    std::vector<Cashflow> flows_;
    double maturity_;
};

/// Closeout recoveries applied on investor / counterparty default.
struct CloseoutSpec {
    double recovery_investor = 1.0;      // R_I (closeout)
    double recovery_counterparty = 1.0;  // R_C (closeout)

    bool operator==(const CloseoutSpec&) const = default;
};

/// Throws DomainError if a recovery lies outside [0, 1].
void validate(const CloseoutSpec& spec);

/// Perfectly collateralized value v_X(t): flows strictly after t discounted
/// at the collateral rate (ex-dividend at flow dates, so v_X(T) = 0).
double collateral_value(const CashflowSchedule& schedule, const TermCurve& collateral, double t);

/// v_X just before t, i.e. including a flow paid exactly at t.
double collateral_value_before(const CashflowSchedule& schedule, const TermCurve& collateral, double t);

struct CloseoutAmounts {
    double investor;      // k_I = v_X+ - R_I v_X-
    double counterparty;  // k_C = R_C v_X+ - v_X-
};

CloseoutAmounts closeout_values(const CloseoutSpec& spec, double collateral_value);

}  // namespace fva
