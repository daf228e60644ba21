#include "fva/instruments.hpp"

#include <algorithm>
#include <cmath>

#include "fva/errors.hpp"

namespace fva {

namespace {

double last_time(const std::vector<Cashflow>& flows) {
    detail::require_domain(!flows.empty(), "cashflow schedule needs at least one flow");
    return flows.back().time;
}

template <typename Included>
double discounted_sum(const CashflowSchedule& schedule, const TermCurve& collateral, double t, Included included) {
    detail::require_domain(t >= 0.0 && t <= schedule.maturity(), "collateral value queried outside [0, T]");
    double sum = 0.0;
    for (const auto& f : schedule.flows()) {
        if (included(f.time)) sum += f.amount * discount_factor(collateral, t, f.time);
    }
    return sum;
}

}  // namespace

CashflowSchedule::CashflowSchedule(std::vector<Cashflow> flows)
    : CashflowSchedule(flows, last_time(flows)) {}

CashflowSchedule::CashflowSchedule(std::vector<Cashflow> flows, double maturity)
    : flows_(std::move(flows)), maturity_(maturity) {
    detail::require_domain(!flows_.empty(), "cashflow schedule needs at least one flow");
    detail::require_domain(std::isfinite(maturity_), "schedule maturity must be finite");
    for (std::size_t i = 0; i < flows_.size(); ++i) {
        const auto& f = flows_[i];
        detail::require_domain(std::isfinite(f.time) && std::isfinite(f.amount), "cashflow must be finite");
        detail::require_domain(f.time > 0.0 && f.time <= maturity_, "cashflow times must lie in (0, T]");
        detail::require_domain(i == 0 || f.time > flows_[i - 1].time, "cashflow times must be strictly increasing");
    }
}

std::vector<double> CashflowSchedule::flow_times() const {
    std::vector<double> out;
    out.reserve(flows_.size());
    for (const auto& f : flows_) out.push_back(f.time);
    return out;
}

CashflowSchedule CashflowSchedule::scaled(double k) const {
    auto flows = flows_;
    for (auto& f : flows) f.amount *= k;
    return CashflowSchedule(std::move(flows), maturity_);
}

void validate(const CloseoutSpec& spec) {
    detail::require_domain(spec.recovery_investor >= 0.0 && spec.recovery_investor <= 1.0,
                           "investor closeout recovery must lie in [0, 1]");
    detail::require_domain(spec.recovery_counterparty >= 0.0 && spec.recovery_counterparty <= 1.0,
                           "counterparty closeout recovery must lie in [0, 1]");
}

double collateral_value(const CashflowSchedule& schedule, const TermCurve& collateral, double t) {
    return discounted_sum(schedule, collateral, t, [t](double ti) { return ti > t; });
}

double collateral_value_before(const CashflowSchedule& schedule, const TermCurve& collateral, double t) {
    return discounted_sum(schedule, collateral, t, [t](double ti) { return ti >= t; });
}

CloseoutAmounts closeout_values(const CloseoutSpec& spec, double v) {
    const double pos = std::max(v, 0.0);
    const double neg = std::max(-v, 0.0);
    return {pos - spec.recovery_investor * neg, spec.recovery_counterparty * pos - neg};
}

}  // namespace fva
