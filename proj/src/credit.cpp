#include "fva/credit.hpp"

#include <cmath>

#include "fva/errors.hpp"

namespace fva {

namespace {

void check_time(double t) { detail::require_domain(t >= 0.0, "default time query at negative time"); }

// S - 1 = (u^-theta - 1) + (v^-theta - 1) from log-survivals a = ln u, b = ln v.
double copula_excess(double theta, double log_u, double log_v) {
    return std::expm1(-theta * log_u) + std::expm1(-theta * log_v);
}

}  // namespace

std::string_view to_string(Name name) { return name == Name::Investor ? "I" : "C"; }

CreditCurve::CreditCurve(Name name, TermCurve intensity) : name_(name), intensity_(std::move(intensity)) {
    detail::require_domain(intensity_.is_non_negative(),
                           "default intensity of " + std::string(to_string(name_)) + " must be non-negative");
}

double log_survival(const CreditCurve& curve, double t) {
    check_time(t);
    return -integrated_rate(curve.intensity(), 0.0, t);
}

double survival(const CreditCurve& curve, double t) { return std::exp(log_survival(curve, t)); }

JointDefaultModel::JointDefaultModel(CreditCurve investor, CreditCurve counterparty, double theta)
    : investor_(std::move(investor)), counterparty_(std::move(counterparty)), theta_(theta) {
    detail::require_domain(std::isfinite(theta_) && theta_ >= 0.0,
                           "copula dependence theta must be finite and >= 0");
    detail::require_domain(investor_.name() == Name::Investor, "first credit curve must be the investor's");
    detail::require_domain(counterparty_.name() == Name::Counterparty,
                           "second credit curve must be the counterparty's");
}

const CreditCurve& JointDefaultModel::curve(Name name) const {
    return name == Name::Investor ? investor_ : counterparty_;
}

double log_joint_survival(const JointDefaultModel& model, double t_I, double t_C) {
    const double a = log_survival(model.investor(), t_I);
    const double b = log_survival(model.counterparty(), t_C);
    const double theta = model.theta();
    if (theta == 0.0) return a + b;
    return -std::log1p(copula_excess(theta, a, b)) / theta;
}

double joint_survival(const JointDefaultModel& model, double t_I, double t_C) {
    return std::exp(log_joint_survival(model, t_I, t_C));
}

double ftd_intensity(const JointDefaultModel& model, Name name, double t) {
    check_time(t);
    const double lambda = model.curve(name).intensity().value_at(t);
    const double theta = model.theta();
    if (theta == 0.0) return lambda;
    const double a = log_survival(model.investor(), t);
    const double b = log_survival(model.counterparty(), t);
    const double own = name == Name::Investor ? a : b;
    return lambda * std::exp(-theta * own) / (1.0 + copula_excess(theta, a, b));
}

double partial_survival_C(const JointDefaultModel& model, double t_I, double t_C) {
    check_time(t_I);
    check_time(t_C);
    const double lambda_C = model.counterparty().intensity().value_at(t_C);
    if (lambda_C == 0.0) return 0.0;
    const double theta = model.theta();
    const double joint = joint_survival(model, t_I, t_C);
    if (theta == 0.0) return -lambda_C * joint;
    const double a = log_survival(model.investor(), t_I);
    const double b = log_survival(model.counterparty(), t_C);
    // dC/dv * dU_C/dt with dC/dv = C * v^-theta / (v * S) and dU_C/dt = -lambda_C * v.
    return -lambda_C * joint * std::exp(-theta * b) / (1.0 + copula_excess(theta, a, b));
}

}  // namespace fva
