#pragma once

#include <string_view>

#include "fva/curves.hpp"

namespace fva {

enum class Name { Investor, Counterparty };

std::string_view to_string(Name name);

/// Marginal default law of one name through a non-negative intensity curve.
class CreditCurve {
public:
    CreditCurve() = default;
    /// Throws DomainError on a negative intensity.
    CreditCurve(Name name, TermCurve intensity);

    Name name() const { return name_; }
    const TermCurve& intensity() const { return intensity_; }

    bool operator==(const CreditCurve&) const = default;

private:
    Name name_ = Name::Investor;
    TermCurve intensity_;
};

/// U_N(t) = exp(-integral_0^t lambda_N).
double survival(const CreditCurve& curve, double t);

/// ln U_N(t), exact from the intensity integral.
double log_survival(const CreditCurve& curve, double t);

/// Joint default law of investor and counterparty: marginal curves coupled
/// by the Clayton survival copula C(u,v) = (u^-theta + v^-theta - 1)^(-1/theta),
/// theta >= 0, with theta = 0 the independence copula u*v.
class JointDefaultModel {
public:
    JointDefaultModel() = default;
    /// Throws DomainError if theta < 0, theta is not finite, or the curves
    /// carry the wrong names.
    JointDefaultModel(CreditCurve investor, CreditCurve counterparty, double theta);

    const CreditCurve& investor() const { return investor_; }
    const CreditCurve& counterparty() const { return counterparty_; }
    const CreditCurve& curve(Name name) const;
    double theta() const { return theta_; }

    bool operator==(const JointDefaultModel&) const = default;

private:
    CreditCurve investor_{Name::Investor, TermCurve()};
    CreditCurve counterparty_{Name::Counterparty, TermCurve()};
    double theta_ = 0.0;
};

/// U(t_I, t_C) = P(tau_I > t_I, tau_C > t_C).
double joint_survival(const JointDefaultModel& model, double t_I, double t_C);

/// ln U(t_I, t_C), evaluated without forming U so that tiny theta stays
/// accurate.
double log_joint_survival(const JointDefaultModel& model, double t_I, double t_C);

/// First-to-default intensity Lambda_N(t) = -d/dt_N ln U(t, t).
double ftd_intensity(const JointDefaultModel& model, Name name, double t);

/// dU/dt_C at (t_I, t_C); always <= 0.
double partial_survival_C(const JointDefaultModel& model, double t_I, double t_C);

}  // namespace fva
