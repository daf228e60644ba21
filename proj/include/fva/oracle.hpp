#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "fva/credit.hpp"
#include "fva/curves.hpp"
#include "fva/instruments.hpp"

namespace fva {

/// Default time of a name that never defaults.
inline constexpr double kNever = std::numeric_limits<double>::infinity();

struct DefaultTimes {
    double investor;      // tau_I, kNever if no default
    double counterparty;  // tau_C, kNever if no default
};

/// One simulated path: default times and the discounted sum of dQ.
struct PathOutcome {
    double tau_I = kNever;
    double tau_C = kNever;
    double payoff = 0.0;

    double tau() const { return tau_I < tau_C ? tau_I : tau_C; }
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t paths = 0;
    std::uint64_t seed = 0;
};

struct McOptions {
    std::size_t paths = 1'000'000;
    std::uint64_t seed = 20240601;
    /// Worker threads; 0 picks the hardware concurrency. Results do not
    /// depend on this value.
    unsigned threads = 0;
};

/// Counter-based uniform stream: draw `index` of path `path` under `seed`,
/// in the open interval (0, 1). Pure integer mixing, so it is bit-identical
/// across platforms and independent of evaluation order.
double path_uniform(std::uint64_t seed, std::uint64_t path, std::uint64_t index);

/// Default times sampled from the joint law by conditional inversion of the
/// Clayton survival copula. Throws DomainError for n = 0.
std::vector<DefaultTimes> sample_joint_defaults(const JointDefaultModel& model, std::size_t n, std::uint64_t seed);

/// Mean and standard error of `values`, reduced by pairwise summation.
McEstimate summarize(std::span<const double> values, std::uint64_t seed);

/// v(0) for an investor-only default under the internal intensity lambda_bar
/// and the deterministic internal rate r_bar.
McEstimate mc_value_riskfree_cpty(const MarketRates& market, const CreditCurve& investor, double bond_recovery,
                                  const TermCurve& lambda_bar, const CashflowSchedule& schedule,
                                  const CloseoutSpec& closeout, const McOptions& options = {});

/// v(0) with independent investor (internal lambda_bar) and counterparty
/// defaults, discounting at r_bar.
McEstimate mc_value_independent(const MarketRates& market, const CreditCurve& investor,
                                const CreditCurve& counterparty, double bond_recovery, const TermCurve& lambda_bar,
                                const CashflowSchedule& schedule, const CloseoutSpec& closeout,
                                const McOptions& options = {});

/// v(0) under the correlated zero-recovery internal measure: only tau_C
/// occurs, and cash flows are discounted with the pre-default internal bank
/// account D(0,t) U(t,t) / U_C(t).
McEstimate mc_value_correlated(const MarketRates& market, const JointDefaultModel& model,
                               const CashflowSchedule& schedule, const CloseoutSpec& closeout,
                               const McOptions& options = {});

}  // namespace fva
