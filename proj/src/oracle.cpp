#include "fva/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "fva/errors.hpp"
#include "fva/measure.hpp"

namespace fva {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double pairwise_sum(std::span<const double> x) {
    if (x.size() <= 64) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }
    const std::size_t half = x.size() / 2;
    return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

/// Fills values[i] = payoff(i) in parallel; the split never affects values.
std::vector<double> run_paths(std::size_t n, unsigned threads, const std::function<double(std::size_t)>& payoff) {
    detail::require_domain(n >= 1, "Monte Carlo needs at least one path");
    std::vector<double> values(n);
    unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    const auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) values[i] = payoff(i);
    };
    if (workers == 1) {
        work(0, n);
        return values;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& t : pool) t.join();
    return values;
}

/// Default time for a name whose survival equals exp(-target).
double invert_survival(const TermCurve& intensity, double target) { return intensity.inverse_integrated(target); }

/// Sum of amount_i * discount(t_i) over flows paid strictly before tau.
struct DiscountedFlows {
    std::vector<double> times;
    std::vector<double> values;

    double before(double tau) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < times.size() && times[i] < tau; ++i) sum += values[i];
        return sum;
    }
};

template <typename Discount>
DiscountedFlows discount_flows(const CashflowSchedule& schedule, Discount discount) {
    DiscountedFlows out;
    for (const auto& f : schedule.flows()) {
        out.times.push_back(f.time);
        out.values.push_back(f.amount * discount(f.time));
    }
    return out;
}

McEstimate deterministic(double value, const McOptions& options) {
    return {value, 0.0, options.paths, options.seed};
}

}  // namespace

double path_uniform(std::uint64_t seed, std::uint64_t path, std::uint64_t index) {
    const std::uint64_t key = mix64(seed + 0x9e3779b97f4a7c15ULL * (path + 1));
    const std::uint64_t bits = mix64(key + 0x9e3779b97f4a7c15ULL * (index + 1));
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<DefaultTimes> sample_joint_defaults(const JointDefaultModel& model, std::size_t n, std::uint64_t seed) {
    detail::require_domain(n >= 1, "need at least one default-time sample");
    const double theta = model.theta();
    std::vector<DefaultTimes> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w1 = path_uniform(seed, i, 0);
        const double w2 = path_uniform(seed, i, 1);
        // u = w1 and v from the conditional law of v given u, both as
        // survival levels; -ln u and -ln v are the accumulated intensities.
        const double target_I = -std::log(w1);
        double target_C = -std::log(w2);
        if (theta > 0.0) {
            const double excess = std::expm1(-theta / (1.0 + theta) * std::log(w2));
            target_C = std::log1p(excess * std::exp(theta * target_I)) / theta;
        }
        out[i] = {invert_survival(model.investor().intensity(), target_I),
                  invert_survival(model.counterparty().intensity(), target_C)};
    }
    return out;
}

McEstimate summarize(std::span<const double> values, std::uint64_t seed) {
    detail::require_domain(!values.empty(), "cannot summarize an empty sample");
    const auto n = static_cast<double>(values.size());
    const double mean = pairwise_sum(values) / n;
    double std_error = 0.0;
    if (values.size() > 1) {
        std::vector<double> sq(values.size());
        std::transform(values.begin(), values.end(), sq.begin(), [mean](double v) { return (v - mean) * (v - mean); });
        std_error = std::sqrt(pairwise_sum(sq) / (n - 1.0) / n);
    }
    return {mean, std_error, values.size(), seed};
}

McEstimate mc_value_riskfree_cpty(const MarketRates& market, const CreditCurve& investor, double bond_recovery,
                                  const TermCurve& lambda_bar, const CashflowSchedule& schedule,
                                  const CloseoutSpec& closeout, const McOptions& options) {
    return mc_value_independent(market, investor, CreditCurve(Name::Counterparty, TermCurve()), bond_recovery,
                                lambda_bar, schedule, closeout, options);
}

McEstimate mc_value_independent(const MarketRates& market, const CreditCurve& investor,
                                const CreditCurve& counterparty, double bond_recovery, const TermCurve& lambda_bar,
                                const CashflowSchedule& schedule, const CloseoutSpec& closeout,
                                const McOptions& options) {
    validate(closeout);
    detail::require_domain(options.paths >= 1, "Monte Carlo needs at least one path");
    const TermCurve r_bar = internal_rate(market, investor, bond_recovery, lambda_bar);
    const TermCurve& lambda_C = counterparty.intensity();
    const auto flows = discount_flows(schedule, [&](double t) { return discount_factor(r_bar, 0.0, t); });

    if (lambda_bar.is_zero() && lambda_C.is_zero()) return deterministic(flows.before(kNever), options);

    const double T = schedule.maturity();
    const auto payoff = [&](std::size_t i) {
        PathOutcome path;
        path.tau_I = invert_survival(lambda_bar, -std::log(path_uniform(options.seed, i, 0)));
        path.tau_C = invert_survival(lambda_C, -std::log(path_uniform(options.seed, i, 1)));
        const double tau = path.tau();
        path.payoff = flows.before(tau);
        if (tau <= T) {
            const auto k = closeout_values(closeout, collateral_value(schedule, market.collateral, tau));
            const double amount = path.tau_I < path.tau_C ? k.investor : k.counterparty;
            path.payoff += amount * discount_factor(r_bar, 0.0, tau);
        }
        return path.payoff;
    };
    return summarize(run_paths(options.paths, options.threads, payoff), options.seed);
}

McEstimate mc_value_correlated(const MarketRates& market, const JointDefaultModel& model,
                               const CashflowSchedule& schedule, const CloseoutSpec& closeout,
                               const McOptions& options) {
    validate(closeout);
    detail::require_domain(options.paths >= 1, "Monte Carlo needs at least one path");
    const PreDefaultRate pre_default(market, model);
    const auto bank = [&](double t) { return std::exp(-pre_default.integrated(0.0, t)); };
    const auto flows = discount_flows(schedule, bank);
    const TermCurve& lambda_C = model.counterparty().intensity();

    if (lambda_C.is_zero()) return deterministic(flows.before(kNever), options);

    const double T = schedule.maturity();
    const auto payoff = [&](std::size_t i) {
        PathOutcome path;
        path.tau_C = invert_survival(lambda_C, -std::log(path_uniform(options.seed, i, 0)));
        path.payoff = flows.before(path.tau_C);
        if (path.tau_C <= T) {
            const auto k = closeout_values(closeout, collateral_value(schedule, market.collateral, path.tau_C));
            path.payoff += k.counterparty * bank(path.tau_C);
        }
        return path.payoff;
    };
    return summarize(run_paths(options.paths, options.threads, payoff), options.seed);
}

}  // namespace fva
