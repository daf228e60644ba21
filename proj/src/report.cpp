#include "fva/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>

#include "fva/errors.hpp"
#include "fva/measure.hpp"

namespace fva {

namespace {

struct SweepPoint {
    std::size_t index;
    TermCurve lambda_bar;
    std::optional<double> theta;
};

std::vector<SweepPoint> sweep_points(const ScenarioConfig& cfg) {
    std::vector<SweepPoint> out;
    if (cfg.regime == Regime::Correlated) {
        for (std::size_t i = 0; i < cfg.theta_sweep.size(); ++i) out.push_back({i, TermCurve(), cfg.theta_sweep[i]});
    } else {
        for (std::size_t i = 0; i < cfg.lambda_bar_sweep.size(); ++i) {
            out.push_back({i, cfg.lambda_bar_sweep[i], std::nullopt});
        }
    }
    return out;
}

void bond_checks(const ScenarioConfig& cfg, const CreditCurve& investor, const TermCurve& lambda_bar,
                 std::vector<MeasureCheck>& out) {
    const TermCurve r_bar = internal_rate(cfg.market, investor, cfg.bond_recovery, lambda_bar);
    for (double T : cfg.checks.bond_maturities) {
        MeasureCheck c{"bond_invariance", T, 0.0, bond_price_internal(r_bar, lambda_bar, cfg.bond_recovery, T),
                       bond_price(cfg.market, investor, cfg.bond_recovery, T)};
        if (!(std::abs(c.value - c.reference) <= kBondInvarianceTolerance * c.reference)) {
            throw InvariantError("bond price not invariant under the internal measure at T = " + format_number(T));
        }
        out.push_back(c);
    }
}

void correlated_checks(const ScenarioConfig& cfg, const JointDefaultModel& model, std::vector<MeasureCheck>& out) {
    const double T_I = cfg.checks.contingent_bond_maturity;
    MeasureCheck identity{"conditional_discount", T_I, 0.0, expected_conditional_discount(cfg.market, model, T_I),
                          discount_factor(cfg.market.risk_free, 0.0, T_I) * survival(model.investor(), T_I)};
    if (!(std::abs(identity.value - identity.reference) <= kConditionalDiscountTolerance)) {
        throw InvariantError("conditional discount expectation does not reprice the investor bond");
    }
    out.push_back(identity);
    for (double T_C : cfg.checks.contingency_maturities) {
        const auto price = reprice_contingent_bond(cfg.market, model, BondSpec{T_I, T_C, 0.0});
        out.push_back({"contingent_bond", T_I, T_C, price.internal, price.external});
    }
}

SweepResult value_point(const ScenarioConfig& cfg, const SweepPoint& point, const RunOptions& options) {
    const CreditCurve investor(Name::Investor, cfg.investor_intensity);
    const CreditCurve counterparty(Name::Counterparty, cfg.counterparty_intensity);
    const CashflowSchedule schedule(cfg.schedule);
    const EngineOptions engine{options.panels_per_year.value_or(cfg.numerics.panels_per_year)};
    const McOptions mc{cfg.numerics.mc_paths, cfg.numerics.seed, cfg.numerics.threads};

    SweepResult res;
    res.regime = cfg.regime;
    res.index = point.index;
    res.lambda_bar = point.lambda_bar;
    res.theta = point.theta;

    switch (cfg.regime) {
        case Regime::RiskFreeCounterparty:
            res.profile = adjustment_riskfree_cpty(cfg.market, investor, cfg.bond_recovery, point.lambda_bar, schedule,
                                                   cfg.closeout, engine);
            bond_checks(cfg, investor, point.lambda_bar, res.checks);
            if (options.monte_carlo) {
                res.mc = mc_value_riskfree_cpty(cfg.market, investor, cfg.bond_recovery, point.lambda_bar, schedule,
                                                cfg.closeout, mc);
            }
            break;
        case Regime::Independent:
            res.profile = adjustment_independent(cfg.market, investor, counterparty, cfg.bond_recovery,
                                                 point.lambda_bar, schedule, cfg.closeout, engine);
            bond_checks(cfg, investor, point.lambda_bar, res.checks);
            if (options.monte_carlo) {
                res.mc = mc_value_independent(cfg.market, investor, counterparty, cfg.bond_recovery, point.lambda_bar,
                                              schedule, cfg.closeout, mc);
            }
            break;
        case Regime::Correlated: {
            const JointDefaultModel model(investor, counterparty, *point.theta);
            res.profile = adjustment_correlated(cfg.market, model, schedule, cfg.closeout, engine);
            correlated_checks(cfg, model, res.checks);
            if (options.monte_carlo) res.mc = mc_value_correlated(cfg.market, model, schedule, cfg.closeout, mc);
            break;
        }
        case Regime::Linear:
            throw ConfigError("the linear regime has no scenario form");
    }
    return res;
}

std::string theta_cell(const SweepResult& r) { return r.theta ? format_number(*r.theta) : ""; }

}  // namespace

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<SweepResult> run_scenario(const ScenarioConfig& config, const RunOptions& options) {
    std::vector<std::future<SweepResult>> futures;
    for (const auto& point : sweep_points(config)) {
        futures.push_back(std::async(std::launch::async, [&config, point, &options] {
            return value_point(config, point, options);
        }));
    }
    std::vector<SweepResult> results;
    results.reserve(futures.size());
    for (auto& f : futures) results.push_back(f.get());
    return results;
}

void write_profile_csv(std::ostream& os, const std::vector<SweepResult>& results) {
    os << kProfileColumns << "\n";
    for (const auto& r : results) {
        const auto& p = r.profile;
        for (std::size_t k = 0; k < p.grid.size(); ++k) {
            const double t = p.grid[k];
            os << to_string(r.regime) << ',' << format_number(r.lambda_bar.value_at(t)) << ',' << theta_cell(r) << ','
               << format_number(t) << ',' << format_number(p.v_x[k]) << ',' << format_number(p.u[k]) << ','
               << format_number(p.v[k]) << ',' << format_number(p.alpha[k]) << ',' << format_number(p.beta[k]) << ',';
            if (k == 0 && r.mc) os << format_number(r.mc->mean) << ',' << format_number(r.mc->std_error);
            else os << ',';
            os << "\n";
        }
    }
}

void write_summary_csv(std::ostream& os, const std::vector<SweepResult>& results) {
    os << kSummaryColumns << "\n";
    for (const auto& r : results) {
        os << to_string(r.regime) << ',' << r.index << ',' << format_number(r.lambda_bar.value_at(0.0)) << ','
           << theta_cell(r) << ',' << format_number(r.profile.v_x.front()) << ',' << format_number(r.profile.u0())
           << ',' << format_number(r.profile.v0()) << ',';
        if (r.mc) {
            os << format_number(r.mc->mean) << ',' << format_number(r.mc->std_error) << ',';
            // No z-score for a deterministic estimate.
            if (r.mc->std_error > 0.0) os << format_number((r.mc->mean - r.profile.v0()) / r.mc->std_error);
        } else {
            os << ",,";
        }
        os << "\n";
    }
}

void write_checks_csv(std::ostream& os, const std::vector<SweepResult>& results) {
    os << kChecksColumns << "\n";
    for (const auto& r : results) {
        for (const auto& c : r.checks) {
            os << to_string(r.regime) << ',' << r.index << ',' << format_number(r.lambda_bar.value_at(0.0)) << ','
               << theta_cell(r) << ',' << c.name << ',' << format_number(c.maturity) << ','
               << format_number(c.contingency) << ',' << format_number(c.value) << ',' << format_number(c.reference)
               << ',' << format_number(std::abs(c.value - c.reference)) << "\n";
        }
    }
}

void write_reports(const std::filesystem::path& dir, const std::vector<SweepResult>& results) {
    std::filesystem::create_directories(dir);
    const auto write = [&](const char* name, void (*fn)(std::ostream&, const std::vector<SweepResult>&)) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw Error("cannot write report " + (dir / name).string());
        fn(out, results);
    };
    write("profile.csv", write_profile_csv);
    write("summary.csv", write_summary_csv);
    write("checks.csv", write_checks_csv);
}

}  // namespace fva
