#include <sstream>

#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fva/credit.hpp"
#include "fva/curves.hpp"
#include "fva/engine.hpp"
#include "fva/errors.hpp"
#include "fva/instruments.hpp"
#include "fva/measure.hpp"
#include "fva/oracle.hpp"
#include "fva/report.hpp"
#include "fva/scenario.hpp"

namespace py = pybind11;
using namespace fva;

namespace {

// Curves arrive from Python as a number (flat) or a list of (t, value) pairs.
TermCurve to_curve(const py::object& obj) {
    if (py::isinstance<TermCurve>(obj)) return obj.cast<TermCurve>();
    if (py::isinstance<py::float_>(obj) || py::isinstance<py::int_>(obj)) return TermCurve::flat(obj.cast<double>());
    std::vector<CurveNode> nodes;
    for (const auto& item : obj) {
        const auto pair = item.cast<std::pair<double, double>>();
        nodes.push_back({pair.first, pair.second});
    }
    return TermCurve(std::move(nodes));
}

std::vector<Cashflow> to_flows(const std::vector<std::pair<double, double>>& flows) {
    std::vector<Cashflow> out;
    for (const auto& [t, a] : flows) out.push_back({t, a});
    return out;
}

std::string report_text(const std::vector<SweepResult>& results,
                        void (*fn)(std::ostream&, const std::vector<SweepResult>&)) {
    std::ostringstream os;
    fn(os, results);
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_fva, m) {
    m.doc() = "Funding, credit and debit value adjustments under internal measures";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<NumericError>(m, "NumericError", error.ptr());
    py::register_exception<InvariantError>(m, "InvariantError", error.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", error.ptr());

    py::class_<TermCurve>(m, "TermCurve")
        .def(py::init([](const py::object& obj) { return to_curve(obj); }), py::arg("nodes"))
        .def_static("flat", &TermCurve::flat)
        .def("value_at", &TermCurve::value_at)
        .def("value_before", &TermCurve::value_before)
        .def("integrated", [](const TermCurve& c, double t0, double t1) { return integrated_rate(c, t0, t1); })
        .def("discount", [](const TermCurve& c, double t0, double t1) { return discount_factor(c, t0, t1); })
        .def_property_readonly("nodes",
                               [](const TermCurve& c) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const auto& n : c.nodes()) out.emplace_back(n.time, n.value);
                                   return out;
                               })
        .def(py::self == py::self)
        .def("__repr__", [](const TermCurve& c) { return "TermCurve(" + std::to_string(c.nodes().size()) + " nodes)"; });
    py::implicitly_convertible<py::float_, TermCurve>();
    py::implicitly_convertible<py::int_, TermCurve>();
    py::implicitly_convertible<py::list, TermCurve>();

    py::class_<MarketRates>(m, "MarketRates")
        .def(py::init([](const py::object& r, const py::object& r_x) { return MarketRates{to_curve(r), to_curve(r_x)}; }),
             py::arg("risk_free"), py::arg("collateral"))
        .def_readonly("risk_free", &MarketRates::risk_free)
        .def_readonly("collateral", &MarketRates::collateral);

    py::enum_<Name>(m, "Name").value("Investor", Name::Investor).value("Counterparty", Name::Counterparty);

    py::class_<CreditCurve>(m, "CreditCurve")
        .def(py::init([](Name n, const py::object& c) { return CreditCurve(n, to_curve(c)); }), py::arg("name"),
             py::arg("intensity"))
        .def_property_readonly("name", &CreditCurve::name)
        .def_property_readonly("intensity", &CreditCurve::intensity)
        .def("survival", [](const CreditCurve& c, double t) { return survival(c, t); });

    py::class_<JointDefaultModel>(m, "JointDefaultModel")
        .def(py::init<CreditCurve, CreditCurve, double>(), py::arg("investor"), py::arg("counterparty"),
             py::arg("theta"))
        .def_property_readonly("investor", &JointDefaultModel::investor)
        .def_property_readonly("counterparty", &JointDefaultModel::counterparty)
        .def_property_readonly("theta", &JointDefaultModel::theta);

    m.def("joint_survival", &joint_survival, py::arg("model"), py::arg("t_I"), py::arg("t_C"));
    m.def("ftd_intensity", &ftd_intensity, py::arg("model"), py::arg("name"), py::arg("t"));

    m.def("funding_rate", &funding_rate, py::arg("market"), py::arg("investor"), py::arg("bond_recovery"));
    m.def("internal_rate", &internal_rate, py::arg("market"), py::arg("investor"), py::arg("bond_recovery"),
          py::arg("lambda_bar"));
    m.def("bond_price", &bond_price, py::arg("market"), py::arg("investor"), py::arg("bond_recovery"), py::arg("T"));
    m.def("bond_price_internal", &bond_price_internal, py::arg("internal_rate"), py::arg("lambda_bar"),
          py::arg("bond_recovery"), py::arg("T"));
    m.def("conditional_discount", &conditional_discount, py::arg("market"), py::arg("model"), py::arg("T_I"),
          py::arg("t_C") = py::none());
    m.def("expected_conditional_discount", &expected_conditional_discount, py::arg("market"), py::arg("model"),
          py::arg("T_I"), py::arg("T_C") = 0.0);
    m.def(
        "reprice_contingent_bond",
        [](const MarketRates& market, const JointDefaultModel& model, double T_I, double T_C) {
            const auto p = reprice_contingent_bond(market, model, BondSpec{T_I, T_C, 0.0});
            return std::make_pair(p.external, p.internal);
        },
        py::arg("market"), py::arg("model"), py::arg("T_I"), py::arg("T_C"),
        "Returns (external, internal) prices of a zero-recovery contingent bond.");

    py::class_<CashflowSchedule>(m, "CashflowSchedule")
        .def(py::init([](const std::vector<std::pair<double, double>>& flows) { return CashflowSchedule(to_flows(flows)); }),
             py::arg("flows"))
        .def_property_readonly("maturity", &CashflowSchedule::maturity)
        .def_property_readonly("flows", [](const CashflowSchedule& s) {
            std::vector<std::pair<double, double>> out;
            for (const auto& f : s.flows()) out.emplace_back(f.time, f.amount);
            return out;
        });

    py::class_<CloseoutSpec>(m, "CloseoutSpec")
        .def(py::init([](double ri, double rc) { return CloseoutSpec{ri, rc}; }), py::arg("recovery_investor") = 1.0,
             py::arg("recovery_counterparty") = 1.0)
        .def_readwrite("recovery_investor", &CloseoutSpec::recovery_investor)
        .def_readwrite("recovery_counterparty", &CloseoutSpec::recovery_counterparty);

    m.def("collateral_value", &collateral_value, py::arg("schedule"), py::arg("collateral"), py::arg("t"));

    py::enum_<Regime>(m, "Regime")
        .value("Linear", Regime::Linear)
        .value("RiskFreeCounterparty", Regime::RiskFreeCounterparty)
        .value("Independent", Regime::Independent)
        .value("Correlated", Regime::Correlated);

    py::class_<AdjustmentProfile>(m, "AdjustmentProfile")
        .def_readonly("regime", &AdjustmentProfile::regime)
        .def_readonly("grid", &AdjustmentProfile::grid)
        .def_readonly("u", &AdjustmentProfile::u)
        .def_readonly("v", &AdjustmentProfile::v)
        .def_readonly("v_x", &AdjustmentProfile::v_x)
        .def_readonly("alpha", &AdjustmentProfile::alpha)
        .def_readonly("beta", &AdjustmentProfile::beta)
        .def_property_readonly("u0", &AdjustmentProfile::u0)
        .def_property_readonly("v0", &AdjustmentProfile::v0);

    m.def(
        "adjustment_riskfree_cpty",
        [](const MarketRates& mk, const CreditCurve& inv, double R, const TermCurve& lb, const CashflowSchedule& s,
           const CloseoutSpec& co, int panels) {
            return adjustment_riskfree_cpty(mk, inv, R, lb, s, co, EngineOptions{panels});
        },
        py::arg("market"), py::arg("investor"), py::arg("bond_recovery"), py::arg("lambda_bar"), py::arg("schedule"),
        py::arg("closeout"), py::arg("panels_per_year") = 512);
    m.def(
        "adjustment_independent",
        [](const MarketRates& mk, const CreditCurve& inv, const CreditCurve& cp, double R, const TermCurve& lb,
           const CashflowSchedule& s, const CloseoutSpec& co, int panels) {
            return adjustment_independent(mk, inv, cp, R, lb, s, co, EngineOptions{panels});
        },
        py::arg("market"), py::arg("investor"), py::arg("counterparty"), py::arg("bond_recovery"),
        py::arg("lambda_bar"), py::arg("schedule"), py::arg("closeout"), py::arg("panels_per_year") = 512);
    m.def(
        "adjustment_correlated",
        [](const MarketRates& mk, const JointDefaultModel& model, const CashflowSchedule& s, const CloseoutSpec& co,
           int panels) { return adjustment_correlated(mk, model, s, co, EngineOptions{panels}); },
        py::arg("market"), py::arg("model"), py::arg("schedule"), py::arg("closeout"),
        py::arg("panels_per_year") = 512);

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("std_error", &McEstimate::std_error)
        .def_readonly("paths", &McEstimate::paths)
        .def_readonly("seed", &McEstimate::seed);

    const auto mc_options = [](std::size_t paths, std::uint64_t seed, unsigned threads) {
        return McOptions{paths, seed, threads};
    };
    m.def(
        "mc_value_riskfree_cpty",
        [mc_options](const MarketRates& mk, const CreditCurve& inv, double R, const TermCurve& lb,
                     const CashflowSchedule& s, const CloseoutSpec& co, std::size_t paths, std::uint64_t seed,
                     unsigned threads) {
            py::gil_scoped_release release;
            return mc_value_riskfree_cpty(mk, inv, R, lb, s, co, mc_options(paths, seed, threads));
        },
        py::arg("market"), py::arg("investor"), py::arg("bond_recovery"), py::arg("lambda_bar"), py::arg("schedule"),
        py::arg("closeout"), py::arg("paths") = 1'000'000, py::arg("seed") = 20240601, py::arg("threads") = 0);
    m.def(
        "mc_value_independent",
        [mc_options](const MarketRates& mk, const CreditCurve& inv, const CreditCurve& cp, double R,
                     const TermCurve& lb, const CashflowSchedule& s, const CloseoutSpec& co, std::size_t paths,
                     std::uint64_t seed, unsigned threads) {
            py::gil_scoped_release release;
            return mc_value_independent(mk, inv, cp, R, lb, s, co, mc_options(paths, seed, threads));
        },
        py::arg("market"), py::arg("investor"), py::arg("counterparty"), py::arg("bond_recovery"),
        py::arg("lambda_bar"), py::arg("schedule"), py::arg("closeout"), py::arg("paths") = 1'000'000,
        py::arg("seed") = 20240601, py::arg("threads") = 0);
    m.def(
        "mc_value_correlated",
        [mc_options](const MarketRates& mk, const JointDefaultModel& model, const CashflowSchedule& s,
                     const CloseoutSpec& co, std::size_t paths, std::uint64_t seed, unsigned threads) {
            py::gil_scoped_release release;
            return mc_value_correlated(mk, model, s, co, mc_options(paths, seed, threads));
        },
        py::arg("market"), py::arg("model"), py::arg("schedule"), py::arg("closeout"), py::arg("paths") = 1'000'000,
        py::arg("seed") = 20240601, py::arg("threads") = 0);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def_readonly("regime", &ScenarioConfig::regime)
        .def_readonly("output_dir", &ScenarioConfig::output_dir)
        .def("to_json", [](const ScenarioConfig& c) { return to_json_text(c); })
        .def(py::self == py::self);

    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("load_config", &load_config, py::arg("path"));
    m.def(
        "validate_config",
        [](const std::string& text) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& d : validate_config_text(text)) out.emplace_back(d.path, d.message);
            return out;
        },
        py::arg("text"), "List of (path, message) diagnostics; empty when valid.");

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("regime", &SweepResult::regime)
        .def_readonly("index", &SweepResult::index)
        .def_readonly("lambda_bar", &SweepResult::lambda_bar)
        .def_readonly("theta", &SweepResult::theta)
        .def_readonly("profile", &SweepResult::profile)
        .def_readonly("mc", &SweepResult::mc);

    m.def(
        "run_scenario",
        [](const ScenarioConfig& cfg, bool mc, std::optional<int> panels) {
            py::gil_scoped_release release;
            return run_scenario(cfg, RunOptions{mc, panels});
        },
        py::arg("config"), py::arg("monte_carlo") = false, py::arg("panels_per_year") = py::none());
    m.def("write_reports", &write_reports, py::arg("dir"), py::arg("results"));
    m.def("summary_csv", [](const std::vector<SweepResult>& r) { return report_text(r, write_summary_csv); });
    m.def("profile_csv", [](const std::vector<SweepResult>& r) { return report_text(r, write_profile_csv); });
}
