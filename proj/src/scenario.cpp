#include "fva/scenario.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "fva/errors.hpp"
#include "json.hpp"

namespace fva {

namespace {

using json = nlohmann::json;

const std::set<std::string> kTopLevelKeys{"schema_version", "regime",   "market",   "investor", "counterparty",
                                          "closeout",       "schedule", "sweep",    "numerics", "checks",
                                          "output"};

class ConfigReader {
public:
    std::vector<Diagnostic> diagnostics;

    void fail(const std::string& path, const std::string& message) { diagnostics.push_back({path, message}); }

    const json* member(const json& obj, const std::string& key, const std::string& path, bool required) {
        if (!obj.is_object()) {
            fail(path, "expected an object");
            return nullptr;
        }
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail(join(path, key), "missing required field");
            return nullptr;
        }
        return &*it;
    }

    std::optional<double> number(const json& j, const std::string& path) {
        if (!j.is_number()) {
            fail(path, "expected a number");
            return std::nullopt;
        }
        const double x = j.get<double>();
        if (!std::isfinite(x)) {
            fail(path, "number must be finite");
            return std::nullopt;
        }
        return x;
    }

    std::optional<TermCurve> curve(const json& j, const std::string& path) {
        if (!j.is_array() || j.empty()) {
            fail(path, "expected a non-empty array of {\"t\", \"value\"} nodes");
            return std::nullopt;
        }
        std::vector<CurveNode> nodes;
        bool ok = true;
        for (std::size_t i = 0; i < j.size(); ++i) {
            const std::string p = path + "[" + std::to_string(i) + "]";
            const json* t = member(j[i], "t", p, true);
            const json* v = t ? member(j[i], "value", p, true) : nullptr;
            auto tv = t ? number(*t, p + ".t") : std::nullopt;
            auto vv = v ? number(*v, p + ".value") : std::nullopt;
            if (!tv || !vv) {
                ok = false;
                continue;
            }
            nodes.push_back({*tv, *vv});
        }
        if (!ok) return std::nullopt;
        try {
            return TermCurve(std::move(nodes));
        } catch (const DomainError& e) {
            fail(path, e.what());
            return std::nullopt;
        }
    }

    std::optional<TermCurve> intensity(const json& j, const std::string& path) {
        auto c = curve(j, path);
        if (c && !c->is_non_negative()) {
            fail(path, "intensity must be non-negative");
            return std::nullopt;
        }
        return c;
    }

    void recovery(const json& obj, const std::string& key, const std::string& path, double& out) {
        const json* j = member(obj, key, path, true);
        if (!j) return;
        const auto x = number(*j, join(path, key));
        if (!x) return;
        if (*x < 0.0 || *x > 1.0) {
            fail(join(path, key), "recovery out of range [0, 1]");
            return;
        }
        out = *x;
    }

    std::vector<double> number_list(const json& j, const std::string& path) {
        std::vector<double> out;
        if (!j.is_array()) {
            fail(path, "expected an array of numbers");
            return out;
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (auto x = number(j[i], path + "[" + std::to_string(i) + "]")) out.push_back(*x);
        }
        return out;
    }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }
};

json curve_to_json(const TermCurve& c) {
    json out = json::array();
    for (const auto& n : c.nodes()) out.push_back({{"t", n.time}, {"value", n.value}});
    return out;
}

void read_document(ConfigReader& rd, const json& doc, ScenarioConfig& cfg) {
    if (!doc.is_object()) {
        rd.fail("", "config must be a JSON object");
        return;
    }
    for (const auto& [key, _] : doc.items()) {
        if (!kTopLevelKeys.count(key)) rd.fail(key, "unknown field");
    }

    if (const json* v = rd.member(doc, "schema_version", "", true)) {
        if (!v->is_number_integer() || v->get<int>() != kConfigSchemaVersion) {
            rd.fail("schema_version", "unsupported schema version (expected " +
                                          std::to_string(kConfigSchemaVersion) + ")");
        }
    }

    bool regime_ok = false;
    if (const json* v = rd.member(doc, "regime", "", true)) {
        if (v->is_string()) {
            try {
                cfg.regime = regime_from_string(v->get<std::string>());
                regime_ok = true;
            } catch (const ConfigError&) {
            }
        }
        if (!regime_ok) rd.fail("regime", "expected one of riskfree_cpty, independent, correlated");
    }

    if (const json* m = rd.member(doc, "market", "", true)) {
        if (const json* c = rd.member(*m, "risk_free", "market", true)) {
            if (auto tc = rd.curve(*c, "market.risk_free")) cfg.market.risk_free = *tc;
        }
        if (const json* c = rd.member(*m, "collateral", "market", true)) {
            if (auto tc = rd.curve(*c, "market.collateral")) cfg.market.collateral = *tc;
        }
    }

    if (const json* inv = rd.member(doc, "investor", "", true)) {
        if (const json* c = rd.member(*inv, "intensity", "investor", true)) {
            if (auto tc = rd.intensity(*c, "investor.intensity")) cfg.investor_intensity = *tc;
        }
        rd.recovery(*inv, "bond_recovery", "investor", cfg.bond_recovery);
    }

    if (const json* cp = rd.member(doc, "counterparty", "", false)) {
        if (const json* c = rd.member(*cp, "intensity", "counterparty", true)) {
            if (auto tc = rd.intensity(*c, "counterparty.intensity")) cfg.counterparty_intensity = *tc;
        }
    }

    if (const json* co = rd.member(doc, "closeout", "", true)) {
        rd.recovery(*co, "recovery_investor", "closeout", cfg.closeout.recovery_investor);
        rd.recovery(*co, "recovery_counterparty", "closeout", cfg.closeout.recovery_counterparty);
    }

    if (const json* s = rd.member(doc, "schedule", "", true)) {
        if (!s->is_array() || s->empty()) {
            rd.fail("schedule", "expected a non-empty array of {\"t\", \"amount\"} flows");
        } else {
            for (std::size_t i = 0; i < s->size(); ++i) {
                const std::string p = "schedule[" + std::to_string(i) + "]";
                const json* t = rd.member((*s)[i], "t", p, true);
                const json* a = t ? rd.member((*s)[i], "amount", p, true) : nullptr;
                auto tv = t ? rd.number(*t, p + ".t") : std::nullopt;
                auto av = a ? rd.number(*a, p + ".amount") : std::nullopt;
                if (tv && av) cfg.schedule.push_back({*tv, *av});
            }
            if (cfg.schedule.size() == s->size()) {
                try {
                    CashflowSchedule check(cfg.schedule);
                } catch (const DomainError& e) {
                    rd.fail("schedule", e.what());
                }
            }
        }
    }

    if (const json* sw = rd.member(doc, "sweep", "", true)) {
        if (const json* lb = rd.member(*sw, "lambda_bar_investor", "sweep", false)) {
            if (!lb->is_array()) {
                rd.fail("sweep.lambda_bar_investor", "expected an array of numbers or curves");
            } else {
                for (std::size_t i = 0; i < lb->size(); ++i) {
                    const std::string p = "sweep.lambda_bar_investor[" + std::to_string(i) + "]";
                    const json& e = (*lb)[i];
                    std::optional<TermCurve> c;
                    if (e.is_number()) {
                        if (auto x = rd.number(e, p)) c = TermCurve::flat(*x);
                    } else {
                        c = rd.curve(e, p);
                    }
                    if (!c) continue;
                    if (!c->is_non_negative()) {
                        rd.fail(p, "internal investor intensity must be non-negative");
                        continue;
                    }
                    cfg.lambda_bar_sweep.push_back(*c);
                }
            }
        }
        if (const json* th = rd.member(*sw, "theta", "sweep", false)) {
            cfg.theta_sweep = rd.number_list(*th, "sweep.theta");
            for (std::size_t i = 0; i < cfg.theta_sweep.size(); ++i) {
                if (cfg.theta_sweep[i] < 0.0) {
                    rd.fail("sweep.theta[" + std::to_string(i) + "]", "copula dependence must be >= 0");
                }
            }
        }
    }

    if (const json* nu = rd.member(doc, "numerics", "", false)) {
        if (const json* p = rd.member(*nu, "panels_per_year", "numerics", false)) {
            if (!p->is_number_integer() || p->get<long long>() < 1) rd.fail("numerics.panels_per_year", "expected an integer >= 1");
            else cfg.numerics.panels_per_year = p->get<int>();
        }
        if (const json* p = rd.member(*nu, "mc_paths", "numerics", false)) {
            if (!p->is_number_integer() || p->get<long long>() < 1) rd.fail("numerics.mc_paths", "expected an integer >= 1");
            else cfg.numerics.mc_paths = p->get<std::uint64_t>();
        }
        if (const json* p = rd.member(*nu, "seed", "numerics", false)) {
            if (!p->is_number_unsigned()) rd.fail("numerics.seed", "expected a non-negative integer");
            else cfg.numerics.seed = p->get<std::uint64_t>();
        }
        if (const json* p = rd.member(*nu, "threads", "numerics", false)) {
            if (!p->is_number_unsigned()) rd.fail("numerics.threads", "expected a non-negative integer");
            else cfg.numerics.threads = p->get<unsigned>();
        }
    }

    if (const json* ch = rd.member(doc, "checks", "", false)) {
        if (const json* b = rd.member(*ch, "bond_maturities", "checks", false)) {
            cfg.checks.bond_maturities = rd.number_list(*b, "checks.bond_maturities");
            for (double T : cfg.checks.bond_maturities) {
                if (T <= 0.0) rd.fail("checks.bond_maturities", "bond maturities must be positive");
            }
        }
        if (const json* cb = rd.member(*ch, "contingent_bond", "checks", false)) {
            if (const json* m = rd.member(*cb, "maturity", "checks.contingent_bond", true)) {
                if (auto x = rd.number(*m, "checks.contingent_bond.maturity")) cfg.checks.contingent_bond_maturity = *x;
            }
            if (const json* tc = rd.member(*cb, "contingency_maturities", "checks.contingent_bond", true)) {
                cfg.checks.contingency_maturities = rd.number_list(*tc, "checks.contingent_bond.contingency_maturities");
            }
            if (cfg.checks.contingent_bond_maturity <= 0.0) {
                rd.fail("checks.contingent_bond.maturity", "bond maturity must be positive");
            }
            for (double T_C : cfg.checks.contingency_maturities) {
                if (T_C < 0.0 || T_C >= cfg.checks.contingent_bond_maturity) {
                    rd.fail("checks.contingent_bond.contingency_maturities",
                            "contingency maturities must lie in [0, maturity)");
                }
            }
        }
    }

    if (const json* out = rd.member(doc, "output", "", false)) {
        if (const json* d = rd.member(*out, "dir", "output", false)) {
            if (!d->is_string() || d->get<std::string>().empty()) rd.fail("output.dir", "expected a non-empty string");
            else cfg.output_dir = d->get<std::string>();
        }
    }

    if (!regime_ok) return;
    switch (cfg.regime) {
        case Regime::RiskFreeCounterparty:
            if (!cfg.counterparty_intensity.is_zero()) {
                rd.fail("counterparty.intensity", "riskfree_cpty regime requires a default-free counterparty");
            }
            [[fallthrough]];
        case Regime::Independent:
            if (cfg.lambda_bar_sweep.empty()) {
                rd.fail("sweep.lambda_bar_investor", "regime requires a non-empty internal intensity sweep");
            }
            if (!cfg.theta_sweep.empty()) rd.fail("sweep.theta", "copula sweep applies only to the correlated regime");
            break;
        case Regime::Correlated:
            if (cfg.theta_sweep.empty()) rd.fail("sweep.theta", "correlated regime requires a non-empty theta sweep");
            if (cfg.bond_recovery != 0.0) rd.fail("investor.bond_recovery", "regime requires zero bond recovery");
            if (!cfg.lambda_bar_sweep.empty()) {
                rd.fail("sweep.lambda_bar_investor",
                        "correlated regime fixes the internal investor intensity at zero; remove the sweep");
            }
            break;
        case Regime::Linear:
            break;
    }
}

std::pair<ScenarioConfig, std::vector<Diagnostic>> read_config(const std::string& text) {
    ScenarioConfig cfg;
    ConfigReader rd;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        rd.fail("", std::string("malformed JSON: ") + e.what());
        return {cfg, rd.diagnostics};
    }
    read_document(rd, doc, cfg);
    return {cfg, rd.diagnostics};
}

}  // namespace

std::vector<Diagnostic> validate_config_text(const std::string& text) { return read_config(text).second; }

std::string format_diagnostics(const std::vector<Diagnostic>& diagnostics) {
    std::ostringstream os;
    for (const auto& d : diagnostics) os << (d.path.empty() ? "<root>" : d.path) << ": " << d.message << "\n";
    return os.str();
}

ScenarioConfig parse_config(const std::string& text) {
    auto [cfg, diags] = read_config(text);
    if (!diags.empty()) throw ConfigError(format_diagnostics(diags));
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

Regime regime_from_string(const std::string& name) {
    if (name == "riskfree_cpty") return Regime::RiskFreeCounterparty;
    if (name == "independent") return Regime::Independent;
    if (name == "correlated") return Regime::Correlated;
    throw ConfigError("unknown regime " + name);
}

std::string to_json_text(const ScenarioConfig& cfg) {
    json doc;
    doc["schema_version"] = kConfigSchemaVersion;
    doc["regime"] = std::string(to_string(cfg.regime));
    doc["market"] = {{"risk_free", curve_to_json(cfg.market.risk_free)},
                     {"collateral", curve_to_json(cfg.market.collateral)}};
    doc["investor"] = {{"intensity", curve_to_json(cfg.investor_intensity)}, {"bond_recovery", cfg.bond_recovery}};
    doc["counterparty"] = {{"intensity", curve_to_json(cfg.counterparty_intensity)}};
    doc["closeout"] = {{"recovery_investor", cfg.closeout.recovery_investor},
                       {"recovery_counterparty", cfg.closeout.recovery_counterparty}};
    json schedule = json::array();
    for (const auto& f : cfg.schedule) schedule.push_back({{"t", f.time}, {"amount", f.amount}});
    doc["schedule"] = schedule;

    json sweep = json::object();
    if (!cfg.lambda_bar_sweep.empty()) {
        json lb = json::array();
        for (const auto& c : cfg.lambda_bar_sweep) {
            if (c.nodes().size() == 1) lb.push_back(c.nodes().front().value);
            else lb.push_back(curve_to_json(c));
        }
        sweep["lambda_bar_investor"] = lb;
    }
    if (!cfg.theta_sweep.empty()) sweep["theta"] = cfg.theta_sweep;
    doc["sweep"] = sweep;

    doc["numerics"] = {{"panels_per_year", cfg.numerics.panels_per_year},
                       {"mc_paths", cfg.numerics.mc_paths},
                       {"seed", cfg.numerics.seed},
                       {"threads", cfg.numerics.threads}};
    doc["checks"] = {{"bond_maturities", cfg.checks.bond_maturities},
                     {"contingent_bond",
                      {{"maturity", cfg.checks.contingent_bond_maturity},
                       {"contingency_maturities", cfg.checks.contingency_maturities}}}};
    doc["output"] = {{"dir", cfg.output_dir}};
    return doc.dump(2) + "\n";
}

}  // namespace fva
