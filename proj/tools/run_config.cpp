#include "run_config.hpp"

#include <cmath>
#include <fstream>

#include "ddesim/errors.hpp"
#include "ddesim/polyexact.hpp"

namespace ddesim::cli {

namespace {

using nlohmann::json;

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known)
            throw ValidationError("ConfigError", "unknown key \"" + item.key() + "\" in " + where);
    }
}

DelaySpec delay_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "discrete") {
        require_keys(j, {"type", "atoms"}, "delay");
        DiscreteLaw law;
        for (const auto& row : j.at("atoms"))
            law.atoms.push_back({row.at("delay").get<double>(), row.at("prob").get<double>()});
        return law;
    }
    ContinuousLaw law;
    if (j.contains("truncation_eps")) law.truncation_eps = j.at("truncation_eps").get<double>();
    if (type == "uniform") {
        require_keys(j, {"type", "a", "b", "truncation_eps"}, "delay");
        law.family = UniformLaw{j.at("a").get<double>(), j.at("b").get<double>()};
    } else if (type == "exponential") {
        require_keys(j, {"type", "rate", "truncation_eps"}, "delay");
        law.family = ExponentialLaw{j.at("rate").get<double>()};
    } else if (type == "tabulated_quantile") {
        require_keys(j, {"type", "p", "q", "truncation_eps"}, "delay");
        law.family = TabulatedQuantileLaw{j.at("p").get<std::vector<double>>(),
                                          j.at("q").get<std::vector<double>>()};
    } else {
        throw ValidationError("ConfigError", "unknown delay type \"" + type + "\"");
    }
    return law;
}

json delay_to_json(const DelaySpec& spec) {
    json j;
    if (const auto* d = std::get_if<DiscreteLaw>(&spec)) {
        j["type"] = "discrete";
        j["atoms"] = json::array();
        for (const auto& atom : d->atoms)
            j["atoms"].push_back({{"delay", atom.delay}, {"prob", atom.prob}});
        return j;
    }
    const auto& law = std::get<ContinuousLaw>(spec);
    j["truncation_eps"] = law.truncation_eps;
    if (const auto* u = std::get_if<UniformLaw>(&law.family)) {
        j["type"] = "uniform";
        j["a"] = u->a;
        j["b"] = u->b;
    } else if (const auto* e = std::get_if<ExponentialLaw>(&law.family)) {
        j["type"] = "exponential";
        j["rate"] = e->rate;
    } else {
        const auto& t = std::get<TabulatedQuantileLaw>(law.family);
        j["type"] = "tabulated_quantile";
        j["p"] = t.p;
        j["q"] = t.q;
    }
    return j;
}

HistorySpec history_from_json(const json& j, double t0) {
    const std::string type = j.at("type").get<std::string>();
    HistorySpec hist;
    hist.t0 = t0;
    if (type == "constant") {
        require_keys(j, {"type", "value"}, "history");
        hist.shape = ConstantHistory{j.at("value").get<double>()};
    } else if (type == "polynomial") {
        require_keys(j, {"type", "coeffs"}, "history");
        hist.shape = PolynomialHistory{j.at("coeffs").get<std::vector<double>>()};
    } else if (type == "piecewise") {
        require_keys(j, {"type", "breakpoints", "coeffs"}, "history");
        PiecewiseTableHistory table;
        table.breakpoints = j.at("breakpoints").get<std::vector<double>>();
        for (const auto& seg : j.at("coeffs")) table.coeffs.push_back(seg.get<std::vector<double>>());
        hist.shape = table;
    } else {
        throw ValidationError("ConfigError", "unknown history type \"" + type + "\"");
    }
    return hist;
}

json history_to_json(const HistorySpec& hist) {
    json j;
    if (const auto* c = std::get_if<ConstantHistory>(&hist.shape)) {
        j["type"] = "constant";
        j["value"] = c->value;
    } else if (const auto* p = std::get_if<PolynomialHistory>(&hist.shape)) {
        j["type"] = "polynomial";
        j["coeffs"] = p->coeffs;
    } else {
        const auto& t = std::get<PiecewiseTableHistory>(hist.shape);
        j["type"] = "piecewise";
        j["breakpoints"] = t.breakpoints;
        j["coeffs"] = t.coeffs;
    }
    return j;
}

}  // namespace

std::vector<double> RunConfig::grid() const {
    std::vector<double> out;
    for (std::size_t k = 0;; ++k) {
        const double t = t0() + static_cast<double>(k) * grid_step;
        if (t >= t_end - kTimeMergeTol) break;
        out.push_back(t);
    }
    out.push_back(t_end);
    return out;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
    require_keys(j,
                 {"alpha", "delay", "history", "t0", "t_end", "step", "grid_step", "seed",
                  "samples", "quadrature_nodes", "compare_tol", "output"},
                 "config");
    RunConfig cfg;
    if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
    const double t0 = j.contains("t0") ? j.at("t0").get<double>() : 0.0;
    cfg.delay = delay_from_json(j.at("delay"));
    cfg.history = history_from_json(j.at("history"), t0);
    if (j.contains("t_end")) cfg.t_end = j.at("t_end").get<double>();
    if (j.contains("step")) cfg.step = j.at("step").get<double>();
    if (j.contains("grid_step")) cfg.grid_step = j.at("grid_step").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<std::uint64_t>();
    if (j.contains("quadrature_nodes")) cfg.quadrature_nodes = j.at("quadrature_nodes").get<int>();
    if (j.contains("compare_tol")) cfg.compare_tol = j.at("compare_tol").get<double>();
    if (j.contains("output")) {
        const auto& out = j.at("output");
        require_keys(out, {"csv", "json"}, "output");
        if (out.contains("csv")) cfg.output.csv = out.at("csv").get<std::string>();
        if (out.contains("json")) cfg.output.json = out.at("json").get<std::string>();
    }
    validate_config(cfg);
    return cfg;
}

nlohmann::json to_json(const RunConfig& cfg) {
    return nlohmann::json{{"alpha", cfg.alpha},
                          {"delay", delay_to_json(cfg.delay)},
                          {"history", history_to_json(cfg.history)},
                          {"t0", cfg.t0()},
                          {"t_end", cfg.t_end},
                          {"step", cfg.step},
                          {"grid_step", cfg.grid_step},
                          {"seed", cfg.seed},
                          {"samples", cfg.samples},
                          {"quadrature_nodes", cfg.quadrature_nodes},
                          {"compare_tol", cfg.compare_tol},
                          {"output", {{"csv", cfg.output.csv}, {"json", cfg.output.json}}}};
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("ConfigError", "cannot open config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& err) {
        throw ValidationError("ConfigError", std::string("config parse failure: ") + err.what());
    }
    try {
        return run_config_from_json(j);
    } catch (const nlohmann::json::exception& err) {
        throw ValidationError("ConfigError", std::string("config field failure: ") + err.what());
    }
}

void validate_config(const RunConfig& cfg) {
    validate(cfg.delay);
    validate(cfg.history);
    if (!(cfg.t_end > cfg.t0()))
        throw ValidationError("BadTimeRange", "t_end must exceed t0");
    if (!(cfg.step > 0.0)) throw ValidationError("NonPositiveStep", "step must be positive");
    if (!(cfg.grid_step > 0.0))
        throw ValidationError("NonPositiveGridStep", "grid_step must be positive");
    if (cfg.quadrature_nodes < 1)
        throw ValidationError("NonPositiveNodes", "quadrature_nodes must be >= 1");
    if (!(cfg.compare_tol >= 0.0))
        throw ValidationError("ConfigError", "compare_tol must be nonnegative");
}

}  // namespace ddesim::cli
