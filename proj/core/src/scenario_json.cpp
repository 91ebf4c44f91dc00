#include "flockcert/scenario_json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace flockcert {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw std::runtime_error("scenario: " + path + ": " + msg);
}

double get_number(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) fail(path + "." + key, "missing required number");
    if (!j[key].is_number()) fail(path + "." + key, "expected a number");
    return j[key].get<double>();
}

double get_number_or(const json& j, const char* key, double fallback) {
    return j.contains(key) ? j[key].get<double>() : fallback;
}

std::vector<double> get_vector(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key) || !j[key].is_array()) fail(path + "." + key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : j[key]) {
        if (!v.is_number()) fail(path + "." + key, "expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

InfluenceSpec parse_influence(const json& j) {
    if (!j.is_object() || !j.contains("family")) fail("influence", "expected an object with a family field");
    const std::string family = j["family"].get<std::string>();
    if (family == "cucker-smale")
        return InfluenceSpec::cucker_smale(get_number(j, "influence", "k0"), get_number(j, "influence", "beta"));
    if (family == "constant") return InfluenceSpec::constant(get_number(j, "influence", "value"));
    if (family == "oscillating")
        return InfluenceSpec::oscillating(get_number(j, "influence", "base"), get_number(j, "influence", "amp"),
                                          get_number(j, "influence", "freq"));
    if (family == "table")
        return InfluenceSpec::table(get_vector(j, "influence", "r"), get_vector(j, "influence", "psi"),
                                    j.value("divergence_attested", false));
    fail("influence.family", "unknown family '" + family + "'");
}

json render_influence(const InfluenceSpec& s) {
    json j;
    j["family"] = influence_family_name(s.family);
    switch (s.family) {
        case InfluenceFamily::CuckerSmale:
            j["k0"] = s.k0;
            j["beta"] = s.beta;
            break;
        case InfluenceFamily::Constant:
            j["value"] = s.value;
            break;
        case InfluenceFamily::Oscillating:
            j["base"] = s.base;
            j["amp"] = s.amp;
            j["freq"] = s.freq;
            break;
        case InfluenceFamily::Table:
            j["r"] = s.table_r;
            j["psi"] = s.table_psi;
            j["divergence_attested"] = s.table_divergence_attested;
            break;
    }
    return j;
}

DelaySpec parse_delay(const json& j, double tau_bar) {
    if (!j.is_object() || !j.contains("family")) fail("delay", "expected an object with a family field");
    const std::string family = j["family"].get<std::string>();
    if (family == "constant") return DelaySpec::constant(get_number(j, "delay", "tau0"), tau_bar);
    if (family == "sinusoidal")
        return DelaySpec::sinusoidal(tau_bar, get_number(j, "delay", "omega"), get_number_or(j, "phase", 0.0));
    if (family == "piecewise-linear")
        return DelaySpec::piecewise_linear(tau_bar, get_vector(j, "delay", "t"), get_vector(j, "delay", "tau"));
    fail("delay.family", "unknown family '" + family + "'");
}

json render_delay(const DelaySpec& s) {
    json j;
    j["family"] = delay_family_name(s.family);
    switch (s.family) {
        case DelayFamily::Constant:
            j["tau0"] = s.tau0;
            break;
        case DelayFamily::Sinusoidal:
            j["omega"] = s.omega;
            j["phase"] = s.phase;
            break;
        case DelayFamily::PiecewiseLinear:
            j["t"] = s.knots_t;
            j["tau"] = s.knots_tau;
            break;
    }
    return j;
}

HistoryLaw parse_law(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("family")) fail(path, "expected an object with a family field");
    const std::string family = j["family"].get<std::string>();
    if (family == "constant") return HistoryLaw::constant(get_vector(j, path, "value"));
    if (family == "linear") return HistoryLaw::linear(get_vector(j, path, "value"), get_vector(j, path, "slope"));
    if (family == "sampled") {
        if (!j.contains("values") || !j["values"].is_array()) fail(path + ".values", "expected an array of arrays");
        std::vector<std::vector<double>> values;
        for (const auto& row : j["values"]) {
            std::vector<double> r;
            for (const auto& v : row) r.push_back(v.get<double>());
            values.push_back(std::move(r));
        }
        return HistoryLaw::sampled(get_vector(j, path, "s"), std::move(values));
    }
    fail(path + ".family", "unknown family '" + family + "'");
}

json render_law(const HistoryLaw& law) {
    json j;
    j["family"] = history_family_name(law.family);
    switch (law.family) {
        case HistoryFamily::Constant:
            j["value"] = law.value;
            break;
        case HistoryFamily::Linear:
            j["value"] = law.value;
            j["slope"] = law.slope;
            break;
        case HistoryFamily::Sampled:
            j["s"] = law.knots_s;
            j["values"] = law.knots_value;
            break;
    }
    return j;
}

}  // namespace

ScenarioSpec parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("scenario: not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("scenario: top level must be an object");

    ScenarioSpec spec;
    spec.name = j.value("name", std::string{});
    spec.agents = static_cast<int>(get_number(j, "", "agents"));
    spec.dim = static_cast<int>(get_number(j, "", "dimension"));
    const double tau_bar = get_number(j, "", "tau_bar");

    if (j.contains("horizon_windows")) {
        spec.horizon_windows = j["horizon_windows"].get<double>();
        spec.horizon = 0.0;
    } else if (j.contains("horizon")) {
        spec.horizon = j["horizon"].get<double>();
    } else {
        fail("horizon", "either horizon (seconds) or horizon_windows (units of tau_bar) is required");
    }

    spec.dt = get_number(j, "", "dt");
    spec.output_stride = static_cast<int>(get_number_or(j, "output_stride", 1.0));

    if (!j.contains("influence")) fail("influence", "missing section");
    spec.influence = parse_influence(j["influence"]);
    if (!j.contains("delay")) fail("delay", "missing section");
    spec.delay = parse_delay(j["delay"], tau_bar);

    if (!j.contains("history") || !j["history"].is_object() || !j["history"].contains("agents"))
        fail("history", "missing history.agents section");
    for (std::size_t i = 0; i < j["history"]["agents"].size(); ++i) {
        const auto& a = j["history"]["agents"][i];
        const std::string p = "history.agents[" + std::to_string(i) + "]";
        if (!a.contains("position") || !a.contains("velocity")) fail(p, "position and velocity laws required");
        AgentHistory h;
        h.position = parse_law(a["position"], p + ".position");
        h.velocity = parse_law(a["velocity"], p + ".velocity");
        spec.history.agents.push_back(std::move(h));
    }
    return spec;
}

std::string render_scenario(const ScenarioSpec& spec) {
    json j;
    if (!spec.name.empty()) j["name"] = spec.name;
    j["agents"] = spec.agents;
    j["dimension"] = spec.dim;
    j["tau_bar"] = spec.delay.tau_bar;
    if (spec.horizon_windows > 0.0)
        j["horizon_windows"] = spec.horizon_windows;
    else
        j["horizon"] = spec.horizon;
    j["dt"] = spec.dt;
    j["output_stride"] = spec.output_stride;
    j["influence"] = render_influence(spec.influence);
    j["delay"] = render_delay(spec.delay);
    json agents = json::array();
    for (const auto& a : spec.history.agents) {
        json row;
        row["position"] = render_law(a.position);
        row["velocity"] = render_law(a.velocity);
        agents.push_back(std::move(row));
    }
    j["history"]["agents"] = std::move(agents);
    return j.dump(2);
}

ScenarioSpec load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("scenario file not found or unreadable: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string scenario_fingerprint(const ScenarioSpec& spec) {
    const std::string canonical = render_scenario(spec);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : canonical) {
        hash ^= static_cast<std::uint64_t>(c);
        hash *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace flockcert
