#include "flockcert/scenario.hpp"

#include <cmath>

namespace flockcert {

std::string describe(const std::vector<Violation>& violations) {
    std::string s;
    for (const auto& v : violations) {
        if (!s.empty()) s += "\n";
        s += v.path + ": " + v.message;
    }
    return s;
}

ScenarioError::ScenarioError(std::vector<Violation> v)
    : std::runtime_error("invalid scenario:\n" + describe(v)), violations(std::move(v)) {}

std::vector<Violation> validate_scenario(const ScenarioSpec& spec) {
    std::vector<Violation> out;
    const auto add = [&](const std::string& path, const std::string& msg) { out.push_back({path, msg}); };

    if (spec.agents < 2) add("agents", "N >= 2 required, got " + std::to_string(spec.agents));
    if (spec.dim < 1) add("dim", "d >= 1 required, got " + std::to_string(spec.dim));

    const double T = spec.end_time();
    if (!(T > 0.0) || !std::isfinite(T)) add("horizon", "T > 0 required, got " + std::to_string(T));
    if (spec.horizon_windows < 0.0) add("horizon_windows", "must be >= 0");

    if (!(spec.dt > 0.0)) add("dt", "dt > 0 required, got " + std::to_string(spec.dt));
    if (spec.output_stride < 1) add("output_stride", "stride >= 1 required");

    validate_delay(spec.delay, std::isfinite(T) && T > 0.0 ? T : spec.delay.tau_bar, "delay", out);
    if (spec.delay.tau_bar > 0.0 && spec.dt > spec.delay.tau_bar)
        add("dt", "dt <= tau_bar required (steps may not outrun the lag window), got dt=" +
                      std::to_string(spec.dt) + " tau_bar=" + std::to_string(spec.delay.tau_bar));

    validate_influence(spec.influence, "influence", out);
    if (spec.agents >= 2 && spec.dim >= 1)
        validate_history(spec.history, spec.delay.tau_bar, spec.agents, spec.dim, "history", out);

    return out;
}

const ScenarioSpec& validated(const ScenarioSpec& spec) {
    auto violations = validate_scenario(spec);
    if (!violations.empty()) throw ScenarioError(std::move(violations));
    return spec;
}

}  // namespace flockcert
