#include "flockcert/report_json.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace flockcert {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json number_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

ordered_json tolerances_json(const ToleranceConfig& t) {
    ordered_json j;
    j["window_rel"] = t.window_rel;
    j["abs_floor"] = t.abs_floor;
    j["velocity_rel"] = t.velocity_rel;
    j["velocity_abs"] = t.velocity_abs;
    j["delayed_distance_abs"] = t.delayed_distance_abs;
    j["lyapunov_rel"] = t.lyapunov_rel;
    j["decay_rel"] = t.decay_rel;
    j["decay_abs"] = t.decay_abs;
    j["quad_rel"] = t.quad_rel;
    j["refine_initial_intervals"] = t.refine.initial_intervals;
    j["refine_max_intervals"] = t.refine.max_intervals;
    j["refine_rel_tol"] = t.refine.rel_tol;
    j["refine_abs_floor"] = t.refine.abs_floor;
    return j;
}

}  // namespace

std::string render_report(const CertificateReport& rep) {
    ordered_json j;
    j["scenario"] = rep.scenario_name;
    j["all_pass"] = rep.all_pass;
    j["partial"] = rep.partial;

    ordered_json constants;
    if (rep.constants_valid) {
        constants["K"] = rep.constants.K;
        constants["tau_bar"] = rep.constants.tau_bar;
        constants["D0"] = rep.constants.D0;
        constants["R_V0"] = rep.constants.R_V0;
        constants["M_X0"] = rep.constants.M_X0;
        constants["lyapunov_2tau"] = rep.constants.lyapunov_2tau;
        constants["d_star"] = rep.constants.d_star;
        constants["psi_star"] = rep.constants.psi_star;
        constants["phi_star"] = rep.constants.phi_star;
        constants["C"] = rep.constants.C;
    } else {
        constants = nullptr;
    }
    j["constants"] = std::move(constants);

    ordered_json checks = ordered_json::array();
    for (const auto& c : rep.checks) {
        ordered_json row;
        row["name"] = c.name;
        row["range"] = c.range;
        row["margin"] = number_or_null(c.margin);
        row["slack"] = c.slack;
        row["pass"] = c.pass;
        row["vacuous"] = c.vacuous;
        checks.push_back(std::move(row));
    }
    j["checks"] = std::move(checks);

    ordered_json meta;
    meta["fingerprint"] = rep.fingerprint;
    meta["mesh_points"] = rep.mesh_points;
    meta["windows"] = rep.windows;
    meta["window_grid"] = rep.window_grid;
    meta["window_converged"] = rep.window_converged;
    meta["upper_limit_convention"] = rep.upper_limit_convention;
    meta["contraction_convention"] = rep.contraction_convention;
    meta["tolerances"] = tolerances_json(rep.tolerances);
    j["meta"] = std::move(meta);

    return j.dump(2) + "\n";
}

ToleranceConfig parse_tolerances(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("tolerances: not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("tolerances: top level must be an object");

    ToleranceConfig t;
    for (const auto& [key, value] : j.items()) {
        if (key == "window_rel") t.window_rel = value.get<double>();
        else if (key == "abs_floor") t.abs_floor = value.get<double>();
        else if (key == "velocity_rel") t.velocity_rel = value.get<double>();
        else if (key == "velocity_abs") t.velocity_abs = value.get<double>();
        else if (key == "delayed_distance_abs") t.delayed_distance_abs = value.get<double>();
        else if (key == "lyapunov_rel") t.lyapunov_rel = value.get<double>();
        else if (key == "decay_rel") t.decay_rel = value.get<double>();
        else if (key == "decay_abs") t.decay_abs = value.get<double>();
        else if (key == "quad_rel") t.quad_rel = value.get<double>();
        else if (key == "refine_initial_intervals") t.refine.initial_intervals = value.get<int>();
        else if (key == "refine_max_intervals") t.refine.max_intervals = value.get<int>();
        else if (key == "refine_rel_tol") t.refine.rel_tol = value.get<double>();
        else if (key == "refine_abs_floor") t.refine.abs_floor = value.get<double>();
        else throw std::runtime_error("tolerances: unknown key '" + key + "'");
    }
    return t;
}

}  // namespace flockcert
