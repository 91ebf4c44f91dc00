#include "flockcert/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "flockcert/certificates.hpp"
#include "flockcert/csv.hpp"
#include "flockcert/integrator.hpp"
#include "flockcert/presets.hpp"
#include "flockcert/report_json.hpp"
#include "flockcert/scenario_json.hpp"

namespace flockcert {

namespace {

constexpr double kFixtureGrowthRate = 1.0;

struct LoadedRun {
    ScenarioSpec scenario;
    bool corrupted = false;
};

LoadedRun resolve_ref(const std::string& ref) {
    constexpr const char* preset_prefix = "preset:";
    if (ref.rfind(preset_prefix, 0) == 0) return {make_preset(ref.substr(std::string(preset_prefix).size()))};
    if (ref == "fixture:corrupted") return {make_preset("default-delayed"), true};
    return {load_scenario_file(ref)};
}

void apply_overrides(ScenarioSpec& s, const RunConfig& cfg) {
    if (cfg.dt) s.dt = *cfg.dt;
    if (cfg.horizon) {
        s.horizon = *cfg.horizon;
        s.horizon_windows = 0.0;
    }
    if (cfg.horizon_windows) s.horizon_windows = *cfg.horizon_windows;
    if (cfg.stride) s.output_stride = *cfg.stride;
}

Trajectory produce_trajectory(const LoadedRun& run, const RunConfig& cfg) {
    IntegrateOptions opts;
    if (cfg.blowup_factor) opts.blowup_factor = *cfg.blowup_factor;
    Trajectory traj = integrate(run.scenario, opts);
    if (run.corrupted) return make_velocity_inflation_fixture(traj, kFixtureGrowthRate);
    return traj;
}

ToleranceConfig load_tolerances(const RunConfig& cfg) {
    if (cfg.tolerance_file.empty()) return {};
    std::ifstream in(cfg.tolerance_file);
    if (!in) throw std::runtime_error("tolerance file not found or unreadable: " + cfg.tolerance_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_tolerances(ss.str());
}

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir + "/" + name;
}

void apply_sweep_param(ScenarioSpec& s, const std::string& path, double v) {
    if (path == "dt") s.dt = v;
    else if (path == "horizon") { s.horizon = v; s.horizon_windows = 0.0; }
    else if (path == "horizon_windows") s.horizon_windows = v;
    else if (path == "output_stride") s.output_stride = static_cast<int>(v);
    else if (path == "tau_bar" || path == "delay.tau_bar") s.delay.tau_bar = v;
    else if (path == "delay.tau0") s.delay.tau0 = v;
    else if (path == "delay.omega") s.delay.omega = v;
    else if (path == "delay.phase") s.delay.phase = v;
    else if (path == "influence.k0") s.influence.k0 = v;
    else if (path == "influence.beta") s.influence.beta = v;
    else if (path == "influence.value") s.influence.value = v;
    else if (path == "influence.base") s.influence.base = v;
    else if (path == "influence.amp") s.influence.amp = v;
    else if (path == "influence.freq") s.influence.freq = v;
    else throw std::runtime_error("unknown sweep parameter '" + path + "'");
}

/// Sup-norm velocity difference against a dt/16 reference at the coarse mesh.
double reference_error(const Trajectory& coarse) {
    ScenarioSpec fine_spec = coarse.scenario();
    fine_spec.dt /= 16.0;
    const Trajectory fine = integrate(fine_spec);
    Matrix X(fine_spec.agents, fine_spec.dim), V(fine_spec.agents, fine_spec.dim);
    double err = 0.0;
    for (std::size_t k = coarse.history_points(); k < coarse.size(); ++k) {
        fine.query_into(std::min(coarse.time(k), fine.frontier()), X, V);
        const auto a = coarse.velocities(k).flat();
        const auto b = V.flat();
        for (std::size_t c = 0; c < a.size(); ++c) err = std::max(err, std::abs(a[c] - b[c]));
    }
    return err;
}

/// Least-squares slope of ln d_V over t >= 2 tau_bar; +inf when the diameter
/// is already zero (nothing left to decay).
double fitted_decay_rate(const Diagnostics& diag) {
    const double tau = diag.tau_bar();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long m = 0;
    for (std::size_t k = 0; k < diag.mesh_size(); ++k) {
        const double t = diag.mesh_time(k);
        if (t < 2.0 * tau) continue;
        const double dv = diag.dV(k);
        if (dv < 1e-300) continue;
        const double y = std::log(dv);
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
        ++m;
    }
    if (m < 2) return std::numeric_limits<double>::infinity();
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return -(m * sxy - sx * sy) / denom;
}

struct SweepRow {
    double value = 0.0;
    bool ok = false;
    std::string status;
    double D0 = 0.0, K = 0.0, C = 0.0, d_star = 0.0, sup_dX = 0.0;
    double fit_rate = 0.0, ref_error = 0.0;
    bool all_pass = false;
};

std::string sanitize_csv(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

int sweep_worker_count(const RunConfig& cfg, std::size_t rows) {
    int w = cfg.workers;
    if (w <= 0) {
        if (const char* env = std::getenv("FLOCKCERT_WORKERS")) w = std::atoi(env);
    }
    if (w <= 0) w = static_cast<int>(std::thread::hardware_concurrency());
    if (w <= 0) w = 1;
    return std::min<int>(w, static_cast<int>(rows));
}

}  // namespace

ScenarioSpec resolve_scenario(const RunConfig& config) {
    LoadedRun run = resolve_ref(config.scenario_ref);
    apply_overrides(run.scenario, config);
    return run.scenario;
}

int run_simulate(const RunConfig& config) {
    LoadedRun run;
    Trajectory traj{ScenarioSpec{}};
    try {
        run = resolve_ref(config.scenario_ref);
        apply_overrides(run.scenario, config);
        traj = produce_trajectory(run, config);
    } catch (const BlowUpError& e) {
        std::cerr << "simulate: " << e.what() << "\n";
        return kExitBlowUp;
    } catch (const std::exception& e) {
        std::cerr << "simulate: " << e.what() << "\n";
        return kExitConfig;
    }

    const int stride = traj.scenario().output_stride;
    Diagnostics diag(traj);
    atomic_write_file(join_path(config.out_dir, "trajectory.csv"), trajectory_csv(traj, stride));
    atomic_write_file(join_path(config.out_dir, "diagnostics.csv"),
                      diagnostics_csv(diagnostics_series(diag, stride)));
    std::cout << "wrote " << join_path(config.out_dir, "trajectory.csv") << " and "
              << join_path(config.out_dir, "diagnostics.csv") << "\n";
    return kExitOk;
}

int run_certify(const RunConfig& config) {
    LoadedRun run;
    Trajectory traj{ScenarioSpec{}};
    ToleranceConfig tol;
    try {
        run = resolve_ref(config.scenario_ref);
        apply_overrides(run.scenario, config);
        tol = load_tolerances(config);
        traj = produce_trajectory(run, config);
    } catch (const BlowUpError& e) {
        std::cerr << "certify: " << e.what() << "\n";
        return kExitBlowUp;
    } catch (const std::exception& e) {
        std::cerr << "certify: " << e.what() << "\n";
        return kExitConfig;
    }

    const CertificateReport report = check_certificates(traj, tol);
    atomic_write_file(join_path(config.out_dir, "report.json"), render_report(report));

    if (report.constants_valid) {
        Diagnostics diag(traj, tol.refine);
        CertificateFunctions funcs(diag, tol.quad_rel);
        const int stride = traj.scenario().output_stride;
        atomic_write_file(join_path(config.out_dir, "certificate_series.csv"),
                          certificate_series_csv(diag, funcs, report.constants, stride));
        if (config.write_svg)
            atomic_write_file(join_path(config.out_dir, "decay_plot.svg"),
                              decay_plot_svg(diag, report.constants, stride));
    }

    for (const auto& c : report.checks) {
        std::printf("[%s] %-26s margin=%-13.6g slack=%-10.4g %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.margin, c.slack, c.vacuous ? "(vacuous: " + c.range + ")" : c.range.c_str());
    }
    if (report.partial) std::cout << "note: horizon below 4 tau_bar, report flagged partial\n";
    std::cout << (report.all_pass ? "certification PASSED" : "certification FAILED") << " ("
              << report.checks.size() << " checks)\n";
    return report.all_pass ? kExitOk : kExitCheckFailed;
}

int run_sweep(const RunConfig& config) {
    LoadedRun base;
    try {
        base = resolve_ref(config.scenario_ref);
        if (config.sweep_param.empty() || config.sweep_values.empty())
            throw std::runtime_error("sweep requires --param and --values");
        {
            // reject unknown parameter paths up front
            ScenarioSpec probe = base.scenario;
            apply_sweep_param(probe, config.sweep_param, config.sweep_values.front());
        }
    } catch (const std::exception& e) {
        std::cerr << "sweep: " << e.what() << "\n";
        return kExitConfig;
    }

    std::vector<SweepRow> rows(config.sweep_values.size());
    std::atomic<std::size_t> cursor{0};
    const auto work = [&]() {
        for (;;) {
            const std::size_t idx = cursor.fetch_add(1);
            if (idx >= rows.size()) return;
            SweepRow& row = rows[idx];
            row.value = config.sweep_values[idx];
            try {
                LoadedRun run = base;
                apply_sweep_param(run.scenario, config.sweep_param, row.value);
                apply_overrides(run.scenario, config);
                const Trajectory traj = produce_trajectory(run, config);
                const CertificateReport report = check_certificates(traj);
                Diagnostics diag(traj);
                row.D0 = diag.extremes().D0;
                row.K = diag.K();
                if (report.constants_valid) {
                    row.C = report.constants.C;
                    row.d_star = report.constants.d_star;
                }
                double sup_dx = 0.0;
                for (std::size_t k = 0; k < diag.mesh_size(); ++k) sup_dx = std::max(sup_dx, diag.dX(k));
                row.sup_dX = sup_dx;
                row.fit_rate = fitted_decay_rate(diag);
                row.ref_error = reference_error(traj);
                row.all_pass = report.all_pass;
                row.ok = true;
                row.status = "ok";
            } catch (const std::exception& e) {
                row.ok = false;
                row.status = sanitize_csv(e.what());
            }
        }
    };

    const int workers = sweep_worker_count(config, rows.size());
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::string csv = "param,value,D0,K,C,d_star,sup_dX,dV_fit_rate,ref_error,all_pass,status\n";
    for (const auto& row : rows) {
        csv += config.sweep_param + "," + format_full(row.value);
        if (row.ok) {
            csv += "," + format_full(row.D0) + "," + format_full(row.K) + "," + format_full(row.C) + "," +
                   format_full(row.d_star) + "," + format_full(row.sup_dX) + "," +
                   format_full(row.fit_rate) + "," + format_full(row.ref_error) + "," +
                   (row.all_pass ? "1" : "0") + ",ok";
        } else {
            csv += ",,,,,,,,0," + row.status;
        }
        csv += "\n";
    }
    atomic_write_file(join_path(config.out_dir, "sweep.csv"), csv);
    std::cout << "wrote " << join_path(config.out_dir, "sweep.csv") << " (" << rows.size() << " rows)\n";
    return kExitOk;
}

int run_selftest(const RunConfig&) {
    int failures = 0;
    const auto report = [&](bool ok, const std::string& what) {
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what.c_str());
        if (!ok) ++failures;
    };

    for (const auto& name : preset_names()) {
        try {
            validated(make_preset(name));
            report(true, "preset " + name + " validates");
        } catch (const std::exception& e) {
            report(false, "preset " + name + " validates: " + e.what());
        }
    }

    try {
        ScenarioSpec s = make_preset("closed-form-undelayed");
        s.horizon = 2.0;
        const Trajectory traj = integrate(s);
        double worst = 0.0;
        for (std::size_t k = traj.history_points(); k < traj.size(); ++k) {
            const double t = traj.time(k);
            const double expect = 2.0 * std::exp(-2.0 * t);
            const double got = std::abs(traj.velocities(k)(0, 0) - traj.velocities(k)(1, 0));
            worst = std::max(worst, std::abs(got - expect) / expect);
        }
        report(worst <= 1e-6, "closed-form velocity gap within 1e-6 (worst " + format_full(worst) + ")");
    } catch (const std::exception& e) {
        report(false, std::string("closed-form run: ") + e.what());
    }

    try {
        const Trajectory traj = integrate(make_preset("flocked"));
        Diagnostics diag(traj);
        double worst = 0.0;
        for (std::size_t k = 0; k < diag.mesh_size(); ++k) worst = std::max(worst, diag.dV(k));
        report(worst <= 1e-14, "flocked preset keeps d_V at zero (worst " + format_full(worst) + ")");
    } catch (const std::exception& e) {
        report(false, std::string("flocked run: ") + e.what());
    }

    try {
        const Trajectory traj = integrate(make_preset("default-delayed"));
        const CertificateReport rep = check_certificates(traj);
        report(rep.all_pass, "default-delayed certification passes");
    } catch (const std::exception& e) {
        report(false, std::string("default-delayed certification: ") + e.what());
    }

    try {
        const Trajectory traj = integrate(make_preset("default-delayed"));
        const Trajectory bad = make_velocity_inflation_fixture(traj, kFixtureGrowthRate);
        const CertificateReport rep = check_certificates(bad);
        bool b = false, g = false, i = false;
        for (const auto& c : rep.checks) {
            if (c.name == "window_monotone") b = !c.pass && c.margin < 0.0;
            if (c.name == "lyapunov_monotone") g = !c.pass && c.margin < 0.0;
            if (c.name == "velocity_decay") i = !c.pass && c.margin < 0.0;
        }
        report(!rep.all_pass && b && g && i,
               "corrupted fixture fails window_monotone, lyapunov_monotone, velocity_decay");
    } catch (const std::exception& e) {
        report(false, std::string("corrupted fixture: ") + e.what());
    }

    std::printf("selftest: %s\n", failures == 0 ? "all expectations met" : "FAILURES present");
    return failures == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace flockcert
