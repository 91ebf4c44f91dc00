#include "flockcert/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flockcert/integrator.hpp"
#include "flockcert/scenario_json.hpp"

namespace flockcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string time_range(double a, double b) {
    return "t in [" + std::to_string(a) + ", " + std::to_string(b) + "]";
}

std::string window_range(int a, int b) { return "n in " + std::to_string(a) + ".." + std::to_string(b); }

CheckResult vacuous_check(std::string name, std::string why) {
    CheckResult c;
    c.name = std::move(name);
    c.range = std::move(why);
    c.margin = kInf;
    c.pass = true;
    c.vacuous = true;
    return c;
}

}  // namespace

CertificateReport check_certificates(const Trajectory& traj, const ToleranceConfig& tol) {
    const ScenarioSpec& s = traj.scenario();
    const double tau = traj.tau_bar();
    const double T = traj.frontier();

    Diagnostics diag(traj, tol.refine);
    CertificateFunctions funcs(diag, tol.quad_rel);

    CertificateReport rep;
    rep.scenario_name = s.name;
    rep.fingerprint = scenario_fingerprint(s);
    rep.partial = T < 4.0 * tau - 1e-12 * std::max(1.0, tau);
    rep.tolerances = tol;
    rep.mesh_points = diag.mesh_size();
    rep.windows = diag.window_count();
    rep.upper_limit_convention = "2*tau_bar*R_V0 + 4*M_X0 + runmax_dX";
    rep.contraction_convention = "three-window base D_{n-2}";

    const double D0 = diag.extremes().D0;
    const double R0 = diag.extremes().R_V0;
    const double K = diag.K();
    const double ekt = std::exp(-K * tau);
    const int n_max = diag.window_count();
    const double window_slack = tol.window_rel * D0 + tol.abs_floor;

    // (a) speeds never exceed the initial maximum
    {
        CheckResult c;
        c.name = "velocity_bound";
        c.range = time_range(-tau, T);
        c.margin = kInf;
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const Matrix& V = traj.velocities(k);
            for (int i = 0; i < s.agents; ++i) c.margin = std::min(c.margin, R0 - norm(V.row(i)));
        }
        c.slack = tol.velocity_rel * R0 + tol.velocity_abs;
        c.pass = c.margin >= -c.slack;
        rep.checks.push_back(std::move(c));
    }

    // (b) window diameters do not increase
    if (n_max >= 1) {
        CheckResult c;
        c.name = "window_monotone";
        c.range = window_range(0, n_max - 1);
        c.margin = kInf;
        for (int n = 0; n < n_max; ++n) c.margin = std::min(c.margin, diag.window_D(n) - diag.window_D(n + 1));
        c.slack = window_slack;
        c.pass = c.margin >= -c.slack;
        rep.checks.push_back(std::move(c));
    } else {
        rep.checks.push_back(vacuous_check("window_monotone", "horizon below one window"));
    }

    // (c) delayed positions stay within the a priori distance bound
    {
        CheckResult c;
        c.name = "delayed_distance";
        c.range = time_range(0.0, T);
        c.margin = kInf;
        Matrix Xd(s.agents, s.dim), Vd(s.agents, s.dim);
        for (std::size_t k = traj.history_points() - 1; k < traj.size(); ++k) {
            const double t = traj.time(k);
            if (t < 0.0) continue;
            const double u = t - eval_delay(s.delay, t);
            traj.query_into(std::max(u, -tau), Xd, Vd);
            const double bound = 2.0 * tau * R0 + 4.0 * diag.extremes().M_X0 + diag.dX_at(t - tau);
            const Matrix& X = traj.positions(k);
            for (int i = 0; i < s.agents; ++i)
                for (int j = 0; j < s.agents; ++j) {
                    if (i == j) continue;
                    c.margin = std::min(c.margin, bound - distance(Xd.row(i), X.row(j)));
                }
        }
        c.slack = tol.delayed_distance_abs;
        c.pass = c.margin >= -c.slack;
        rep.checks.push_back(std::move(c));
    }

    // (d) one-window contraction
    if (n_max >= 1) {
        CheckResult c;
        c.name = "window_contraction";
        c.range = window_range(0, n_max - 1);
        c.margin = kInf;
        for (int n = 0; n < n_max; ++n) {
            const double bound = ekt * diag.dV_at(n * tau) + (1.0 - ekt) * diag.window_D(n);
            c.margin = std::min(c.margin, bound - diag.window_D(n + 1));
        }
        c.slack = window_slack;
        c.pass = c.margin >= -c.slack;
        rep.checks.push_back(std::move(c));
    } else {
        rep.checks.push_back(vacuous_check("window_contraction", "horizon below one window"));
    }

    // (e) three-window contraction through the weight floor
    if (n_max >= 3) {
        CheckResult c;
        c.name = "three_window_contraction";
        c.range = window_range(2, n_max - 1);
        c.margin = kInf;
        for (int n = 2; n < n_max; ++n) {
            const double shrink = 1.0 - ekt * diag.integral_phi((n - 2) * tau, (n - 1) * tau);
            c.margin = std::min(c.margin, shrink * diag.window_D(n - 2) - diag.window_D(n + 1));
        }
        c.slack = window_slack;
        c.pass = c.margin >= -c.slack;
        rep.checks.push_back(std::move(c));
    } else {
        rep.checks.push_back(vacuous_check("three_window_contraction", "horizon below three windows"));
    }

    // (f) window diameters sit under the envelope
    if (n_max >= 0) {
        CheckResult c;
        c.name = "window_envelope_bound";
        c.range = window_range(0, n_max);
        c.margin = kInf;
        for (int n = 0; n <= n_max; ++n) {
            const double Dn = diag.window_D(n);
            for (std::size_t k = 0; k < diag.mesh_size(); ++k) {
                const double t = diag.mesh_time(k);
                if (t > n * tau) break;
                c.margin = std::min(c.margin, funcs.envelope(t) - Dn);
            }
            c.margin = std::min(c.margin, funcs.envelope(n * tau) - Dn);
        }
        c.slack = window_slack;
        c.pass = c.margin >= -c.slack;
        rep.checks.push_back(std::move(c));
    }

    // (g) the Lyapunov functional does not increase past 2 tau_bar
    if (T >= 2.0 * tau + s.dt) {
        CheckResult c;
        c.name = "lyapunov_monotone";
        c.range = time_range(2.0 * tau, T);
        c.margin = kInf;
        double prev = funcs.lyapunov(2.0 * tau);
        for (std::size_t k = 0; k < diag.mesh_size(); ++k) {
            const double t = diag.mesh_time(k);
            if (t <= 2.0 * tau) continue;
            const double cur = funcs.lyapunov(t);
            c.margin = std::min(c.margin, prev - cur);
            prev = cur;
        }
        c.slack = tol.lyapunov_rel * (D0 + 1.0);
        c.pass = c.margin >= -c.slack;
        rep.checks.push_back(std::move(c));
    } else {
        rep.checks.push_back(vacuous_check("lyapunov_monotone", "horizon below 2 tau_bar"));
    }

    // constants; they need the functional at 2 tau_bar
    bool have_constants = T + 1e-12 >= 2.0 * tau;
    if (have_constants) {
        try {
            rep.constants = funcs.constants();
            rep.constants_valid = true;
        } catch (const std::exception&) {
            have_constants = false;
        }
    }

    // (h) position diameter bound
    if (have_constants) {
        CheckResult c;
        c.name = "position_diameter_bound";
        c.range = time_range(-tau, T);
        double sup_dx = 0.0;
        for (std::size_t k = 0; k < diag.mesh_size(); ++k) sup_dx = std::max(sup_dx, diag.dX(k));
        c.margin = rep.constants.d_star - sup_dx;
        c.slack = window_slack;
        c.pass = c.margin >= -c.slack;
        rep.checks.push_back(std::move(c));
    } else {
        rep.checks.push_back(vacuous_check("position_diameter_bound", "constants unavailable"));
    }

    // (i) exponential decay of the velocity diameter; the slack here is
    // multiplicative, so it is folded into the reported margin
    if (have_constants) {
        CheckResult c;
        c.name = "velocity_decay";
        c.range = time_range(-tau, T);
        c.margin = kInf;
        const double C = rep.constants.C;
        for (std::size_t k = 0; k < diag.mesh_size(); ++k) {
            const double t = diag.mesh_time(k);
            const double bound = D0 * std::exp(-C * (t - 2.0 * tau));
            c.margin =
                std::min(c.margin, bound * (1.0 + tol.decay_rel) + tol.decay_abs * D0 - diag.dV(k));
        }
        c.slack = 0.0;
        c.pass = c.margin >= 0.0;
        rep.checks.push_back(std::move(c));
    } else {
        rep.checks.push_back(vacuous_check("velocity_decay", "constants unavailable"));
    }

    // (j) envelope anchors decay at the certified rate
    if (have_constants && n_max >= 2) {
        CheckResult c;
        c.name = "envelope_decay";
        c.range = window_range(2, n_max);
        c.margin = kInf;
        for (int n = 2; n <= n_max; ++n) {
            const double bound = D0 * std::exp(-rep.constants.C * (n - 2) * tau);
            c.margin = std::min(c.margin, bound - funcs.envelope(n * tau));
        }
        c.slack = window_slack;
        c.pass = c.margin >= -c.slack;
        rep.checks.push_back(std::move(c));
    } else {
        rep.checks.push_back(vacuous_check("envelope_decay", "constants unavailable"));
    }

    for (int n = 0; n <= n_max; ++n) {
        rep.window_grid.push_back(diag.window(n).intervals);
        rep.window_converged.push_back(diag.window(n).converged);
    }

    rep.all_pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                               [](const CheckResult& c) { return c.pass; });
    return rep;
}

Trajectory make_velocity_inflation_fixture(const Trajectory& src, double growth_rate) {
    const ScenarioSpec& base = src.scenario();
    const double tau = base.tau_bar();
    const int n = base.agents;
    const int d = base.dim;

    // pre-history: sample the original laws, inflate the velocities, and wrap
    // the samples back into cubic history laws
    ScenarioSpec corrupted = base;
    corrupted.name = base.name.empty() ? "velocity-inflation" : base.name + "-velocity-inflation";
    constexpr int knots = 128;
    for (int i = 0; i < n; ++i) {
        std::vector<double> ss(knots + 1);
        std::vector<std::vector<double>> px(knots + 1), pv(knots + 1);
        for (int k = 0; k <= knots; ++k) {
            const double t = (k == knots) ? 0.0 : -tau + tau * static_cast<double>(k) / knots;
            ss[static_cast<std::size_t>(k)] = t;
            auto [x, v] = eval_history(base.history, tau, i, t);
            const double inflate = std::exp(growth_rate * t);
            for (double& c : v) c *= inflate;
            px[static_cast<std::size_t>(k)] = std::move(x);
            pv[static_cast<std::size_t>(k)] = std::move(v);
        }
        corrupted.history.agents[static_cast<std::size_t>(i)].position = HistoryLaw::sampled(ss, std::move(px));
        corrupted.history.agents[static_cast<std::size_t>(i)].velocity =
            HistoryLaw::sampled(std::move(ss), std::move(pv));
    }

    Trajectory out(corrupted);

    // integrated part: same mesh, velocities inflated, positions re-integrated
    // from the inflated velocities so that the corruption also grows d_X
    Matrix Xc = src.positions(src.history_points() - 1);
    Matrix Xq(n, d), Vq(n, d);
    for (std::size_t k = src.history_points(); k < src.size(); ++k) {
        const double t0 = src.time(k - 1);
        const double t1 = src.time(k);

        // composite Simpson of v(t) e^{rate t} over [t0, t1]
        constexpr int panels = 8;
        const double h = (t1 - t0) / (2 * panels);
        Matrix acc(n, d);
        for (int q = 0; q <= 2 * panels; ++q) {
            const double t = (q == 2 * panels) ? t1 : t0 + h * q;
            src.query_into(t, Xq, Vq);
            const double w = (q == 0 || q == 2 * panels) ? 1.0 : (q % 2 == 1 ? 4.0 : 2.0);
            const double f = w * std::exp(growth_rate * t);
            auto a = acc.flat();
            const auto v = Vq.flat();
            for (std::size_t c = 0; c < a.size(); ++c) a[c] += f * v[c];
        }
        auto xf = Xc.flat();
        const auto af = acc.flat();
        for (std::size_t c = 0; c < xf.size(); ++c) xf[c] += (h / 3.0) * af[c];

        const double inflate = std::exp(growth_rate * t1);
        Matrix Vc = src.velocities(k);
        Matrix Ac = src.accelerations(k);
        {
            auto vf = Vc.flat();
            auto acf = Ac.flat();
            for (std::size_t c = 0; c < vf.size(); ++c) {
                acf[c] = (acf[c] + growth_rate * vf[c]) * inflate;
                vf[c] *= inflate;
            }
        }
        out.append(t1, Xc, std::move(Vc), std::move(Ac));
    }
    return out;
}

}  // namespace flockcert
