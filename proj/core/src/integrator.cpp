#include "flockcert/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace flockcert {

namespace {

// out = a + s * b
void axpy(const Matrix& a, double s, const Matrix& b, Matrix& out) {
    const auto af = a.flat(), bf = b.flat();
    auto of = out.flat();
    for (std::size_t k = 0; k < of.size(); ++k) of[k] = af[k] + s * bf[k];
}

// dv_i = (1/(N-1)) sum_{j != i} psi(|x_i - xd_j|) (vd_j - v_i)
void accel_into(const ScenarioSpec& s, const Matrix& X, const Matrix& V, const Matrix& Xd, const Matrix& Vd,
                Matrix& dV) {
    const int n = s.agents;
    const double inv = 1.0 / static_cast<double>(n - 1);
    for (int i = 0; i < n; ++i) {
        const auto xi = X.row(i);
        const auto vi = V.row(i);
        auto out = dV.row(i);
        std::fill(out.begin(), out.end(), 0.0);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double w = inv * eval_influence(s.influence, distance(xi, Xd.row(j)));
            const auto vdj = Vd.row(j);
            for (std::size_t c = 0; c < out.size(); ++c) out[c] += w * (vdj[c] - vi[c]);
        }
    }
}

}  // namespace

HistoryAccessor::HistoryAccessor(Reader reader, double earliest, double frontier)
    : reader_(std::move(reader)), earliest_(earliest), frontier_(frontier) {}

void HistoryAccessor::read(double u, Matrix& X, Matrix& V) const {
    const double slack = 1e-12 * std::max({1.0, std::abs(earliest_), std::abs(frontier_)});
    if (u < earliest_ - slack || u > frontier_ + slack)
        throw std::logic_error("HistoryAccessor: delayed lookup at t = " + std::to_string(u) +
                               " outside the available window [" + std::to_string(earliest_) + ", " +
                               std::to_string(frontier_) + "]");
    reader_(std::clamp(u, earliest_, frontier_), X, V);
}

HistoryAccessor make_accessor(const Trajectory& traj) {
    return HistoryAccessor([&traj](double u, Matrix& X, Matrix& V) { traj.query_into(u, X, V); },
                           traj.start_time(), traj.frontier());
}

PhaseDerivative rhs(double t, const PhaseState& state, const HistoryAccessor& hist,
                    const ScenarioSpec& scenario) {
    if (t < 0.0) throw std::domain_error("rhs: t must be nonnegative");
    const double u = t - eval_delay(scenario.delay, t);
    Matrix Xd(scenario.agents, scenario.dim), Vd(scenario.agents, scenario.dim);
    hist.read(u, Xd, Vd);
    PhaseDerivative d;
    d.dX = state.V;
    d.dV = Matrix(scenario.agents, scenario.dim);
    accel_into(scenario, state.X, state.V, Xd, Vd, d.dV);
    return d;
}

std::vector<double> integration_mesh(const ScenarioSpec& s) {
    const double T = s.end_time();
    std::vector<double> plan;
    if (s.delay.family == DelayFamily::Constant) {
        const double tau = s.tau_bar();
        for (int k = 0;; ++k) {
            const double wstart = k * tau;
            if (wstart >= T) break;
            const bool last = (k + 1) * tau >= T - 1e-12 * std::max(1.0, T);
            const double wend = last ? T : (k + 1) * tau;
            const int m = std::max(1, static_cast<int>(std::ceil((wend - wstart) / s.dt - 1e-9)));
            const double h = (wend - wstart) / m;
            for (int j = 1; j <= m; ++j) plan.push_back(j == m ? wend : wstart + j * h);
            if (last) break;
        }
    } else {
        const long n = static_cast<long>(std::floor(T / s.dt + 1e-9));
        for (long j = 1; j <= n; ++j) plan.push_back(j * s.dt);
        if (plan.empty() || plan.back() < T - 1e-9 * s.dt)
            plan.push_back(T);
        else
            plan.back() = T;
    }
    return plan;
}

namespace {

/// Cubic covering in-step delayed reads: position slopes are velocities,
/// velocity slopes are accelerations. The polynomial lives on [t0, t1] but
/// may be read (extrapolated) up to valid_until.
struct ProvisionalSegment {
    double t0 = 0.0, t1 = 0.0;
    double valid_until = 0.0;
    Matrix X0, X1, V0, V1, A0, A1;

    void eval(double u, Matrix& X, Matrix& V) const {
        hermite_eval(t0, t1, X0, V0, X1, V1, u, X);
        hermite_eval(t0, t1, V0, A0, V1, A1, u, V);
    }
};

}  // namespace

void Integrator::read_delayed(double u, const ProvisionalSegment* prov, bool& used_provisional, Matrix& X,
                              Matrix& V) const {
    const double tau = traj_.tau_bar();
    const double slack = 1e-12 * std::max(1.0, tau);
    if (u < traj_.start_time() - slack)
        throw std::logic_error("Integrator: delayed lookup before -tau_bar at t = " + std::to_string(u));
    if (u <= traj_.frontier()) {
        traj_.query_into(std::max(u, traj_.start_time()), X, V);
        return;
    }
    if (prov != nullptr && u <= prov->valid_until + slack) {
        used_provisional = true;
        prov->eval(std::min(u, prov->valid_until), X, V);
        return;
    }
    throw std::logic_error("Integrator: delayed lookup beyond the frontier at t = " + std::to_string(u));
}

Integrator::Integrator(ScenarioSpec scenario, IntegrateOptions opts)
    : traj_(validated(scenario)), plan_(integration_mesh(scenario)) {
    double r0 = 0.0;
    for (std::size_t k = 0; k < traj_.history_points(); ++k)
        for (int i = 0; i < scenario.agents; ++i) r0 = std::max(r0, norm(traj_.velocities(k).row(i)));
    blowup_threshold_ = opts.blowup_factor * std::max(r0, 1e-9);
}

void Integrator::step() {
    if (done()) throw std::logic_error("Integrator::step: mesh exhausted");
    advance(plan_[next_]);
    ++next_;
}

void Integrator::step_to(double t1) {
    if (t1 - traj_.frontier() > traj_.tau_bar() * (1.0 + 1e-12))
        throw std::logic_error("Integrator::step_to: step longer than tau_bar");
    advance(t1);
    next_ = plan_.size();  // explicit stepping abandons the plan
}

void Integrator::run() {
    while (!done()) step();
}

Trajectory Integrator::take() && { return std::move(traj_); }

void Integrator::advance(double t1) {
    const ScenarioSpec& s = traj_.scenario();
    const double t0 = traj_.frontier();
    const double h = t1 - t0;
    if (!(h > 0.0)) throw std::logic_error("Integrator::advance: step must move forward");

    const Matrix& X0 = traj_.positions(traj_.size() - 1);
    const Matrix& V0 = traj_.velocities(traj_.size() - 1);

    Matrix Xd(s.agents, s.dim), Vd(s.agents, s.dim);

    // derivative at the frontier; on the first step the delayed read lands in
    // the history (tau(0) >= 0), so no provisional interval is needed
    if (first_step_) {
        bool used = false;
        const double u0 = 0.0 - eval_delay(s.delay, 0.0);
        read_delayed(u0, nullptr, used, Xd, Vd);
        Matrix A0(s.agents, s.dim);
        accel_into(s, X0, V0, Xd, Vd, A0);
        traj_.set_acceleration(traj_.size() - 1, std::move(A0));
    }
    const Matrix A0 = traj_.accelerations(traj_.size() - 1);

    // predictor for in-step delayed reads: extrapolate the previous integrated
    // interval, or a Taylor segment from (y0, f0) when there is none yet
    ProvisionalSegment prov;
    prov.t0 = t0;
    prov.t1 = t1;
    prov.valid_until = t1;
    const std::size_t frontier_index = traj_.size() - 1;
    if (frontier_index >= traj_.history_points()) {
        const std::size_t p = frontier_index - 1;
        prov.t0 = traj_.time(p);
        prov.X0 = traj_.positions(p);
        prov.V0 = traj_.velocities(p);
        prov.A0 = traj_.accelerations(p);
        prov.X1 = traj_.positions(frontier_index);
        prov.V1 = traj_.velocities(frontier_index);
        prov.A1 = traj_.accelerations(frontier_index);
        prov.t1 = traj_.time(frontier_index);  // extrapolated into (t0, t1]
    } else {
        prov.X0 = X0;
        prov.V0 = V0;
        prov.A0 = A0;
        prov.X1 = Matrix(s.agents, s.dim);
        axpy(X0, h, V0, prov.X1);
        axpy(prov.X1, 0.5 * h * h, A0, prov.X1);  // quadratic in x
        prov.V1 = Matrix(s.agents, s.dim);
        axpy(V0, h, A0, prov.V1);                 // linear in v
        prov.A1 = A0;
    }

    const double tmid = t0 + 0.5 * h;
    const double u_mid = tmid - eval_delay(s.delay, tmid);
    const double u_end = t1 - eval_delay(s.delay, t1);

    Matrix Xdm(s.agents, s.dim), Vdm(s.agents, s.dim), Xde(s.agents, s.dim), Vde(s.agents, s.dim);
    Matrix Y2X(s.agents, s.dim), Y2V(s.agents, s.dim), Y3X(s.agents, s.dim), Y3V(s.agents, s.dim);
    Matrix Y4X(s.agents, s.dim), Y4V(s.agents, s.dim);
    Matrix K2V(s.agents, s.dim), K3V(s.agents, s.dim), K4V(s.agents, s.dim);
    Matrix X1(s.agents, s.dim), V1(s.agents, s.dim), F1(s.agents, s.dim);

    const int max_passes = first_step_ ? 3 : 2;
    for (int pass = 0; pass < max_passes; ++pass) {
        bool used_provisional = false;
        read_delayed(u_mid, &prov, used_provisional, Xdm, Vdm);

        axpy(X0, 0.5 * h, V0, Y2X);
        axpy(V0, 0.5 * h, A0, Y2V);
        accel_into(s, Y2X, Y2V, Xdm, Vdm, K2V);

        axpy(X0, 0.5 * h, Y2V, Y3X);
        axpy(V0, 0.5 * h, K2V, Y3V);
        accel_into(s, Y3X, Y3V, Xdm, Vdm, K3V);

        read_delayed(u_end, &prov, used_provisional, Xde, Vde);
        axpy(X0, h, Y3V, Y4X);
        axpy(V0, h, K3V, Y4V);
        accel_into(s, Y4X, Y4V, Xde, Vde, K4V);

        {
            const auto x0 = X0.flat(), v0 = V0.flat(), a0 = A0.flat();
            const auto y2v = Y2V.flat(), y3v = Y3V.flat(), y4v = Y4V.flat();
            const auto k2 = K2V.flat(), k3 = K3V.flat(), k4 = K4V.flat();
            auto x1 = X1.flat(), v1 = V1.flat();
            const double w = h / 6.0;
            for (std::size_t k = 0; k < x1.size(); ++k) {
                x1[k] = x0[k] + w * (v0[k] + 2.0 * y2v[k] + 2.0 * y3v[k] + y4v[k]);
                v1[k] = v0[k] + w * (a0[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
            }
        }
        accel_into(s, X1, V1, Xde, Vde, F1);

        if (!used_provisional) break;  // all delayed reads were behind the frontier

        // fixed-point re-evaluation against the step's own Hermite
        prov.t0 = t0;
        prov.t1 = t1;
        prov.valid_until = t1;
        prov.X0 = X0;
        prov.V0 = V0;
        prov.A0 = A0;
        prov.X1 = X1;
        prov.V1 = V1;
        prov.A1 = F1;
    }

    for (double c : X1.flat())
        if (!std::isfinite(c)) throw BlowUpError(t0, "non-finite position at t = " + std::to_string(t1));
    for (int i = 0; i < s.agents; ++i) {
        const double speed = norm(V1.row(i));
        if (!std::isfinite(speed) || speed > blowup_threshold_)
            throw BlowUpError(t0, "velocity blow-up at t = " + std::to_string(t1) + " (|v| = " +
                                      std::to_string(speed) + "); last good time " + std::to_string(t0));
    }

    traj_.append(t1, std::move(X1), std::move(V1), std::move(F1));
    first_step_ = false;
}

Trajectory integrate(const ScenarioSpec& scenario, IntegrateOptions opts) {
    Integrator integ(scenario, opts);
    integ.run();
    return std::move(integ).take();
}

}  // namespace flockcert
