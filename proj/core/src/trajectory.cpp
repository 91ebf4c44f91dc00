#include "flockcert/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flockcert {

void hermite_eval(double t0, double t1, const Matrix& y0, const Matrix& m0, const Matrix& y1, const Matrix& m1,
                  double t, Matrix& out) {
    const double h = t1 - t0;
    const double u = (t - t0) / h;
    const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
    const double h10 = u * (1.0 - u) * (1.0 - u);
    const double h01 = u * u * (3.0 - 2.0 * u);
    const double h11 = u * u * (u - 1.0);
    auto o = out.flat();
    const auto a = y0.flat(), b = m0.flat(), c = y1.flat(), d = m1.flat();
    for (std::size_t k = 0; k < o.size(); ++k)
        o[k] = h00 * a[k] + h * h10 * b[k] + h01 * c[k] + h * h11 * d[k];
}

Trajectory::Trajectory(ScenarioSpec scenario)
    : scenario_(std::make_shared<const ScenarioSpec>(std::move(scenario))) {
    const auto& s = *scenario_;
    const double tau = s.tau_bar();
    const int m = std::max(1, static_cast<int>(std::ceil(tau / s.dt)));
    const double h = tau / m;

    Matrix x(s.agents, s.dim), v(s.agents, s.dim);
    for (int j = 0; j <= m; ++j) {
        double t = (j == 0) ? -tau : (j == m ? 0.0 : -tau + h * j);
        for (int i = 0; i < s.agents; ++i) eval_history_into(s.history, tau, i, t, x.row(i), v.row(i));
        times_.push_back(t);
        positions_.push_back(x);
        velocities_.push_back(v);
        accelerations_.emplace_back(s.agents, s.dim);
    }
    history_points_ = times_.size();
}

PhaseState Trajectory::state(std::size_t k) const {
    return PhaseState{times_[k], positions_[k], velocities_[k]};
}

std::size_t Trajectory::interval_left(double t) const {
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t k = static_cast<std::size_t>(it - times_.begin());
    if (k == 0) return 0;
    if (k == times_.size()) return times_.size() - 2;
    return k - 1;
}

PhaseState Trajectory::query(double t) const {
    PhaseState st;
    st.t = t;
    st.X = Matrix(scenario_->agents, scenario_->dim);
    st.V = Matrix(scenario_->agents, scenario_->dim);
    query_into(t, st.X, st.V);
    return st;
}

void Trajectory::query_into(double t, Matrix& X, Matrix& V) const {
    const double tau = tau_bar();
    if (t < -tau || t > frontier())
        throw std::domain_error("Trajectory::query: t = " + std::to_string(t) + " outside [" +
                                std::to_string(-tau) + ", " + std::to_string(frontier()) + "]");

    if (t <= 0.0) {
        // stored history mesh points verbatim, the laws everywhere else
        const auto it = std::lower_bound(times_.begin(), times_.begin() + history_points_, t);
        if (it != times_.begin() + history_points_ && *it == t) {
            const std::size_t k = static_cast<std::size_t>(it - times_.begin());
            X = positions_[k];
            V = velocities_[k];
            return;
        }
        for (int i = 0; i < scenario_->agents; ++i)
            eval_history_into(scenario_->history, tau, i, t, X.row(i), V.row(i));
        return;
    }

    const std::size_t k = interval_left(t);
    if (times_[k] == t) {
        X = positions_[k];
        V = velocities_[k];
        return;
    }
    if (times_[k + 1] == t) {
        X = positions_[k + 1];
        V = velocities_[k + 1];
        return;
    }
    hermite_eval(times_[k], times_[k + 1], positions_[k], velocities_[k], positions_[k + 1], velocities_[k + 1],
                 t, X);
    hermite_eval(times_[k], times_[k + 1], velocities_[k], accelerations_[k], velocities_[k + 1],
                 accelerations_[k + 1], t, V);
}

void Trajectory::append(double t, Matrix X, Matrix V, Matrix dVdt) {
    if (t <= frontier())
        throw std::logic_error("Trajectory::append: time must advance past the frontier");
    times_.push_back(t);
    positions_.push_back(std::move(X));
    velocities_.push_back(std::move(V));
    accelerations_.push_back(std::move(dVdt));
}

void Trajectory::set_acceleration(std::size_t k, Matrix dVdt) { accelerations_[k] = std::move(dVdt); }

}  // namespace flockcert
