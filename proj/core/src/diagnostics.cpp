#include "flockcert/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace flockcert {

namespace {

double pairwise_diameter(const Matrix& rows) {
    double best = 0.0;
    for (int i = 0; i < rows.rows(); ++i)
        for (int j = i + 1; j < rows.rows(); ++j) best = std::max(best, distance(rows.row(i), rows.row(j)));
    return best;
}

/// Diameter of a flat point cloud (M x dim). Points are visited in order of
/// distance from the centroid so that far pairs are tried first and the
/// triangle inequality prunes the rest.
double cloud_diameter(const std::vector<double>& pts, int dim) {
    const std::size_t m = pts.size() / static_cast<std::size_t>(dim);
    if (m < 2) return 0.0;

    std::vector<double> centroid(static_cast<std::size_t>(dim), 0.0);
    for (std::size_t p = 0; p < m; ++p)
        for (int c = 0; c < dim; ++c) centroid[static_cast<std::size_t>(c)] += pts[p * dim + c];
    for (double& c : centroid) c /= static_cast<double>(m);

    std::vector<double> radius(m);
    for (std::size_t p = 0; p < m; ++p) {
        double s = 0.0;
        for (int c = 0; c < dim; ++c) {
            const double d = pts[p * dim + c] - centroid[static_cast<std::size_t>(c)];
            s += d * d;
        }
        radius[p] = std::sqrt(s);
    }

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return radius[a] > radius[b]; });

    double best = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
        const std::size_t pa = order[a];
        if (2.0 * radius[pa] <= best) break;
        for (std::size_t b = a + 1; b < m; ++b) {
            const std::size_t pb = order[b];
            if (radius[pa] + radius[pb] <= best) break;
            double s = 0.0;
            for (int c = 0; c < dim; ++c) {
                const double d = pts[pa * dim + c] - pts[pb * dim + c];
                s += d * d;
            }
            best = std::max(best, std::sqrt(s));
        }
    }
    return best;
}

struct WindowSample {
    std::vector<double> velocity_cloud;  // (intervals+1) * agents points
    std::vector<double> position_cloud;
};

WindowSample sample_window(const Trajectory& traj, double left, double right, int intervals,
                           bool with_positions) {
    const int n = traj.scenario().agents;
    const int d = traj.scenario().dim;
    WindowSample out;
    out.velocity_cloud.reserve(static_cast<std::size_t>(intervals + 1) * n * d);
    Matrix X(n, d), V(n, d);
    const double h = (right - left) / intervals;
    for (int j = 0; j <= intervals; ++j) {
        double t = (j == 0) ? left : (j == intervals ? right : left + h * j);
        t = std::clamp(t, traj.start_time(), traj.frontier());
        traj.query_into(t, X, V);
        for (int i = 0; i < n; ++i) {
            const auto row = V.row(i);
            out.velocity_cloud.insert(out.velocity_cloud.end(), row.begin(), row.end());
            if (with_positions) {
                const auto prow = X.row(i);
                out.position_cloud.insert(out.position_cloud.end(), prow.begin(), prow.end());
            }
        }
    }
    return out;
}

WindowExtrema evaluate_window(const Trajectory& traj, int n, int intervals,
                              const std::vector<std::vector<double>>& dirs) {
    const double tau = traj.tau_bar();
    const double left = (n - 1) * tau;
    const double right = n * tau;
    const auto sample = sample_window(traj, left, right, intervals, false);
    const int d = traj.scenario().dim;

    WindowExtrema w;
    w.n = n;
    w.intervals = intervals;
    w.Dn = cloud_diameter(sample.velocity_cloud, d);
    w.direction_max.assign(dirs.size(), -std::numeric_limits<double>::infinity());
    w.direction_min.assign(dirs.size(), std::numeric_limits<double>::infinity());
    const std::size_t m = sample.velocity_cloud.size() / static_cast<std::size_t>(d);
    for (std::size_t q = 0; q < dirs.size(); ++q) {
        const auto& v = dirs[q];
        for (std::size_t p = 0; p < m; ++p) {
            double s = 0.0;
            for (int c = 0; c < d; ++c) s += sample.velocity_cloud[p * d + c] * v[static_cast<std::size_t>(c)];
            w.direction_max[q] = std::max(w.direction_max[q], s);
            w.direction_min[q] = std::min(w.direction_min[q], s);
        }
    }
    return w;
}

WindowExtrema refine_window(const Trajectory& traj, int n, const std::vector<std::vector<double>>& dirs,
                            const RefinementOptions& opts, double scale) {
    int intervals = opts.initial_intervals;
    WindowExtrema prev = evaluate_window(traj, n, intervals, dirs);
    const double tol = opts.rel_tol * scale + opts.abs_floor;
    for (;;) {
        intervals *= 2;
        WindowExtrema cur = evaluate_window(traj, n, intervals, dirs);
        double change = std::abs(cur.Dn - prev.Dn);
        for (std::size_t q = 0; q < dirs.size(); ++q) {
            change = std::max(change, std::abs(cur.direction_max[q] - prev.direction_max[q]));
            change = std::max(change, std::abs(cur.direction_min[q] - prev.direction_min[q]));
        }
        if (change <= tol) {
            cur.converged = true;
            return cur;
        }
        if (intervals >= opts.max_intervals) {
            cur.converged = false;
            return cur;
        }
        prev = std::move(cur);
    }
}

}  // namespace

double diameter_position(const PhaseState& state) { return pairwise_diameter(state.X); }

double diameter_velocity(const PhaseState& state) { return pairwise_diameter(state.V); }

double directional_diff(const PhaseState& state, int i, int j, std::span<const double> v) {
    if (i < 0 || i >= state.V.rows() || j < 0 || j >= state.V.rows())
        throw std::out_of_range("directional_diff: agent index out of range");
    if (std::abs(norm(v) - 1.0) > 1e-12)
        throw std::domain_error("directional_diff: direction must be a unit vector");
    double s = 0.0;
    const auto vi = state.V.row(i), vj = state.V.row(j);
    for (std::size_t c = 0; c < v.size(); ++c) s += (vi[c] - vj[c]) * v[c];
    return s;
}

InitialExtremes initial_extremes(const Trajectory& traj, const RefinementOptions& opts) {
    const int d = traj.scenario().dim;
    const double tau = traj.tau_bar();

    const auto evaluate = [&](int intervals) {
        const auto sample = sample_window(traj, -tau, 0.0, intervals, true);
        InitialExtremes e;
        e.D0 = cloud_diameter(sample.velocity_cloud, d);
        const std::size_t m = sample.velocity_cloud.size() / static_cast<std::size_t>(d);
        for (std::size_t p = 0; p < m; ++p) {
            double sv = 0.0, sx = 0.0;
            for (int c = 0; c < d; ++c) {
                sv += sample.velocity_cloud[p * d + c] * sample.velocity_cloud[p * d + c];
                sx += sample.position_cloud[p * d + c] * sample.position_cloud[p * d + c];
            }
            e.R_V0 = std::max(e.R_V0, std::sqrt(sv));
            e.M_X0 = std::max(e.M_X0, std::sqrt(sx));
        }
        return e;
    };

    int intervals = opts.initial_intervals;
    InitialExtremes prev = evaluate(intervals);
    for (;;) {
        intervals *= 2;
        const InitialExtremes cur = evaluate(intervals);
        const bool settled =
            std::abs(cur.D0 - prev.D0) <= opts.rel_tol * cur.D0 + opts.abs_floor &&
            std::abs(cur.R_V0 - prev.R_V0) <= opts.rel_tol * cur.R_V0 + opts.abs_floor &&
            std::abs(cur.M_X0 - prev.M_X0) <= opts.rel_tol * cur.M_X0 + opts.abs_floor;
        if (settled || intervals >= opts.max_intervals) return cur;
        prev = cur;
    }
}

WindowExtrema window_diameter(const Trajectory& traj, int n, int sample_count) {
    if (sample_count < 2) throw std::domain_error("window_diameter: at least two samples required");
    if (n < 0 || n * traj.tau_bar() > traj.frontier() * (1.0 + 1e-12))
        throw std::domain_error("window_diameter: window " + std::to_string(n) + " beyond the horizon");
    return evaluate_window(traj, n, sample_count - 1, {});
}

WindowExtrema window_extrema(const Trajectory& traj, int n,
                             const std::vector<std::vector<double>>& unit_directions,
                             const RefinementOptions& opts) {
    if (n < 0 || n * traj.tau_bar() > traj.frontier() * (1.0 + 1e-12))
        throw std::domain_error("window_extrema: window " + std::to_string(n) + " beyond the horizon");
    for (const auto& v : unit_directions)
        if (std::abs(norm(v) - 1.0) > 1e-12)
            throw std::domain_error("window_extrema: directions must be unit vectors");
    const double scale = initial_extremes(traj, opts).D0;
    return refine_window(traj, n, unit_directions, opts, scale);
}

Diagnostics::Diagnostics(const Trajectory& traj, const RefinementOptions& opts) : traj_(&traj), opts_(opts) {
    const double tau = traj.tau_bar();
    K_ = sup_influence(traj.scenario().influence);
    decay_weight_ = std::exp(-K_ * tau);
    phi_cap_ = std::exp(-2.0 * K_ * tau) / tau;
    extremes_ = initial_extremes(traj, opts);

    const std::size_t m = traj.size();
    times_.resize(m);
    dX_.resize(m);
    dV_.resize(m);
    runmax_.resize(m);
    phi_.resize(m);
    phi_prefix_.assign(m, 0.0);

    double rm = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        times_[k] = traj.time(k);
        dX_[k] = pairwise_diameter(traj.positions(k));
        dV_[k] = pairwise_diameter(traj.velocities(k));
        rm = std::max(rm, dX_[k]);
        runmax_[k] = rm;
        const double a = 2.0 * tau * extremes_.R_V0 + 4.0 * extremes_.M_X0 + rm;
        phi_[k] = std::min(decay_weight_ * min_influence_prefix(traj.scenario().influence, a), phi_cap_);
    }
    for (std::size_t k = 0; k + 1 < m; ++k)
        phi_prefix_[k + 1] = phi_prefix_[k] + phi_[k] * (times_[k + 1] - times_[k]);

    windows_.resize(static_cast<std::size_t>(window_count()) + 1);
}

std::size_t Diagnostics::mesh_index(double t) const {
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    if (it == times_.begin()) return 0;
    return static_cast<std::size_t>(it - times_.begin()) - 1;
}

double Diagnostics::runmax_dX(double t) const { return runmax_[mesh_index(t)]; }

double Diagnostics::upper_limit(double t) const {
    return 2.0 * tau_bar() * extremes_.R_V0 + 4.0 * extremes_.M_X0 + runmax_dX(t);
}

double Diagnostics::psi_floor(double t) const {
    if (t < -tau_bar() || t > traj_->frontier() + 1e-12 * std::max(1.0, traj_->frontier()))
        throw std::domain_error("psi_floor: t outside [-tau_bar, T]");
    return min_influence_prefix(traj_->scenario().influence, upper_limit(t));
}

double Diagnostics::phi(double t) const {
    if (t < -tau_bar() || t > traj_->frontier() + 1e-12 * std::max(1.0, traj_->frontier()))
        throw std::domain_error("phi: t outside [-tau_bar, T]");
    return phi_[mesh_index(t)];
}

double Diagnostics::integral_phi(double a, double b) const {
    if (b < a) return -integral_phi(b, a);
    const auto cumulative = [&](double x) {
        x = std::clamp(x, times_.front(), times_.back());
        const std::size_t k = std::min(mesh_index(x), times_.size() - 2);
        return phi_prefix_[k] + phi_[k] * (x - times_[k]);
    };
    return cumulative(b) - cumulative(a);
}

int Diagnostics::window_count() const {
    return static_cast<int>(std::floor(traj_->frontier() / tau_bar() + 1e-9));
}

const WindowExtrema& Diagnostics::window(int n) const {
    if (n < 0 || n > window_count())
        throw std::domain_error("Diagnostics::window: window " + std::to_string(n) + " beyond the horizon");
    auto& slot = windows_[static_cast<std::size_t>(n)];
    if (!slot) slot = refine_window(*traj_, n, {}, opts_, extremes_.D0);
    return *slot;
}

double Diagnostics::window_D(int n) const { return window(n).Dn; }

double Diagnostics::dV_at(double t) const {
    Matrix X(traj_->scenario().agents, traj_->scenario().dim);
    Matrix V(traj_->scenario().agents, traj_->scenario().dim);
    traj_->query_into(t, X, V);
    return pairwise_diameter(V);
}

double Diagnostics::dX_at(double t) const {
    Matrix X(traj_->scenario().agents, traj_->scenario().dim);
    Matrix V(traj_->scenario().agents, traj_->scenario().dim);
    traj_->query_into(t, X, V);
    return pairwise_diameter(X);
}

DiagnosticsSeries diagnostics_series(const Diagnostics& diag, int stride) {
    if (stride < 1) throw std::domain_error("diagnostics_series: stride >= 1 required");
    DiagnosticsSeries out;
    const std::size_t m = diag.mesh_size();
    for (std::size_t k = 0; k < m; k += static_cast<std::size_t>(stride)) {
        out.t.push_back(diag.mesh_time(k));
        out.dX.push_back(diag.dX(k));
        out.dV.push_back(diag.dV(k));
        out.runmax_dX.push_back(diag.runmax_dX_at(k));
        out.psi_t.push_back(diag.psi_floor(diag.mesh_time(k)));
        out.phi.push_back(diag.phi(diag.mesh_time(k)));
    }
    if ((m - 1) % static_cast<std::size_t>(stride) != 0) {
        const std::size_t k = m - 1;
        out.t.push_back(diag.mesh_time(k));
        out.dX.push_back(diag.dX(k));
        out.dV.push_back(diag.dV(k));
        out.runmax_dX.push_back(diag.runmax_dX_at(k));
        out.psi_t.push_back(diag.psi_floor(diag.mesh_time(k)));
        out.phi.push_back(diag.phi(diag.mesh_time(k)));
    }
    return out;
}

}  // namespace flockcert
