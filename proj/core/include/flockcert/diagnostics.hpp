#pragma once

#include <optional>
#include <span>
#include <vector>

#include "flockcert/trajectory.hpp"

namespace flockcert {

/// Maximum pairwise distance between agent positions.
double diameter_position(const PhaseState& state);

/// Maximum pairwise distance between agent velocities.
double diameter_velocity(const PhaseState& state);

/// <v_i - v_j, v> for a unit direction v (|v| = 1 within 1e-12).
double directional_diff(const PhaseState& state, int i, int j, std::span<const double> v);

/// Scales of the initial data over [-tau_bar, 0]:
/// D0 the velocity spread across agents and times, R_V0 the largest speed,
/// M_X0 the largest position norm.
struct InitialExtremes {
    double D0 = 0.0;
    double R_V0 = 0.0;
    double M_X0 = 0.0;
};

/// Grid refinement control for continuous-time extrema: the per-window grid
/// doubles until the result moves by less than rel_tol * scale + abs_floor.
struct RefinementOptions {
    int initial_intervals = 64;
    int max_intervals = 32768;
    double rel_tol = 1e-8;
    double abs_floor = 1e-12;
};

/// Velocity extrema over the window [n tau_bar - tau_bar, n tau_bar]:
/// the diameter D_n, and per requested unit direction the max and min of
/// <v_l(s), v> over agents l and window times s.
struct WindowExtrema {
    int n = 0;
    double Dn = 0.0;
    std::vector<double> direction_max;
    std::vector<double> direction_min;
    bool converged = true;
    int intervals = 0;
};

InitialExtremes initial_extremes(const Trajectory& traj, const RefinementOptions& opts = {});

/// D_n on a fixed uniform grid of sample_count points per window (>= 2).
WindowExtrema window_diameter(const Trajectory& traj, int n, int sample_count);

/// D_n and per-direction extrema with grid-doubling acceptance.
WindowExtrema window_extrema(const Trajectory& traj, int n,
                             const std::vector<std::vector<double>>& unit_directions,
                             const RefinementOptions& opts = {});

/// Per-trajectory diagnostic precomputation.
///
/// d_X and d_V are tabulated on the integration mesh; the running maximum of
/// d_X is the mesh-sample step function, which keeps psi_t and phi exactly
/// nonincreasing/nonincreasing and makes their time integrals exact sums.
/// Note the mesh running maximum never exceeds the true one, so the derived
/// weight floor phi is an overestimate of the true floor: every certificate
/// inequality that consumes phi is checked in the harder direction.
class Diagnostics {
public:
    explicit Diagnostics(const Trajectory& traj, const RefinementOptions& opts = {});

    const Trajectory& trajectory() const { return *traj_; }
    double K() const { return K_; }
    double tau_bar() const { return traj_->tau_bar(); }
    const InitialExtremes& extremes() const { return extremes_; }

    std::size_t mesh_size() const { return times_.size(); }
    double mesh_time(std::size_t k) const { return times_[k]; }
    double dX(std::size_t k) const { return dX_[k]; }
    double dV(std::size_t k) const { return dV_[k]; }
    double runmax_dX_at(std::size_t k) const { return runmax_[k]; }

    /// Running maximum of d_X over mesh samples in [-tau_bar, t].
    double runmax_dX(double t) const;

    /// Index of the last mesh point at or before t.
    std::size_t mesh_floor_index(double t) const { return mesh_index(t); }

    /// Upper end of the weight-floor interval:
    /// A(t) = 2 tau_bar R_V0 + 4 M_X0 + runmax d_X(t).
    double upper_limit(double t) const;

    /// psi_t = min of psi over [0, A(t)].
    double psi_floor(double t) const;

    /// phi(t) = min{ e^{-K tau_bar} psi_t, e^{-2 K tau_bar} / tau_bar }.
    double phi(double t) const;

    /// Integral of phi over [a, b]; exact for the mesh step function.
    double integral_phi(double a, double b) const;

    /// Largest n with n tau_bar <= frontier.
    int window_count() const;

    /// Cached refined window diameter D_n.
    double window_D(int n) const;
    const WindowExtrema& window(int n) const;

    double dV_at(double t) const;
    double dX_at(double t) const;

private:
    std::size_t mesh_index(double t) const;

    const Trajectory* traj_;
    RefinementOptions opts_;
    double K_ = 0.0;
    double phi_cap_ = 0.0;  // e^{-2 K tau_bar} / tau_bar
    double decay_weight_ = 0.0;  // e^{-K tau_bar}
    InitialExtremes extremes_;
    std::vector<double> times_;
    std::vector<double> dX_;
    std::vector<double> dV_;
    std::vector<double> runmax_;
    std::vector<double> phi_;
    std::vector<double> phi_prefix_;
    mutable std::vector<std::optional<WindowExtrema>> windows_;
};

/// Sampled series for export: one row per output-stride mesh point.
struct DiagnosticsSeries {
    std::vector<double> t;
    std::vector<double> dX;
    std::vector<double> dV;
    std::vector<double> runmax_dX;
    std::vector<double> psi_t;
    std::vector<double> phi;
};

DiagnosticsSeries diagnostics_series(const Diagnostics& diag, int stride);

}  // namespace flockcert
