#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flockcert/envelope.hpp"

namespace flockcert {

/// Slack budget for the checks. Window-based slacks scale with D0 so the
/// report is invariant under rescaling the initial data; absolute floors
/// keep degenerate (already flocked) runs meaningful.
struct ToleranceConfig {
    double window_rel = 1e-8;          // window inequalities, relative to D0
    double abs_floor = 1e-12;
    double velocity_rel = 1e-6;        // speed bound, relative to R_V0
    double velocity_abs = 1e-9;
    double delayed_distance_abs = 1e-6;
    double lyapunov_rel = 1e-8;        // monotonicity slack, relative to D0 + 1
    double decay_rel = 1e-6;           // decay envelope, multiplicative
    double decay_abs = 1e-9;           // decay envelope, relative to D0
    double quad_rel = 1e-10;
    RefinementOptions refine;
};

/// One verified inequality: its worst margin (bound minus value, before
/// slack) over the checked range, and whether it held within slack.
struct CheckResult {
    std::string name;
    std::string range;
    double margin = 0.0;
    double slack = 0.0;
    bool pass = false;
    bool vacuous = false;  // nothing to check at this horizon
};

struct CertificateReport {
    std::string scenario_name;
    std::string fingerprint;
    bool partial = false;    // horizon below 4 tau_bar
    bool constants_valid = false;
    TheoryConstants constants;
    std::vector<CheckResult> checks;
    bool all_pass = false;
    // discretization metadata
    std::size_t mesh_points = 0;
    int windows = 0;
    std::vector<int> window_grid;      // accepted intervals per window
    std::vector<bool> window_converged;
    ToleranceConfig tolerances;
    std::string upper_limit_convention;
    std::string contraction_convention;
};

/// Run every check along the trajectory and assemble the report:
///   velocity_bound           every speed stays within the initial maximum
///   window_monotone          D_{n+1} <= D_n
///   delayed_distance         |x_i(t - tau(t)) - x_j(t)| within the a priori bound
///   window_contraction       D_{n+1} <= e^{-K tau} d_V(n tau) + (1 - e^{-K tau}) D_n
///   three_window_contraction D_{n+1} <= (1 - e^{-K tau} int phi) D_{n-2}
///   window_envelope_bound    D_n <= envelope(t) for t <= n tau
///   lyapunov_monotone        sampled differences of the functional past 2 tau
///   position_diameter_bound  sup d_X <= d*
///   velocity_decay           d_V(t) <= D0 e^{-C (t - 2 tau)}
///   envelope_decay           envelope(n tau) <= D0 e^{-C (n-2) tau}
CertificateReport check_certificates(const Trajectory& traj, const ToleranceConfig& tol = {});

/// Negative-control fixture: velocities scaled by e^{growth_rate * t} with
/// positions re-integrated from the inflated velocities, so the corruption
/// reaches both the velocity spread and the position diameter. The result is
/// a fresh trajectory over the same mesh whose pre-history is the sampled
/// (inflated) original.
Trajectory make_velocity_inflation_fixture(const Trajectory& traj, double growth_rate = 1.0);

}  // namespace flockcert
