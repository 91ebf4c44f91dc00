#pragma once

#include <vector>

#include "flockcert/diagnostics.hpp"

namespace flockcert {

/// The constants a certification run derives from one trajectory.
struct TheoryConstants {
    double K = 0.0;
    double tau_bar = 0.0;
    double D0 = 0.0;
    double R_V0 = 0.0;
    double M_X0 = 0.0;
    double lyapunov_2tau = 0.0;
    double d_star = 0.0;
    double psi_star = 0.0;
    double phi_star = 0.0;
    double C = 0.0;
};

/// C = (1 / (3 tau_bar)) ln(1 / (1 - e^{-K tau_bar} phi_star tau_bar)).
/// Requires 0 < phi_star <= e^{-2 K tau_bar} / tau_bar; anything else means a
/// corrupted constant upstream and throws std::domain_error.
double decay_rate(double K, double tau_bar, double phi_star);

/// The decreasing window envelope, the Lyapunov functional built on it, and
/// the constants derived from their value at 2 tau_bar.
///
/// envelope(t) equals D0 up to 2 tau_bar and then contracts per window:
/// envelope(t) = envelope(n tau_bar) (1 - e^{-K tau_bar} I_n(t))^{1/3} with
/// I_n(t) the integral of phi over [n tau_bar, t].
///
/// lyapunov(t) = envelope(t) + (e^{-K tau_bar} / 3) G(A(t)) where
/// G(z) is the integral over [0, z] of
/// g(r) = min{ e^{-K tau_bar} min_{[0, r]} psi, e^{-2 K tau_bar} / tau_bar }
/// and A(t) the diagnostics upper limit.
class CertificateFunctions {
public:
    explicit CertificateFunctions(const Diagnostics& diag, double quad_rel = 1e-10);

    const Diagnostics& diagnostics() const { return *diag_; }

    double envelope(double t) const;
    double lyapunov(double t) const;

    /// (e^{-K tau_bar} / 3) * integral of g over [0, z].
    double weight_floor_integral(double z) const;

    /// Smallest z with weight_floor_integral(z) >= lyapunov(2 tau_bar), by
    /// bracket doubling and bisection to 1e-10 relative. Throws when no
    /// bracket exists below z = 1e6 (the divergence hypothesis is then
    /// numerically out of reach for this influence function).
    double solve_dstar() const;

    /// d*, psi*, phi*, C, computed in that order.
    TheoryConstants constants() const;

    /// Envelope anchors envelope(n tau_bar) for n = 2 .. window_count.
    const std::vector<double>& anchors() const { return anchors_; }

private:
    double integrand(double r) const;

    const Diagnostics* diag_;
    double quad_rel_;
    double decay_weight_;  // e^{-K tau_bar}
    double phi_cap_;       // e^{-2 K tau_bar} / tau_bar
    std::vector<double> anchors_;          // envelope at n tau_bar, n >= 2
    std::vector<double> mesh_G_;           // weight-floor integral at mesh upper limits
};

}  // namespace flockcert
