#include "flockcert/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "flockcert/quadrature.hpp"

namespace flockcert {

double decay_rate(double K, double tau_bar, double phi_star) {
    if (!(K > 0.0) || !(tau_bar > 0.0)) throw std::domain_error("decay_rate: K and tau_bar must be positive");
    const double cap = std::exp(-2.0 * K * tau_bar) / tau_bar;
    if (!(phi_star > 0.0) || phi_star > cap * (1.0 + 1e-12))
        throw std::domain_error("decay_rate: phi_star outside (0, e^{-2 K tau_bar} / tau_bar]");
    const double x = std::exp(-K * tau_bar) * phi_star * tau_bar;  // <= e^{-3 K tau_bar} < 1
    return -std::log1p(-x) / (3.0 * tau_bar);
}

CertificateFunctions::CertificateFunctions(const Diagnostics& diag, double quad_rel)
    : diag_(&diag), quad_rel_(quad_rel) {
    const double tau = diag.tau_bar();
    decay_weight_ = std::exp(-diag.K() * tau);
    phi_cap_ = std::exp(-2.0 * diag.K() * tau) / tau;

    // envelope anchors at n tau_bar, n >= 2; each window contracts by the
    // cube root of (1 - e^{-K tau_bar} * integral of phi over the window)
    const int n_max = diag.window_count();
    if (n_max >= 2) {
        anchors_.push_back(diag.extremes().D0);
        for (int n = 2; n < n_max; ++n) {
            const double shrink = 1.0 - decay_weight_ * diag.integral_phi(n * tau, (n + 1) * tau);
            anchors_.push_back(anchors_.back() * std::cbrt(shrink));
        }
    }

    // weight-floor integral at the mesh upper limits, built incrementally
    // over the nondecreasing A(t_k)
    const std::size_t m = diag.mesh_size();
    mesh_G_.resize(m);
    double accum = 0.0;
    double prev_a = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double a = diag.upper_limit(diag.mesh_time(k));
        if (k == 0)
            accum = simpson_adaptive([this](double r) { return integrand(r); }, 0.0, a, quad_rel_);
        else if (a > prev_a)
            accum += simpson_adaptive([this](double r) { return integrand(r); }, prev_a, a, quad_rel_);
        prev_a = a;
        mesh_G_[k] = (decay_weight_ / 3.0) * accum;
    }
}

double CertificateFunctions::integrand(double r) const {
    const double floor_psi = min_influence_prefix(diag_->trajectory().scenario().influence, r);
    return std::min(decay_weight_ * floor_psi, phi_cap_);
}

double CertificateFunctions::envelope(double t) const {
    const double tau = diag_->tau_bar();
    if (t < -tau) throw std::domain_error("envelope: t below -tau_bar");
    if (t <= 2.0 * tau || anchors_.empty()) return diag_->extremes().D0;

    // t in (n tau_bar, (n+1) tau_bar]; at an exact anchor the full-window
    // integral reproduces the next anchor, so boundary rounding is harmless
    int n = static_cast<int>(std::ceil(t / tau)) - 1;
    n = std::clamp(n, 2, 2 + static_cast<int>(anchors_.size()) - 1);
    const double base = anchors_[static_cast<std::size_t>(n - 2)];
    const double shrink = 1.0 - decay_weight_ * diag_->integral_phi(n * tau, t);
    return base * std::cbrt(shrink);
}

double CertificateFunctions::lyapunov(double t) const {
    return envelope(t) + mesh_G_[diag_->mesh_floor_index(t)];
}

double CertificateFunctions::weight_floor_integral(double z) const {
    if (z < 0.0) throw std::domain_error("weight_floor_integral: z must be nonnegative");
    return (decay_weight_ / 3.0) *
           simpson_adaptive([this](double r) { return integrand(r); }, 0.0, z, quad_rel_);
}

double CertificateFunctions::solve_dstar() const {
    const double tau = diag_->tau_bar();
    if (2.0 * tau > diag_->trajectory().frontier() + 1e-12)
        throw std::runtime_error("solve_dstar: horizon shorter than 2 tau_bar");
    const double target = lyapunov(2.0 * tau);

    const double lo0 = diag_->upper_limit(2.0 * tau);
    const double g_lo = weight_floor_integral(lo0);
    if (g_lo >= target) return lo0;  // no velocity spread to absorb

    const auto value = [&](double z) {
        return g_lo + (decay_weight_ / 3.0) *
                          simpson_adaptive([this](double r) { return integrand(r); }, lo0, z, quad_rel_);
    };

    constexpr double z_max = 1e6;
    double hi = std::max(2.0 * lo0, lo0 + 1.0);
    while (value(hi) < target) {
        hi *= 2.0;
        if (hi > z_max)
            throw std::runtime_error(
                "solve_dstar: divergence condition numerically unattained below z = 1e6");
    }

    double lo = lo0;
    while (hi - lo > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (value(mid) >= target)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

TheoryConstants CertificateFunctions::constants() const {
    const Diagnostics& d = *diag_;
    TheoryConstants c;
    c.K = d.K();
    c.tau_bar = d.tau_bar();
    c.D0 = d.extremes().D0;
    c.R_V0 = d.extremes().R_V0;
    c.M_X0 = d.extremes().M_X0;
    c.lyapunov_2tau = lyapunov(2.0 * c.tau_bar);
    c.d_star = solve_dstar();
    c.psi_star = min_influence_prefix(d.trajectory().scenario().influence, c.d_star);
    c.phi_star = std::min(decay_weight_ * c.psi_star, phi_cap_);
    c.C = decay_rate(c.K, c.tau_bar, c.phi_star);
    return c;
}

}  // namespace flockcert
