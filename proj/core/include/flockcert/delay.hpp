#pragma once

#include <string>
#include <vector>

#include "flockcert/validation.hpp"

namespace flockcert {

enum class DelayFamily { Constant, Sinusoidal, PiecewiseLinear };

/// Transmission lag tau(t): continuous on [0, inf) with 0 <= tau(t) <= tau_bar.
///
///   constant:          tau(t) = tau0
///   sinusoidal:        tau(t) = tau_bar * (1 + sin(omega t + phase)) / 2
///   piecewise-linear:  interpolates (t_k, tau_k) knots, held flat outside
struct DelaySpec {
    DelayFamily family = DelayFamily::Constant;

    /// Uniform upper bound on the lag; every certificate constant uses it.
    double tau_bar = 1.0;

    double tau0 = 1.0;

    double omega = 1.0;
    double phase = 0.0;

    std::vector<double> knots_t;
    std::vector<double> knots_tau;

    static DelaySpec constant(double tau0, double tau_bar);
    static DelaySpec sinusoidal(double tau_bar, double omega, double phase);
    static DelaySpec piecewise_linear(double tau_bar, std::vector<double> t, std::vector<double> tau);
};

/// tau(t). Throws std::domain_error for t < 0.
double eval_delay(const DelaySpec& spec, double t);

void validate_delay(const DelaySpec& spec, double horizon, const std::string& path, std::vector<Violation>& out);

std::string delay_family_name(DelayFamily family);

}  // namespace flockcert
