#include "flockcert/delay.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flockcert {

DelaySpec DelaySpec::constant(double tau0, double tau_bar) {
    DelaySpec s;
    s.family = DelayFamily::Constant;
    s.tau0 = tau0;
    s.tau_bar = tau_bar;
    return s;
}

DelaySpec DelaySpec::sinusoidal(double tau_bar, double omega, double phase) {
    DelaySpec s;
    s.family = DelayFamily::Sinusoidal;
    s.tau_bar = tau_bar;
    s.omega = omega;
    s.phase = phase;
    return s;
}

DelaySpec DelaySpec::piecewise_linear(double tau_bar, std::vector<double> t, std::vector<double> tau) {
    DelaySpec s;
    s.family = DelayFamily::PiecewiseLinear;
    s.tau_bar = tau_bar;
    s.knots_t = std::move(t);
    s.knots_tau = std::move(tau);
    return s;
}

double eval_delay(const DelaySpec& spec, double t) {
    if (t < 0.0) throw std::domain_error("eval_delay: time must be nonnegative");
    switch (spec.family) {
        case DelayFamily::Constant:
            return spec.tau0;
        case DelayFamily::Sinusoidal:
            return spec.tau_bar * (1.0 + std::sin(spec.omega * t + spec.phase)) / 2.0;
        case DelayFamily::PiecewiseLinear: {
            const auto& xs = spec.knots_t;
            const auto& ys = spec.knots_tau;
            if (t <= xs.front()) return ys.front();
            if (t >= xs.back()) return ys.back();
            const auto it = std::upper_bound(xs.begin(), xs.end(), t);
            const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
            const std::size_t lo = hi - 1;
            const double w = (t - xs[lo]) / (xs[hi] - xs[lo]);
            return ys[lo] + w * (ys[hi] - ys[lo]);
        }
    }
    throw std::logic_error("eval_delay: unknown family");
}

void validate_delay(const DelaySpec& spec, double horizon, const std::string& path, std::vector<Violation>& out) {
    const auto add = [&](const std::string& field, const std::string& msg) {
        out.push_back({path + "." + field, msg});
    };
    if (!(spec.tau_bar > 0.0)) add("tau_bar", "tau_bar > 0 required, got " + std::to_string(spec.tau_bar));
    switch (spec.family) {
        case DelayFamily::Constant:
            if (!(spec.tau0 >= 0.0)) add("tau0", "tau0 >= 0 required, got " + std::to_string(spec.tau0));
            if (spec.tau0 > spec.tau_bar)
                add("tau0", "tau0 exceeds tau_bar: " + std::to_string(spec.tau0) + " > " + std::to_string(spec.tau_bar));
            break;
        case DelayFamily::Sinusoidal:
            // range is [0, tau_bar] by construction
            if (!(spec.omega > 0.0)) add("omega", "omega > 0 required, got " + std::to_string(spec.omega));
            break;
        case DelayFamily::PiecewiseLinear: {
            if (spec.knots_t.size() != spec.knots_tau.size())
                add("knots", "t and tau knot arrays must have equal length");
            if (spec.knots_t.size() < 2) add("knots", "at least two knots required");
            for (std::size_t k = 0; k + 1 < spec.knots_t.size(); ++k)
                if (!(spec.knots_t[k] < spec.knots_t[k + 1])) {
                    add("knots_t", "knot times must be strictly increasing");
                    break;
                }
            for (std::size_t k = 0; k < spec.knots_tau.size(); ++k)
                if (spec.knots_tau[k] < 0.0 || spec.knots_tau[k] > spec.tau_bar) {
                    add("knots_tau[" + std::to_string(k) + "]",
                        "lag must stay in [0, tau_bar], got " + std::to_string(spec.knots_tau[k]));
                    break;
                }
            break;
        }
    }
    if (!out.empty()) return;

    // dense bound sweep over the run horizon
    constexpr int samples = 4096;
    const double t_max = std::max(horizon, spec.tau_bar);
    for (int k = 0; k <= samples; ++k) {
        const double t = t_max * static_cast<double>(k) / samples;
        const double tau = eval_delay(spec, t);
        if (tau < 0.0 || tau > spec.tau_bar * (1.0 + 1e-12)) {
            add("family", "tau(" + std::to_string(t) + ") = " + std::to_string(tau) + " leaves [0, tau_bar]");
            return;
        }
    }
}

std::string delay_family_name(DelayFamily family) {
    switch (family) {
        case DelayFamily::Constant: return "constant";
        case DelayFamily::Sinusoidal: return "sinusoidal";
        case DelayFamily::PiecewiseLinear: return "piecewise-linear";
    }
    return "unknown";
}

}  // namespace flockcert
