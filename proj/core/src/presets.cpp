#include "flockcert/presets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace flockcert {

namespace {

AgentHistory const_agent(std::vector<double> x, std::vector<double> v) {
    return {HistoryLaw::constant(std::move(x)), HistoryLaw::constant(std::move(v))};
}

ScenarioSpec flocked() {
    ScenarioSpec s;
    s.name = "flocked";
    s.agents = 3;
    s.dim = 2;
    s.influence = InfluenceSpec::cucker_smale(1.0, 0.3);
    s.delay = DelaySpec::sinusoidal(0.5, 1.0, 0.0);
    s.history.agents = {
        const_agent({0.0, 0.0}, {0.3, -0.2}),
        const_agent({1.0, 0.0}, {0.3, -0.2}),
        const_agent({0.5, 0.8}, {0.3, -0.2}),
    };
    s.horizon_windows = 8.0;
    s.dt = 0.005;
    s.output_stride = 5;
    return s;
}

ScenarioSpec closed_form_undelayed() {
    ScenarioSpec s;
    s.name = "closed-form-undelayed";
    s.agents = 2;
    s.dim = 1;
    s.influence = InfluenceSpec::constant(1.0);
    s.delay = DelaySpec::constant(0.0, 0.25);
    s.history.agents = {
        const_agent({0.0}, {1.0}),
        const_agent({1.0}, {-1.0}),
    };
    s.horizon = 5.0;
    s.dt = 1e-3;
    s.output_stride = 10;
    return s;
}

ScenarioSpec constant_delay_linear() {
    ScenarioSpec s;
    s.name = "constant-delay-linear";
    s.agents = 2;
    s.dim = 1;
    s.influence = InfluenceSpec::constant(1.0);
    s.delay = DelaySpec::constant(0.25, 0.25);
    s.history.agents = {
        const_agent({0.0}, {1.0}),
        const_agent({1.0}, {-1.0}),
    };
    s.horizon_windows = 8.0;
    s.dt = 2.5e-3;
    s.output_stride = 4;
    return s;
}

ScenarioSpec default_delayed() {
    ScenarioSpec s;
    s.name = "default-delayed";
    s.agents = 5;
    s.dim = 2;
    s.influence = InfluenceSpec::cucker_smale(0.8, 0.25);
    s.delay = DelaySpec::sinusoidal(0.5, 1.3, 0.4);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (int i = 0; i < 5; ++i) {
        const double a = two_pi * i / 5.0;
        AgentHistory h;
        h.position = HistoryLaw::constant({0.8 * std::cos(a), 0.8 * std::sin(a)});
        h.velocity = HistoryLaw::linear({0.4 * std::cos(a + 0.5), 0.4 * std::sin(a + 0.5)},
                                        {(i % 2 == 0 ? 0.1 : -0.1), 0.05});
        s.history.agents.push_back(std::move(h));
    }
    s.horizon_windows = 8.0;
    s.dt = 0.005;
    s.output_stride = 5;
    return s;
}

ScenarioSpec non_monotone_psi() {
    ScenarioSpec s;
    s.name = "non-monotone-psi";
    s.agents = 4;
    s.dim = 2;
    s.influence = InfluenceSpec::oscillating(0.6, 0.3, 2.0);
    s.delay = DelaySpec::sinusoidal(0.5, 0.9, 0.0);
    s.history.agents = {
        const_agent({0.0, 0.0}, {0.5, 0.1}),
        const_agent({1.2, 0.3}, {-0.3, 0.2}),
        {HistoryLaw::linear({0.4, 1.0}, {0.05, -0.1}), HistoryLaw::linear({0.1, -0.4}, {0.02, 0.08})},
        {HistoryLaw::sampled({-0.5, -0.25, 0.0}, {{-0.8, 0.5}, {-0.7, 0.4}, {-0.6, 0.45}}),
         HistoryLaw::sampled({-0.5, -0.25, 0.0}, {{0.2, -0.1}, {0.25, 0.0}, {0.15, 0.05}})},
    };
    s.horizon_windows = 8.0;
    s.dt = 0.005;
    s.output_stride = 5;
    return s;
}

ScenarioSpec large_delay() {
    ScenarioSpec s;
    s.name = "large-delay";
    s.agents = 3;
    s.dim = 2;
    s.influence = InfluenceSpec::cucker_smale(0.5, 0.3);
    s.delay = DelaySpec::sinusoidal(4.0, 0.7, 0.2);
    s.history.agents = {
        {HistoryLaw::constant({0.0, 0.0}), HistoryLaw::linear({0.3, 0.0}, {0.02, -0.01})},
        {HistoryLaw::constant({1.5, 0.5}), HistoryLaw::linear({-0.2, 0.1}, {-0.01, 0.02})},
        {HistoryLaw::constant({0.5, 1.5}), HistoryLaw::linear({0.1, -0.25}, {0.0, 0.015})},
    };
    s.horizon_windows = 8.0;
    s.dt = 0.02;
    s.output_stride = 20;
    return s;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "flocked",        "closed-form-undelayed", "constant-delay-linear",
        "default-delayed", "non-monotone-psi",     "large-delay",
    };
    return names;
}

ScenarioSpec make_preset(const std::string& name) {
    if (name == "flocked") return flocked();
    if (name == "closed-form-undelayed") return closed_form_undelayed();
    if (name == "constant-delay-linear") return constant_delay_linear();
    if (name == "default-delayed") return default_delayed();
    if (name == "non-monotone-psi") return non_monotone_psi();
    if (name == "large-delay") return large_delay();
    throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace flockcert
