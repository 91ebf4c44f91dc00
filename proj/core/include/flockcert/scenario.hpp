#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "flockcert/delay.hpp"
#include "flockcert/history.hpp"
#include "flockcert/influence.hpp"
#include "flockcert/validation.hpp"

namespace flockcert {

/// Full problem description for one run.
///
/// The horizon can be given in seconds or in units of tau_bar
/// (horizon_windows > 0 wins); the latter keeps window-based checks
/// meaningful when tau_bar is swept.
struct ScenarioSpec {
    std::string name;

    int agents = 2;
    int dim = 1;

    InfluenceSpec influence;
    DelaySpec delay;
    HistorySpec history;

    double horizon = 1.0;
    double horizon_windows = 0.0;

    double dt = 1e-2;
    int output_stride = 1;

    double tau_bar() const { return delay.tau_bar; }
    double end_time() const { return horizon_windows > 0.0 ? horizon_windows * delay.tau_bar : horizon; }
};

/// All invariants of the scenario and its parts. Empty result means valid.
std::vector<Violation> validate_scenario(const ScenarioSpec& spec);

struct ScenarioError : std::runtime_error {
    explicit ScenarioError(std::vector<Violation> v);
    std::vector<Violation> violations;
};

/// Identity on valid input; throws ScenarioError listing every violation.
const ScenarioSpec& validated(const ScenarioSpec& spec);

}  // namespace flockcert
