#pragma once

#include <string>
#include <vector>

#include "flockcert/scenario.hpp"

namespace flockcert {

/// Built-in scenarios, each exercising one regime:
///   flocked                already consensual initial data, d_V identically 0
///   closed-form-undelayed  two agents, psi = 1, no lag: d_V(t) = 2 e^{-2t}
///   constant-delay-linear  two agents, psi = 1, constant lag (a scalar linear
///                          delay equation for the velocity gap)
///   default-delayed        five agents in the plane, sinusoidal lag
///   non-monotone-psi       oscillating influence (no monotonicity to lean on)
///   large-delay            tau_bar = 4
const std::vector<std::string>& preset_names();

/// Throws std::invalid_argument for an unknown name.
ScenarioSpec make_preset(const std::string& name);

}  // namespace flockcert
