#pragma once

#include <string>

#include "flockcert/scenario.hpp"

namespace flockcert {

/// Parse a scenario document (JSON text). Throws std::runtime_error with a
/// field-path message on malformed input; the result is not yet validated.
ScenarioSpec parse_scenario(const std::string& json_text);

/// Render a scenario back to its canonical document form (sorted keys).
std::string render_scenario(const ScenarioSpec& spec);

/// Load and parse a scenario file. Throws std::runtime_error naming the path
/// when the file is missing or unreadable.
ScenarioSpec load_scenario_file(const std::string& path);

/// FNV-1a 64 content hash of the canonical serialization, as fixed-width hex.
std::string scenario_fingerprint(const ScenarioSpec& spec);

}  // namespace flockcert
