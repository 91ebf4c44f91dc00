#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flockcert/scenario.hpp"

namespace flockcert {

/// Exit-code contract shared by the CLI:
///   0 success (certify: every check passed)
///   1 certify: at least one check failed
///   2 configuration error (missing file, bad schema, invalid scenario)
///   3 integration blow-up
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBlowUp = 3;

struct RunConfig {
    /// Scenario reference: a file path, "preset:<name>", or
    /// "fixture:corrupted" (the negative-control trajectory).
    std::string scenario_ref;
    std::string out_dir = ".";

    std::optional<double> dt;
    std::optional<double> horizon;
    std::optional<double> horizon_windows;
    std::optional<int> stride;
    std::string tolerance_file;
    std::optional<double> blowup_factor;
    bool write_svg = false;

    // sweep mode
    std::string sweep_param;
    std::vector<double> sweep_values;
    int workers = 0;  // 0: FLOCKCERT_WORKERS env var, else hardware concurrency
};

/// Resolve a scenario reference (file / preset) with overrides applied.
ScenarioSpec resolve_scenario(const RunConfig& config);

/// Integrate and write trajectory.csv + diagnostics.csv into out_dir.
int run_simulate(const RunConfig& config);

/// Integrate, check every certificate, write report.json (always) and
/// certificate_series.csv; exit 0 only if every check passed.
int run_certify(const RunConfig& config);

/// One certification run per value of the swept parameter; write sweep.csv.
/// Individual row failures flag the row and the sweep continues.
int run_sweep(const RunConfig& config);

/// Built-in end-to-end checks (presets validate, closed-form accuracy, the
/// negative control fails as intended).
int run_selftest(const RunConfig& config);

}  // namespace flockcert
